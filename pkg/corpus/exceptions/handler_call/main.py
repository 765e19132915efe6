class Boom(Exception):
    pass


def cleanup():
    return 1


try:
    raise Boom()
except Boom:
    outcome = cleanup()
