def ping():
    return "ping"


def pong():
    return ping()


result = pong()
