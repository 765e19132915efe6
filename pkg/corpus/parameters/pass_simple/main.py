def target():
    return "hit"


def invoke(fn):
    return fn()


result = invoke(target)
