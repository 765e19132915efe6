def red():
    return "red"


def blue():
    return "blue"


def invoke(fn):
    return fn()


first = invoke(red)
second = invoke(blue)
