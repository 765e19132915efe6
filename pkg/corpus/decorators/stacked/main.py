def outer_deco(fn):
    return fn


def inner_deco(fn):
    return fn


@outer_deco
@inner_deco
def greet():
    return "hello"


message = greet()
