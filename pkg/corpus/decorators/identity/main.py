def deco(fn):
    return fn


@deco
def greet():
    return "hello"


message = greet()
