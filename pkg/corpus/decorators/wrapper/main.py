def deco(fn):
    def wrapper():
        return fn()
    return wrapper


@deco
def greet():
    return "hello"


message = greet()
