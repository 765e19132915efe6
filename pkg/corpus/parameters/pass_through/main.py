def target():
    return 1


def inner(fn):
    return fn()


def outer(fn):
    return inner(fn)


result = outer(target)
