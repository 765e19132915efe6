def task():
    return 2


def apply(fn):
    return fn()


result = apply(lambda: task())
