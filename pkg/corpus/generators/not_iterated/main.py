def helper():
    return 1


def gen():
    yield helper()


g = gen()
r = helper()
