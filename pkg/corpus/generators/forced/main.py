def make():
    return 1


def gen():
    v = make()
    yield v


g = gen()
first = next(g)
