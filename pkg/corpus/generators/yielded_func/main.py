def job():
    return 1


def source():
    yield job


g = source()
fn = next(g)
result = fn()
