def inner_task():
    return "done"


def factory():
    return inner_task


result = factory()()
