def task():
    return 1


def outer():
    def inner():
        return task()
    return inner()


result = outer()
