def job():
    return 1


def install():
    global handler
    handler = job


handler = None
install()
result = handler()
