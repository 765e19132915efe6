def job():
    return 2


def chooser():
    return job


def picker():
    return chooser()


chosen = picker()
result = chosen()
