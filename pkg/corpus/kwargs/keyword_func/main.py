def job():
    return 1


def run(action=None):
    return action()


result = run(action=job)
