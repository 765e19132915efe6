def job():
    return 1


def run(action=job):
    return action()


result = run()
