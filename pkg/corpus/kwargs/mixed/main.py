def scale(value):
    return value * 2


def run(value, action=None):
    return action(value)


result = run(3, action=scale)
