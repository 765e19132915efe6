def red():
    return "red"


def blue():
    return "blue"


actions = [red, blue]
first = actions[0]()
second = actions[1]()
