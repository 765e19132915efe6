def last():
    return "x"


def mid():
    return last


def first():
    return mid


result = first()()()
