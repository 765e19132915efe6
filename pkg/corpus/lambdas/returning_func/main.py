def pick():
    return 3


choose = lambda: pick
result = choose()()
