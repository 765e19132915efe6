def base():
    return 1


run = lambda: base()
result = run()
