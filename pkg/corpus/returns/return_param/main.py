def job():
    return 3


def ident(x):
    return x


chosen = ident(job)
result = chosen()
