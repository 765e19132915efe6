def job():
    return 1


def pick():
    return job


chosen = pick()
result = chosen()
