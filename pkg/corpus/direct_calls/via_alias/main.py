def job():
    return 1


def provide():
    return job


alias = provide
result = alias()()
