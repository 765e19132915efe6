def job():
    return 1


table = {"job": job}
result = table["job"]()
