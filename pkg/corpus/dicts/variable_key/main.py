def job():
    return 1


key = "job"
table = {"job": job}
result = table[key]()
