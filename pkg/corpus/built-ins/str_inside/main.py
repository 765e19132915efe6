def fmt(n):
    return str(n)


label = fmt(7)
