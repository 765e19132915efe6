def unused():
    return 1


values = [3, 1, 2]
count = len(values)
ordered = sorted(values)
