def job():
    return 1


actions = [job]
position = 0
result = actions[position]()
