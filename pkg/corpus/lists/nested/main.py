def job():
    return 1


grid = [[job]]
result = grid[0][0]()
