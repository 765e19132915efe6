def job():
    return 1


table = {"outer": {"inner": job}}
result = table["outer"]["inner"]()
