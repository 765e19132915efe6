def shout():
    return "hey"


text = shout()
print(text)
