def greet():
    return "hello"


act = greet
message = act()
