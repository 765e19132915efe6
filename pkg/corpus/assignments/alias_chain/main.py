def greet():
    return "hello"


first = greet
second = first
message = second()
