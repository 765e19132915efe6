class Animal:
    def __init__(self):
        self.alive = True

    def speak(self):
        return "..."


class Dog(Animal):
    def speak(self):
        return "woof"


d = Dog()
sound = d.speak()
