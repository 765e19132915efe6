class Counter:
    def __init__(self, start):
        self.value = start

    def bump(self):
        self.value = self.value + 1
        return self.value


c = Counter(1)
total = c.bump()
