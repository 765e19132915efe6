class Registry:
    def __init__(self, fn):
        self.fn = fn

    def run(self):
        return self.fn()


def job():
    return 1


r = Registry(job)
result = r.run()
