class Base:
    def __init__(self):
        self.ready = True

    def start(self):
        return "start"


class Middle(Base):
    label = "middle"


class Leaf(Middle):
    label = "leaf"


leaf = Leaf()
state = leaf.start()
