class Top:
    def __init__(self):
        self.tag = "top"

    def name(self):
        return "top"


class Left(Top):
    marker = 1


class Right(Top):
    def name(self):
        return "right"


class Bottom(Left, Right):
    marker = 2


b = Bottom()
which = b.name()
