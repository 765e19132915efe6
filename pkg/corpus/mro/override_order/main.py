class A:
    def ping(self):
        return "a"


class B(A):
    def ping(self):
        return "b"


class C(B, A):
    label = "c"


c = C()
result = c.ping()
