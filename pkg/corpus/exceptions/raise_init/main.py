class Fault(Exception):
    def __init__(self, code):
        self.code = code


try:
    raise Fault(3)
except Fault as err:
    code = err.code
