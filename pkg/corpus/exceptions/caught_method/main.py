class Glitch(Exception):
    def describe(self):
        return "glitch"


try:
    raise Glitch()
except Glitch as err:
    message = err.describe()
