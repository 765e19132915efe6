from helper import *

message = greet()
