import helper

message = helper.greet()
