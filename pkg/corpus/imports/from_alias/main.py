from helper import greet as hello

message = hello()
