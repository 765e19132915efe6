def encrypt(key, msg):
    return msg

def decrypt(key, msg):
    return msg
