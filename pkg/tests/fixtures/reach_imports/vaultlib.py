def unsafe_load(data):
    return data


def safe_load(data):
    return data
