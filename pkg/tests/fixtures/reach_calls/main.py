import vaultlib

payload = vaultlib.unsafe_load("raw")
