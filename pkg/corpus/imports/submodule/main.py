from pkg.sub import compute

value = compute()
