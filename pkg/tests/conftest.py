import sys

# exact ladder values carry six-figure-digit integers; lift the int->str guard
sys.set_int_max_str_digits(10**7)
