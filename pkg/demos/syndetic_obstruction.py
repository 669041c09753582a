"""Why no syndetic set is an independence set on a minimal binary subshift.

The pipeline turns an allowed word and the gaps of the syndetic set into
per-position forbidden windows, finds a word x avoiding all of them, and then
shows no point of the subshift can trace x along the set: the refuting core
is recorded and independently re-verified.
"""

from dataclasses import replace

from symindep import (
    SubsetWindow,
    build_obstruction,
    fibonacci,
    thue_morse,
    verify_certificate,
)

# Thue-Morse against all of Z_+: three zeros already cannot happen
tm = thue_morse()
naturals = SubsetWindow(tuple(range(30)), 30)
cert = build_obstruction(tm, naturals, depth=12)
print("thue-morse:", cert.status, "| core:", cert.core, "letters:", cert.core_letters)
print("verified:", verify_certificate(cert, tm, naturals).ok)

# Fibonacci against the even numbers (gap bound 2, window width 10)
fib = fibonacci()
evens = SubsetWindow(tuple(range(0, 70, 2)), 70)
cert2 = build_obstruction(fib, evens, depth=20)
print("fibonacci/evens:", cert2.status, "| core:", cert2.core)
print("verified:", verify_certificate(cert2, fib, evens).ok)

# tampering is caught by the named stage
broken = replace(cert, core=(0, 1), core_letters="00")
print("tampered core:", verify_certificate(broken, tm, naturals))

print()
print("full certificate for third-party re-checking:")
print(cert.to_text())
