"""Bracketing sequence entropy along a time set from independence counts."""

import math

from symindep import (
    SubsetWindow,
    bernoulli_rs_witness,
    full_shift,
    golden_mean,
    sequence_entropy_bracket,
)

# along 0..11 on the full shift the cover needs all 2^m elements: entropy log 2
times = SubsetWindow(tuple(range(12)), 12)
bracket = sequence_entropy_bracket(full_shift(2), ("0", "1"), times, 12)
print("full(2):", bracket.lower, "<= h <=", bracket.upper, "(log 2 =", math.log(2), ")")
print("pattern counts:", bracket.pattern_counts)

# the golden mean shift along the evens realizes every pattern as well
evens = SubsetWindow(tuple(range(0, 24, 2)), 24)
bracket2 = sequence_entropy_bracket(golden_mean(), ("0", "1"), evens, 10)
print("golden mean along evens:", bracket2.lower, "<= h <=", bracket2.upper)

# cylinders on coordinates [0, k) of a full shift always admit kN
witness = bernoulli_rs_witness(full_shift(2), ["000", "001", "111"])
print("k =", witness.step, "spot-verified on", witness.verified_window.elements)
