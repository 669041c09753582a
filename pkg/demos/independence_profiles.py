"""Independence profiles a_k and the certified density bound."""

from symindep import (
    CylinderTuple,
    density_witness,
    full_shift,
    golden_mean,
    is_independence_set,
    max_independence_within,
)

# on the full shift every set of times is independent for ([0], [1])
full_tuple = CylinderTuple.of(full_shift(2), "0", "1")
print("full(2):", max_independence_within(full_tuple, 14).a)

# the golden mean shift refuses adjacent positions: a_k = ceil(k / 2)
gm_tuple = CylinderTuple.of(golden_mean(), "0", "1")
profile = max_independence_within(gm_tuple, 14)
print("golden mean a_k:", profile.a)
print("certified upper bound on the independence density:", profile.upper_bound_i)
print("witness:", profile.witness.elements)
print(profile.to_csv())

# a single refuting assignment explains each failure
check = is_independence_set(gm_tuple, (0, 1, 2))
print("F = {0,1,2} independent?", check.independent, "refuted by", check.refuting)

# one set meeting the density bound at every prefix
witness = density_witness(gm_tuple, precision=10, horizon=30)
print("density witness:", witness.window.elements)
print("prefix bound:", witness.bound)
