"""Subshift languages, return-time sets and finite-scale window checks."""

from symindep import (
    CylinderSet,
    fibonacci,
    full_shift,
    golden_mean,
    is_minimal_window,
    is_mixing_window,
    product,
    return_times,
    thue_morse,
)

gm = golden_mean()
print("golden-mean words:", {n: gm.count(n) for n in range(1, 9)})
print("L_3 =", gm.language(3))

# return times N(U, V): which shifts land U inside V
print("N([1],[1]) on golden mean:", return_times(gm, CylinderSet("1"), CylinderSet("1"), 12).elements)
print("N([0],[1]) on golden mean:", return_times(gm, CylinderSet("0"), CylinderSet("1"), 12).elements)

# finite mixing window: all letter pairs return throughout a whole interval
print("golden mean mixing at 2:", is_mixing_window(gm, 2))
print("period-2 SFT mixing:", is_mixing_window(full_shift(2), 1),
      "vs", is_mixing_window(__import__("symindep").sft(2, ["00", "11"]), 3))

# uniform recurrence at scale (n, R): substitution systems pass, SFTs with
# long constant runs do not
fib, tm = fibonacci(), thue_morse()
print("fibonacci minimal at (2, 8):", is_minimal_window(fib, 2, 8))
print("thue-morse minimal at (2, 9):", is_minimal_window(tm, 2, 9))
print("golden mean minimal at (2, 20):", is_minimal_window(gm, 2, 20))

# products multiply languages
prod = product(gm, full_shift(2))
print("product alphabet:", prod.p, "forbidden:", prod.spec.forbidden)
print("counts multiply at n=5:", prod.count(5), "=", gm.count(5), "*", full_shift(2).count(5))
