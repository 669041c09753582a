"""Tour of the integer-set layer: windows, densities, families, constructions."""

from symindep import (
    SubsetWindow,
    anti_ss_sparse,
    block_witness,
    densities,
    difference_set,
    family_predicates,
    find_translate,
    fss_construct,
    ip_generate,
)

# a finite window of the even numbers
evens = SubsetWindow.arithmetic(2, 200)
report = densities(evens, 10)
print("evens:", report.lower, "<= density <=", report.upper,
      "banach:", report.banach_upper)

# two blocks: thick-ish and piecewise syndetic at small scale, not syndetic
blocks = SubsetWindow.from_iterable(list(range(15)) + list(range(150, 170)), 200)
preds = family_predicates(blocks, gap_bound=1, thick_depth=15)
print("blocks: syndetic?", preds.syndetic_with_gap,
      "thick run of 15?", preds.thick_up_to, "pws witness:", preds.pws_witness)

# an IP set from three generators: all sums over distinct indices
print("ip(3, 9, 27):", ip_generate([3, 9, 27]).elements)

# the squares-blocks set contains translated copies of longer and longer
# prefixes of [0, 10): the classic block-family witness
square_blocks = SubsetWindow.from_iterable(
    [x for n in range(1, 23) for x in range(n * n, n * n + n) if x < 500], 500
)
witness = block_witness(square_blocks, SubsetWindow(tuple(range(10)), 10), 10)
print("block witness translates:", witness.translates)

# positive pairwise differences
print("differences of squares:", difference_set(SubsetWindow((1, 4, 9, 16), 17)).elements)

# a dense set meets some translate of any fixed finite pattern in many points
dense = SubsetWindow.arithmetic(2, 220)
match = find_translate(dense, (0, 200), SubsetWindow(tuple(range(20)), 20), 9)
print("translate p =", match.p, "count =", match.count,
      "guaranteed:", match.guarantee_applies)

# a 3-AP-free union of superincreasing blocks, and a set meeting every
# translate of the squares at most twice
sparse = fss_construct(5)
print("3-AP-free set:", sparse.window.elements[:12], "...")
squares = SubsetWindow.from_iterable([i * i for i in range(100)], 10_000)
anti = anti_ss_sparse(squares, 10)
print("anti-squares set:", anti.window.elements, "max overlap:", anti.max_overlap)
