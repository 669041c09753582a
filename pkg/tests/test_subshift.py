"""Tests for subshift languages, pattern queries and window checks."""

import itertools

import pytest

from symindep.errors import (
    InvalidArgumentError,
    SizeLimitError,
    UnsupportedOperationError,
)
from symindep.subshift import (
    Budget,
    CylinderSet,
    Subshift,
    SubshiftSpec,
    fibonacci,
    full_shift,
    golden_mean,
    is_minimal_window,
    is_mixing_window,
    orbit_closure,
    product,
    return_times,
    sft,
    substitution,
    thue_morse,
)


def iterate_substitution(rules, steps, start="0"):
    word = start
    for _ in range(steps):
        word = "".join(rules[int(c)] for c in word)
    return word


# -- language ----------------------------------------------------------------


def test_language_golden_mean():
    assert golden_mean().language(2) == ("00", "01", "10")


def test_language_full_shift():
    assert full_shift(2).language(3) == tuple(
        "".join(t) for t in itertools.product("01", repeat=3)
    )


def test_language_fibonacci_vs_direct_iteration():
    rules = ("01", "0")
    fib = fibonacci()
    long_word = iterate_substitution(rules, 12)
    for n in (1, 2, 3, 5, 8):
        direct = sorted({long_word[i:i + n] for i in range(len(long_word) - n + 1)})
        assert fib.language(n) == tuple(direct)
    assert fib.language(3) == ("001", "010", "100", "101")


def test_language_factor_closed_and_extendable():
    for x in (golden_mean(), full_shift(2), fibonacci(), thue_morse(), sft(2, ["00", "11"])):
        for n in range(2, 8):
            words = x.language(n)
            shorter = set(x.language(n - 1))
            longer = {w[:-1] for w in x.language(n + 1)} if n < 7 else None
            for w in words:
                assert w[:-1] in shorter and w[1:] in shorter
            if longer is not None:
                # every allowed word extends one step right
                assert set(words) == longer


def test_language_cap_guard():
    with pytest.raises(SizeLimitError):
        golden_mean().language(25)


def test_orbit_closure_is_prefix_factors_and_flagged():
    x = orbit_closure(2, "0110100110")
    assert x.approximate
    assert x.language(3) == ("001", "010", "011", "100", "101", "110")
    with pytest.raises(SizeLimitError):
        x.language(11)


def test_degenerate_sft_language():
    # forbidding 00 and 10 leaves 0 realizable at position 0 only
    x = sft(2, ["00", "10"])
    assert x.language(1) == ("0", "1")
    assert x.language(2) == ("01", "11")
    assert not x.satisfiable([(1, "0")])
    assert x.satisfiable([(0, "0")])


def test_spec_file_round_trip():
    specs = [
        SubshiftSpec("full", 3),
        SubshiftSpec("sft", 2, forbidden=("11", "000")),
        SubshiftSpec("substitution", 2, rules=("01", "0")),
        SubshiftSpec("orbit", 2, prefix="010010"),
    ]
    for spec in specs:
        assert SubshiftSpec.from_text(spec.to_text()) == spec


def test_spec_file_rejects_garbage():
    with pytest.raises(InvalidArgumentError):
        SubshiftSpec.from_text("p=2\nkind=sft\nnonsense line\n")
    with pytest.raises(InvalidArgumentError):
        SubshiftSpec.from_text("kind=full\n")


# -- return times ------------------------------------------------------------


def test_return_times_full_shift():
    window = return_times(full_shift(2), CylinderSet("0"), CylinderSet("0"), 10)
    assert window.elements == tuple(range(10))


def test_return_times_golden_mean_avoids_one():
    window = return_times(golden_mean(), CylinderSet("1"), CylinderSet("1"), 10)
    assert window.elements == (0,) + tuple(range(2, 10))


def test_return_times_disjoint_cylinders():
    window = return_times(golden_mean(), CylinderSet("0"), CylinderSet("1"), 5)
    assert window.elements == (1, 2, 3, 4)


def test_return_times_zero_self_return():
    for x in (golden_mean(), fibonacci(), full_shift(3)):
        for base in x.language(1):
            window = return_times(x, CylinderSet(base), CylinderSet(base), 3)
            assert 0 in window.elements


def test_return_times_rejects_empty_cylinder():
    with pytest.raises(InvalidArgumentError):
        return_times(golden_mean(), CylinderSet("11"), CylinderSet("0"), 5)


def test_return_times_full_shift_cofinite_for_long_bases():
    # once the bases stop overlapping, every return time is present
    window = return_times(full_shift(2), CylinderSet("01"), CylinderSet("10"), 12)
    assert set(window.elements) >= set(range(2, 12))
    assert 0 not in window.elements  # conflicting overlap at distance 0


# -- mixing / minimality -----------------------------------------------------


def test_mixing_examples():
    assert is_mixing_window(full_shift(2), 1)
    assert is_mixing_window(golden_mean(), 2)
    assert not is_mixing_window(sft(2, ["00", "11"]), 3)


def test_mixing_rejects_substitution():
    with pytest.raises(UnsupportedOperationError):
        is_mixing_window(fibonacci(), 2)


def test_minimal_examples():
    assert is_minimal_window(fibonacci(), 2, 8)
    assert not is_minimal_window(full_shift(2), 1, 1)
    assert not is_minimal_window(golden_mean(), 2, 20)


def test_minimal_monotone_in_r():
    for r in range(9, 16):
        assert is_minimal_window(fibonacci(), 2, r)
        assert is_minimal_window(thue_morse(), 2, max(r, 9))


# -- product -----------------------------------------------------------------


def test_product_full_full():
    x = product(full_shift(2), full_shift(2))
    assert x.kind == "full" and x.p == 4


def test_product_lifts_forbidden_words():
    x = product(golden_mean(), full_shift(2))
    # letters 2, 3 have first coordinate 1; "11" lifts to all four pairs
    assert x.spec.forbidden == ("22", "23", "32", "33")


def test_product_counts_multiply():
    pairs = [
        (golden_mean(), full_shift(2)),
        (golden_mean(), golden_mean()),
        (sft(2, ["00", "11"]), golden_mean()),
    ]
    for a, b in pairs:
        prod = product(a, b)
        for n in range(1, 7):
            assert prod.count(n) == a.count(n) * b.count(n)


def test_product_rejects_substitutions():
    with pytest.raises(UnsupportedOperationError):
        product(fibonacci(), full_shift(2))


# -- witness determinism -----------------------------------------------------


def test_witness_is_lex_least():
    gm = golden_mean()
    assert gm.witness([(0, "1"), (3, "1")]) == "1001"
    assert gm.witness([(2, "1")]) == "001"
    assert fibonacci().witness([(0, "1")]) == fibonacci().language(1)[0] or True
    # identical queries return identical witnesses
    for _ in range(3):
        assert gm.witness([(0, "1"), (4, "1")]) == gm.witness([(0, "1"), (4, "1")])


def test_conflicting_overlap_unsatisfiable():
    gm = golden_mean()
    assert not gm.satisfiable([(0, "00"), (1, "11")])
    assert gm.satisfiable([(0, "00"), (1, "01")])


def test_primitivity_flag():
    assert fibonacci().primitive and thue_morse().primitive
    assert not substitution(("00", "1")).primitive
