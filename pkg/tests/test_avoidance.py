"""Tests for the window-avoidance solver, bookkeeping tables and explorer."""

import itertools

import pytest

from symindep.errors import InvalidArgumentError, InvariantViolation
from symindep.avoidance import (
    AvoidanceInstance,
    bookkeeping,
    minimal_m_explorer,
    solve_prefix,
    value_word,
    verify_bounds,
    verify_word,
    word_value,
)


def brute_force_b_table(instance, count):
    """B_n by raw enumeration: windows with no valid configuration behind them.

    Enumerates every string of length n + m and keeps the window values whose
    every completion hits some forbidden window earlier on.  Exponential; only
    for tiny parameters.
    """
    p, m = instance.p, instance.m
    letters = "".join(chr(ord("0") + a) for a in range(p))
    tables = []
    for n in range(count):
        reachable = set()
        for tail in itertools.product(letters, repeat=n + m):
            word = "".join(tail)
            if all(
                word_value(word[j:j + m], p) not in instance.forbidden(j)
                for j in range(n + 1)
            ):
                reachable.add(word_value(word[n:n + m], p))
        tables.append(frozenset(range(p ** m)) - reachable)
    return tables


# -- encoding ----------------------------------------------------------------


def test_word_value_round_trip():
    for p, m in [(2, 4), (3, 3)]:
        for v in range(p ** m):
            assert word_value(value_word(v, p, m), p) == v


# -- solver ------------------------------------------------------------------


def test_solve_unconstrained_is_zeros():
    instance = AvoidanceInstance.explicit(2, 6, 0, {})
    assert solve_prefix(instance, 30).word == "0" * 30


def test_solve_all_zero_window_blocked():
    instance = AvoidanceInstance.explicit(2, 6, 1, {n: ["000000"] for n in range(60)})
    result = solve_prefix(instance, 24)
    assert result.solved
    assert result.word == "000001" * 4
    assert "000000" not in result.word


def test_solve_seeded_guarantee():
    instance = AvoidanceInstance.generate(2, 6, 1, 995, seed=7)
    result = solve_prefix(instance, 1000)
    assert result.solved
    assert verify_word(instance, result.word) is None


def test_solve_short_lengths():
    instance = AvoidanceInstance.explicit(2, 6, 1, {0: ["000000"]})
    assert solve_prefix(instance, 3).word == "000"


def test_solver_determinism():
    instance = AvoidanceInstance.generate(2, 6, 1, 495, seed=99)
    words = {solve_prefix(instance, 500).word for _ in range(3)}
    assert len(words) == 1
    again = AvoidanceInstance.generate(2, 6, 1, 495, seed=99)
    assert solve_prefix(again, 500).word in words


def test_solve_reports_dead_end_below_threshold():
    # m = 2 < 4l + 2 allows chaining the blocks until nothing extends
    instance = AvoidanceInstance.explicit(
        2, 2, 2, {0: ["00"], 1: ["01", "11"], 2: ["00", "01"]}
    )
    result = solve_prefix(instance, 10)
    assert not result.solved
    assert result.failed_at == 2
    assert "exhausted" in result.verdict


def test_bounded_lookahead_path():
    instance = AvoidanceInstance.generate(2, 6, 1, 195, seed=5)
    full = solve_prefix(instance, 200)
    bounded = solve_prefix(instance, 200, lookahead=12)
    assert full.solved and bounded.solved
    assert verify_word(instance, bounded.word) is None


# -- instance files ----------------------------------------------------------


def test_instance_file_round_trip_explicit():
    instance = AvoidanceInstance.explicit(2, 3, 2, {0: ["000", "111"], 5: ["010"]})
    text = instance.to_text()
    parsed = AvoidanceInstance.from_text(text)
    assert parsed.to_text() == text
    assert parsed.forbidden(5) == instance.forbidden(5)
    assert parsed.forbidden(1) == frozenset()


def test_instance_file_round_trip_seeded():
    instance = AvoidanceInstance.generate(2, 6, 1, 50, seed=1234)
    parsed = AvoidanceInstance.from_text(instance.to_text())
    assert parsed.seed == 1234
    for n in range(50):
        assert parsed.forbidden(n) == instance.forbidden(n)


def test_instance_file_rejects_bad_header():
    with pytest.raises(InvalidArgumentError):
        AvoidanceInstance.from_text("2 6 1\n")


def test_instance_size_bound_enforced():
    with pytest.raises(InvalidArgumentError):
        AvoidanceInstance.explicit(2, 3, 1, {0: ["000", "001"]})


# -- bookkeeping -------------------------------------------------------------


def test_bookkeeping_single_block():
    instance = AvoidanceInstance.explicit(2, 3, 1, {0: ["010"]})
    bk = bookkeeping(instance, 5)
    assert bk.b_words(0) == ("010",)
    assert bk.c[0] == frozenset()
    for n in range(1, 5):
        assert bk.b[n] == frozenset()


def test_bookkeeping_matches_brute_force():
    cases = [
        AvoidanceInstance.explicit(
            2, 3, 2, {n: (["000", "111"] if n % 2 == 0 else ["010"]) for n in range(12)}
        ),
        AvoidanceInstance.generate(2, 3, 2, 12, seed=21),
        AvoidanceInstance.generate(2, 4, 2, 12, seed=22),
        AvoidanceInstance.generate(2, 4, 3, 10, seed=23),
    ]
    for instance in cases:
        count = 10
        bk = bookkeeping(instance, count)
        oracle = brute_force_b_table(instance, count)
        for n in range(count):
            assert bk.b[n] == oracle[n], f"mismatch at n={n}"


def test_bookkeeping_saturation_probe():
    instance = AvoidanceInstance.explicit(
        2, 2, 2, {0: ["00", "10"], 1: ["10", "11"]}
    )
    bk = bookkeeping(instance, 4)
    assert bk.b[1] == frozenset(range(4))


def test_c_partition_structure():
    instance = AvoidanceInstance.generate(2, 4, 2, 30, seed=77)
    bk = bookkeeping(instance, 30)
    for n in range(30):
        covered = set()
        for k in range(instance.m):
            width = 2 ** (instance.m - 1 - k)
            for y in bk.d[n][k]:
                block = set(range(y * width, (y + 1) * width))
                assert not block & covered
                covered |= block
        assert covered == set(bk.c[n])


# -- verify_bounds -----------------------------------------------------------


def test_bounds_hold_on_random_instance():
    instance = AvoidanceInstance.generate(2, 6, 1, 200, seed=4)
    bk = bookkeeping(instance, 200)
    report = verify_bounds(bk, instance)
    assert report.positions_checked == 200
    assert 2 * len(bk.c[0]) <= instance.l  # |C_0| <= l/p


def test_bounds_duality_on_saturating_instance():
    instance = AvoidanceInstance.explicit(
        2, 2, 2, {0: ["00", "10"], 1: ["10", "11"]}
    )
    bk = bookkeeping(instance, 6)
    verify_bounds(bk, instance)


def test_bounds_catch_tampered_tables():
    instance = AvoidanceInstance.generate(2, 6, 1, 50, seed=13)
    bk = bookkeeping(instance, 50)
    tampered = bk.__class__(
        bk.p, bk.m, bk.b[:10] + (frozenset(range(2 ** 6)),) + bk.b[11:], bk.c, bk.d
    )
    with pytest.raises(InvariantViolation):
        verify_bounds(tampered, instance)


# -- explorer ----------------------------------------------------------------


def test_explorer_guaranteed_row():
    report = minimal_m_explorer(2, 1, trials=5, seed=3, target_length=200)
    by_m = {row.m: row for row in report.rows}
    assert by_m[6].success_rate == 1
    assert report.rows[-1].m == 6


def test_explorer_l_zero_all_pass():
    report = minimal_m_explorer(2, 0, trials=3, seed=1, target_length=100)
    assert all(row.success_rate == 1 for row in report.rows)


def test_explorer_deterministic():
    a = minimal_m_explorer(2, 1, trials=4, seed=11, target_length=150)
    b = minimal_m_explorer(2, 1, trials=4, seed=11, target_length=150)
    assert a.to_csv() == b.to_csv()
