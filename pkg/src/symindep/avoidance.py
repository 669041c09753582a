"""Per-position window avoidance: build x with x[n, n+m-1] outside A_n.

An instance fixes an alphabet size p, a window width m and a size bound l
with |A_n| <= l.  For m >= 4l + 2 a solution always exists; the solver reads
that guarantee constructively as forward reachability (which windows still
have a valid past) plus a backward viability pass, then picks lex-least
digits.  The proof-side tables B_n (windows with no valid past), C_n and the
prefix decomposition D_{n,k} are computed independently and cross-checked
against the reachability tables.

Window sets are bitsets indexed by the word's base-p value (leftmost digit
most significant), so the C_n / D_{n,k} manipulations are shift-and-mask
operations.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvalidArgumentError,
    InvariantViolation,
    SizeLimitError,
)
from .subshift import Budget, DEFAULT_BUDGET

_EVEN16 = tuple(
    sum(((i >> (2 * b)) & 1) << b for b in range(8)) for i in range(1 << 16)
)
_SPREAD8 = tuple(
    sum(((i >> b) & 1) << (2 * b) for b in range(8)) for i in range(1 << 8)
)


def _even_bits(x: int) -> int:
    """Extract bits at even positions (0, 2, 4, ...) into a packed int."""
    out = 0
    shift = 0
    while x:
        out |= _EVEN16[x & 0xFFFF] << shift
        x >>= 16
        shift += 8
    return out


def _spread_bits(x: int) -> int:
    """Inverse of _even_bits: move bit r to position 2r."""
    out = 0
    shift = 0
    while x:
        out |= _SPREAD8[x & 0xFF] << shift
        x >>= 8
        shift += 16
    return out


def _iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def word_value(word: str, p: int) -> int:
    value = 0
    for c in word:
        d = ord(c) - ord("0")
        if not 0 <= d < p:
            raise InvalidArgumentError(f"word {word!r} has symbols outside 0..{p - 1}")
        value = value * p + d
    return value


def value_word(value: int, p: int, m: int) -> str:
    digits = []
    for _ in range(m):
        value, d = divmod(value, p)
        digits.append(chr(ord("0") + d))
    return "".join(reversed(digits))


class AvoidanceInstance:
    """Forbidden window sets A_n, explicit or drawn from a seeded generator.

    Seeded instances take A_n = sorted rng.sample(range(p**m), l) for
    n < n_sets from random.Random(seed); positions past n_sets are empty.
    """

    def __init__(self, p: int, m: int, l: int, table: dict[int, frozenset[int]],
                 n_sets: int, seed: int | None = None, budget: Budget = DEFAULT_BUDGET):
        if p < 2 or m < 1 or l < 0:
            raise InvalidArgumentError("need p >= 2, m >= 1, l >= 0")
        if p ** m > budget.max_table_bits:
            raise SizeLimitError(f"p^m = {p ** m} exceeds the table budget")
        for n, words in table.items():
            if n < 0 or len(words) > l:
                raise InvalidArgumentError(f"A_{n} violates |A_n| <= {l}")
            if any(not 0 <= w < p ** m for w in words):
                raise InvalidArgumentError(f"A_{n} contains an out-of-range word")
        self.p = p
        self.m = m
        self.l = l
        self.seed = seed
        self.n_sets = n_sets
        self._table = {n: frozenset(words) for n, words in table.items() if words}

    @classmethod
    def explicit(cls, p: int, m: int, l: int, sets, budget: Budget = DEFAULT_BUDGET
                 ) -> "AvoidanceInstance":
        """Build from {position: iterable of window words or values}."""
        table = {}
        for n, words in dict(sets).items():
            values = frozenset(
                w if isinstance(w, int) else word_value(w, p) for w in words
            )
            table[n] = values
        n_sets = max(table, default=-1) + 1
        return cls(p, m, l, table, n_sets, budget=budget)

    @classmethod
    def generate(cls, p: int, m: int, l: int, n_sets: int, seed: int,
                 budget: Budget = DEFAULT_BUDGET) -> "AvoidanceInstance":
        if l > p ** m:
            raise InvalidArgumentError("cannot sample l distinct windows from p^m")
        rng = random.Random(seed)
        table = {
            n: frozenset(rng.sample(range(p ** m), l)) for n in range(n_sets)
        }
        return cls(p, m, l, table, n_sets, seed=seed, budget=budget)

    def forbidden(self, n: int) -> frozenset[int]:
        return self._table.get(n, frozenset())

    def forbidden_mask(self, n: int) -> int:
        mask = 0
        for w in self._table.get(n, ()):
            mask |= 1 << w
        return mask

    def to_text(self) -> str:
        lines = [f"{self.p} {self.m} {self.l} {self.n_sets}"]
        if self.seed is not None:
            lines.append(f"seed={self.seed}")
        else:
            for n in sorted(self._table):
                words = ",".join(
                    value_word(w, self.p, self.m) for w in sorted(self._table[n])
                )
                lines.append(f"{n}: {words}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, budget: Budget = DEFAULT_BUDGET) -> "AvoidanceInstance":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not lines:
            raise InvalidArgumentError("empty instance file")
        header = lines[0].split()
        if len(header) != 4:
            raise InvalidArgumentError("line 1: expected header 'p m l N'")
        p, m, l, n_sets = (int(t) for t in header)
        if len(lines) > 1 and lines[1].startswith("seed="):
            return cls.generate(p, m, l, n_sets, int(lines[1][5:]), budget=budget)
        table: dict[int, frozenset[int]] = {}
        for lineno, line in enumerate(lines[1:], 2):
            head, sep, tail = line.partition(":")
            if not sep:
                raise InvalidArgumentError(f"line {lineno}: expected 'n: w1,w2,...'")
            n = int(head)
            words = frozenset(word_value(w.strip(), p) for w in tail.split(",") if w.strip())
            table[n] = words
        return cls(p, m, l, table, n_sets, budget=budget)


class _Tables:
    """Shift/mask helpers for window bitsets at fixed (p, m)."""

    def __init__(self, p: int, m: int):
        self.p = p
        self.m = m
        self.half = p ** (m - 1)
        self.full_mask = (1 << (p ** m)) - 1
        self.half_mask = (1 << self.half) - 1

    def tails(self, window_set: int) -> int:
        """{w mod p^{m-1} : w in set} - drop each window's first digit."""
        out = 0
        for a in range(self.p):
            out |= window_set >> (a * self.half)
        return out & self.half_mask

    def successors(self, window_set: int) -> int:
        """All one-step extensions tail·p + b of windows in the set."""
        t = self.tails(window_set)
        if self.p == 2:
            s = _spread_bits(t)
            return s | (s << 1)
        out = 0
        for rest in _iter_bits(t):
            out |= ((1 << self.p) - 1) << (rest * self.p)
        return out

    def heads_reaching(self, window_set: int) -> int:
        """Windows with at least one successor inside the given set."""
        if self.p == 2:
            collapsed = _even_bits(window_set | (window_set >> 1)) & self.half_mask
        else:
            collapsed = 0
            for v in _iter_bits(window_set):
                collapsed |= 1 << (v // self.p)
        out = 0
        for a in range(self.p):
            out |= collapsed << (a * self.half)
        return out


@dataclass(frozen=True)
class SolveResult:
    word: str
    solved: bool
    failed_at: int | None
    length: int

    @property
    def verdict(self) -> str:
        if self.solved:
            return f"solved length={self.length} verified"
        return f"exhausted at position {self.failed_at}"


def _reachable_tables(instance: AvoidanceInstance, count: int, tab: _Tables) -> tuple[list[int], int | None]:
    """R_n for n < count; second value is the first empty position, if any."""
    r = [tab.full_mask & ~instance.forbidden_mask(0)]
    if r[0] == 0:
        return r, 0
    for n in range(1, count):
        nxt = tab.successors(r[-1]) & ~instance.forbidden_mask(n)
        r.append(nxt)
        if nxt == 0:
            return r, n
    return r, None


def solve_prefix(instance: AvoidanceInstance, length: int,
                 lookahead: int | None = None) -> SolveResult:
    """Lex-least x of the given length avoiding every A_n window.

    ``lookahead=None`` (the default) runs a full backward viability pass, so
    the greedy choice can never dead-end while the reachability tables stay
    nonempty; an integer lookahead H keeps only windows extendable H more
    steps, the bounded-foresight reading.  The output is re-verified by an
    independent sliding scan.
    """
    p, m = instance.p, instance.m
    if length < 1:
        raise InvalidArgumentError("length must be positive")
    if length < m:
        return SolveResult("0" * length, True, None, length)
    tab = _Tables(p, m)
    count = length - m + 1
    guaranteed = m >= 4 * instance.l + 2
    r, empty_at = _reachable_tables(instance, count, tab)
    if empty_at is not None:
        if guaranteed:
            raise InvariantViolation(
                f"reachability emptied at n={empty_at} despite m >= 4l+2"
            )
        return SolveResult("", False, empty_at, length)

    if lookahead is None:
        viable = [0] * count
        viable[-1] = r[-1]
        for n in range(count - 2, -1, -1):
            viable[n] = r[n] & tab.heads_reaching(viable[n + 1])
            if viable[n] == 0:
                if guaranteed:
                    raise InvariantViolation(f"backward viability emptied at n={n}")
                return SolveResult("", False, n, length)

        def allowed(n: int) -> int:
            return viable[n]
    else:
        if lookahead < 1:
            raise InvalidArgumentError("lookahead must be positive")

        def allowed(n: int) -> int:
            stop = min(n + lookahead, count - 1)
            mask = r[stop]
            for back in range(stop - 1, n - 1, -1):
                mask = r[back] & tab.heads_reaching(mask)
            return mask

    first = allowed(0)
    if first == 0:
        return SolveResult("", False, 0, length)
    window = (first & -first).bit_length() - 1
    digits = [value_word(window, p, m)]
    for n in range(1, count):
        base = (window % tab.half) * p
        step = None
        mask = allowed(n)
        for b in range(p):
            if (mask >> (base + b)) & 1:
                step = b
                break
        if step is None:
            return SolveResult("", False, n, length)
        window = base + step
        digits.append(chr(ord("0") + step))
    x = "".join(digits)
    bad = verify_word(instance, x)
    if bad is not None:
        raise InvariantViolation(f"solver output fails the sliding scan at {bad}")
    return SolveResult(x, True, None, length)


def verify_word(instance: AvoidanceInstance, x: str) -> int | None:
    """Independent sliding scan; the first violating position, or None."""
    p, m = instance.p, instance.m
    for n in range(len(x) - m + 1):
        if word_value(x[n:n + m], p) in instance.forbidden(n):
            return n
    return None


@dataclass(frozen=True)
class Bookkeeping:
    """The proof-side tables: B_n, C_n, and the prefix decomposition D_{n,k}.

    B_n: windows with no valid configuration on [0, n+m-1] ending in them.
    C_n: (m-1)-words c with every one-digit prepension inside B_n.
    D_{n,k}: length-k prefixes y with the whole subtree y·Λ^{m-1-k} inside
    C_n but the first-digit-dropped subtree not; D_n partitions C_n.
    """

    p: int
    m: int
    b: tuple[frozenset[int], ...]
    c: tuple[frozenset[int], ...]
    d: tuple[tuple[frozenset[int], ...], ...]  # d[n][k]: values of length-k prefixes

    def b_words(self, n: int) -> tuple[str, ...]:
        return tuple(sorted(value_word(v, self.p, self.m) for v in self.b[n]))

    def c_words(self, n: int) -> tuple[str, ...]:
        return tuple(sorted(value_word(v, self.p, self.m - 1) for v in self.c[n]))

    def d_words(self, n: int, k: int) -> tuple[str, ...]:
        return tuple(sorted(value_word(v, self.p, k) for v in self.d[n][k]))


def bookkeeping(instance: AvoidanceInstance, count: int) -> Bookkeeping:
    """Run the B/C/D recursion for positions 0..count-1.

    B_0 is exactly A_0 (position 0 has no past); then
    B_{n+1} = A_{n+1} ∪ (∪_{c in C_n} cΛ_p).
    """
    if count < 1:
        raise InvalidArgumentError("count must be positive")
    p, m = instance.p, instance.m
    half = p ** (m - 1)
    b_tables: list[frozenset[int]] = []
    c_tables: list[frozenset[int]] = []
    d_tables: list[tuple[frozenset[int], ...]] = []
    current_b = instance.forbidden(0)
    for n in range(count):
        if n > 0:
            grown = set(instance.forbidden(n))
            for c in c_tables[-1]:
                grown.update(c * p + digit for digit in range(p))
            current_b = frozenset(grown)
        b_tables.append(current_b)
        c_set = frozenset(
            c for c in {v % half for v in current_b}
            if all((a * half + c) in current_b for a in range(p))
        )
        c_tables.append(c_set)
        # full-subtree sets: S_k = length-k prefixes whose subtree lies in C_n
        subtree: list[frozenset[int]] = [frozenset()] * m
        subtree[m - 1] = c_set
        for k in range(m - 1, 0, -1):
            parents = {v // p for v in subtree[k]}
            subtree[k - 1] = frozenset(
                y for y in parents if all((y * p + a) in subtree[k] for a in range(p))
            )
        d_by_len: list[frozenset[int]] = []
        for k in range(m):
            if k == 0:
                d_by_len.append(frozenset({0}) if 0 in subtree[0] else frozenset())
                continue
            members = frozenset(
                y for y in subtree[k] if (y % (p ** (k - 1))) not in subtree[k - 1]
            )
            d_by_len.append(members)
        d_tables.append(tuple(d_by_len))
    return Bookkeeping(p, m, tuple(b_tables), tuple(c_tables), tuple(d_tables))


@dataclass(frozen=True)
class BoundsReport:
    positions_checked: int
    max_c_size: int
    duality_checked: bool


def verify_bounds(bk: Bookkeeping, instance: AvoidanceInstance) -> BoundsReport:
    """Check every counting bound from the avoidance argument.

    |C_n| <= (n+1)l/p; |D_{n,m-k}| <= 2^{k-1} l; the one-step claim
    |D_{n+1,k}| <= l + sum_{j>k} |D_{n,j}|; D_n partitions C_n; and B_n is
    exactly the complement of the forward-reachable windows.  Violations
    raise InvariantViolation naming the position and bound.
    """
    p, m, l = instance.p, instance.m, instance.l
    count = len(bk.b)
    tab = _Tables(p, m)
    r, empty_at = _reachable_tables(instance, count, tab)
    for n in range(count):
        if p * len(bk.c[n]) > (n + 1) * l:
            raise InvariantViolation(f"|C_{n}| bound fails: {len(bk.c[n])} > ({n + 1}){l}/{p}")
        for k in range(1, m):
            if len(bk.d[n][m - k]) > 2 ** (k - 1) * l:
                raise InvariantViolation(
                    f"|D_{n},{m - k}| bound fails: {len(bk.d[n][m - k])} > 2^{k - 1}·{l}"
                )
        if n + 1 < count:
            for k in range(m):
                budget_k = l + sum(len(bk.d[n][j]) for j in range(k + 1, m))
                if len(bk.d[n + 1][k]) > budget_k:
                    raise InvariantViolation(f"D-recursion claim fails at (n+1={n + 1}, k={k})")
        # D_n partitions C_n
        covered: set[int] = set()
        total = 0
        for k in range(m):
            width = p ** (m - 1 - k)
            for y in bk.d[n][k]:
                covered.update(range(y * width, (y + 1) * width))
                total += width
        if covered != set(bk.c[n]) or total != len(bk.c[n]):
            raise InvariantViolation(f"D_{n} does not partition C_{n}")
        # duality with forward reachability
        reach_mask = r[n] if n < len(r) and (empty_at is None or n <= empty_at) else 0
        b_mask = 0
        for v in bk.b[n]:
            b_mask |= 1 << v
        if reach_mask & b_mask or (reach_mask | b_mask) != tab.full_mask:
            raise InvariantViolation(f"B_{n} is not the reachability complement")
        if m >= 4 * l + 2 and len(bk.b[n]) == p ** m:
            raise InvariantViolation(f"B_{n} saturated despite m >= 4l+2")
    return BoundsReport(
        positions_checked=count,
        max_c_size=max(len(c) for c in bk.c),
        duality_checked=True,
    )


@dataclass(frozen=True)
class ExplorerRow:
    m: int
    success_rate: Fraction
    first_failures: tuple[int | None, ...]


@dataclass(frozen=True)
class ExplorerReport:
    p: int
    l: int
    trials: int
    seed: int
    target_length: int
    rows: tuple[ExplorerRow, ...]

    def to_csv(self) -> str:
        lines = ["m,success_rate,first_failures"]
        for row in self.rows:
            fails = ";".join("-" if f is None else str(f) for f in row.first_failures)
            lines.append(f"{row.m},{row.success_rate},{fails}")
        return "\n".join(lines) + "\n"


def _trial_seed(seed: int, m: int, trial: int) -> int:
    digest = hashlib.sha256(f"{seed}:{m}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def minimal_m_explorer(p: int, l: int, trials: int, seed: int,
                       target_length: int = 500) -> ExplorerReport:
    """Empirical solvability rates for m = 1 .. 4l+2 on seeded instances.

    The m = 4l+2 row must come out at rate 1; anything else is a bug trap.
    Rates below that threshold are empirics only, never claimed bounds.
    """
    if trials < 1:
        raise InvalidArgumentError("trials must be positive")
    rows = []
    for m in range(1, 4 * l + 3):
        failures: list[int | None] = []
        wins = 0
        for trial in range(trials):
            if l > p ** m:
                failures.append(0)
                continue
            instance = AvoidanceInstance.generate(
                p, m, l, max(target_length - m + 1, 1), _trial_seed(seed, m, trial)
            )
            result = solve_prefix(instance, target_length)
            if result.solved:
                wins += 1
                failures.append(None)
            else:
                failures.append(result.failed_at)
        rate = Fraction(wins, trials)
        if m == 4 * l + 2 and rate != 1:
            raise InvariantViolation("the guaranteed row m = 4l+2 failed a trial")
        rows.append(ExplorerRow(m, rate, tuple(failures)))
    return ExplorerReport(p, l, trials, seed, target_length, tuple(rows))
