"""Finite windows of subsets of the nonnegative integers.

Everything here is a finite truncation: a ``SubsetWindow`` lists the elements
of a set below an explicit horizon, and all densities and family predicates
are computed over that window and labelled as estimates.  Ratios use exact
``Fraction`` arithmetic; no floating point enters any predicate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    InvalidArgumentError,
    InvariantViolation,
    SizeLimitError,
)

MAX_IP_GENERATORS = 24


@dataclass(frozen=True, order=True)
class SubsetWindow:
    """A strictly increasing tuple of integers in [0, horizon)."""

    elements: tuple[int, ...]
    horizon: int

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if self.horizon < 0:
            raise InvalidArgumentError("horizon must be nonnegative")
        prev = -1
        for e in self.elements:
            if e <= prev:
                raise InvalidArgumentError("elements must be strictly increasing")
            prev = e
        if self.elements and self.elements[-1] >= self.horizon:
            raise InvalidArgumentError("all elements must be below the horizon")
        if self.elements and self.elements[0] < 0:
            raise InvalidArgumentError("elements must be nonnegative")

    @classmethod
    def from_iterable(cls, elements, horizon: int | None = None) -> "SubsetWindow":
        elems = tuple(sorted(set(elements)))
        if horizon is None:
            horizon = elems[-1] + 1 if elems else 0
        return cls(elems, horizon)

    @classmethod
    def arithmetic(cls, step: int, horizon: int, offset: int = 0) -> "SubsetWindow":
        if step < 1 or offset < 0:
            raise InvalidArgumentError("need step >= 1 and offset >= 0")
        return cls(tuple(range(offset, horizon, step)), horizon)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, n: int) -> bool:
        return n in self.as_set()

    def __iter__(self):
        return iter(self.elements)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def count_below(self, n: int) -> int:
        """|S ∩ [0, n)|."""
        return sum(1 for e in self.elements if e < n)

    def gaps(self) -> tuple[int, ...]:
        """Differences between consecutive elements."""
        es = self.elements
        return tuple(es[i + 1] - es[i] for i in range(len(es) - 1))

    def translate(self, m: int) -> "SubsetWindow":
        """S + m, restricted to nonnegative integers; horizon shifts with it."""
        elems = tuple(e + m for e in self.elements if e + m >= 0)
        return SubsetWindow(elems, max(self.horizon + m, (elems[-1] + 1) if elems else 0))

    def to_text(self) -> str:
        return f"{self.horizon};" + ",".join(str(e) for e in self.elements)

    @classmethod
    def from_text(cls, text: str) -> "SubsetWindow":
        text = text.strip()
        if ";" not in text:
            raise InvalidArgumentError(f"bad SubsetWindow text: {text!r}")
        head, _, tail = text.partition(";")
        elems = tuple(int(t) for t in tail.split(",") if t != "")
        return cls(elems, int(head))


@dataclass(frozen=True)
class FamilySpec:
    """One member description of a family of subsets of Z_+.

    Kinds: ``explicit`` (a literal window), ``arithmetic`` (kZ_+ + offset,
    with the regular-syndetic search semantics downstream), ``cofinite``
    (everything from a threshold on), ``ip`` (finite sums of the generators
    over distinct indices) and ``syndetic`` (a gap bound used as a predicate,
    not a generator).
    """

    kind: str
    window: SubsetWindow | None = None
    step: int = 0
    offset: int = 0
    threshold: int = 0
    generators: tuple[int, ...] = ()
    gap_bound: int = 0

    def __post_init__(self):
        if self.kind not in {"explicit", "arithmetic", "cofinite", "ip", "syndetic"}:
            raise InvalidArgumentError(f"unknown family kind {self.kind!r}")
        if self.kind == "arithmetic" and (self.step < 1 or self.offset < 0):
            raise InvalidArgumentError("arithmetic family needs step >= 1, offset >= 0")
        if self.kind == "ip" and (not self.generators or any(g < 1 for g in self.generators)):
            raise InvalidArgumentError("ip family needs positive generators")
        if self.kind == "syndetic" and self.gap_bound < 1:
            raise InvalidArgumentError("syndetic family needs gap bound >= 1")
        if self.kind == "explicit" and self.window is None:
            raise InvalidArgumentError("explicit family needs a window")

    @classmethod
    def explicit(cls, window: SubsetWindow) -> "FamilySpec":
        return cls("explicit", window=window)

    @classmethod
    def arithmetic(cls, step: int, offset: int = 0) -> "FamilySpec":
        return cls("arithmetic", step=step, offset=offset)

    @classmethod
    def cofinite(cls, threshold: int) -> "FamilySpec":
        return cls("cofinite", threshold=threshold)

    @classmethod
    def ip(cls, generators) -> "FamilySpec":
        return cls("ip", generators=tuple(generators))

    @classmethod
    def syndetic_gap(cls, bound: int) -> "FamilySpec":
        return cls("syndetic", gap_bound=bound)

    def prefix(self, horizon: int) -> SubsetWindow:
        """The canonical generating set of this family, cut at ``horizon``."""
        if self.kind == "explicit":
            w = self.window
            return SubsetWindow(tuple(e for e in w.elements if e < horizon), min(w.horizon, horizon))
        if self.kind == "arithmetic":
            return SubsetWindow.arithmetic(self.step, horizon, self.offset)
        if self.kind == "cofinite":
            return SubsetWindow(tuple(range(self.threshold, horizon)), horizon)
        if self.kind == "ip":
            full = ip_generate(self.generators)
            return SubsetWindow(tuple(e for e in full.elements if e < horizon), horizon)
        raise InvalidArgumentError(f"family kind {self.kind!r} does not generate a set")

    def to_text(self) -> str:
        if self.kind == "explicit":
            return f"explicit:{self.window.to_text()}"
        if self.kind == "arithmetic":
            return f"arith:{self.step},{self.offset}"
        if self.kind == "cofinite":
            return f"cofinite:{self.threshold}"
        if self.kind == "ip":
            return "ip:" + "+".join(str(g) for g in self.generators)
        return f"syndetic:{self.gap_bound}"

    @classmethod
    def from_text(cls, text: str) -> "FamilySpec":
        text = text.strip()
        head, _, tail = text.partition(":")
        if head == "explicit":
            return cls.explicit(SubsetWindow.from_text(tail))
        if head == "arith":
            parts = tail.split(",")
            step = int(parts[0])
            offset = int(parts[1]) if len(parts) > 1 else 0
            return cls.arithmetic(step, offset)
        if head == "cofinite":
            return cls.cofinite(int(tail))
        if head == "ip":
            return cls.ip(int(g) for g in tail.split("+"))
        if head == "syndetic":
            return cls.syndetic_gap(int(tail))
        raise InvalidArgumentError(f"bad FamilySpec text: {text!r}")


@dataclass(frozen=True)
class DensityReport:
    """Window-grid density estimates for a SubsetWindow.

    ``lower`` and ``upper`` are the min/max of the prefix ratios
    |S ∩ [0, n)| / n taken over n in {w, 2w, ...} up to the horizon
    (w = window_length); ``banach_upper`` is the best ratio over all
    intervals of length exactly w inside the window.  These are finite-scale
    surrogates of the limit densities, not the limits themselves.
    """

    lower: Fraction
    upper: Fraction
    banach_upper: Fraction
    window_length: int

    def __post_init__(self):
        if not (0 <= self.lower <= self.upper <= 1):
            raise InvariantViolation("density ordering violated")
        if self.banach_upper < self.upper:
            raise InvariantViolation("banach_upper must dominate upper")


def densities(s: SubsetWindow, window_length: int) -> DensityReport:
    """Density estimates for ``s`` using prefix ratios on the window grid.

    Prefix ratios are evaluated at n = window_length, 2*window_length, ...;
    evaluating at every n would let a prefix ratio exceed every length-w
    interval ratio, breaking banach_upper >= upper.
    """
    if window_length < 1 or window_length > s.horizon:
        raise InvalidArgumentError("window_length must be in [1, horizon]")
    elems = s.elements
    grid_ratios = []
    count = 0
    idx = 0
    for n in range(window_length, s.horizon + 1, window_length):
        while idx < len(elems) and elems[idx] < n:
            idx += 1
        count = idx
        grid_ratios.append(Fraction(count, n))
    member = s.as_set()
    window_count = sum(1 for e in elems if e < window_length)
    best = Fraction(window_count, window_length)
    for start in range(1, s.horizon - window_length + 1):
        if (start - 1) in member:
            window_count -= 1
        if (start + window_length - 1) in member:
            window_count += 1
        ratio = Fraction(window_count, window_length)
        if ratio > best:
            best = ratio
    return DensityReport(
        lower=min(grid_ratios),
        upper=max(grid_ratios),
        banach_upper=best,
        window_length=window_length,
    )


@dataclass(frozen=True)
class FamilyPredicates:
    syndetic_with_gap: bool
    thick_up_to: bool
    pws_witness: tuple[tuple[int, int], int] | None


def family_predicates(s: SubsetWindow, gap_bound: int, thick_depth: int) -> FamilyPredicates:
    """Finite-scale syndetic / thick / piecewise-syndetic checks.

    Only gaps visible inside the window count; the trailing stretch up to the
    horizon is not treated as a gap since the set may continue past it.
    """
    if gap_bound < 1 or thick_depth < 1 or thick_depth > s.horizon:
        raise InvalidArgumentError("need gap_bound >= 1 and 1 <= thick_depth <= horizon")
    elems = s.elements
    syndetic = bool(elems) and elems[0] <= gap_bound and all(g <= gap_bound for g in s.gaps())

    thick = False
    run = 0
    prev = None
    for e in elems:
        run = run + 1 if prev is not None and e == prev + 1 else 1
        prev = e
        if run >= thick_depth:
            thick = True
            break

    witness = None
    i = 0
    while i < len(elems):
        j = i
        max_gap = 0
        while j + 1 < len(elems) and elems[j + 1] - elems[j] <= gap_bound:
            max_gap = max(max_gap, elems[j + 1] - elems[j])
            j += 1
        span = elems[j] - elems[i] + 1
        if span >= thick_depth:
            witness = ((elems[i], elems[j] + 1), max(max_gap, 1))
            break
        i = j + 1
    return FamilyPredicates(syndetic, thick, witness)


def ip_generate(generators) -> SubsetWindow:
    """All finite sums of the generators over distinct indices."""
    gens = tuple(generators)
    if not 1 <= len(gens) <= MAX_IP_GENERATORS:
        raise SizeLimitError(f"need between 1 and {MAX_IP_GENERATORS} generators")
    if any(g < 1 for g in gens):
        raise InvalidArgumentError("generators must be positive")
    sums: set[int] = set()
    for g in gens:
        sums |= {g} | {s + g for s in sums}
    return SubsetWindow.from_iterable(sums)


@dataclass(frozen=True)
class BlockWitness:
    """Translates b_1 <= ... <= b_depth with b_j + {p_1..p_j} inside S."""

    translates: tuple[int, ...]
    failed_at: int | None = None

    @property
    def found(self) -> bool:
        return self.failed_at is None


def block_witness(s: SubsetWindow, f: SubsetWindow, depth: int) -> BlockWitness:
    """Search translated growing prefixes of ``f`` inside ``s``.

    Translates are scanned upward starting from the previous b_j (and from
    -p_1 for j = 1, so negative shifts are allowed as long as b_j + p_1 >= 0),
    which enforces monotonicity.  Failure reports the first j with no
    translate inside the horizon; that is inconclusive at this scale, not a
    disproof of block-family membership.
    """
    if depth < 1 or depth > len(f.elements):
        raise InvalidArgumentError("depth must be in [1, |F|]")
    ps = f.elements[:depth]
    member = s.as_set()
    out: list[int] = []
    b = -ps[0]
    for j in range(1, depth + 1):
        prefix = ps[:j]
        found = None
        cand = b
        while cand + prefix[-1] < s.horizon:
            if all(cand + p in member for p in prefix):
                found = cand
                break
            cand += 1
        if found is None:
            return BlockWitness(tuple(out), failed_at=j)
        out.append(found)
        b = found
    return BlockWitness(tuple(out))


def difference_set(f: SubsetWindow) -> SubsetWindow:
    """All positive pairwise differences of elements of ``f``."""
    if not f.elements:
        raise InvalidArgumentError("difference_set needs a nonempty window")
    es = f.elements
    diffs = {b - a for a, b in itertools.combinations(es, 2)}
    return SubsetWindow(tuple(sorted(diffs)), es[-1] + 1)


@dataclass(frozen=True)
class TranslateReport:
    """Best translate of F into S over an interval, with the lemma's guarantee."""

    p: int
    count: int
    success: bool
    density: Fraction
    guarantee_applies: bool
    required_length: int | None


def find_translate(
    s: SubsetWindow, interval: tuple[int, int], f: SubsetWindow, k: int
) -> TranslateReport:
    """Exhaustive scan for p maximizing |S ∩ I ∩ (F + p)|.

    When the density d = |S ∩ I| / |I| satisfies d·|F| > k, the minimal N
    with d·|F| / (1 + max F / N) >= k is reported; the scan is then
    guaranteed to reach count >= k whenever |I| >= N, and a shortfall under
    that guarantee is treated as an internal bug.
    """
    lo, hi = interval
    if not f.elements or hi <= lo:
        raise InvalidArgumentError("need a nonempty interval and a nonempty F")
    if lo < 0 or hi > s.horizon:
        raise InvalidArgumentError("interval must sit inside [0, horizon)")
    if k < 1:
        raise InvalidArgumentError("k must be positive")
    inside = [e for e in s.elements if lo <= e < hi]
    member = frozenset(inside)
    d = Fraction(len(inside), hi - lo)
    max_f = f.elements[-1]
    best_p, best_count = lo - max_f, -1
    for p in range(lo - max_f, hi):
        count = sum(1 for q in f.elements if q + p in member)
        if count > best_count:
            best_p, best_count = p, count
    guarantee = d * len(f.elements) > k
    required = None
    if guarantee:
        # minimal N with d|F|·N >= k(N + max F), i.e. N >= k·maxF / (d|F| - k)
        surplus = d * len(f.elements) - k
        required = max(1, -(-(k * max_f) // surplus)) if max_f else 1
        required = int(required)
        if hi - lo >= required and best_count < k:
            raise InvariantViolation(
                f"translate guarantee failed: |I|={hi - lo} >= N={required} but count={best_count} < {k}"
            )
    return TranslateReport(
        p=best_p,
        count=best_count,
        success=best_count >= k,
        density=d,
        guarantee_applies=guarantee and (hi - lo) >= required,
        required_length=required,
    )


@dataclass(frozen=True)
class SparseBlockSet:
    """Union of translated superincreasing-gap blocks, free of 3-term APs."""

    window: SubsetWindow
    blocks: tuple[tuple[tuple[int, ...], int], ...]


def _least_superincreasing_block(size: int) -> tuple[int, ...]:
    # Lexicographically least {a_1 < ... < a_k} with a_j - a_i > a_i - a_s > 0
    # for all s < i < j; each gap must exceed the whole preceding span.
    block = [1, 2]
    while len(block) < size:
        block.append(block[-1] + (block[-1] - block[0]) + 1)
    return tuple(block[:size])


def has_three_term_ap(values) -> tuple[int, int, int] | None:
    """Return some x < y < z in values with x + z = 2y, or None."""
    vals = sorted(set(values))
    member = set(vals)
    for i, x in enumerate(vals):
        for y in vals[i + 1:]:
            z = 2 * y - x
            if z > y and z in member:
                return (x, y, z)
    return None


def fss_construct(num_blocks: int, growth_factor: int = 3) -> SparseBlockSet:
    """Union of shifted blocks from the superincreasing-gap families.

    Block i is the lexicographically least size-(i+2) block with strictly
    superincreasing gaps; shifts follow t_1 = 0, t_{i+1} = g·(t_i + max A_i).
    For g >= 3 the result contains no 3-term arithmetic progression, which is
    re-checked by brute force before returning.
    """
    if num_blocks < 0 or num_blocks > 20:
        raise InvalidArgumentError("num_blocks must be in [0, 20]")
    if growth_factor < 3:
        raise InvalidArgumentError("growth_factor must be at least 3")
    blocks: list[tuple[tuple[int, ...], int]] = []
    t = 0
    elems: set[int] = set()
    for i in range(num_blocks):
        block = _least_superincreasing_block(i + 3)
        blocks.append((block, t))
        elems |= {a + t for a in block}
        t = growth_factor * (t + max(block))
    ap = has_three_term_ap(elems)
    if ap is not None:
        raise InvariantViolation(f"3-term AP {ap} in fss_construct output")
    window = SubsetWindow.from_iterable(elems) if elems else SubsetWindow((), 0)
    return SparseBlockSet(window, tuple(blocks))


@dataclass(frozen=True)
class SparseAntiSet:
    """Set F with |F ∩ (S + p)| <= 2 for every translate p in the scan range."""

    window: SubsetWindow
    complete: bool
    max_overlap: int


def max_translate_overlap(f_elems, s: SubsetWindow) -> int:
    """Brute-force max over p of |F ∩ (S + p)|."""
    fs = sorted(f_elems)
    if not fs or not s.elements:
        return 0
    best = 0
    fset = set(fs)
    for p in range(fs[0] - s.elements[-1], fs[-1] - s.elements[0] + 1):
        count = sum(1 for a in s.elements if a + p in fset)
        if count > best:
            best = count
    return best


def anti_ss_sparse(s: SubsetWindow, size: int) -> SparseAntiSet:
    """Greedy F = {b_1 < b_2 < ...} meeting every translate of S in <= 2 points.

    Requires the consecutive gaps of S to be strictly increasing (the finite
    stand-in for gaps tending to infinity).  Each candidate b is admitted only
    if no translate of S already containing two members of F also contains b;
    the result is re-verified by a full translate scan.
    """
    if size < 1:
        raise InvalidArgumentError("size must be positive")
    gaps = s.gaps()
    if any(gaps[i + 1] <= gaps[i] for i in range(len(gaps) - 1)):
        raise InvalidArgumentError("S must have strictly increasing consecutive gaps")
    f: list[int] = []
    fset: set[int] = set()
    for b in range(s.horizon):
        ok = True
        for a in s.elements:
            p = b - a
            count = sum(1 for q in s.elements if q + p in fset)
            if count >= 2:
                ok = False
                break
        if ok:
            f.append(b)
            fset.add(b)
            if len(f) == size:
                break
    overlap = max_translate_overlap(f, s)
    if overlap > 2:
        raise InvariantViolation("anti_ss_sparse produced a triple coincidence")
    window = SubsetWindow(tuple(f), s.horizon)
    return SparseAntiSet(window, complete=len(f) == size, max_overlap=overlap)
