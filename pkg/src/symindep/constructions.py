"""Generators for the worked examples: the proximal topological-K point and
the full-shift regular-syndetic witness.

The K point is built by a block recursion: starting from A_1 = "10", each
level concatenates the previous block, a zero run, a schedule of marker
blocks read off a driving sequence y over {0,1,2}, and a closing zero run.
Everything about the run (block lengths, the per-level zero-gap bounds, the
marker blocks) is recorded so the two verifiable properties can be checked
after the fact: zero runs of each level recur with bounded gaps, and orbit
cylinders around the point admit sizeable independence sets.

Block lengths grow roughly like l_k * n_k^2, so only small depths are
materializable; the driving sequence's zero-run structure (through l_k)
controls the blow-up.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputTooShortError, InvalidArgumentError, InvariantViolation
from .independence import CylinderTuple, find_independence_set, is_independence_set
from .integer_sets import SubsetWindow
from .subshift import Budget, CylinderSet, Subshift, SubshiftSpec, check_word


@dataclass(frozen=True)
class KExampleParams:
    """Driving data for the K-point recursion.

    ``y``: prefix of a transitive point over {0,1,2}; ``markers[m]`` lists
    the m pairwise-distinct marker words z_{m,1}..z_{m,m}, all of length
    t_m + 1 and starting with 1 or 2; ``phi[k-1]`` is the level-to-marker
    schedule value for level k, with phi(k) <= k; ``depth`` is the number of
    levels to build.
    """

    y: str
    markers: dict[int, tuple[str, ...]]
    phi: tuple[int, ...]
    depth: int

    def __post_init__(self):
        check_word(self.y, 3)
        if self.depth < 1:
            raise InvalidArgumentError("depth must be positive")
        if len(self.phi) < self.depth - 1:
            raise InvalidArgumentError("phi table too short for the requested depth")
        for k, value in enumerate(self.phi, start=1):
            if not 1 <= value <= k:
                raise InvalidArgumentError(f"phi({k}) = {value} violates phi(k) <= k")
        for m, words in self.markers.items():
            if len(words) != m:
                raise InvalidArgumentError(f"marker level {m} needs exactly {m} words")
            if len({w for w in words}) != m:
                raise InvalidArgumentError(f"marker level {m} words must be distinct")
            lengths = {len(w) for w in words}
            if len(lengths) != 1:
                raise InvalidArgumentError(f"marker level {m} words must share a length")
            for w in words:
                check_word(w, 3)
                if w[0] not in "12":
                    raise InvalidArgumentError("markers must start with symbol 1 or 2")
        for k in range(1, self.depth):
            if self.phi[k - 1] not in self.markers:
                raise InvalidArgumentError(f"no markers for scheduled level {self.phi[k - 1]}")

    def t(self, m: int) -> int:
        return len(self.markers[m][0]) - 1

    def f(self, m: int, block: str) -> int:
        """Marker classifier: index j when the block is z_{m,j}, else 0."""
        for j, w in enumerate(self.markers[m], start=1):
            if block == w:
                return j
        return 0


@dataclass(frozen=True)
class KLevel:
    k: int
    a: str
    n: int
    c: tuple[str, ...]  # C_{k,0} .. C_{k,k}
    ell: int | None = None  # zero-gap bound used to build level k+1
    b: int | None = None  # read span 2·ell·n used to build level k+1
    schedule: int | None = None  # phi(k)


@dataclass(frozen=True)
class KPointRun:
    x_prefix: str
    levels: tuple[KLevel, ...]

    def level(self, k: int) -> KLevel:
        return self.levels[k - 1]


def _zero_run_starts(text: str, n: int) -> list[int]:
    """Start positions of 0^n occurrences, via maximal zero runs."""
    starts: list[int] = []
    i = 0
    while i < len(text):
        if text[i] != "0":
            i += 1
            continue
        j = i
        while j < len(text) and text[j] == "0":
            j += 1
        starts.extend(range(i, j - n + 1))
        i = j
    return starts


def _syndetic_bound(starts: list[int], upto: int) -> int | None:
    """Least L with a 0-run start in every length-L window of [0, upto]."""
    relevant = [s for s in starts if s <= upto]
    if not relevant:
        return None
    bound = relevant[0]
    for a, b in zip(relevant, relevant[1:]):
        bound = max(bound, b - a)
    bound = max(bound, upto - relevant[-1])
    return max(bound, 1)


def _level_ell(params: KExampleParams, k: int, n_k: int, t_m: int) -> int:
    """Fixed point of: ell bounds the 0^{n_k} gaps over the window [0, 2·ell·n_k]."""
    starts = _zero_run_starts(params.y, n_k)
    ell = t_m
    for _ in range(64):
        b = 2 * ell * n_k
        if b + t_m + 1 > len(params.y):
            raise InputTooShortError(
                f"y prefix shorter than the level-{k} read span {b + t_m + 1}",
                level=k,
                position=b + t_m,
            )
        observed = _syndetic_bound(starts, b)
        if observed is None:
            raise InvalidArgumentError(
                f"0^{n_k} does not occur in the y prefix (level {k})"
            )
        needed = max(t_m, observed)
        if needed <= ell:
            return ell
        ell = needed
    raise InvalidArgumentError(f"zero-gap bound failed to stabilize at level {k}")


def proximal_k_point(params: KExampleParams) -> KPointRun:
    """Run the block recursion to the requested depth.

    Level 1 is pinned: A_1 = "10", C_{1,0} = "0000", C_{1,1} = "1000".  Each
    later level is A_k, a zero run of n_k, one marker block per read of y
    over the span b_k = 2·ell_k·n_k, and a closing double zero run; the
    length identity n_{k+1} = 4 n_k + (b_k - t_m + 1)·2 n_m is re-checked at
    every level.
    """
    a = "10"
    levels: list[KLevel] = []

    def c_blocks(word: str, k: int) -> tuple[str, ...]:
        n = len(word)
        blocks = ["0" * (2 * n)]
        for i in range(1, k + 1):
            blocks.append(word[i - 1:] + "0" * (i - 1) + "0" * n)
        return tuple(blocks)

    current_c = c_blocks(a, 1)
    levels.append(KLevel(1, a, len(a), current_c))
    all_c: dict[int, tuple[str, ...]] = {1: current_c}

    for k in range(1, params.depth):
        m = params.phi[k - 1]
        t_m = params.t(m)
        n_k = len(a)
        n_m = len(levels[m - 1].a)
        ell = _level_ell(params, k, n_k, t_m)
        b = 2 * ell * n_k
        levels[k - 1] = KLevel(
            k, levels[k - 1].a, levels[k - 1].n, levels[k - 1].c, ell, b, m
        )
        pieces = [a, "0" * n_k]
        for i in range(b - t_m + 1):
            block = params.y[i:i + t_m + 1]
            pieces.append(all_c[m][params.f(m, block)])
        pieces.append("0" * (2 * n_k))
        grown = "".join(pieces)
        expected = n_k + n_k + (b - t_m + 1) * 2 * n_m + 2 * n_k
        if len(grown) != expected:
            raise InvariantViolation(
                f"length accounting fails at level {k + 1}: {len(grown)} != {expected}"
            )
        a = grown
        current_c = c_blocks(a, k + 1)
        all_c[k + 1] = current_c
        levels.append(KLevel(k + 1, a, len(a), current_c))
    return KPointRun(a, tuple(levels))


@dataclass(frozen=True)
class ZeroGapReport:
    level: int
    run_length: int
    bound: int
    first_start: int
    max_gap: int
    passed: bool
    first_violation: int | None


def verify_syndetic_zeros(run: KPointRun) -> tuple[ZeroGapReport, ...]:
    """Check that 0^{n_k} recurs in the point with gaps at most 2 b_k.

    The stretch after the final occurrence is boundary-truncated and not
    counted.  Levels without a recorded b_k (the last one built) are skipped.
    """
    x = run.x_prefix
    reports = []
    for level in run.levels:
        if level.b is None:
            continue
        bound = 2 * level.b
        starts = _zero_run_starts(x, level.n)
        if not starts:
            reports.append(ZeroGapReport(level.k, level.n, bound, -1, -1, False, 0))
            continue
        max_gap = starts[0]
        violation = None
        if starts[0] > bound:
            violation = 0
        prev = starts[0]
        for s in starts[1:]:
            gap = s - prev
            max_gap = max(max_gap, gap)
            if gap > bound and violation is None:
                violation = prev
            prev = s
        reports.append(
            ZeroGapReport(
                level.k, level.n, bound, starts[0], max_gap, violation is None, violation
            )
        )
    return tuple(reports)


@dataclass(frozen=True)
class IeWindowReport:
    found: bool
    level_used: int | None
    witness: tuple[int, ...]
    approximate: bool = True


def verify_ie_window(run: KPointRun, j: int, target_size: int, horizon: int) -> IeWindowReport:
    """Search an independence set for the orbit cylinders around the point.

    Uses the first level m > j as in the construction: the targets are the
    cylinders [sigma^i(A_m) 0^i] for i < j, taken in the orbit closure of
    the built prefix.  Only size-``target_size`` existence is claimed, and
    only up to this prefix (the language is approximate by nature).
    """
    if j < 1:
        raise InvalidArgumentError("need at least one cylinder (j >= 1)")
    if target_size == 0:
        return IeWindowReport(True, None, ())
    if j + 1 > len(run.levels):
        raise InvalidArgumentError(f"no built level exceeds j = {j}")
    m = j + 1
    a_m = run.level(m).a
    bases = tuple(a_m[i:] + "0" * i for i in range(j))
    spec = SubshiftSpec("orbit", 2, prefix=run.x_prefix)
    budget = Budget(language_cap=horizon + len(a_m) + 1)
    x = Subshift(spec, budget)
    t = CylinderTuple(x, tuple(frozenset({b}) for b in bases))
    witness = find_independence_set(t, range(horizon), target_size)
    if witness is None:
        return IeWindowReport(False, m, ())
    return IeWindowReport(True, m, witness)


@dataclass(frozen=True)
class BernoulliWitness:
    step: int
    verified_window: SubsetWindow


def bernoulli_rs_witness(x: Subshift, targets, multiples: int = 4) -> BernoulliWitness:
    """On a full shift, cylinders on coordinates [0, k) admit kN as an
    independence set; returns k and spot-verifies the first few multiples."""
    if x.kind != "full":
        raise InvalidArgumentError("the regular-syndetic witness needs a full shift")
    t = CylinderTuple.of(x, *targets)
    k = t.max_base_len
    window = SubsetWindow(tuple(k * i for i in range(1, multiples + 1)), k * multiples + 1)
    check = is_independence_set(t, window)
    if not check.independent:
        raise InvariantViolation("full-shift multiples failed the independence check")
    return BernoulliWitness(k, window)


def _grow_until_it_runs(markers, phi, depth: int) -> KExampleParams:
    head = "100100100100"
    tail = 1 << 12
    for _ in range(24):
        params = KExampleParams(head + "0" * tail, markers, phi, depth)
        try:
            proximal_k_point(params)
        except InputTooShortError:
            tail *= 2
            continue
        return params
    raise InvariantViolation("toy driving sequence failed to stabilize")


def toy_k_params(depth: int) -> KExampleParams:
    """A small driving sequence: a few level-1 marker reads, then zeros.

    The marker head makes the first-level reads non-degenerate; the long
    zero tail keeps the per-level gap bounds (and hence the block sizes)
    materializable at depth 4.  The y prefix is grown until every scheduled
    read fits.
    """
    return _grow_until_it_runs({1: ("10",)}, (1,) * max(depth - 1, 1), depth)


def toy_marker_params() -> KExampleParams:
    """A depth-3 run whose level-2 block recurs in the point.

    Scheduling the two-marker level once (phi = 1, 2) inserts copies of A_2
    into A_3, which is what the orbit-cylinder independence search needs;
    deeper levels with this schedule would not be materializable.
    """
    return _grow_until_it_runs({1: ("10",), 2: ("10", "20")}, (1, 2), 3)
