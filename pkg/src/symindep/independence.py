"""Independence sets for tuples of cylinder sets, and what they bound.

An independence set for targets (A_1, ..., A_k) is a set F of times such
that every assignment of targets to times in F is realized by some point of
the subshift; for cylinder targets it is enough to check the full assignment
set on F itself, since restricting to a subset only removes constraints (the
reduction is property-tested against the literal definition).

The workhorse is a frontier walk over absolute positions: a map from partial
assignments to the set of automaton states that can realize them.  Branch at
each member of F, run free in between, and a missing assignment at the end is
a refutation.  Subshifts without a transition graph (substitution, orbit
closures) are handled by projecting the factor language instead.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    HorizonExhaustedError,
    InvalidArgumentError,
    InvariantViolation,
    SizeLimitError,
    UnsupportedOperationError,
)
from .integer_sets import FamilySpec, SubsetWindow, ip_generate
from .subshift import CylinderSet, Subshift, TransitionGraph, is_mixing_window

Pattern = tuple[int, ...]
_State = tuple[str, frozenset[frozenset[str]]]


@dataclass(frozen=True)
class CylinderTuple:
    """Targets for independence queries: unions of offset-0 cylinders.

    Each target is normalized to a set of equal-length base words by
    extending shorter bases with all their allowed continuations.
    """

    subshift: Subshift
    targets: tuple[frozenset[str], ...]

    def __post_init__(self):
        if not self.targets:
            raise InvalidArgumentError("need at least one target")
        for words in self.targets:
            if not words:
                raise InvalidArgumentError("empty target in cylinder tuple")
            if len({len(w) for w in words}) != 1:
                raise InvalidArgumentError("target bases must share a length")

    @classmethod
    def of(cls, x: Subshift, *bases) -> "CylinderTuple":
        """Build from base words / iterables of base words, one per target."""
        targets = []
        for item in bases:
            words = (item,) if isinstance(item, str) else tuple(item)
            length = max(len(w) for w in words)
            normalized: set[str] = set()
            for w in words:
                if not CylinderSet(w).is_nonempty(x):
                    raise InvalidArgumentError(f"target base {w!r} is not allowed")
                if len(w) == length:
                    normalized.add(w)
                else:
                    normalized.update(v for v in x.language(length) if v.startswith(w))
            targets.append(frozenset(normalized))
        return cls(x, tuple(targets))

    @property
    def k(self) -> int:
        return len(self.targets)

    @property
    def max_base_len(self) -> int:
        return max(len(next(iter(words))) for words in self.targets)


class _Frontier:
    """Assignment-pattern frontier for a transition graph, at one position."""

    __slots__ = ("graph", "pos", "data")

    def __init__(self, graph: TransitionGraph, pos: int, data: dict[Pattern, frozenset[_State]]):
        self.graph = graph
        self.pos = pos
        self.data = data

    @classmethod
    def start(cls, graph: TransitionGraph) -> "_Frontier":
        return cls(graph, 0, {(): frozenset({("", frozenset())})})

    def advanced(self, steps: int) -> "_Frontier":
        graph = self.graph
        data = self.data
        for _ in range(steps):
            grown: dict[Pattern, set[_State]] = {}
            for pattern, states in data.items():
                out: set[_State] = set()
                for loc, obs in states:
                    for a in graph.letters:
                        loc2 = graph.step(loc, a)
                        if loc2 is None:
                            continue
                        obs2 = set()
                        dead = False
                        for sufs in obs:
                            rem = frozenset(s[1:] for s in sufs if s[0] == a)
                            if not rem:
                                dead = True
                                break
                            if next(iter(rem)) != "":
                                obs2.add(rem)
                        if not dead:
                            out.add((loc2, frozenset(obs2)))
                if out:
                    grown[pattern] = out
            data = {p: frozenset(s) for p, s in grown.items()}
        return _Frontier(graph, self.pos + steps, data)

    def branched(self, targets: tuple[frozenset[str], ...]) -> "_Frontier":
        """Split every pattern across the targets, adding their obligations."""
        grown: dict[Pattern, frozenset[_State]] = {}
        for pattern, states in self.data.items():
            for t, words in enumerate(targets):
                out = set()
                for loc, obs in states:
                    out.add((loc, obs | {words}))
                grown[pattern + (t,)] = frozenset(out)
        return _Frontier(self.graph, self.pos, grown)

    def settled(self, horizon: int) -> dict[Pattern, frozenset[_State]]:
        """Patterns that survive once every pending obligation has resolved."""
        return self.advanced(horizon).data


def _scan_patterns(
    x: Subshift, positions: tuple[int, ...], targets: tuple[frozenset[str], ...]
) -> set[Pattern]:
    lengths = [len(next(iter(words))) for words in targets]
    end = max(pos + max(lengths) for pos in positions)
    found: set[Pattern] = set()
    for w in x.language(end):
        options = []
        for pos in positions:
            hits = tuple(
                t for t, words in enumerate(targets) if w[pos:pos + lengths[t]] in words
            )
            if not hits:
                options = None
                break
            options.append(hits)
        if options:
            found.update(itertools.product(*options))
    return found


def _occurrence_set(x: Subshift, words: frozenset[str]) -> frozenset[int]:
    """Positions in the orbit-closure prefix where one of the words occurs."""
    cache = getattr(x, "_occurrence_cache", None)
    if cache is None:
        cache = {}
        setattr(x, "_occurrence_cache", cache)
    if words not in cache:
        prefix = x.spec.prefix
        length = len(next(iter(words)))
        cache[words] = frozenset(
            i for i in range(len(prefix) - length + 1) if prefix[i:i + length] in words
        )
    return cache[words]


def _orbit_patterns(
    x: Subshift, positions: tuple[int, ...], targets: tuple[frozenset[str], ...]
) -> set[Pattern]:
    """Patterns visible in the generator prefix, via occurrence-set intersection.

    Equivalent to scanning the factor language but never materializes it: a
    pattern is realized iff some window start lies in every shifted
    occurrence set.
    """
    occ = [_occurrence_set(x, words) for words in targets]
    found: set[Pattern] = set()

    def rec(idx: int, starts: frozenset[int] | None, pattern: Pattern) -> None:
        if idx == len(positions):
            found.add(pattern)
            return
        pos = positions[idx]
        for t, hits in enumerate(occ):
            if starts is None:
                narrowed = frozenset(h - pos for h in hits if h >= pos)
            else:
                narrowed = frozenset(s for s in starts if s + pos in hits)
            if narrowed:
                rec(idx + 1, narrowed, pattern + (t,))

    rec(0, None, ())
    return found


def _patterns_for(t: CylinderTuple, positions: tuple[int, ...]) -> set[Pattern]:
    x = t.subshift
    if x.graph() is not None:
        return _graph_patterns(x, positions, t.targets)
    if x.kind == "orbit":
        return _orbit_patterns(x, positions, t.targets)
    return _scan_patterns(x, positions, t.targets)


def _graph_patterns(
    x: Subshift, positions: tuple[int, ...], targets: tuple[frozenset[str], ...]
) -> set[Pattern]:
    frontier = _Frontier.start(x.graph())
    max_len = max(len(next(iter(words))) for words in targets)
    for pos in positions:
        frontier = frontier.advanced(pos - frontier.pos).branched(targets)
    data = frontier.settled(max_len)
    return set(data)


@dataclass(frozen=True)
class IndependenceCheck:
    independent: bool
    positions: tuple[int, ...]
    refuting: Pattern | None = None
    witnesses: dict[Pattern, str] | None = None
    approximate: bool = False


def _check_budget(t: CylinderTuple, size: int) -> None:
    budget = t.subshift.budget
    if t.k ** size > 2 ** budget.max_assignment_positions:
        raise SizeLimitError(
            f"{t.k}^{size} assignments exceed the 2^{budget.max_assignment_positions} budget"
        )


def realizable_patterns(t: CylinderTuple, f: SubsetWindow | tuple[int, ...]) -> set[Pattern]:
    """All target assignments on the positions of ``f`` realized by some point."""
    positions = tuple(f.elements) if isinstance(f, SubsetWindow) else tuple(sorted(f))
    if not positions:
        raise InvalidArgumentError("need at least one position")
    _check_budget(t, len(positions))
    return _patterns_for(t, positions)


def is_independence_set(
    t: CylinderTuple, f: SubsetWindow | tuple[int, ...], *, witnesses: bool = False
) -> IndependenceCheck:
    """Decide F ∈ Ind(A_1..A_k); refutation on failure, realizations on request."""
    positions = tuple(f.elements) if isinstance(f, SubsetWindow) else tuple(sorted(f))
    patterns = realizable_patterns(t, f)
    expected = t.k ** len(positions)
    if len(patterns) == expected:
        wit = None
        if witnesses:
            wit = {
                p: t.subshift.witness(
                    [(pos, t.targets[idx]) for pos, idx in zip(positions, p)]
                )
                for p in sorted(patterns)
            }
        return IndependenceCheck(True, positions, witnesses=wit, approximate=t.subshift.approximate)
    missing = min(p for p in itertools.product(range(t.k), repeat=len(positions)) if p not in patterns)
    return IndependenceCheck(False, positions, refuting=missing, approximate=t.subshift.approximate)


def _independent_subset_search(
    t: CylinderTuple, candidates: tuple[int, ...], size: int
) -> tuple[int, ...] | None:
    """DFS for an independence set of the given size inside the candidates."""
    if size == 0:
        return ()
    graph = t.subshift.graph()
    max_len = t.max_base_len

    if graph is None:
        def extend(chosen: tuple[int, ...], rest: tuple[int, ...]) -> tuple[int, ...] | None:
            if len(chosen) == size:
                return chosen
            for i, q in enumerate(rest):
                if len(chosen) + len(rest) - i < size:
                    return None
                trial = chosen + (q,)
                if len(_patterns_for(t, trial)) == t.k ** len(trial):
                    got = extend(trial, rest[i + 1:])
                    if got is not None:
                        return got
            return None

        return extend((), candidates)

    def extend_graph(
        frontier: _Frontier, chosen: tuple[int, ...], rest: tuple[int, ...]
    ) -> tuple[int, ...] | None:
        if len(chosen) == size:
            return chosen
        for i, q in enumerate(rest):
            if len(chosen) + len(rest) - i < size:
                return None
            fr = frontier.advanced(q - frontier.pos).branched(t.targets)
            alive = fr.settled(max_len)
            if len(alive) == t.k ** (len(chosen) + 1):
                got = extend_graph(fr, chosen + (q,), rest[i + 1:])
                if got is not None:
                    return got
        return None

    return extend_graph(_Frontier.start(graph), (), candidates)


def find_independence_set(
    t: CylinderTuple, candidates, size: int
) -> tuple[int, ...] | None:
    """First independence set of the given size inside the candidate positions."""
    if size < 0:
        raise InvalidArgumentError("size must be nonnegative")
    return _independent_subset_search(t, tuple(sorted(candidates)), size)


@dataclass(frozen=True)
class FeketeReport:
    """Largest independence counts a_k over prefixes, and the density bound."""

    a: tuple[int, ...]
    ratios: tuple[Fraction, ...]
    upper_bound_i: Fraction
    witness: SubsetWindow
    partial: bool = False
    approximate: bool = False

    def __post_init__(self):
        a = self.a
        for k, ak in enumerate(a, start=1):
            if ak > k or (k > 1 and ak < a[k - 2]):
                raise InvariantViolation("independence profile must be nondecreasing with a_k <= k")
        for k in range(1, len(a) + 1):
            for j in range(1, len(a) + 1 - k):
                if a[k + j - 1] > a[k - 1] + a[j - 1]:
                    raise InvariantViolation(f"subadditivity fails at ({k}, {j})")
        if any(r < self.upper_bound_i for r in self.ratios):
            raise InvariantViolation("ratios must dominate the certified upper bound")

    def to_csv(self) -> str:
        lines = ["k,a_k,ratio"]
        for k, (ak, r) in enumerate(zip(self.a, self.ratios), start=1):
            lines.append(f"{k},{ak},{r}")
        return "\n".join(lines) + "\n"


def max_independence_within(t: CylinderTuple, horizon: int) -> FeketeReport:
    """Exact a_k for k <= horizon by pruned subset search.

    Uses a_1 = 1 and a_{k+1} - a_k ∈ {0, 1}: for each k it only searches for
    one independence set of size a_{k-1} + 1 inside [0, k).  A horizon beyond
    the configured budget yields a flagged partial report.
    """
    if horizon < 1:
        raise InvalidArgumentError("horizon must be positive")
    budget = t.subshift.budget
    partial = False
    cap = horizon
    if horizon > budget.max_profile_horizon:
        cap = budget.max_profile_horizon
        partial = True
    a: list[int] = []
    witness: tuple[int, ...] = ()
    best = 0
    for k in range(1, cap + 1):
        got = _independent_subset_search(t, tuple(range(k)), best + 1)
        if got is not None:
            best += 1
            witness = got
        a.append(best)
    if not witness:
        raise InvalidArgumentError("tuple admits no independence set at all")
    ratios = tuple(Fraction(ak, k) for k, ak in enumerate(a, start=1))
    return FeketeReport(
        a=tuple(a),
        ratios=ratios,
        upper_bound_i=min(ratios),
        witness=SubsetWindow(witness, cap),
        partial=partial,
        approximate=t.subshift.approximate,
    )


@dataclass(frozen=True)
class DensityWitness:
    found: bool
    window: SubsetWindow | None
    bound: Fraction
    upper_bound_i: Fraction


def density_witness(
    t: CylinderTuple,
    precision: int,
    horizon: int,
    profile: FeketeReport | None = None,
) -> DensityWitness:
    """One independence set meeting |F ∩ [0, j)| >= j (I_hat - 1/precision) at
    every prefix j <= horizon, or an inconclusive report."""
    if precision < 1 or horizon < 1:
        raise InvalidArgumentError("precision and horizon must be positive")
    if profile is None:
        profile = max_independence_within(t, min(horizon, t.subshift.budget.max_profile_horizon))
    bound = profile.upper_bound_i - Fraction(1, precision)
    graph = t.subshift.graph()
    max_len = t.max_base_len

    def ok_count(count: int, j: int) -> bool:
        return Fraction(count) >= j * bound

    def dfs_graph(frontier: _Frontier, count: int, j: int) -> tuple[int, ...] | None:
        if j == horizon:
            return ()
        fr = frontier.advanced(j - frontier.pos).branched(t.targets)
        if len(fr.settled(max_len)) == t.k ** (count + 1):
            if ok_count(count + 1, j + 1):
                rest = dfs_graph(fr, count + 1, j + 1)
                if rest is not None:
                    return (j,) + rest
        if ok_count(count, j + 1):
            rest = dfs_graph(frontier, count, j + 1)
            if rest is not None:
                return rest
        return None

    def dfs_scan(chosen: tuple[int, ...], j: int) -> tuple[int, ...] | None:
        if j == horizon:
            return chosen
        trial = chosen + (j,)
        if len(_patterns_for(t, trial)) == t.k ** len(trial):
            if ok_count(len(trial), j + 1):
                got = dfs_scan(trial, j + 1)
                if got is not None:
                    return got
        if ok_count(len(chosen), j + 1):
            return dfs_scan(chosen, j + 1)
        return None

    if graph is not None:
        result = dfs_graph(_Frontier.start(graph), 0, 0)
    else:
        result = dfs_scan((), 0)
    if result is None:
        return DensityWitness(False, None, bound, profile.upper_bound_i)
    window = SubsetWindow(tuple(result), horizon)
    check = is_independence_set(t, window)
    if not check.independent:
        raise InvariantViolation("density witness failed its own re-check")
    return DensityWitness(True, window, bound, profile.upper_bound_i)


@dataclass(frozen=True)
class IpBuilderReport:
    """Generators whose finite sums (plus 0) form a verified independence set."""

    generators: tuple[int, ...]
    verified_sums: SubsetWindow
    step_horizon: int
    approximate: bool = False


def ip_independence_builder(t: CylinderTuple, depth: int, step_horizon: int) -> IpBuilderReport:
    """Iteratively extend generators t_1..t_K keeping {0} ∪ subset sums independent.

    A candidate step is accepted only if all nonempty subset sums stay
    pairwise distinct and the grown set passes the independence check; the
    final sum set is re-verified end to end.  Requires the finite mixing
    window to hold.
    """
    if depth < 1 or step_horizon < 1:
        raise InvalidArgumentError("depth and step_horizon must be positive")
    x = t.subshift
    if x.kind not in {"full", "sft"} or not is_mixing_window(x, max(x.spec.max_forbidden_len, 1)):
        raise InvalidArgumentError("ip builder needs a mixing full shift or SFT")
    _check_budget(t, 2 ** depth)
    gens: list[int] = []
    sums: set[int] = set()
    for step in range(1, depth + 1):
        accepted = None
        for cand in range(1, step_horizon + 1):
            grown = sums | {cand} | {s + cand for s in sums}
            if len(grown) != 2 ** step - 1:
                continue
            window = SubsetWindow.from_iterable(grown | {0})
            if is_independence_set(t, window).independent:
                accepted = cand
                sums = grown
                break
        if accepted is None:
            raise HorizonExhaustedError(
                f"no viable generator below {step_horizon} at step {step}", step=step
            )
        gens.append(accepted)
    verified = SubsetWindow.from_iterable(sums | {0})
    final = is_independence_set(t, verified)
    if not final.independent:
        raise InvariantViolation("ip builder output failed its final re-check")
    return IpBuilderReport(tuple(gens), verified, step_horizon, approximate=x.approximate)


@dataclass(frozen=True)
class EntropyBracket:
    """Finite-depth bracket for sequence entropy along F."""

    lower: float
    upper: float
    pattern_counts: tuple[int, ...]
    independence_sizes: tuple[int, ...]
    approximate: bool = False


def sequence_entropy_bracket(
    x: Subshift, bases: tuple[str, ...], f: SubsetWindow, depth: int
) -> EntropyBracket:
    """Bracket the sequence entropy of the cover {U_1^c, ..., U_n^c} along F.

    The upper value counts nonempty elements of the joined cover (realizable
    complement patterns); the lower value uses the largest verified
    independence subset m' of the first m elements of F, which forces at
    least (n/(n-1))^{m'} cover elements.  The exact minimal subcover is not
    attempted.
    """
    if depth < 1 or depth > len(f.elements):
        raise InvalidArgumentError("depth must be in [1, |F|]")
    lengths = {len(b) for b in bases}
    if len(lengths) != 1:
        raise InvalidArgumentError("cylinder bases must share a length")
    length = lengths.pop()
    if len(set(bases)) != len(bases):
        raise InvalidArgumentError("cylinders must be pairwise disjoint")
    n = len(bases)
    if n == 1:
        return EntropyBracket(0.0, 0.0, (1,) * depth, (0,) * depth, x.approximate)
    alphabet_words = frozenset(x.language(length))
    complements = tuple(alphabet_words - {b} for b in bases)
    tuple_direct = CylinderTuple(x, tuple(frozenset({b}) for b in bases))
    tuple_complement = CylinderTuple(x, complements)

    counts: list[int] = []
    sizes: list[int] = []
    lower = 0.0
    upper = 0.0
    best = 0
    for m in range(1, depth + 1):
        prefix = f.elements[:m]
        count = len(realizable_patterns(tuple_complement, prefix))
        counts.append(count)
        if count == n ** m:
            upper = max(upper, math.log(n))
        elif count > 0:
            upper = max(upper, math.log(count) / m)
        got = _independent_subset_search(tuple_direct, prefix, best + 1)
        if got is not None:
            best += 1
        sizes.append(best)
        lower = max(lower, best / m * math.log(n / (n - 1)))
    if lower > upper + 1e-12:
        raise InvariantViolation("entropy bracket inverted")
    return EntropyBracket(lower, upper, tuple(counts), tuple(sizes), x.approximate)


@dataclass(frozen=True)
class SingleSetResult:
    found: bool
    family_kind: str
    step: int | None
    witness: SubsetWindow | None


def single_set_independence(
    x: Subshift, u: CylinderSet, family: FamilySpec, horizon: int
) -> SingleSetResult:
    """Search Ind(U) ∩ family at finite scale; not-found is inconclusive.

    For the arithmetic kind this is the regular-syndetic search: scan steps
    k <= horizon and ask for the base at every multiple of k in the window
    (at least two of them, so the pattern has recurrence content).
    """
    if horizon < 1:
        raise InvalidArgumentError("horizon must be positive")
    if family.kind == "arithmetic":
        for k in range(1, horizon + 1):
            positions = tuple(
                q for q in range(0, horizon, k) if q + len(u.base) <= horizon
            )
            if len(positions) < 2:
                continue
            if x.satisfiable([(q, frozenset({u.base})) for q in positions]):
                return SingleSetResult(True, "arithmetic", k, SubsetWindow(positions, horizon))
        return SingleSetResult(False, "arithmetic", None, None)
    if family.kind in {"ip", "explicit"}:
        window = family.prefix(horizon)
        if not window.elements:
            raise InvalidArgumentError("family prefix is empty at this horizon")
        t = CylinderTuple.of(x, u.base)
        if is_independence_set(t, window).independent:
            return SingleSetResult(True, family.kind, None, window)
        return SingleSetResult(False, family.kind, None, None)
    raise UnsupportedOperationError(f"unsupported family kind {family.kind!r}")


def literal_independence_check(t: CylinderTuple, f) -> bool:
    """The all-nonempty-subsets definition, for cross-checking the reduction."""
    positions = tuple(f.elements) if isinstance(f, SubsetWindow) else tuple(sorted(f))
    for r in range(1, len(positions) + 1):
        for subset in itertools.combinations(positions, r):
            for assignment in itertools.product(range(t.k), repeat=r):
                constraints = [
                    (pos, t.targets[idx]) for pos, idx in zip(subset, assignment)
                ]
                if not t.subshift.satisfiable(constraints):
                    return False
    return True
