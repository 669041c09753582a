"""Subshifts over {0..p-1}: factor languages, transition graphs, pattern queries.

Words are digit strings (position 0 leftmost), which caps alphabets at ten
symbols.  Four kinds of subshift are supported:

* ``full(p)`` and ``sft`` (finite forbidden-word list) are exact: the factor
  language is computed from the de Bruijn-style transition graph on
  (m_f - 1)-blocks after pruning blocks with no infinite forward extension.
* ``substitution`` languages are collected by iterating the substitution on
  every symbol until the factor sets stabilize; exact for the primitive
  substitutions used here.
* ``orbit`` (orbit closure of a finite prefix) only ever sees factors of the
  given prefix and is flagged approximate; consumers must propagate the flag.

The central query is ``satisfiable``: does some point of the subshift carry
given words at given absolute positions?  For graph kinds this is decided by
a walk from position 0 (so position-dependent effects near the origin are
handled exactly); for the other kinds by scanning the factor language.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    InvalidArgumentError,
    SizeLimitError,
    UnsupportedOperationError,
)
from .integer_sets import SubsetWindow

MAX_ALPHABET = 10


@dataclass(frozen=True)
class Budget:
    """Size guards; exceeding one raises SizeLimitError, never truncates silently."""

    language_cap: int = 24
    max_words: int = 1 << 20
    max_assignment_positions: int = 18
    max_profile_horizon: int = 14
    max_table_bits: int = 1 << 22

    def scaled(self, **overrides) -> "Budget":
        values = {**self.__dict__, **overrides}
        return Budget(**values)


DEFAULT_BUDGET = Budget()


def check_word(word: str, p: int) -> str:
    if not all("0" <= c < chr(ord("0") + p) for c in word):
        raise InvalidArgumentError(f"word {word!r} has symbols outside 0..{p - 1}")
    return word


@dataclass(frozen=True)
class SubshiftSpec:
    """Static description of a subshift."""

    kind: str  # full | sft | substitution | orbit
    p: int
    forbidden: tuple[str, ...] = ()
    rules: tuple[str, ...] = ()  # rules[a] = image of symbol a
    prefix: str = ""

    def __post_init__(self):
        if self.p < 2:
            raise InvalidArgumentError("alphabet size must be at least 2")
        if self.p > MAX_ALPHABET:
            raise UnsupportedOperationError("digit-string words cap the alphabet at 10")
        if self.kind not in {"full", "sft", "substitution", "orbit"}:
            raise InvalidArgumentError(f"unknown subshift kind {self.kind!r}")
        if self.kind == "sft":
            if any(not w for w in self.forbidden):
                raise InvalidArgumentError("forbidden words must be nonempty")
            for w in self.forbidden:
                check_word(w, self.p)
        if self.kind == "substitution":
            if len(self.rules) != self.p or any(not r for r in self.rules):
                raise InvalidArgumentError("need one nonempty rule per symbol")
            for r in self.rules:
                check_word(r, self.p)
        if self.kind == "orbit":
            if not self.prefix:
                raise InvalidArgumentError("orbit closure needs a generator prefix")
            check_word(self.prefix, self.p)

    @property
    def max_forbidden_len(self) -> int:
        return max((len(w) for w in self.forbidden), default=0)

    def to_text(self) -> str:
        lines = [f"p={self.p}", f"kind={self.kind}"]
        if self.kind == "sft":
            lines.append("forbidden=" + ",".join(self.forbidden))
        if self.kind == "substitution":
            lines.append("rules=" + ";".join(f"{a}:{r}" for a, r in enumerate(self.rules)))
        if self.kind == "orbit":
            lines.append(f"prefix={self.prefix}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SubshiftSpec":
        fields: dict[str, str] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise InvalidArgumentError(f"line {lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            fields[key.strip()] = value.strip()
        try:
            p = int(fields["p"])
            kind = fields["kind"]
        except KeyError as exc:
            raise InvalidArgumentError(f"missing required key {exc}") from exc
        forbidden: tuple[str, ...] = ()
        rules: tuple[str, ...] = ()
        prefix = ""
        if kind == "sft":
            raw = fields.get("forbidden", "")
            forbidden = tuple(w for w in raw.split(",") if w)
        elif kind == "substitution":
            raw = fields.get("rules", "")
            pairs = {}
            for item in raw.split(";"):
                if not item:
                    continue
                sym, _, image = item.partition(":")
                pairs[int(sym)] = image
            rules = tuple(pairs.get(a, "") for a in range(p))
        elif kind == "orbit":
            prefix = fields.get("prefix", "")
        return cls(kind=kind, p=p, forbidden=forbidden, rules=rules, prefix=prefix)


def full_shift(p: int) -> "Subshift":
    return Subshift(SubshiftSpec("full", p))


def sft(p: int, forbidden) -> "Subshift":
    return Subshift(SubshiftSpec("sft", p, forbidden=tuple(forbidden)))


def substitution(rules, p: int | None = None) -> "Subshift":
    rules = tuple(rules)
    return Subshift(SubshiftSpec("substitution", p or len(rules), rules=rules))


def orbit_closure(p: int, prefix: str) -> "Subshift":
    return Subshift(SubshiftSpec("orbit", p, prefix=prefix))


def golden_mean() -> "Subshift":
    return sft(2, ["11"])


def thue_morse() -> "Subshift":
    return substitution(["01", "10"])


def fibonacci() -> "Subshift":
    return substitution(["01", "0"])


class TransitionGraph:
    """De Bruijn-style graph on viable (m_f - 1)-blocks of an SFT or full shift."""

    def __init__(self, p: int, forbidden: tuple[str, ...], budget: Budget):
        self.p = p
        self.block_len = max((len(w) for w in forbidden), default=1) - 1
        if p ** self.block_len > budget.max_words:
            raise SizeLimitError("transition-graph block length exceeds the word budget")
        letters = tuple(chr(ord("0") + a) for a in range(p))
        self.letters = letters
        forb = tuple(forbidden)

        def clean(word: str) -> bool:
            return not any(f in word for f in forb)

        nodes = {"".join(t) for t in itertools.product(letters, repeat=self.block_len) if clean("".join(t))}
        edges: dict[str, dict[str, str]] = {u: {} for u in nodes}
        for u in nodes:
            for a in letters:
                w = u + a
                if any(w.endswith(f) for f in forb):
                    continue
                v = w[1:]
                if v in nodes:
                    edges[u][a] = v
        # prune blocks with no infinite forward extension
        changed = True
        while changed:
            changed = False
            for u in list(edges):
                live = {a: v for a, v in edges[u].items() if v in edges}
                if live != edges[u]:
                    edges[u] = live
                if not edges[u]:
                    del edges[u]
                    changed = True
        self.edges = {u: dict(sorted(e.items())) for u, e in sorted(edges.items())}
        self.viable = frozenset(self.edges)
        self.prefixes: list[frozenset[str]] = [
            frozenset(u[:k] for u in self.viable) for k in range(self.block_len + 1)
        ]

    @property
    def empty(self) -> bool:
        return not self.viable

    def step(self, loc: str, a: str) -> str | None:
        """Advance the walk state by one emitted letter; None if illegal."""
        if len(loc) < self.block_len:
            cand = loc + a
            return cand if cand in self.prefixes[len(cand)] else None
        return self.edges[loc].get(a)


def _iterate_substitution_factors(rules: tuple[str, ...], n: int, budget: Budget) -> frozenset[str]:
    cap_len = max(4096, 16 * n)
    words = {a: chr(ord("0") + a) for a in range(len(rules))}
    factors: set[str] = set()
    stable = 0
    for _ in range(2 * cap_len + 64):
        new_factors = set(factors)
        grown = {}
        for a, w in words.items():
            image = "".join(rules[int(c)] for c in w)[:cap_len]
            grown[a] = image
            new_factors.update(image[i:i + n] for i in range(len(image) - n + 1))
        if len(new_factors) > budget.max_words:
            raise SizeLimitError("substitution factor set exceeds the word budget")
        long_enough = all(len(w) >= min(cap_len, 2 * n) for w in grown.values())
        if new_factors == factors and long_enough:
            stable += 1
            if stable >= 2:
                break
        else:
            stable = 0
        factors = new_factors
        words = grown
    return frozenset(factors)


def _primitive(rules: tuple[str, ...]) -> bool:
    s = len(rules)
    reach = [[chr(ord("0") + b) in rules[a] for b in range(s)] for a in range(s)]
    power = reach
    wielandt = s * s - 2 * s + 2 if s > 1 else 1
    for _ in range(max(wielandt - 1, 0)):
        power = [[any(power[a][c] and reach[c][b] for c in range(s)) for b in range(s)] for a in range(s)]
    return all(all(row) for row in power)


Constraint = tuple[int, frozenset[str]]


class Subshift:
    """Runtime subshift: cached languages plus the constrained-pattern oracle."""

    def __init__(self, spec: SubshiftSpec, budget: Budget = DEFAULT_BUDGET):
        self.spec = spec
        self.budget = budget
        self._lang: dict[int, tuple[str, ...]] = {}
        self._graph: TransitionGraph | None = None
        self.primitive = _primitive(spec.rules) if spec.kind == "substitution" else None
        if spec.kind in {"full", "sft"}:
            self._graph = TransitionGraph(spec.p, spec.forbidden, budget)

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def kind(self) -> str:
        return self.spec.kind

    @property
    def approximate(self) -> bool:
        """True when language queries only see a finite window of the system."""
        return self.spec.kind == "orbit"

    def graph(self) -> TransitionGraph | None:
        return self._graph

    # -- factor language ---------------------------------------------------

    def language(self, n: int) -> tuple[str, ...]:
        """All allowed words of length n, sorted."""
        if n < 1:
            raise InvalidArgumentError("word length must be positive")
        if n > self.budget.language_cap:
            raise SizeLimitError(
                f"length {n} exceeds the configured language cap {self.budget.language_cap}"
            )
        if n not in self._lang:
            self._lang[n] = self._compute_language(n)
        return self._lang[n]

    def _compute_language(self, n: int) -> tuple[str, ...]:
        spec = self.spec
        if spec.kind in {"full", "sft"}:
            graph = self._graph
            if graph.empty:
                return ()
            if n <= graph.block_len:
                return tuple(sorted(graph.prefixes[n]))
            words = sorted(graph.viable)
            for _ in range(n - graph.block_len):
                grown = []
                for w in words:
                    node = w[-graph.block_len:] if graph.block_len else ""
                    for a, _v in graph.edges[node].items():
                        grown.append(w + a)
                if len(grown) > self.budget.max_words:
                    raise SizeLimitError("language size exceeds the word budget")
                words = grown
            return tuple(sorted(words))
        if spec.kind == "substitution":
            return tuple(sorted(_iterate_substitution_factors(spec.rules, n, self.budget)))
        # orbit closure: factors of the generator prefix only (approximate)
        prefix = spec.prefix
        if n > len(prefix):
            raise SizeLimitError("orbit-closure prefix is shorter than the requested length")
        return tuple(sorted({prefix[i:i + n] for i in range(len(prefix) - n + 1)}))

    def allows(self, word: str) -> bool:
        check_word(word, self.p)
        if self.spec.kind in {"full", "sft"}:
            return self.satisfiable([(0, frozenset({word}))])
        return word in self.language(len(word))

    def count(self, n: int) -> int:
        return len(self.language(n))

    # -- constrained patterns ----------------------------------------------

    def satisfiable(self, constraints) -> bool:
        """Is there a point carrying, at each position, one word of each set?"""
        return self.witness(constraints) is not None

    def witness(self, constraints) -> str | None:
        """A realizing prefix x[0, end) for the constraints, or None.

        Constraints are (absolute position, word or set of words) pairs; word
        sets are disjunctive, distinct pairs are conjunctive.  The returned
        prefix is the lexicographically least realization for graph kinds and
        the least matching factor for language-scan kinds.
        """
        normalized: list[Constraint] = []
        for pos, words in constraints:
            if isinstance(words, str):
                words = frozenset({words})
            else:
                words = frozenset(words)
            if pos < 0:
                raise InvalidArgumentError("constraint positions must be nonnegative")
            if not words:
                return None
            lengths = {len(w) for w in words}
            if len(lengths) != 1:
                raise InvalidArgumentError("words in one constraint must share a length")
            for w in words:
                check_word(w, self.p)
            normalized.append((pos, words))
        if not normalized:
            raise InvalidArgumentError("need at least one constraint")
        end = max(pos + len(next(iter(words))) for pos, words in normalized)
        if self.spec.kind in {"full", "sft"}:
            return self._witness_graph(normalized, end)
        return self._witness_scan(normalized, end)

    def _witness_graph(self, constraints: list[Constraint], end: int) -> str | None:
        graph = self._graph
        if graph.empty:
            return None
        starting: dict[int, list[frozenset[str]]] = {}
        for pos, words in constraints:
            starting.setdefault(pos, []).append(words)
        # state: (loc, obligations); obligations: frozenset of suffix-sets
        states: dict[tuple[str, frozenset[frozenset[str]]], str] = {("", frozenset()): ""}
        for p in range(end):
            if p in starting:
                grown = {}
                for (loc, obs), word in states.items():
                    new_obs = set(obs)
                    for words in starting[p]:
                        new_obs.add(words)
                    grown[(loc, frozenset(new_obs))] = word
                states = grown
            nxt: dict[tuple[str, frozenset[frozenset[str]]], str] = {}
            for (loc, obs), word in sorted(states.items(), key=lambda kv: kv[1]):
                for a in graph.letters:
                    loc2 = graph.step(loc, a)
                    if loc2 is None:
                        continue
                    obs2 = set()
                    dead = False
                    for sufs in obs:
                        remaining = frozenset(s[1:] for s in sufs if s[0] == a)
                        if not remaining:
                            dead = True
                            break
                        if next(iter(remaining)) != "":
                            obs2.add(remaining)
                    if dead:
                        continue
                    key = (loc2, frozenset(obs2))
                    if key not in nxt:
                        nxt[key] = word + a
            if not nxt:
                return None
            states = nxt
        complete = [word for (loc, obs), word in states.items() if not obs]
        return min(complete) if complete else None

    def _witness_scan(self, constraints: list[Constraint], end: int) -> str | None:
        for w in self.language(end):
            if all(w[pos:pos + len(next(iter(words)))] in words for pos, words in constraints):
                return w
        return None


@dataclass(frozen=True)
class CylinderSet:
    """Points whose block at ``offset`` equals ``base``."""

    base: str
    offset: int = 0

    def __post_init__(self):
        if not self.base or self.offset < 0:
            raise InvalidArgumentError("cylinder needs a nonempty base and offset >= 0")

    def is_nonempty(self, x: Subshift) -> bool:
        return x.satisfiable([(self.offset, frozenset({self.base}))])

    def constraint(self) -> Constraint:
        return (self.offset, frozenset({self.base}))


def return_times(x: Subshift, u: CylinderSet, v: CylinderSet, horizon: int) -> SubsetWindow:
    """N(U, V) ∩ [0, horizon): times n with U ∩ σ^{-n} V nonempty."""
    if horizon < 1:
        raise InvalidArgumentError("horizon must be positive")
    if not u.is_nonempty(x) or not v.is_nonempty(x):
        raise InvalidArgumentError("both cylinders must be nonempty")
    times = [
        n
        for n in range(horizon)
        if x.satisfiable([u.constraint(), (v.offset + n, frozenset({v.base}))])
    ]
    return SubsetWindow(tuple(times), horizon)


def is_mixing_window(x: Subshift, threshold: int) -> bool:
    """Finite mixing surrogate: every letter pair returns at all times in
    [threshold, threshold + m_f]."""
    if x.kind not in {"full", "sft"}:
        raise UnsupportedOperationError("mixing window check needs a full shift or an SFT")
    if threshold < 0:
        raise InvalidArgumentError("threshold must be nonnegative")
    span = x.spec.max_forbidden_len
    letters = x.language(1)
    if not letters:
        return False
    for u in letters:
        for v in letters:
            for n in range(threshold, threshold + span + 1):
                if not x.satisfiable([(0, frozenset({u})), (n, frozenset({v}))]):
                    return False
    return True


def is_minimal_window(x: Subshift, n: int, r: int) -> bool:
    """Uniform recurrence at scale (n, R): every allowed n-word occurs in
    every allowed R-word."""
    if not 1 <= n <= r:
        raise InvalidArgumentError("need 1 <= n <= R")
    short = x.language(n)
    return all(all(w in long for w in short) for long in x.language(r))


def product(x: Subshift, y: Subshift) -> Subshift:
    """Product subshift on the paired alphabet (a, b) -> a * p_Y + b."""
    for z in (x, y):
        if z.kind not in {"full", "sft"}:
            raise UnsupportedOperationError("product needs full shifts or SFTs")
    p = x.p * y.p
    if p > MAX_ALPHABET:
        raise UnsupportedOperationError("product alphabet exceeds the digit-string cap")
    if x.kind == "full" and y.kind == "full":
        return Subshift(SubshiftSpec("full", p), x.budget)

    def pair(a: int, b: int) -> str:
        return chr(ord("0") + a * y.p + b)

    forbidden: list[str] = []
    for f in x.spec.forbidden:
        for tail in itertools.product(range(y.p), repeat=len(f)):
            forbidden.append("".join(pair(int(c), b) for c, b in zip(f, tail)))
    for f in y.spec.forbidden:
        for head in itertools.product(range(x.p), repeat=len(f)):
            forbidden.append("".join(pair(a, int(c)) for a, c in zip(head, f)))
    return Subshift(SubshiftSpec("sft", p, forbidden=tuple(sorted(set(forbidden)))), x.budget)
