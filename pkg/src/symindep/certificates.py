"""Obstruction certificates: why a syndetic set cannot be an independence set.

For a minimal binary subshift X and a syndetic F = {n_0 < n_1 < ...} with gap
bound l, the pipeline picks an allowed word a of length (4l+2)·l, derives the
per-position forbidden window sets A_j it induces along the gaps of F, solves
for a word x avoiding them, and then asks for a point y of X with
y(n_j) = x(j).  No such point can exist; the certificate records a minimal
refuting subset J0 of F together with the letter assignment that is
unrealizable, and an independent verifier re-derives everything from scratch.

At finite depth the search can also come back inconclusive, which is reported
honestly and never read as F being an independence set.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .avoidance import AvoidanceInstance, solve_prefix, verify_word
from .errors import InvalidArgumentError
from .independence import CylinderTuple, is_independence_set
from .integer_sets import SubsetWindow
from .subshift import Budget, Subshift, is_minimal_window


@dataclass(frozen=True)
class SyndeticInput:
    """A syndetic window with its observed gap bound."""

    window: SubsetWindow
    gap_bound: int

    @classmethod
    def from_window(cls, window: SubsetWindow) -> "SyndeticInput":
        if len(window.elements) < 2:
            raise InvalidArgumentError("need at least two elements to read off gaps")
        bound = max(window.gaps())
        if window.elements[0] > bound:
            raise InvalidArgumentError("first element exceeds the gap bound")
        return cls(window, bound)


@dataclass(frozen=True)
class ObstructionCertificate:
    """Everything needed to re-check the obstruction from scratch."""

    ell: int
    m: int
    depth: int
    minimality_scale: tuple[int, int]
    f_window: SubsetWindow
    a: str
    forbidden_sets: tuple[tuple[str, ...], ...]
    x: str
    status: str  # "refuted" | "inconclusive"
    core: tuple[int, ...] | None
    core_letters: str | None

    @property
    def refutation_depth(self) -> int | None:
        return len(self.core) if self.core is not None else None

    def to_text(self) -> str:
        lines = [
            "[instance]",
            f"ell={self.ell}",
            f"m={self.m}",
            f"depth={self.depth}",
            f"scale={self.minimality_scale[0]},{self.minimality_scale[1]}",
            f"F={self.f_window.to_text()}",
            f"status={self.status}",
            "[a]",
            self.a,
            "[x]",
            self.x,
            "[forbidden]",
        ]
        for j, words in enumerate(self.forbidden_sets):
            lines.append(f"{j}: " + ",".join(words))
        lines.append("[refutation]")
        if self.core is not None:
            lines.append("core=" + ",".join(str(q) for q in self.core))
            lines.append(f"letters={self.core_letters}")
        else:
            lines.append("core=none")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ObstructionCertificate":
        section = None
        fields: dict[str, str] = {}
        a = x = ""
        forbidden: list[tuple[str, ...]] = []
        core: tuple[int, ...] | None = None
        letters: str | None = None
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("["):
                section = line
                continue
            if section == "[instance]":
                key, _, value = line.partition("=")
                fields[key] = value
            elif section == "[a]":
                a = line
            elif section == "[x]":
                x = line
            elif section == "[forbidden]":
                _, _, tail = line.partition(":")
                forbidden.append(tuple(w for w in tail.strip().split(",") if w))
            elif section == "[refutation]":
                key, _, value = line.partition("=")
                if key == "core":
                    core = None if value == "none" else tuple(int(q) for q in value.split(","))
                elif key == "letters":
                    letters = value
        n, r = (int(v) for v in fields["scale"].split(","))
        return cls(
            ell=int(fields["ell"]),
            m=int(fields["m"]),
            depth=int(fields["depth"]),
            minimality_scale=(n, r),
            f_window=SubsetWindow.from_text(fields["F"]),
            a=a,
            forbidden_sets=tuple(forbidden),
            x=x,
            status=fields["status"],
            core=core,
            core_letters=letters,
        )


def _derive_forbidden(a: str, elems: tuple[int, ...], m: int, ell: int, depth: int
                      ) -> tuple[tuple[str, ...], ...]:
    """A_j = words (a(k), a(k + n_{j+1} - n_j), ..., a(k + n_{j+m-1} - n_j))
    for 1 <= k <= l, with a indexed from 1 as in the source argument."""
    sets = []
    for j in range(depth + 1):
        words = set()
        for k in range(1, ell + 1):
            words.add("".join(a[k - 1 + elems[j + r] - elems[j]] for r in range(m)))
        sets.append(tuple(sorted(words)))
    return tuple(sets)


def _with_cap(x: Subshift, needed: int) -> Subshift:
    if x.budget.language_cap >= needed:
        return x
    return Subshift(x.spec, x.budget.scaled(language_cap=needed))


def build_obstruction(
    x: Subshift,
    f: SubsetWindow,
    depth: int,
    minimality_scale: tuple[int, int] = (2, 12),
    scan_all_a: bool = False,
) -> ObstructionCertificate:
    """Build (and internally check) the obstruction certificate for (X, F).

    X must be a binary subshift certified minimal at the declared scale; F
    must carry at least depth + m elements so the window sets are defined.
    The avoiding word is produced by the window solver, the contradiction is
    searched exactly via constrained patterns, and a refuting core is
    extracted by greedy shrinking from the back (earliest positions survive).

    The anchor word ``a`` defaults to the lex-least allowed word of its
    length; ``scan_all_a`` tries every allowed anchor and keeps the smallest
    refutation instead.
    """
    if x.p != 2:
        raise InvalidArgumentError("obstruction pipeline works on binary subshifts")
    if depth < 1:
        raise InvalidArgumentError("depth must be positive")
    syn = SyndeticInput.from_window(f)
    ell = syn.gap_bound
    m = 4 * ell + 2
    if len(f.elements) < depth + m:
        raise InvalidArgumentError(
            f"F needs at least depth + m = {depth + m} elements, has {len(f.elements)}"
        )
    scale_n, scale_r = minimality_scale
    x = _with_cap(x, max(m * ell, scale_r, f.elements[depth - 1] + 1))
    if not is_minimal_window(x, scale_n, scale_r):
        raise InvalidArgumentError(
            f"subshift is not minimal at scale ({scale_n}, {scale_r})"
        )
    if scan_all_a:
        best = None
        for anchor in x.language(m * ell):
            cert = _build_with_anchor(x, f, depth, minimality_scale, ell, m, anchor)
            if cert.status == "refuted" and (
                best is None or cert.refutation_depth < best.refutation_depth
            ):
                best = cert
        if best is not None:
            return best
        return _build_with_anchor(
            x, f, depth, minimality_scale, ell, m, x.language(m * ell)[0]
        )
    return _build_with_anchor(
        x, f, depth, minimality_scale, ell, m, x.language(m * ell)[0]
    )


def _build_with_anchor(
    x: Subshift,
    f: SubsetWindow,
    depth: int,
    minimality_scale: tuple[int, int],
    ell: int,
    m: int,
    a: str,
) -> ObstructionCertificate:
    forbidden = _derive_forbidden(a, f.elements, m, ell, depth)
    instance = AvoidanceInstance.explicit(
        2, m, ell, {j: words for j, words in enumerate(forbidden)}
    )
    solved = solve_prefix(instance, depth + m)
    avoider = solved.word

    constraints = [(f.elements[j], frozenset({avoider[j]})) for j in range(depth)]
    cert = ObstructionCertificate(
        ell=ell,
        m=m,
        depth=depth,
        minimality_scale=minimality_scale,
        f_window=f,
        a=a,
        forbidden_sets=forbidden,
        x=avoider,
        status="inconclusive",
        core=None,
        core_letters=None,
    )
    if x.satisfiable(constraints):
        return cert
    # shrink to a minimal refuting subset, dropping late positions first
    core = list(range(depth))
    for j in range(depth - 1, -1, -1):
        trial = [q for q in core if q != j]
        if trial and not x.satisfiable(
            [(f.elements[q], frozenset({avoider[q]})) for q in trial]
        ):
            core = trial
    positions = tuple(f.elements[q] for q in core)
    letters = "".join(avoider[q] for q in core)
    return replace(cert, status="refuted", core=positions, core_letters=letters)


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    failed_stage: str | None = None


def verify_certificate(
    cert: ObstructionCertificate, x: Subshift, f: SubsetWindow
) -> VerificationResult:
    """Re-check a certificate from scratch, independent of its construction.

    Stage ``derivation`` re-derives the window sets from (a, F); stage
    ``avoidance`` re-scans x against them; stage ``refutation`` re-checks the
    recorded assignment with the independence engine.
    """
    if cert.status != "refuted" or cert.core is None:
        return VerificationResult(False, "incomplete")
    try:
        derived = _derive_forbidden(cert.a, f.elements, cert.m, cert.ell, cert.depth)
    except IndexError:
        return VerificationResult(False, "derivation")
    if derived != cert.forbidden_sets or len(cert.a) != cert.m * cert.ell:
        return VerificationResult(False, "derivation")

    instance = AvoidanceInstance.explicit(
        2, cert.m, cert.ell, {j: words for j, words in enumerate(derived)}
    )
    if len(cert.x) < cert.depth or verify_word(instance, cert.x) is not None:
        return VerificationResult(False, "avoidance")
    # the refutation letters must be x read along F
    elems = f.elements
    for q, c in zip(cert.core, cert.core_letters):
        if q not in elems or cert.x[elems.index(q)] != c:
            return VerificationResult(False, "avoidance")

    x = _with_cap(x, max((cert.core[-1] + 1) if cert.core else 1, cert.m * cert.ell))
    recorded = [
        (q, frozenset({c})) for q, c in zip(cert.core, cert.core_letters)
    ]
    if x.satisfiable(recorded):
        return VerificationResult(False, "refutation")
    tuple_01 = CylinderTuple.of(x, "0", "1")
    if is_independence_set(tuple_01, cert.core).independent:
        return VerificationResult(False, "refutation")
    return VerificationResult(True)
