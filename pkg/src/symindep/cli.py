"""Batch front door: parse inputs, dispatch, emit deterministic artifacts.

Exit codes: 0 success, 1 inconclusive (a search exhausted its horizon, a
first-class outcome), 2 invariant failure (an internal guarantee broke), 3
invalid input.  Outputs never contain timestamps; identical configurations
produce byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import avoidance, certificates, constructions, independence, integer_sets, subshift
from .errors import (
    HorizonExhaustedError,
    InputTooShortError,
    InvalidArgumentError,
    InvariantViolation,
    SizeLimitError,
    SymindepError,
    UnsupportedOperationError,
)

EXIT_OK = 0
EXIT_INCONCLUSIVE = 1
EXIT_INVARIANT = 2
EXIT_INVALID = 3


class _Inconclusive(Exception):
    """Internal: carries an artifact that reports an inconclusive outcome."""

    def __init__(self, text: str):
        super().__init__(text)
        self.text = text


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_subshift(args, cap: int | None = None) -> subshift.Subshift:
    with open(args.spec) as fh:
        spec = subshift.SubshiftSpec.from_text(fh.read())
    budget = subshift.DEFAULT_BUDGET
    if cap is not None and cap > budget.language_cap:
        budget = budget.scaled(language_cap=cap)
    return subshift.Subshift(spec, budget)


def _parse_targets(text: str) -> list[str]:
    targets = [w for w in text.split(",") if w]
    if not targets:
        raise InvalidArgumentError("no target bases given")
    return targets


# -- subcommands -------------------------------------------------------------


def _cmd_families(args) -> str:
    if args.set:
        window = integer_sets.SubsetWindow.from_text(args.set)
    elif args.family:
        family = integer_sets.FamilySpec.from_text(args.family)
        window = family.prefix(args.horizon)
    else:
        raise InvalidArgumentError("need --set or --family")
    lines = [f"set={window.to_text()}", f"size={len(window)}"]
    window_length = args.window or max(1, min(10, window.horizon))
    report = integer_sets.densities(window, window_length)
    lines.append(
        f"densities window={report.window_length} lower={report.lower} "
        f"upper={report.upper} banach_upper={report.banach_upper}"
    )
    preds = integer_sets.family_predicates(window, args.gap, args.depth)
    lines.append(f"syndetic_with_gap({args.gap})={preds.syndetic_with_gap}")
    lines.append(f"thick_up_to({args.depth})={preds.thick_up_to}")
    if preds.pws_witness:
        (lo, hi), gap = preds.pws_witness
        lines.append(f"pws_witness=[{lo},{hi}) gap={gap}")
    else:
        lines.append("pws_witness=none")
    return "\n".join(lines) + "\n"


def _cmd_subshift(args) -> str:
    cap = max(args.lang, args.minimal_r or 0) if args.lang else (args.minimal_r or 0)
    x = _load_subshift(args, cap=cap or None)
    lines = [f"kind={x.kind}", f"p={x.p}"]
    if x.primitive is not None:
        lines.append(f"primitive={x.primitive}")
    if args.lang:
        for n in range(1, args.lang + 1):
            lines.append(f"count[{n}]={x.count(n)}")
    if args.words:
        lines.append("words=" + ",".join(x.language(args.words)))
    if args.minimal_n:
        ok = subshift.is_minimal_window(x, args.minimal_n, args.minimal_r)
        lines.append(f"minimal_window({args.minimal_n},{args.minimal_r})={ok}")
    if args.mixing is not None:
        ok = subshift.is_mixing_window(x, args.mixing)
        lines.append(f"mixing_window({args.mixing})={ok}")
    if args.return_times:
        parts = args.return_times.split(",")
        if len(parts) != 3:
            raise InvalidArgumentError("--return-times wants 'U,V,horizon'")
        u, v, horizon = parts[0], parts[1], int(parts[2])
        window = subshift.return_times(
            x, subshift.CylinderSet(u), subshift.CylinderSet(v), horizon
        )
        lines.append(f"return_times={window.to_text()}")
    return "\n".join(lines) + "\n"


def _cmd_indep(args) -> str:
    x = _load_subshift(args)
    flag = "approximate=true\n" if x.approximate else ""
    t = independence.CylinderTuple.of(x, *_parse_targets(args.targets))
    if args.mode == "density":
        report = independence.max_independence_within(t, args.K)
        return flag + report.to_csv()
    if args.mode == "check":
        window = integer_sets.SubsetWindow.from_text(args.set)
        result = independence.is_independence_set(t, window)
        lines = [f"independent={result.independent}"]
        if result.refuting is not None:
            lines.append("refuting=" + ",".join(str(i) for i in result.refuting))
        if result.approximate:
            lines.append("approximate=true")
        return "\n".join(lines) + "\n"
    if args.mode == "ip":
        report = independence.ip_independence_builder(t, args.depth, args.horizon)
        return (
            "generators=" + ",".join(str(g) for g in report.generators) + "\n"
            "verified_sums=" + report.verified_sums.to_text() + "\n"
        )
    if args.mode == "witness":
        result = independence.density_witness(t, args.precision, args.horizon)
        if not result.found:
            raise _Inconclusive(f"witness=none bound={result.bound}\n")
        return f"witness={result.window.to_text()}\nbound={result.bound}\n"
    if args.mode == "entropy":
        window = integer_sets.SubsetWindow.from_text(args.set)
        bracket = independence.sequence_entropy_bracket(
            x, tuple(_parse_targets(args.targets)), window, args.depth
        )
        return (
            f"lower={bracket.lower!r}\nupper={bracket.upper!r}\n"
            "pattern_counts=" + ",".join(str(c) for c in bracket.pattern_counts) + "\n"
        )
    if args.mode == "single":
        family = integer_sets.FamilySpec.from_text(args.family)
        result = independence.single_set_independence(
            x, subshift.CylinderSet(args.targets), family, args.horizon
        )
        if not result.found:
            raise _Inconclusive("found=false\n")
        step = "" if result.step is None else f"step={result.step}\n"
        return f"found=true\n{step}witness={result.witness.to_text()}\n"
    raise InvalidArgumentError(f"unknown indep mode {args.mode!r}")


def _cmd_avoid(args) -> str:
    if args.instance:
        with open(args.instance) as fh:
            instance = avoidance.AvoidanceInstance.from_text(fh.read())
    else:
        count = args.N if args.N is not None else max(args.len - args.m + 1, 1)
        instance = avoidance.AvoidanceInstance.generate(
            args.p, args.m, args.l, count, args.seed
        )
    result = avoidance.solve_prefix(instance, args.len, args.lookahead)
    if not result.solved:
        raise _Inconclusive(f"{result.verdict}\n")
    return f"{result.word}\n{result.verdict}\n"


def _cmd_obstruct(args) -> str:
    window = integer_sets.SubsetWindow.from_text(args.set)
    scale = tuple(int(v) for v in args.scale.split(","))
    if len(scale) != 2:
        raise InvalidArgumentError("--scale wants 'n,R'")
    x = _load_subshift(args)
    cert = certificates.build_obstruction(x, window, args.depth, scale)
    if cert.status != "refuted":
        raise _Inconclusive(cert.to_text())
    check = certificates.verify_certificate(cert, x, window)
    if not check.ok:
        raise InvariantViolation(f"fresh certificate failed at stage {check.failed_stage}")
    return cert.to_text()


def _parse_k_params(text: str) -> constructions.KExampleParams:
    y = ""
    markers: dict[int, dict[int, str]] = {}
    phi: tuple[int, ...] = ()
    depth = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "y":
            y = value
        elif key == "phi":
            phi = tuple(int(v) for v in value.split(","))
        elif key == "K":
            depth = int(value)
        elif key.startswith("z[") and key.endswith("]"):
            m_str, _, j_str = key[2:-1].partition(",")
            markers.setdefault(int(m_str), {})[int(j_str)] = value
        else:
            raise InvalidArgumentError(f"line {lineno}: unknown key {key!r}")
    fixed = {
        m: tuple(words[j] for j in sorted(words)) for m, words in markers.items()
    }
    return constructions.KExampleParams(y, fixed, phi, depth)


def _cmd_construct(args) -> str:
    if args.params:
        with open(args.params) as fh:
            params = _parse_k_params(fh.read())
    else:
        params = constructions.toy_k_params(args.toy)
    run = constructions.proximal_k_point(params)
    lines = [f"levels={len(run.levels)}"]
    for level in run.levels:
        lines.append(
            f"level k={level.k} n={level.n} ell={level.ell} b={level.b} "
            f"phi={level.schedule}"
        )
        lines.append(f"A={level.a}")
        for i, block in enumerate(level.c):
            lines.append(f"C{i}={block}")
    for report in constructions.verify_syndetic_zeros(run):
        lines.append(
            f"zeros level={report.level} bound={report.bound} "
            f"max_gap={report.max_gap} pass={report.passed}"
        )
    lines.append(f"x={run.x_prefix}")
    return "\n".join(lines) + "\n"


def _cmd_explore(args) -> str:
    report = avoidance.minimal_m_explorer(
        args.p, args.l, args.trials, args.seed, args.len
    )
    return report.to_csv()


def _selfcheck_fekete() -> None:
    t = independence.CylinderTuple.of(subshift.golden_mean(), "0", "1")
    report = independence.max_independence_within(t, 8)
    expected = tuple((k + 1) // 2 for k in range(1, 9))
    if report.a != expected:
        raise InvariantViolation(f"golden-mean profile {report.a} != {expected}")


def _selfcheck_appendix() -> None:
    instance = avoidance.AvoidanceInstance.generate(2, 6, 1, 1495, seed=42)
    result = avoidance.solve_prefix(instance, 1500)
    if not result.solved:
        raise InvariantViolation("seeded appendix instance did not solve")
    bk = avoidance.bookkeeping(instance, 120)
    avoidance.verify_bounds(bk, instance)


def _selfcheck_k_literals() -> None:
    run = constructions.proximal_k_point(constructions.toy_k_params(2))
    level = run.level(1)
    if (level.a, level.c[0], level.c[1]) != ("10", "0000", "1000"):
        raise InvariantViolation(f"level-1 literals off: {level}")


def _selfcheck_thue_morse() -> None:
    window = integer_sets.SubsetWindow(tuple(range(20)), 20)
    cert = certificates.build_obstruction(subshift.thue_morse(), window, depth=8)
    if cert.status != "refuted" or cert.refutation_depth > 3:
        raise InvariantViolation(f"thue-morse refutation depth {cert.refutation_depth}")
    if not certificates.verify_certificate(cert, subshift.thue_morse(), window).ok:
        raise InvariantViolation("thue-morse certificate failed verification")


SELFCHECKS = (
    ("fekete-profile", _selfcheck_fekete),
    ("appendix-verify_bounds", _selfcheck_appendix),
    ("k-level-literals", _selfcheck_k_literals),
    ("thue-morse-refutation", _selfcheck_thue_morse),
)


def _cmd_selfcheck(args) -> str:
    lines = []
    failed = False
    for name, check in SELFCHECKS:
        try:
            check()
        except Exception as exc:  # noqa: BLE001 - every failure must be reported
            lines.append(f"FAIL {name}: {exc}")
            failed = True
        else:
            lines.append(f"ok {name}")
    text = "\n".join(lines) + "\n"
    if failed:
        raise InvariantViolation(text)
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symindep",
        description="finite-scale independence toolkit for subshifts",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("families", help="densities and family predicates")
    p.add_argument("--set", help="SubsetWindow text 'horizon;e1,e2,...'")
    p.add_argument("--family", help="FamilySpec text, e.g. arith:2,0 or ip:1+2+4")
    p.add_argument("--horizon", type=int, default=100)
    p.add_argument("--window", type=int, default=0, help="density window length")
    p.add_argument("--gap", type=int, default=2, help="syndetic gap bound")
    p.add_argument("--depth", type=int, default=5, help="thickness depth")
    p.add_argument("--out")

    p = sub.add_parser("subshift", help="language counts and window checks")
    p.add_argument("--spec", required=True)
    p.add_argument("--lang", type=int, default=0, help="report counts up to n")
    p.add_argument("--words", type=int, default=0, help="list words of length n")
    p.add_argument("--minimal-n", type=int, default=0)
    p.add_argument("--minimal-r", type=int, default=0)
    p.add_argument("--mixing", type=int, default=None)
    p.add_argument("--return-times", help="'U,V,horizon'")
    p.add_argument("--out")

    p = sub.add_parser("indep", help="independence queries")
    p.add_argument("mode", choices=["density", "check", "ip", "witness", "entropy", "single"])
    p.add_argument("--spec", required=True)
    p.add_argument("--targets", required=True, help="comma-separated base words")
    p.add_argument("--K", type=int, default=14)
    p.add_argument("--set", help="SubsetWindow text")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--horizon", type=int, default=40)
    p.add_argument("--precision", type=int, default=10)
    p.add_argument("--family", help="FamilySpec text (single mode)")
    p.add_argument("--out")

    p = sub.add_parser("avoid", help="window-avoidance solver")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--m", type=int, default=6)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--len", type=int, default=1000)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--lookahead", type=int, default=None)
    p.add_argument("--instance", help="instance file (overrides p/m/l/seed)")
    p.add_argument("--out")

    p = sub.add_parser("obstruct", help="syndetic obstruction certificate")
    p.add_argument("--spec", required=True)
    p.add_argument("--set", required=True, help="syndetic SubsetWindow text")
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--scale", default="2,12", help="minimality scale 'n,R'")
    p.add_argument("--out")

    p = sub.add_parser("construct", help="proximal K-point recursion")
    p.add_argument("--params", help="params file (y=, z[m,j]=, phi=, K=)")
    p.add_argument("--toy", type=int, default=3, help="toy run depth")
    p.add_argument("--out")

    p = sub.add_parser("explore", help="empirical minimal-m table")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--len", type=int, default=500)
    p.add_argument("--out")

    p = sub.add_parser("selfcheck", help="run the embedded invariant suite")
    p.add_argument("--out")

    return parser


_COMMANDS = {
    "families": _cmd_families,
    "subshift": _cmd_subshift,
    "indep": _cmd_indep,
    "avoid": _cmd_avoid,
    "obstruct": _cmd_obstruct,
    "construct": _cmd_construct,
    "explore": _cmd_explore,
    "selfcheck": _cmd_selfcheck,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        text = _COMMANDS[args.command](args)
    except _Inconclusive as exc:
        _emit(args, exc.text)
        return EXIT_INCONCLUSIVE
    except HorizonExhaustedError as exc:
        _emit(args, f"inconclusive: {exc}\n")
        return EXIT_INCONCLUSIVE
    except InvariantViolation as exc:
        sys.stderr.write(f"invariant failure: {exc}\n")
        return EXIT_INVARIANT
    except (
        InvalidArgumentError,
        SizeLimitError,
        UnsupportedOperationError,
        InputTooShortError,
        SymindepError,
        ValueError,
        OSError,
        KeyError,
    ) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    _emit(args, text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
