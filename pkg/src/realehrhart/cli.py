"""Command-line front end.

Exit codes: 0 ok, 1 failed verification, 2 input error, 3 enumeration budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import exact
from .checks import SUITES, VerifyConfig, random_cases, verify
from .polytope import RationalPolytope, polytope_quasi
from .quasipoly import QuasiPolynomial
from .report import CheckReport
from .simplex import DEFAULT_BUDGET, BudgetExceeded, Kind, determined_sets

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    input: Path | None = None
    kind: Kind = Kind.CLOSED
    out: Path | None = None
    budget: int = DEFAULT_BUDGET
    jobs: int = 1
    seed: int = 0
    t: Fraction | None = None

    def __post_init__(self):
        if self.budget <= 0:
            raise InputError("--budget must be positive")
        if self.jobs < 1:
            raise InputError("--jobs must be at least 1")


def load_polytope(path: Path) -> RationalPolytope:
    try:
        data = json.loads(Path(path).read_text())
        return RationalPolytope.from_dict(data)
    except (OSError, json.JSONDecodeError, ValueError, ZeroDivisionError, TypeError) as err:
        raise InputError(f"cannot read polytope from {path}: {err}") from err


def load_quasi(path: Path) -> QuasiPolynomial:
    try:
        return QuasiPolynomial.from_dict(json.loads(Path(path).read_text()))
    except (OSError, json.JSONDecodeError, ValueError, KeyError, TypeError, ZeroDivisionError) as err:
        raise InputError(f"cannot read quasi-polynomial from {path}: {err}") from err


def dumps(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _require_input(config: RunConfig) -> RationalPolytope:
    if config.input is None:
        raise InputError("--input is required")
    return load_polytope(config.input)


def cmd_compute(config: RunConfig) -> int:
    P = _require_input(config)
    q = polytope_quasi(P, config.kind, config.budget, config.jobs)
    _emit(dumps(q.to_dict()), config.out)
    return EXIT_OK


def cmd_eval(config: RunConfig) -> int:
    P = _require_input(config)
    if config.t is None:
        raise InputError("-t is required")
    q = polytope_quasi(P, config.kind, config.budget, config.jobs)
    _emit(exact.format_rational(q(config.t)) + "\n", config.out)
    return EXIT_OK


def cmd_determined(config: RunConfig) -> int:
    P = _require_input(config)
    try:
        simplex = P.as_simplex()
    except ValueError as err:
        raise InputError(str(err)) from err
    f = determined_sets(simplex, config.kind, config.budget)
    _emit(dumps(f.to_dict()), config.out)
    return EXIT_OK


def compare_check(P: RationalPolytope, reference: QuasiPolynomial, budget: int, jobs: int) -> CheckReport:
    """A stored quasi-polynomial against a fresh computation, as functions."""
    report = CheckReport("compare")
    fresh = polytope_quasi(P, reference.kind, budget, jobs)
    report.record(reference.dim == fresh.dim and fresh.equivalent(reference), polytope=P.name or P.vertices,
                  kind=reference.kind.value)
    return report


def cmd_verify(config: RunConfig, suites: tuple[str, ...], cases: int, t_samples: int,
               compare: Path | None = None) -> int:
    started = time.perf_counter()
    lines = []
    ok = True
    if compare is not None:
        P = _require_input(config)
        report = compare_check(P, load_quasi(compare), config.budget, config.jobs)
        lines.append(report.summary())
        ok = report.passed
    if suites:
        polytopes = [load_polytope(config.input)] if config.input else random_cases(config.seed, cases)
        vconf = VerifyConfig(suites=suites, t_samples=t_samples, seed=config.seed, budget=config.budget)
        result = verify(polytopes, vconf, config.jobs)
        lines.extend(result.lines())
        lines.append(f"{result.cases} case(s)")
        ok = ok and result.passed
    lines.append(f"{'PASS' if ok else 'FAIL'} overall in {time.perf_counter() - started:.1f}s")
    _emit("\n".join(lines) + "\n", config.out)
    return EXIT_OK if ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="realehrhart", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", type=Path, help="polytope JSON {\"name\", \"vertices\"}")
    common.add_argument("--kind", choices=[k.value for k in Kind], default="closed")
    common.add_argument("--out", type=Path, help="output file (default stdout)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="lattice enumeration budget")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for per-cell work")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("compute", parents=[common], help="emit the quasi-polynomial as JSON")
    ev = sub.add_parser("eval", parents=[common], help="evaluate L at one rational t")
    ev.add_argument("-t", required=True, help="rational such as 3/2 or -1")
    sub.add_parser("determined", parents=[common], help="emit the determined-set step function of a simplex")

    ver = sub.add_parser("verify", parents=[common], help="run verification suites")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--cases", type=int, default=25, help="random cases when no --input is given")
    ver.add_argument("--t-samples", type=int, default=10, help="positive t per case")
    for suite in SUITES:
        ver.add_argument(f"--{suite}", action="store_true", help=f"run the {suite} suite")
    ver.add_argument("--compare", type=Path, metavar="FILE", help="quasi-polynomial JSON to check against --input")
    return parser


def _attach_negative_t(argv: list[str]) -> list[str]:
    """Let ``-t -1/3`` through; argparse would read ``-1/3`` as an option."""
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "-t" and i + 1 < len(argv) and argv[i + 1].startswith(("-", "\u2212")):
            out.append("-t=" + argv[i + 1])
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_attach_negative_t(argv))
    try:
        t = exact.parse_rational(args.t) if getattr(args, "t", None) is not None else None
        config = RunConfig(args.input, Kind.parse(args.kind), args.out, args.budget, args.jobs,
                           getattr(args, "seed", 0), t)
        if args.command == "compute":
            return cmd_compute(config)
        if args.command == "eval":
            return cmd_eval(config)
        if args.command == "determined":
            return cmd_determined(config)
        suites = tuple(s for s in SUITES if getattr(args, s))
        if not suites and args.compare is None:
            suites = SUITES
        return cmd_verify(config, suites, args.cases, args.t_samples, args.compare)
    except (InputError, ValueError, ZeroDivisionError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
