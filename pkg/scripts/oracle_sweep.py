"""Randomized sweep: assembled quasi-polynomials against brute-force counts and every identity.

Example: python3 scripts/oracle_sweep.py --cases 30 --seed 7 --suites oracle reciprocity
"""
import argparse
import time

from realehrhart.checks import SUITES, VerifyConfig, random_cases, verify


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cases", type=int, default=18)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-dim", type=int, default=3)
    parser.add_argument("--coord-bound", type=int, default=3)
    parser.add_argument("--denom-bound", type=int, default=4)
    parser.add_argument("--t-samples", type=int, default=10)
    parser.add_argument("--suites", nargs="+", choices=SUITES, default=[s for s in SUITES if s != "order"])
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    started = time.perf_counter()
    polytopes = random_cases(args.seed, args.cases, args.max_dim, args.coord_bound, args.denom_bound)
    for P in polytopes:
        print(f"{P.name}: N={P.ambient_dim} vertices={len(P.vertices)} d={P.denominator}")
    config = VerifyConfig(suites=tuple(args.suites), t_samples=args.t_samples, seed=args.seed)
    result = verify(polytopes, config, args.jobs)
    print("\n".join(result.lines()))
    print(f"{result.cases} cases in {time.perf_counter() - started:.1f}s: {'PASS' if result.passed else 'FAIL'}")
    raise SystemExit(0 if result.passed else 1)


if __name__ == "__main__":
    main()
