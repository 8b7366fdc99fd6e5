"""Print L(P, t) along a fine grid of real (rational) dilations for a polytope file, next to brute-force counts."""
import argparse
import json
from fractions import Fraction
from pathlib import Path

from realehrhart import RationalPolytope, brute_count, polytope_quasi, triangulate


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("polytope", type=Path, nargs="?",
                        default=Path(__file__).resolve().parent.parent / "data" / "half_triangle.json")
    parser.add_argument("--upper", default="3", help="largest t")
    parser.add_argument("--step", default="1/12")
    args = parser.parse_args()

    P = RationalPolytope.from_dict(json.loads(args.polytope.read_text()))
    dec = triangulate(P)
    closed, open_ = polytope_quasi(P, "closed", decomposition=dec), polytope_quasi(P, "open", decomposition=dec)
    print(f"{P.name}: dim {P.dim}, denominator {P.denominator}, stored period {closed.period}")
    for k in reversed(range(P.dim + 1)):
        print(f"c_{k} (closed): " + "; ".join(f"{iv}: {p}" for iv, p in closed.coeffs[k].pieces))
    step, upper = Fraction(args.step), Fraction(args.upper)
    t, mismatches = step, 0
    print(f"{'t':>7} {'closed':>7} {'open':>5}")
    while t <= upper:
        c, o = closed(t), open_(t)
        mismatches += (c != brute_count(dec, t, "closed")) + (o != brute_count(dec, t, "open"))
        print(f"{str(t):>7} {str(c):>7} {str(o):>5}")
        t += step
    print(f"brute-force mismatches: {mismatches}")


if __name__ == "__main__":
    main()
