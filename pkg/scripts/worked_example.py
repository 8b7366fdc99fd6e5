"""Reproduce the tetrahedron example: step functions, coefficient pieces, values and reciprocity."""
from fractions import Fraction

from realehrhart import Kind, RationalSimplex, determined_sets, eval_binomial_formula, simplex_coefficients
from realehrhart.oracle import brute_count_cell

TETRA = [(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)]


def show_coefficients(q):
    print(f"  window period {q.period} ({q.kind.value})")
    for k in reversed(range(q.dim + 1)):
        for iv, poly in q.coeffs[k].pieces:
            print(f"    c_{k} on {iv}: {poly}")


def main():
    s = RationalSimplex(TETRA)
    print(f"simplex {s}, denominator {s.denominator}")
    for kind in Kind:
        f = determined_sets(s, kind)
        print(f"{kind.value} determined sets: " + ", ".join(f"{iv} -> {c}" for iv, c in f.pieces))
    closed, open_ = simplex_coefficients(s, Kind.CLOSED), simplex_coefficients(s, Kind.OPEN)
    print("closed coefficients (polynomials in t on the window):")
    show_coefficients(closed)
    print("open coefficients:")
    show_coefficients(open_)

    print(f"\n{'t':>6} {'L closed':>9} {'brute':>6} {'L open':>7} {'brute':>6} {'L open(-t)':>11} {'binomial':>9}")
    for t in [Fraction(k, 4) for k in range(0, 17, 2)] + [Fraction(5, 3)]:
        bc = brute_count_cell(s, t, "closed")
        bo = brute_count_cell(s, t, "open") if t > 0 else "-"
        print(f"{str(t):>6} {str(closed(t)):>9} {bc:>6} {str(open_(t)):>7} {bo!s:>6} "
              f"{str(open_(-t)):>11} {str(eval_binomial_formula(s, t)):>9}")


if __name__ == "__main__":
    main()
