"""Print the dyadic family census for one parameter set."""
import argparse

from deltalab.dioph import family_census
from deltalab.summation import AnalyticParams


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t", type=float, default=1000.0)
    ap.add_argument("--N", type=float, default=200.0)
    ap.add_argument("--K", type=float, default=100.0)
    ap.add_argument("--p", type=int, default=101)
    args = ap.parse_args()
    P = AnalyticParams(args.t, args.N, args.K, args.p)
    print(f"Q = {P.Q:.3f}")
    print(f"{'q_block':>8} {'b_block':>12} {'size':>6} {'bound':>10} {'ratio':>7}")
    for qb, bb, size, bound, ratio in family_census(P):
        print(f"{qb:8d} {str(bb):>12} {size:6d} {bound:10.2f} {ratio:7.3f}")


if __name__ == "__main__":
    main()
