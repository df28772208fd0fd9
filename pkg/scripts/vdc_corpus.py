"""van der Corput ratios for log phases (k = 4) over a range of primes."""
import argparse

import sympy

from deltalab.expsum import VdcRow, log_phase, vdc_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t", type=float, default=1e4)
    ap.add_argument("--n-exp", type=float, default=0.65)
    ap.add_argument("--primes", type=int, default=10)
    args = ap.parse_args()
    N = args.t ** args.n_exp
    print(" ".join(f"{h:>10}" for h in VdcRow.CSV_HEADER))
    p = 100
    for _ in range(args.primes):
        p = int(sympy.nextprime(p))
        row = vdc_check(log_phase(args.t, N, p, 1), 4)
        print(" ".join(f"{v:>10.4g}" if isinstance(v, float) else f"{v:>10}" for v in row.as_row()))


if __name__ == "__main__":
    main()
