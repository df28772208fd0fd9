"""Run the transformation chain along a t-ladder and print rel_err per stage."""
import argparse

from deltalab.forms import form_table
from deltalab.summation import chain_params, chain_verify, chain_windows, default_chain_weights


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t", type=float, action="append", help="ladder values (repeatable)")
    args = ap.parse_args()
    W, V = default_chain_weights()
    print(f"{'t':>7} {'N':>8} {'K':>7} {'p':>5} {'rel_err':>10} {'transform_gap':>14} {'sec':>6}")
    for t in args.t or [400.0, 800.0, 1600.0]:
        P = chain_params(t)
        (_, n_hi), _ = chain_windows(P, W, V)
        rep = chain_verify(form_table("delta", max(n_hi, int(2 * P.N) + 1)), P, W)
        print(f"{t:7g} {P.N:8.2f} {P.K:7.2f} {P.p:5d} {rep.rel_err:10.3e} "
              f"{rep.transform_gap:14.3e} {rep.budget['seconds']:6.1f}")


if __name__ == "__main__":
    main()
