"""Scan |L(1/2 + it)| and write the envelope report as CSV and .dat."""
import argparse
import json
from pathlib import Path

from deltalab.lfunc import scan_envelope


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--form", default="eisenstein", choices=("eisenstein", "delta"))
    ap.add_argument("--t-min", type=float, default=10.0)
    ap.add_argument("--t-max", type=float, default=1000.0)
    ap.add_argument("--step", type=float, default=0.25)
    ap.add_argument("--out", default="out")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rep = scan_envelope(args.form, args.t_min, args.t_max, args.step)
    rep.write(out / "lfunc_scan.csv", out / "lfunc_scan.dat")
    print(json.dumps(rep.summary(), indent=2))


if __name__ == "__main__":
    main()
