"""Command-line entry point: run suites, write summary.json and CSV/.dat tables.

Exit codes: 0 all checks pass, 2 some check failed, 1 usage or configuration error.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from . import config as cfgmod

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2
SCHEMA = 1
COMMANDS = ("verify-delta", "verify-voronoi", "verify-poisson", "verify-chain", "verify-phase",
            "census-dioph", "count", "vdc-check", "scan-lfunc", "verify-hecke", "verify-lfunc",
            "all")
COUNT_KINDS = ("A", "B", "C", "rational")
THREAD_VARS = ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS")


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> Parser:
    common = Parser(add_help=False)
    common.add_argument("--out", default=None, help="output directory (default ./out)")
    common.add_argument("--threads", type=int, default=None,
                        help="thread cap for numerical kernels (env SWL_THREADS)")
    common.add_argument("--coeff-cache", default=None, help="binary coefficient cache path")
    common.add_argument("--config", default=None, help="TOML run configuration")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized corpora")

    parser = Parser(prog="deltalab", description="Numerical verification suites.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)
    for name in ("verify-delta", "verify-poisson", "verify-chain", "verify-phase",
                 "census-dioph", "vdc-check", "verify-hecke", "verify-lfunc", "all"):
        sub.add_parser(name, parents=[common])
    vor = sub.add_parser("verify-voronoi", parents=[common])
    vor.add_argument("--c-max", type=int, default=None)
    vor.add_argument("--n", type=int, action="append", default=None,
                     help="N values for h = bump on [N, 2N] (repeatable)")
    cnt = sub.add_parser("count", parents=[common])
    cnt.add_argument("kind", choices=COUNT_KINDS)
    scan = sub.add_parser("scan-lfunc", parents=[common])
    scan.add_argument("--form", default=None, choices=("eisenstein", "delta"))
    scan.add_argument("--t-min", type=float, default=None)
    scan.add_argument("--t-max", type=float, default=None)
    scan.add_argument("--step", type=float, default=None)
    return parser


def resolve_config(args) -> cfgmod.RunConfig:
    cfg = cfgmod.load(args.config) if args.config else cfgmod.RunConfig()
    if args.out is not None:
        cfg.out = args.out
    if args.seed is not None:
        cfg.seed = args.seed
    if args.coeff_cache is not None:
        cfg.coeff_cache = args.coeff_cache
    if args.threads is not None:
        cfg.threads = args.threads
    elif os.environ.get("SWL_THREADS"):
        try:
            cfg.threads = int(os.environ["SWL_THREADS"])
        except ValueError as exc:
            raise cfgmod.ConfigError("SWL_THREADS must be an integer") from exc
    if args.command == "verify-voronoi":
        if args.c_max is not None:
            cfg.voronoi.c_max = args.c_max
        if args.n is not None:
            cfg.voronoi.n_values = tuple(args.n)
    if args.command == "scan-lfunc":
        for key in ("form", "t_min", "t_max", "step"):
            value = getattr(args, key)
            if value is not None:
                setattr(cfg.lfunc, key, value)
    cfg.validate()
    if cfg.lfunc.t_max <= cfg.lfunc.t_min:
        raise cfgmod.ConfigError("t_max must exceed t_min")
    return cfg


def run_suites(command: str, cfg: cfgmod.RunConfig, kind: str = None) -> list:
    from . import suites as S

    tables = S.TableStore(cfg.coeff_cache)
    plan = {
        "verify-delta": lambda: [S.suite_delta(cfg.delta, cfg.seed)],
        "verify-voronoi": lambda: [S.suite_voronoi(cfg.voronoi, tables)],
        "verify-poisson": lambda: [S.suite_poisson(cfg.poisson)],
        "verify-chain": lambda: [S.suite_chain(cfg.chain, tables)],
        "verify-phase": lambda: [S.suite_phase(cfg.phase)],
        "census-dioph": lambda: [S.suite_census(cfg.dioph)],
        "count": lambda: [S.suite_count(cfg.dioph, kind)],
        "vdc-check": lambda: [S.suite_vdc(cfg.vdc, cfg.seed)],
        "verify-hecke": lambda: [S.suite_hecke(tables)],
        "verify-lfunc": lambda: [S.suite_lfunc(cfg.lfunc, cfg.seed, tables)],
        "scan-lfunc": lambda: [S.suite_scan(cfg.lfunc)],
    }
    if command != "all":
        return plan[command]()
    out = []
    for name in ("verify-hecke", "verify-delta", "verify-voronoi", "verify-poisson",
                 "verify-phase", "census-dioph"):
        out.extend(plan[name]())
    for k in COUNT_KINDS:
        out.append(S.suite_count(cfg.dioph, k))
    for name in ("vdc-check", "verify-lfunc", "verify-chain"):
        out.extend(plan[name]())
    return out


def write_outputs(out_dir: Path, command: str, cfg: cfgmod.RunConfig, results: list) -> dict:
    out_dir.mkdir(parents=True, exist_ok=True)
    for res in results:
        for name, (header, rows) in res.tables.items():
            with open(out_dir / f"{name}.csv", "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(header)
                for row in rows:
                    writer.writerow([_cell(v) for v in row])
        report = getattr(res, "report", None)
        if report is not None:
            report.write(out_dir / "lfunc_scan.csv", out_dir / "lfunc_scan.dat")
    failures = [f for res in results for f in res.failures()]
    summary = {
        "schema": SCHEMA,
        "command": command,
        "seed": cfg.seed,
        "config": cfgmod.as_dict(cfg) | {"out": None, "threads": None},
        "passed": not failures,
        "suites": [res.to_json() for res in results],
        "failures": failures,
    }
    text = json.dumps(summary, indent=2, sort_keys=True, default=str)
    (out_dir / "summary.json").write_text(text + "\n")
    return summary


def _cell(v):
    if isinstance(v, float):
        return repr(v)
    return v


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = resolve_config(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except cfgmod.ConfigError as exc:
        print(f"deltalab: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    for var in THREAD_VARS:
        os.environ[var] = str(cfg.threads)
    try:
        results = run_suites(args.command, cfg, getattr(args, "kind", None))
    except (ValueError, IndexError, MemoryError) as exc:
        print(f"deltalab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    summary = write_outputs(Path(cfg.out), args.command, cfg, results)
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} {res.suite}: {len(res.checks) - len(res.failures())}/{len(res.checks)}")
    for f in summary["failures"]:
        print(f"  failure {f['suite']} {f['case_id']}: expected {f['expected']}, "
              f"actual {f['actual']}")
    return EXIT_OK if summary["passed"] else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
