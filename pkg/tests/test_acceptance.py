"""Acceptance criteria 1-8 at their stated tolerances and time limits.

Each criterion records one PASS/FAIL line; conftest prints them after the run.
Run directly with ``python3 tests/test_acceptance.py`` to print the lines without pytest.
"""
import time

import pytest

from deltalab import config as cfgmod
from deltalab import suites as S

LINES = {}


def record(number, name, passed, elapsed, limit, detail):
    ok = passed and elapsed <= limit
    LINES[number] = (f"criterion {number} {name}: {'PASS' if ok else 'FAIL'} "
                     f"({elapsed:.0f}s of {limit}s) {detail}")
    print(LINES[number])
    return ok


def failed_ids(results, skip=()):
    return [f"{r.suite}:{c.case_id}" for r in results for c in r.checks
            if not c.passed and not c.case_id.startswith(skip)]


def timed(fn):
    start = time.monotonic()
    out = fn()
    return out, time.monotonic() - start


@pytest.mark.slow
def test_criterion_1_voronoi():
    cfg = cfgmod.VoronoiConfig()
    res, dt = timed(lambda: S.suite_voronoi(cfg, S.TableStore()))
    rows = res.tables["voronoi"][1]
    in_range = all(a <= 50 and c <= 50 and N <= 1000 for a, c, N, *_ in rows)
    worst = max(r[7] for r in rows)
    ok = record(1, "voronoi", res.passed and in_range and len(rows) >= 20 and worst <= 1e-6, dt,
                300, f"identities={len(rows)} max_rel_gap={worst:.2e}")
    assert ok, failed_ids([res])


@pytest.mark.slow
def test_criterion_2_delta():
    res, dt = timed(lambda: S.suite_delta(cfgmod.DeltaConfig()))
    diag = [c for c in res.checks if c.case_id.startswith("diagonal/")]
    off = [c for c in res.checks if c.case_id.startswith("off_diagonal/")]
    leak = [c for c in res.checks if c.case_id.startswith("failure_mode/")]
    shape = len(diag) >= 50 and len(off) > 0 and len(leak) > 1
    ok = record(2, "delta", res.passed and shape, dt, 60,
                f"diagonal={len(diag)} off_diagonal={len(off)} "
                f"off_max={res.metrics['off_diagonal_max']:.1e} leaks={len(leak) - 1}")
    assert ok, failed_ids([res])


@pytest.mark.slow
def test_criterion_3_chain():
    res, dt = timed(lambda: S.suite_chain(cfgmod.ChainConfig(), S.TableStore()))
    ladder = next(c for c in res.checks if c.case_id == "ladder/rel_err_strictly_decreasing")
    errs = [round(r["rel_err"], 4) for r in res.metrics["ladder"]]
    ok = record(3, "chain", ladder.passed, dt, 1800, f"rel_err={errs}")
    assert ok, ladder.actual


@pytest.mark.slow
def test_criterion_4_phase():
    res, dt = timed(lambda: S.suite_phase(cfgmod.PhaseConfig()))
    decay = [c for c in res.checks if c.case_id.endswith("/error_decay")]
    names = {c.case_id.split("/")[0].split("_")[0] for c in decay}
    shape = names == {"s2", "spa0", "stationaryphase", "vortransform"}
    frac = res.metrics["vortransform_extraction"]["worst_fraction"]
    ok = record(4, "phase", res.passed and shape and frac < 0.1, dt, 600,
                f"decay_families={len(decay)} vortransform_residual={frac:.3f}")
    assert ok, failed_ids([res])


@pytest.mark.slow
def test_criterion_5_counting():
    cfg = cfgmod.DiophConfig()

    def run_all():
        out = [S.suite_census(cfg)]
        out += [S.suite_count(cfg, k) for k in ("A", "B", "C", "rational")]
        return out

    results, dt = timed(run_all)
    # the p-trend is a module-level observation, not part of this criterion
    bad = failed_ids(results, skip=("trend/",))
    worst = max(max(v for v in r.metrics.get("fitted_C", {"x": 0}).values()) for r in results)
    worst = max(worst, max(results[0].metrics["max_ratio"]), max(results[-1].metrics["ratios"]))
    ok = record(5, "counting", not bad and worst <= 16, dt, 1200, f"max_C={worst:.2f}")
    assert ok, bad


@pytest.mark.slow
def test_criterion_6_vdc():
    res, dt = timed(lambda: S.suite_vdc(cfgmod.VdcConfig()))
    m = res.metrics
    ok = record(6, "van der Corput", res.passed, dt, 300,
                f"max_ratio log={m['max_ratio_log']:.2f} cubic={m['max_ratio_cubic']:.2f} "
                f"gauss_err={m['gauss_max_err']:.1e}")
    assert ok, failed_ids([res])


@pytest.mark.slow
def test_criterion_7_hecke():
    res, dt = timed(lambda: S.suite_hecke(S.TableStore()))
    ok = record(7, "hecke", res.passed, dt, 60,
                f"recursion_gap={res.metrics['recursion_max_gap']:.1e} "
                f"deligne_ratio={res.metrics['deligne_max_ratio']:.3f}")
    assert ok, failed_ids([res])


@pytest.mark.slow
def test_criterion_8_lfunc():
    cfg = cfgmod.LfuncConfig()
    res, dt = timed(lambda: S.suite_lfunc(cfg, cfgmod.DEFAULT_SEED, S.TableStore()))
    scan = res.metrics["scan"]
    envelopes = {"weyl", "subweyl"} <= set(scan["constants"])
    span = scan["t_min"] == 10.0 and scan["t_max"] == 1000.0
    ok = record(8, "L-functions", res.passed and envelopes and span, dt, 900,
                f"zeros={[round(z, 4) for z in res.metrics['zeros']]} "
                f"weyl_c={scan['constants']['weyl']:.3f} subweyl_c={scan['constants']['subweyl']:.3f}")
    assert ok, failed_ids([res])


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
