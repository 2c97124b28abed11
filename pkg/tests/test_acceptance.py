"""Acceptance criteria, one test each, at their stated tolerances.

Every test records a PASS/FAIL line (shown in the terminal summary) before
asserting, so a failing criterion is still reported alongside the others.
"""

import json
import math
import os
import subprocess
import sys
import time
from pathlib import Path

import pytest

from stieltjes_verify import catalog, duality as du
from stieltjes_verify.specfun import CATALAN, ZETA2, ZETA3

RESULTS = []
ROOT = Path(__file__).resolve().parents[1]
PI = math.pi


def record(n, name, ok, info=""):
    line = f"AC-{n:02d} {name}: {'PASS' if ok else 'FAIL'}  {info}".rstrip()
    RESULTS.append(line)
    print(line)
    assert ok, line


def timed(id, **kw):
    t0 = time.perf_counter()
    rec = catalog.verify_identity(id, **kw)
    return rec, time.perf_counter() - t0


def test_ac01_eq_1_1():
    rec, dt = timed("eq-1-1", tol=1e-7)
    ok = rec.passed and abs(rec.rhs - (PI * CATALAN - 1.75 * ZETA3)) < 1e-15 and dt < 5
    record(1, "eq-1-1", ok, f"abs_err={rec.abs_err:.2e} t={dt:.2f}s")


def test_ac02_prop_1_2_a():
    rec, dt = timed("prop-1-2-a", tol=1e-7)
    record(2, "prop-1-2-a", rec.passed and dt < 5, f"abs_err={rec.abs_err:.2e} t={dt:.2f}s")


def test_ac03_prop_1_2_b():
    a, _ = timed("prop-1-2-b", tol=1e-7)
    b, _ = timed("prop-1-2-b-cosh", tol=1e-7)
    ok = a.passed and b.passed and abs(a.rhs - 3.5 * ZETA3) < 1e-15 and abs(b.rhs - 1.75 * ZETA3) < 1e-15
    record(3, "prop-1-2-b", ok, f"arcsec abs_err={a.abs_err:.2e} cosh abs_err={b.abs_err:.2e}")


def test_ac04_tan_kernel():
    a, _ = timed("prop-1-2-c", tol=1e-6)
    b, _ = timed("prop-8-4-n2", tol=1e-6)
    ok = a.passed and b.passed and abs(a.rhs - 1.094380) < 1e-6
    record(4, "prop-1-2-c / prop-8-4-n2", ok, f"abs_err={a.abs_err:.2e}, {b.abs_err:.2e}")


def test_ac05_eq_2_1():
    a, dt = timed("eq-2-1", tol=1e-6)
    b, dt2 = timed("eq-2-1-doubled", tol=1e-6)
    ok = (a.passed and b.passed and dt < 2 and dt2 < 2
          and abs(a.rhs - (7 / 32 * ZETA3 - 3 / 16 * ZETA2)) < 1e-15 and abs(b.rhs - 2 * a.rhs) < 1e-15)
    record(5, "eq-2-1", ok, f"abs_err={a.abs_err:.2e} doubled={b.abs_err:.2e} t={dt:.2f}s")


def test_ac06_e_k():
    ids = [f"eq-2-2-k{k}" for k in (1, 2, 3)] + [f"eq-2-3-n{n}" for n in range(5)]
    recs = [catalog.verify_identity(i, tol=1e-6) for i in ids]
    conv = [catalog.verify_identity(i) for i in ("eq-2-2-convention", "eq-2-3-convention")]
    adjudicated = all(all(r["candidate_matches"] for r in c.detail["rows"]) for c in conv)
    ok = all(r.passed for r in recs) and adjudicated
    worst = max(r.abs_err for r in recs)
    record(6, "eq-2-2 / eq-2-3", ok, f"orders 1..7,9 (even 2,4,6) max_abs_err={worst:.2e}; "
           f"conventions adjudicated={adjudicated}")


def test_ac07_mzv_11():
    rec, _ = timed("mzv-11", tol=1e-8)
    record(7, "mzv-11", rec.passed, f"abs_err={rec.abs_err:.2e}")


def test_ac08_claim_3_3():
    recs = [catalog.verify_identity(f"claim-3-3-a{a:g}", tol=1e-8) for a in (0.25, 0.5, 0.75)]
    record(8, "claim-3-3", all(r.passed for r in recs),
           "abs_err=" + ", ".join(f"{r.abs_err:.1e}" for r in recs))


def test_ac09_thm_4_1():
    t0 = time.perf_counter()
    i = catalog.verify_identity("thm-4-1-int")
    s = catalog.verify_identity("thm-4-1-sum")
    dt = time.perf_counter() - t0
    pair = abs(i.lhs - s.lhs)
    ok = i.passed and s.passed and pair <= 1e-5 and abs(i.rhs - 0.0967489) < 1e-7 and dt < 30
    record(9, "thm-4-1", ok, f"integral-series={pair:.2e} t={dt:.2f}s")


def test_ac10_prop_5_1():
    a = catalog.verify_identity("prop-5-1-z1-n2", tol=1e-5)
    b = catalog.verify_identity("prop-5-1-z1-n3", tol=1e-5)
    g = catalog.verify_identity("prop-5-1-golden")
    ok = (a.passed and b.passed and abs(a.rhs - PI ** 4 / 8) < 1e-12
          and abs(b.rhs - 7 / 8 * PI ** 2 * ZETA3) < 1e-12 and g.suspect and "candidate_matches" in g.detail)
    record(10, "prop-5-1", ok, f"n2 abs_err={a.abs_err:.2e} n3 abs_err={b.abs_err:.2e}; golden: printed "
           f"{'matches' if g.detail['printed_matches'] else 'differs'}, candidate "
           f"{'matches' if g.detail['candidate_matches'] else 'differs'}")


def test_ac11_prop_5_2():
    recs = [catalog.verify_identity(f"prop-5-2-z{z:g}", tol=1e-6) for z in (0.25, 0.5, 0.9)]
    record(11, "prop-5-2", all(r.passed for r in recs),
           "abs_err=" + ", ".join(f"{r.abs_err:.1e}" for r in recs))


def test_ac12_thm_5_3():
    recs = [catalog.verify_identity(f"thm-5-3-parity-{i}", tol=1e-8) for i in range(1, 6)]
    ok = all(r.passed and r.detail["degree"] <= 8 and len(r.detail["rows"]) == 4 for r in recs)
    record(12, "thm-5-3", ok, f"max_abs_err={max(r.abs_err for r in recs):.2e}")


def test_ac13_prop_6_1():
    recs = [catalog.verify_identity(f"prop-6-1-{s}", tol=1e-6) for s in ("zpi6", "zpi3", "z0")]
    ok = all(r.passed for r in recs) and abs(recs[2].rhs - 1.547982) < 1e-6
    record(13, "prop-6-1", ok, "abs_err=" + ", ".join(f"{r.abs_err:.1e}" for r in recs))


def test_ac14_thm_7_1():
    recs = [catalog.verify_identity(f"thm-7-1-z{z:g}", tol=1e-7) for z in (0.25, 0.5, 0.9)]
    sign = catalog.verify_identity("thm-7-1-sign")
    only = all(r.detail["matching"] == ["wallis/minus"] for r in recs)
    ok = all(r.passed for r in recs) and sign.detail["candidate_matches"] and only
    record(14, "thm-7-1", ok, f"max_abs_err={max(r.abs_err for r in recs):.2e}; "
           f"matching variant={recs[0].detail['matching']}")


def test_ac15_thm_8_1():
    ids = [f"thm-8-1-{a}-{b}" for a in du.PAIR_NAMES for b in du.PAIR_NAMES]
    recs = [catalog.verify_identity(i, tol=1e-6) for i in ids]
    n3 = catalog.verify_identity("thm-8-1-n3", tol=1e-4)
    failed = [r.id for r in recs if not r.passed]
    ok = len(recs) == 25 and not failed and n3.passed
    record(15, "thm-8-1", ok, f"{25 - len(failed)}/25 pairs, n3 abs_err={n3.abs_err:.2e}")


def test_ac16_prop_8_2_jn():
    p2 = catalog.verify_identity("prop-8-2-n2", tol=1e-4)
    p3 = catalog.verify_identity("prop-8-2-n3", tol=1e-4)
    j2 = catalog.verify_identity("jn-2")
    j3 = catalog.verify_identity("jn-3")
    j4 = catalog.verify_identity("jn-4")
    cross2 = abs(p2.lhs - j2.lhs)
    cross3 = abs(p3.lhs - j3.lhs)
    ok = (p2.passed and p3.passed and j2.passed and j3.passed and cross2 <= 1e-4 and cross3 <= 1e-4
          and j4.suspect and "printed_matches" in j4.detail)
    record(16, "prop-8-2 / jn", ok, f"|n2-J2|={cross2:.1e} |n3-J3|={cross3:.1e} J3={j3.lhs:.9f}; "
           f"J4 printed {'matches' if j4.detail['printed_matches'] else 'differs'}, candidate "
           f"{'matches' if j4.detail['candidate_matches'] else 'differs'}")


def test_ac17_property_suites():
    files = ["tests/test_properties.py", "tests/test_kernels.py", "tests/test_quad.py",
             "tests/test_specfun.py"]
    r = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *files],
                       cwd=ROOT, capture_output=True, text=True, timeout=900)
    tail = r.stdout.strip().splitlines()[-1] if r.stdout.strip() else r.stderr[-200:]
    record(17, "property suites", r.returncode == 0, tail)


def test_ac18_full_run_deterministic():
    env = dict(os.environ, STIELTJES_VERIFY_SEED=os.environ.get("STIELTJES_VERIFY_SEED", "20240607"))
    cmd = [sys.executable, "-m", "stieltjes_verify", "verify", "--format", "json", "--no-timing"]
    outs, times = [], []
    for _ in range(2):
        t0 = time.perf_counter()
        r = subprocess.run(cmd, cwd=ROOT, env=env, capture_output=True, text=True, timeout=900)
        times.append(time.perf_counter() - t0)
        outs.append(r)
    recs = [json.loads(l) for l in outs[0].stdout.splitlines()]
    ok = (outs[0].returncode == 0 and outs[0].stdout == outs[1].stdout and len(recs) >= 20
          and max(times) < 300)
    record(18, "full verify run", ok, f"{len(recs)} records, t={times[0]:.1f}s/{times[1]:.1f}s, "
           f"identical={outs[0].stdout == outs[1].stdout}, {outs[0].stderr.strip()}")
