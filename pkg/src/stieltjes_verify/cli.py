"""Command-line front end: ``verify``, ``list`` and ``eval``."""

from __future__ import annotations

import argparse
import fnmatch
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import catalog, duality, series
from .report import _clean
from .specfun import DomainError, polylog

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def select_ids(patterns) -> list:
    """Registry ids matching any of the glob patterns, in registry order."""
    ids = [f.id for f in catalog.list_identities()]
    if not patterns:
        return ids
    chosen = set()
    for p in patterns:
        hit = fnmatch.filter(ids, p)
        if not hit:
            raise UsageError(f"no identity matches {p!r}")
        chosen.update(hit)
    return [i for i in ids if i in chosen]


def _run_one(args):
    id, tol, budget = args
    return catalog.verify_identity(id, tol=tol, budget=budget)


def _text_line(rec, timing: bool) -> str:
    status = "SUSPECT" if rec.suspect else ("PASS" if rec.passed else "FAIL")
    line = (f"{status:7s} {rec.id:34s} lhs={rec.lhs:.15g} rhs={rec.rhs:.15g} "
            f"abs_err={rec.abs_err:.3e} rel_err={rec.rel_err:.3e} n_evals={rec.n_evals}")
    if timing and rec.elapsed_ms is not None:
        line += f" {rec.elapsed_ms:.1f}ms"
    if rec.suspect and "candidate_matches" in rec.detail:
        line += (f" [printed {'matches' if rec.detail['printed_matches'] else 'differs'}, "
                 f"candidate {'matches' if rec.detail['candidate_matches'] else 'differs'}]")
    return line


def tally(records):
    """(passed, failed, suspect); suspect fixtures are counted only as suspect."""
    s = sum(1 for r in records if r.suspect)
    p = sum(1 for r in records if not r.suspect and r.passed)
    return p, len(records) - s - p, s


def cmd_verify(a) -> int:
    ids = select_ids(a.id)
    if a.tol is not None and not a.tol > 0:
        raise UsageError("--tol must be positive")
    if a.budget is not None and a.budget < 1:
        raise UsageError("--budget must be positive")
    if a.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    jobs = [(i, a.tol, a.budget) for i in ids]
    timing = not a.no_timing
    records = []

    def emit(rec):
        records.append(rec)
        print(rec.to_json(timing) if a.format == "json" else _text_line(rec, timing), flush=True)

    if a.jobs == 1:
        for j in jobs:
            emit(_run_one(j))
    else:
        with ProcessPoolExecutor(max_workers=a.jobs) as ex:
            # map yields in submission order, so output stays in registry order
            for rec in ex.map(_run_one, jobs):
                emit(rec)
    p, f, s = tally(records)
    print(f"passed {p} / failed {f} / suspect {s}", file=sys.stderr if a.format == "json" else sys.stdout)
    return EXIT_OK if f == 0 else EXIT_FAIL


def cmd_list(a) -> int:
    fx = [catalog.get_identity(i) for i in select_ids(a.id)]
    if a.format == "json":
        print(json.dumps([f.summary() for f in fx], indent=1))
    else:
        for f in fx:
            flag = " [typo-suspect]" if f.typo_suspect else ""
            print(f"{f.id:34s} {f.description} = {f.formula} (tol {f.tol:g}){flag}")
    return EXIT_OK


def _eval_result(a):
    op = a.op
    if op == "polylog":
        if a.n is None:
            raise UsageError("polylog needs --n")
        v = complex(polylog(a.n, complex(a.re, a.im)))
        return {"op": op, "n": a.n, "z": [a.re, a.im], "re": v.real, "im": v.imag, "err_est": None}
    if op == "jn":
        if a.n is None or a.n < 1:
            raise UsageError("jn needs --n >= 1")
        r = duality.j_n(a.n)
        return {"op": op, "n": a.n, "value": r.value, "err_est": r.err_est}
    if op == "hat":
        if a.pair is None or a.z is None:
            raise UsageError("hat needs --pair and --z")
        try:
            p = duality.get_pair(a.pair)
        except KeyError:
            raise UsageError(f"unknown pair {a.pair!r}; choose from {', '.join(duality.PAIR_NAMES)}")
        closed = float(p.hat_eval(a.z))
        num = duality.hat_transform_numeric(p, a.z)
        return {"op": op, "pair": a.pair, "z": a.z, "value": closed, "numeric": num.value,
                "err_est": num.err_est}
    if op == "tvalue":
        r = series.t_value_triple()
        return {"op": op, "value": r.value, "err_est": r.tail_bound}
    if op == "mzv-tail":
        r = series.mzv_tail_triple(inner_weight=a.weight)
        return {"op": op, "inner_weight": a.weight, "value": r.value, "err_est": r.tail_bound}
    if op == "e-even":
        if a.k is None:
            raise UsageError("e-even needs --k")
        return {"op": op, "k": a.k, "value": series.e_even(a.k), "err_est": 0.0}
    if op == "e-odd":
        if a.n is None:
            raise UsageError("e-odd needs --n")
        return {"op": op, "n": a.n, "value": series.e_odd(a.n), "err_est": 0.0}
    raise UsageError(f"unknown op {op!r}")


def cmd_eval(a) -> int:
    try:
        res = _eval_result(a)
    except (DomainError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if a.format == "json":
        print(json.dumps(_clean(res)))
    else:
        print(" ".join(f"{k}={v}" for k, v in res.items() if k != "op"))
    return EXIT_OK


EVAL_OPS = ("polylog", "jn", "hat", "tvalue", "mzv-tail", "e-even", "e-odd")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stieltjes-verify",
                                 description="Numerical verification of Catalan-type integral identities.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="run identity fixtures")
    v.add_argument("--id", action="append", metavar="GLOB", help="fixture id or glob (repeatable)")
    v.add_argument("--tol", type=float)
    v.add_argument("--budget", type=int)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--no-timing", action="store_true", help="omit elapsed times (reproducible output)")
    v.set_defaults(func=cmd_verify)

    ls = sub.add_parser("list", help="list fixtures")
    ls.add_argument("--id", action="append", metavar="GLOB")
    ls.add_argument("--format", choices=("text", "json"), default="text")
    ls.set_defaults(func=cmd_list)

    e = sub.add_parser("eval", help="evaluate a single operation")
    e.add_argument("op", choices=EVAL_OPS)
    e.add_argument("--n", type=int)
    e.add_argument("--k", type=int)
    e.add_argument("--re", type=float, default=0.0)
    e.add_argument("--im", type=float, default=0.0)
    e.add_argument("--pair")
    e.add_argument("--z", type=float)
    e.add_argument("--weight", choices=("2l", "l"), default="2l")
    e.add_argument("--format", choices=("text", "json"), default="text")
    e.set_defaults(func=cmd_eval)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on bad usage, 0 on --help
        return int(exc.code or 0)
    try:
        return a.func(a)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
