"""Command-line surface: reproducible experiments with machine-readable output.

Subcommands
-----------
lmsr solve     minimal-rotation index (booth | brute | dnc)
lmsr decide    is rotation k minimal?
ds build       deterministic sample of a string (JSON)
ds verify      check a sample against a string
match          leftmost/rightmost occurrences of a pattern
bench scaling  ledger totals over n = 2^min..2^max, CSV
recur ...      recurrence lab: master | function | decision | limit | fit

Inputs are byte strings, given inline (--text, encoded verbatim) or as a
raw file (--input).  Every subcommand echoes its full effective
configuration; all randomized outputs are reproducible from the flags plus
--seed.  Exit codes: 0 success, 1 I/O failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from .ledger import CostModel, QueryLedger
from .matching import match_full
from .recurrences import (
    fit_scaling,
    iterate_decision_recurrence,
    iterate_function_recurrence,
    master_solve,
    verify_limit,
)
from .sampling import DeterministicSample, build_ds, verify_ds
from .solver import FunctionParams, lmsr_decision, lmsr_function
from .strings import lmsr_booth, lmsr_brute

BENCH_COLUMNS = ["n", "grover", "minfind", "ds_build", "ds_match", "base", "total", "ratio"]


def _read_bytes(args) -> bytes:
    if (args.text is None) == (args.input is None):
        raise ValueError("provide exactly one input source: --text or --input")
    if args.text is not None:
        data = os.fsencode(args.text)
    else:
        with open(args.input, "rb") as fh:
            data = fh.read()
    if len(data) == 0:
        raise ValueError("input string must be non-empty")
    return data


def _model(args) -> CostModel:
    return CostModel.from_name(
        args.cost_model, c_g=args.cg, c_m=args.cm, c_d=args.cd, c_s=args.cs
    )


def _config(args, skip=("func",)) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(args, payload: dict) -> None:
    payload = dict(payload)
    payload["config"] = _config(args)
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        body = {k: v for k, v in payload.items() if k != "config"}
        print(" ".join(f"{k}={json.dumps(v, sort_keys=True)}" for k, v in sorted(body.items())))


def _charges(ledger: QueryLedger) -> dict:
    snap = ledger.snapshot()
    snap["total_ceil"] = math.ceil(snap["total"])
    return snap


def _add_model_flags(p) -> None:
    p.add_argument("--cost-model", default="quantum", choices=["quantum", "classical", "none"])
    p.add_argument("--cg", type=float, default=1.0)
    p.add_argument("--cm", type=float, default=1.0)
    p.add_argument("--cd", type=float, default=1.0)
    p.add_argument("--cs", type=float, default=1.0)


def _add_param_flags(p) -> None:
    p.add_argument("--c", type=float, default=2.0)
    p.add_argument("--d", type=float, default=2.0)
    p.add_argument("--n0", type=int, default=64)


def _add_input_flags(p) -> None:
    p.add_argument("--text", help="inline input string (bytes verbatim)")
    p.add_argument("--input", help="file of raw input bytes")


def cmd_lmsr_solve(args) -> int:
    s = _read_bytes(args)
    ledger = QueryLedger(_model(args))
    if args.algo == "booth":
        k = lmsr_booth(s)
    elif args.algo == "brute":
        k = lmsr_brute(s)
    else:
        k = lmsr_function(s, FunctionParams(args.c, args.d, args.n0), ledger, seed=args.seed)
    _emit(args, {"k": k, "algo": args.algo, "charges": _charges(ledger), "seed": args.seed})
    return 0


def cmd_lmsr_decide(args) -> int:
    s = _read_bytes(args)
    ledger = QueryLedger(_model(args))
    answer = lmsr_decision(s, args.k, ledger, seed=args.seed)
    _emit(args, {"answer": answer, "charges": _charges(ledger), "seed": args.seed})
    return 0


def cmd_ds_build(args) -> int:
    s = _read_bytes(args)
    ledger = QueryLedger(_model(args))
    ds = build_ds(s, args.seed, ledger)
    _emit(args, {"sample": ds.to_dict(), "charges": _charges(ledger), "seed": args.seed})
    return 0


def _load_sample(spec: str) -> DeterministicSample:
    text = spec
    if not spec.lstrip().startswith("{"):
        with open(spec, "r", encoding="utf-8") as fh:
            text = fh.read()
    payload = json.loads(text)
    if "sample" in payload:
        payload = payload["sample"]
    return DeterministicSample.from_dict(payload)


def cmd_ds_verify(args) -> int:
    s = _read_bytes(args)
    ds = _load_sample(args.sample)
    ok = verify_ds(s, ds)
    _emit(args, {"valid": ok, "sample": ds.to_dict()})
    return 0


def cmd_match(args) -> int:
    text = _read_bytes(args)
    pattern = os.fsencode(args.pattern)
    if len(pattern) == 0:
        raise ValueError("pattern must be non-empty")
    ledger = QueryLedger(_model(args))
    res = match_full(text, pattern, args.seed, ledger)
    _emit(
        args,
        {
            "found": res.found,
            "leftmost": res.leftmost,
            "rightmost": res.rightmost,
            "charges": _charges(ledger),
            "seed": args.seed,
        },
    )
    return 0


def _bench_reference(algo: str, n: int, d: float) -> float:
    if algo == "decision":
        return math.sqrt(n * math.log2(n) ** 3 * max(math.log2(math.log2(n)), 1.0))
    return math.sqrt(n) * 2.0 ** (d * math.sqrt(math.log2(n)))


def cmd_bench_scaling(args) -> int:
    if args.min_exp > args.max_exp:
        raise ValueError("empty exponent range")
    if args.trials < 1:
        raise ValueError("need at least one trial")
    model = _model(args)
    params = FunctionParams(args.c, args.d, args.n0)
    rows = []
    for e in range(args.min_exp, args.max_exp + 1):
        n = 2**e
        sums = {k: 0.0 for k in ("grover", "minfind", "ds_build", "ds_match", "base", "total")}
        for trial in range(args.trials):
            rng = np.random.default_rng(np.random.SeedSequence((args.seed, e, trial)))
            s = rng.integers(0, args.alphabet, n, dtype=np.uint8).tobytes()
            ledger = QueryLedger(model)
            if args.algo == "booth":
                lmsr_booth(s)
            elif args.algo == "brute":
                lmsr_brute(s, max_n=n)
            elif args.algo == "decision":
                k = int(rng.integers(0, n))
                lmsr_decision(s, k, ledger, seed=args.seed)
            else:
                lmsr_function(s, params, ledger, seed=args.seed)
            snap = ledger.snapshot()
            for key in sums:
                sums[key] += snap[key]
        means = {k: v / args.trials for k, v in sums.items()}
        ratio = means["total"] / _bench_reference(args.algo, n, args.d)
        rows.append([n] + [means[k] for k in BENCH_COLUMNS[1:-2]] + [means["total"], ratio])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    for row in rows:
        writer.writerow([row[0]] + [f"{v:.6f}" for v in row[1:]])
    out = buf.getvalue()
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def _parse_grid(spec: str) -> list[int]:
    """Grid syntax: '2^20..2^40' (doubling) or 'A..B' for plain integers."""

    def parse_point(tok: str) -> int:
        tok = tok.strip()
        if tok.startswith("2^"):
            return 2 ** int(tok[2:])
        return int(tok)

    if ".." in spec:
        lo, hi = (parse_point(t) for t in spec.split("..", 1))
        if lo < 2 or hi < lo:
            raise ValueError(f"bad grid {spec!r}")
        grid = []
        n = lo
        while n <= hi:
            grid.append(n)
            n *= 2
        return grid
    return [parse_point(spec)]


def _emit_csv_rows(args, header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    out = buf.getvalue()
    if getattr(args, "csv", None):
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def cmd_recur(args) -> int:
    if args.mode == "master":
        sol = master_solve(args.a, args.b, args.c, args.p)
        _emit(args, {"case": sol.case, "exponent": sol.exponent,
                     "log_power": sol.log_power, "growth": sol.describe()})
        return 0
    if args.mode == "function":
        rows = []
        for e in range(args.min_exp, args.max_exp + 1):
            n = 2**e
            value = iterate_function_recurrence(n, args.c, args.d, args.n0)
            bound = math.sqrt(n) * 2.0 ** (2.0 * args.d * math.sqrt(e))
            rows.append([n, f"{value:.6f}", f"{bound:.6f}", f"{value / bound:.8f}"])
        _emit_csv_rows(args, ["n", "value", "bound", "ratio"], rows)
        return 0
    if args.mode == "decision":
        rows = []
        for e in range(args.min_exp, args.max_exp + 1):
            n = 2**e
            value = iterate_decision_recurrence(n, args.kind)
            if args.kind == "preprocessed":
                bound = n * math.log2(n) ** 2
            else:
                bound = n * math.log2(n) ** 4 * max(math.log2(math.log2(n)), 1.0)
            rows.append([n, f"{value:.6f}", f"{bound:.6f}", f"{value / bound:.8f}"])
        _emit_csv_rows(args, ["n", "value", "bound", "ratio"], rows)
        return 0
    if args.mode == "limit":
        grid = _parse_grid(args.grid)
        ratios = verify_limit(args.c, grid)
        target = 1.0 / args.c**2
        rows = [
            [n, f"{r:.8f}", f"{target:.8f}", f"{r / target:.8f}"]
            for n, r in zip(grid, ratios)
        ]
        _emit_csv_rows(args, ["n", "value", "bound", "ratio"], rows)
        return 0
    # fit
    with open(args.input, "r", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        samples = [(int(row["n"]), float(row[args.column])) for row in reader]
    rep = fit_scaling(samples)
    _emit(args, {"slope": rep.slope, "intercept": rep.intercept,
                 "r_squared": rep.r_squared, "residual_max": rep.residual_max})
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="minrot", description=__doc__,
                                  formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="command", required=True)

    lmsr = sub.add_parser("lmsr", help="minimal rotation solvers")
    lsub = lmsr.add_subparsers(dest="subcommand", required=True)

    p = lsub.add_parser("solve", help="find the minimal-rotation index")
    _add_input_flags(p)
    p.add_argument("--algo", default="booth", choices=["booth", "brute", "dnc"])
    _add_model_flags(p)
    _add_param_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lmsr_solve)

    p = lsub.add_parser("decide", help="is rotation k minimal?")
    _add_input_flags(p)
    p.add_argument("--k", type=int, required=True)
    _add_model_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lmsr_decide)

    ds = sub.add_parser("ds", help="deterministic samples")
    dsub = ds.add_subparsers(dest="subcommand", required=True)

    p = dsub.add_parser("build", help="build a sample")
    _add_input_flags(p)
    _add_model_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ds_build)

    p = dsub.add_parser("verify", help="verify a sample")
    _add_input_flags(p)
    p.add_argument("--sample", required=True,
                   help="sample as inline JSON or a path to a JSON file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ds_verify)

    p = sub.add_parser("match", help="pattern occurrence search")
    _add_input_flags(p)
    p.add_argument("--pattern", required=True)
    _add_model_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_match)

    bench = sub.add_parser("bench", help="benchmarks")
    bsub = bench.add_subparsers(dest="subcommand", required=True)
    p = bsub.add_parser("scaling", help="ledger totals across sizes, CSV")
    p.add_argument("--algo", default="dnc", choices=["dnc", "decision", "booth", "brute"])
    p.add_argument("--min-exp", type=int, required=True)
    p.add_argument("--max-exp", type=int, required=True)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alphabet", type=int, default=256)
    _add_model_flags(p)
    _add_param_flags(p)
    p.add_argument("--csv", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_bench_scaling)

    recur = sub.add_parser("recur", help="recurrence lab")
    rsub = recur.add_subparsers(dest="mode", required=True)

    p = rsub.add_parser("master", help="classify a*T(n/b) + n^c log^p n")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_recur)

    p = rsub.add_parser("function", help="iterate the function-solver recurrence")
    p.add_argument("--c", type=float, default=2.0)
    p.add_argument("--d", type=float, default=2.0)
    p.add_argument("--n0", type=float, default=64.0)
    p.add_argument("--min-exp", type=int, default=10)
    p.add_argument("--max-exp", type=int, default=40)
    p.add_argument("--csv", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_recur)

    p = rsub.add_parser("decision", help="iterate the decision recurrences")
    p.add_argument("--kind", default="preprocessed", choices=["preprocessed", "plain"])
    p.add_argument("--min-exp", type=int, default=10)
    p.add_argument("--max-exp", type=int, default=40)
    p.add_argument("--csv", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_recur)

    p = rsub.add_parser("limit", help="block-count self-consistency ratios")
    p.add_argument("--c", type=float, default=2.0)
    p.add_argument("--grid", default="2^20..2^40")
    p.add_argument("--csv", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_recur)

    p = rsub.add_parser("fit", help="fit ledger totals from a benchmark CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--column", default="total")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_recur)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
