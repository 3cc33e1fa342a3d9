"""Command-line surface: reproducible suites, witnesses, search, dual norms.

Subcommands
-----------
verify    run a named property suite, write JSON-lines reports
examples  run the fixed counterexample witnesses and compare to references
search    run a counterexample search from a JSON config file
dualnorm  closed-form dual weighted k-norm vs the brute-force oracle
inspect   build one of the structural matrices and print it as JSON

Exit codes: 0 success, 1 check failure, 2 malformed flags or config.
Seeds resolve as: --seed flag, else LEIBNIZ_LAB_SEED env var, else 0.
JSON numbers are written with 17 significant digits so re-running a command
with the same flags reproduces byte-identical output (wall time excluded).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .knorms import ENUMERATION_CAP, dual_norm_bruteforce, dual_weighted_k_norm, k_norm
from .operators import PiecewiseLinearFn, deflated_theta, divided_difference_matrix, theta_matrix
from .search import (
    RECIPROCAL_REFERENCE,
    RECIPROCAL_WITNESS_ADJUSTED,
    SearchConfig,
    VSHAPE_REFERENCE,
    reproduce_known_counterexamples,
    search as run_search,
)
from .serialize import dumps, write_jsonl
from .suites import SUITES
from .verify import check_strong_leibniz
from .core import ProbVector

SUITE_CHOICES = tuple(SUITES) + ("all",)


@dataclass
class RunManifest:
    command: str
    config: dict
    seed: int
    version: str = __version__
    wall_time_s: float = 0.0
    outputs: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "config": self.config,
            "seed": self.seed,
            "version": self.version,
            "wall_time_s": self.wall_time_s,
            "outputs": self.outputs,
        }


def _resolve_seed(value) -> int:
    if value is not None:
        return int(value)
    env = os.environ.get("LEIBNIZ_LAB_SEED")
    return int(env) if env else 0


def _parse_vector(text: str) -> np.ndarray:
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = [float(tok) for tok in text.replace(",", " ").split()]
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"expected a flat numeric list, got {text!r}")
    return arr


def _write_manifest(manifest: RunManifest, out_dir: str) -> str:
    path = os.path.join(out_dir, "manifest.json")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(manifest.to_dict()))
        fh.write("\n")
    return path


def cmd_verify(args) -> int:
    seed = _resolve_seed(args.seed)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    started = time.perf_counter()
    outcomes = []
    for name in names:
        kwargs = {"trials": args.trials, "seed": seed}
        if args.n is not None:
            kwargs["n_max"] = args.n
        if args.tol is not None:
            kwargs["tol"] = args.tol
        if name == "strong-leibniz" and args.p is not None:
            kwargs["p"] = math.inf if args.p == "inf" else float(args.p)
        outcomes.append(SUITES[name](**kwargs))
    ok = all(o.ok for o in outcomes)

    if args.out:
        os.makedirs(args.out, exist_ok=True)
        outputs = []
        for o in outcomes:
            path = os.path.join(args.out, f"suite_{o.name}.jsonl")
            write_jsonl(path, (r.to_dict() for r in o.reports))
            outputs.append(path)
        manifest = RunManifest(
            command="verify",
            config={"suite": args.suite, "trials": args.trials, "n": args.n,
                    "tol": args.tol, "p": args.p},
            seed=seed,
            wall_time_s=time.perf_counter() - started,
            outputs=outputs,
        )
        _write_manifest(manifest, args.out)

    if args.json:
        payload = [
            {"suite": o.name, "ok": o.ok, "theorem_backed": o.theorem_backed,
             "checks": o.trials, "failures": len(o.failures),
             "worst_slack": o.worst_slack, "notes": o.notes}
            for o in outcomes
        ]
        print(dumps(payload))
    else:
        for o in outcomes:
            print(o.summary())
            for note in o.notes:
                print(f"    {note}")
    return 0 if ok else 1


def _reference_match(report, reference, tol: float | None) -> dict:
    tol = reference["tol"] if tol is None else tol
    return {
        "reference_lhs": reference["lhs"],
        "reference_rhs": reference["rhs"],
        "lhs_match": abs(report.lhs - reference["lhs"]) <= tol,
        "rhs_match": abs(report.rhs - reference["rhs"]) <= tol,
        "tolerance": tol,
    }


def cmd_examples(args) -> int:
    rep_inverse, rep_vshape = reproduce_known_counterexamples()
    cmp_inverse = _reference_match(rep_inverse, RECIPROCAL_REFERENCE, args.tol)
    cmp_vshape = _reference_match(rep_vshape, VSHAPE_REFERENCE, args.tol)

    adjusted = check_strong_leibniz(
        ProbVector(np.asarray(RECIPROCAL_WITNESS_ADJUSTED["mu"])),
        np.asarray(RECIPROCAL_WITNESS_ADJUSTED["f"]), 1.0)
    adjusted.name = "strong_leibniz_reciprocal_witness_adjusted"
    cmp_adjusted = _reference_match(adjusted, RECIPROCAL_REFERENCE, args.tol)

    entries = [(rep_inverse, cmp_inverse), (rep_vshape, cmp_vshape), (adjusted, cmp_adjusted)]
    records = []
    for rep, compare in entries:
        rec = rep.to_dict()
        rec["violation_confirmed"] = not rep.passed
        rec["reference"] = compare
        records.append(rec)

    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, "examples.jsonl")
        write_jsonl(path, records)

    if args.json:
        print(dumps(records))
    else:
        for rec in records:
            ref = rec["reference"]
            status = "confirmed" if rec["violation_confirmed"] else "NOT confirmed"
            match = "matches references" if ref["lhs_match"] and ref["rhs_match"] else (
                f"reference mismatch (computed lhs={rec['lhs']:.6f} rhs={rec['rhs']:.6f}, "
                f"reference lhs={ref['reference_lhs']} rhs={ref['reference_rhs']})")
            print(f"{rec['name']}: violation {status}; {match}")

    ok = all(r["violation_confirmed"] and r["reference"]["lhs_match"] and r["reference"]["rhs_match"]
             for r in records)
    return 0 if ok else 1


def cmd_search(args) -> int:
    try:
        with open(args.config, encoding="utf-8") as fh:
            raw = json.load(fh)
        if args.seed is not None:
            raw["seed"] = int(args.seed)
        raw.setdefault("seed", _resolve_seed(None))
        if "p_grid" in raw:
            raw["p_grid"] = [math.inf if p == "inf" else float(p) for p in raw["p_grid"]]
        config = SearchConfig.from_dict(raw)
    except (OSError, ValueError, TypeError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: bad search config: {exc}", file=sys.stderr)
        return 2

    started = time.perf_counter()
    result = run_search(config)
    payload = {
        "config": config.to_dict(),
        "best_violation": result.best_violation,
        "best_p": "inf" if math.isinf(result.best_p) else result.best_p,
        "per_p": {("inf" if math.isinf(p) else repr(p)): v for p, v in result.per_p.items()},
        "witness": result.witness,
        "verdict": result.verdict(),
    }

    if args.out:
        os.makedirs(args.out, exist_ok=True)
        outputs = []
        result_path = os.path.join(args.out, "search_result.json")
        with open(result_path, "w", encoding="utf-8") as fh:
            fh.write(dumps(payload))
            fh.write("\n")
        outputs.append(result_path)
        per_p_path = os.path.join(args.out, "per_p.csv")
        with open(per_p_path, "w", encoding="utf-8") as fh:
            fh.write("p,best_violation\n")
            for p, v in result.per_p.items():
                fh.write(f"{'inf' if math.isinf(p) else repr(p)},{v:.17g}\n")
        outputs.append(per_p_path)
        if args.history_csv:
            hist_path = os.path.join(args.out, "history.csv")
            with open(hist_path, "w", encoding="utf-8") as fh:
                fh.write("trial,best_violation\n")
                for i, v in enumerate(result.history):
                    fh.write(f"{i},{v:.17g}\n")
            outputs.append(hist_path)
        manifest = RunManifest(
            command="search", config=config.to_dict(), seed=config.seed,
            wall_time_s=time.perf_counter() - started, outputs=outputs)
        _write_manifest(manifest, args.out)

    if args.json:
        print(dumps(payload))
    else:
        print(payload["verdict"])
        for p, v in payload["per_p"].items():
            print(f"  p={p}: best violation {v:.6g}")
    return 0


def cmd_dualnorm(args) -> int:
    try:
        x = _parse_vector(args.x)
        w = _parse_vector(args.w)
        k = int(args.k)
        formula = dual_weighted_k_norm(x, w, k)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    record = {"x": x.tolist(), "w": w.tolist(), "k": k, "formula": formula}
    if x.size <= ENUMERATION_CAP:
        oracle = dual_norm_bruteforce(x, w, k)
        record["oracle"] = oracle
        record["difference"] = formula - oracle
    if np.all(w == w[0]) and w[0] == 1.0:
        record["constant_weight_form"] = max(k_norm(x, 1), k_norm(x, x.size) / k)

    if args.json:
        print(dumps(record))
    else:
        line = f"formula={formula:.12g}"
        if "oracle" in record:
            line += f" oracle={record['oracle']:.12g} difference={record['difference']:.3g}"
        if "constant_weight_form" in record:
            line += f" max(linf, l1/k)={record['constant_weight_form']:.12g}"
        print(line)
    return 0


def cmd_inspect(args) -> int:
    try:
        x = _parse_vector(args.x)
        if args.matrix == "theta":
            M = theta_matrix(x)
        elif args.matrix == "deflated":
            M = deflated_theta(x)
        else:
            phi = PiecewiseLinearFn.from_dict(json.loads(args.phi)) if args.phi \
                else PiecewiseLinearFn.identity()
            M = divided_difference_matrix(x, phi)
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    record = {
        "matrix": args.matrix,
        "n": int(M.shape[0]),
        "entries": [float(v) for v in M.reshape(-1)],
        "row_sum_max_abs": float(np.max(np.abs(M.sum(axis=1)))),
        "symmetric": bool(np.max(np.abs(M - M.T)) <= 1e-12),
    }
    print(dumps(record))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leibnizlab",
        description="Numerical checks for Leibniz-type inequalities on finite probability spaces",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a property suite")
    p_verify.add_argument("--suite", choices=SUITE_CHOICES, required=True)
    p_verify.add_argument("--trials", type=int, default=1000)
    p_verify.add_argument("--n", type=int, default=None, help="largest state-space size")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--tol", type=float, default=None)
    p_verify.add_argument("--p", default=None, help="exponent for the strong-leibniz sweep")
    p_verify.add_argument("--out", default=None, help="directory for JSON-lines reports")
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    p_examples = sub.add_parser("examples", help="run the fixed counterexample witnesses")
    p_examples.add_argument("--tol", type=float, default=None,
                            help="override the reference comparison tolerances")
    p_examples.add_argument("--out", default=None)
    p_examples.add_argument("--json", action="store_true")
    p_examples.set_defaults(func=cmd_examples)

    p_search = sub.add_parser("search", help="randomized counterexample search")
    p_search.add_argument("--config", required=True, help="JSON search configuration")
    p_search.add_argument("--seed", type=int, default=None, help="override the config seed")
    p_search.add_argument("--out", default=None)
    p_search.add_argument("--history-csv", action="store_true",
                          help="also write the per-trial best curve as CSV")
    p_search.add_argument("--json", action="store_true")
    p_search.set_defaults(func=cmd_search)

    p_dual = sub.add_parser("dualnorm", help="dual weighted k-norm, formula vs oracle")
    p_dual.add_argument("--x", required=True, help="vector, JSON or comma-separated")
    p_dual.add_argument("--w", required=True, help="weight vector (decreasing positive)")
    p_dual.add_argument("--k", required=True, type=int)
    p_dual.add_argument("--json", action="store_true")
    p_dual.set_defaults(func=cmd_dualnorm)

    p_inspect = sub.add_parser("inspect", help="print a structural matrix as JSON")
    p_inspect.add_argument("--x", required=True)
    p_inspect.add_argument("--matrix", choices=("theta", "deflated", "divided"), default="theta")
    p_inspect.add_argument("--phi", default=None, help="piecewise-linear spec as JSON")
    p_inspect.set_defaults(func=cmd_inspect)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def entrypoint() -> None:
    sys.exit(main())
