"""Command line entry point: ``transfinia gen|eval|check|replay|report``.

Exit codes: 0 when everything passes, 1 when a check or comparison fails,
2 for usage, parse and schema errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import oracles as O
from . import suites as S
from .diff_core import UNDEFINED, HybridSpec, eval_diff, eval_hybrid
from .matrices import OmegaChangeMatrix, eval_matrix_diff, validate_matrix
from .ordinals import Ordinal, ParseError, classify, fundamental_seq, parity, parse, to_json
from .serialize import SchemaError, canonical, load
from .staged_sets import INCREASING, CoStagedSet, SeqSpec, StagedSet, WellOrder
from .tree_system import CellDecomposition, build_tree, recover_membership
from . import weihrauch as Wh

BOUNDS_ENV = "TRANSFINIA_SUITE_BOUNDS"


class UsageError(Exception):
    pass


def _err(msg: str) -> int:
    print(f"transfinia: error: {msg}", file=sys.stderr)
    return 2


def _parse_ordinal(text: str) -> Ordinal:
    try:
        return parse(text)
    except ParseError as exc:
        raise UsageError(f"bad ordinal {text!r}: {exc}") from exc


def _env_bounds() -> dict:
    raw = os.environ.get(BOUNDS_ENV)
    if not raw:
        return {}
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{BOUNDS_ENV} is not valid JSON: {exc.msg} at column {exc.colno}") from exc
    if not isinstance(data, dict) or not all(isinstance(v, dict) for v in data.values()):
        raise UsageError(f"{BOUNDS_ENV} must map suite names to objects of bounds")
    unknown = sorted(set(data) - set(S.SUITES))
    if unknown:
        raise UsageError(f"{BOUNDS_ENV} names unknown suites: {', '.join(unknown)}")
    return data


def _selected(names) -> list:
    if names is None:
        return list(S.DEFAULT_SUITES)
    names = [n.strip() for arg in names for n in arg.split(",") if n.strip()]
    unknown = [n for n in names if n not in S.SUITES]
    if unknown:
        raise UsageError(f"unknown suite {unknown[0]!r}; choose from {', '.join(S.SUITES)}")
    return list(dict.fromkeys(names))


def _config(args) -> dict:
    cfg = {"seed": args.seed}
    if args.eta:
        cfg["etas"] = [to_json(_parse_ordinal(e)) for e in args.eta]
    return cfg


def _plan(args):
    cfg = _config(args)
    env = _env_bounds()
    plan = []
    for name in _selected(args.suite):
        bounds = S.default_bounds(name, env, args.universe)
        plan.append((name, bounds, S.suite_cases(name, cfg, bounds)))
    return cfg, plan


def _run_cases(name: str, cases: list, jobs: int) -> list:
    payloads = [p for _, p in cases]
    if jobs <= 1:
        return [S.run_case(name, p) for p in payloads]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda p: S.run_case(name, p), payloads))


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------

def cmd_check(args) -> int:
    cfg, plan = _plan(args)
    sections, total_failures = [], 0
    for name, bounds, cases in plan:
        started = time.perf_counter()
        results = _run_cases(name, cases, args.jobs)
        failures = [
            {"suite": name, "case": cid, "payload": payload, "detail": detail}
            for (cid, payload), (ok, detail) in zip(cases, results)
            if not ok
        ]
        total_failures += len(failures)
        sections.append({
            "name": name,
            "description": S.SUITES[name].description,
            "bounds": bounds,
            "cases": len(cases),
            "passed": len(cases) - len(failures),
            "failures": failures,
        })
        elapsed = time.perf_counter() - started
        print(f"{name}: {len(cases) - len(failures)}/{len(cases)} passed in {elapsed:.2f}s", file=sys.stderr)
    report = {
        "kind": "report",
        "config": cfg,
        "suites": sections,
        "failures": total_failures,
        "ok": total_failures == 0,
    }
    _write(canonical(report), args.out)
    return 0 if report["ok"] else 1


def _witnesses(data) -> list:
    if isinstance(data, dict) and data.get("kind") == "report":
        return [w for s in data["suites"] for w in s["failures"]]
    if isinstance(data, dict) and {"suite", "payload"} <= set(data):
        return [data]
    if isinstance(data, list):
        return [w for d in data for w in _witnesses(d)]
    raise SchemaError("expected a report, a failure witness or a list of witnesses")


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def cmd_replay(args) -> int:
    """Re-run every failure witness; exit 1 when any of them still fails."""
    witnesses = _witnesses(_read_json(args.report))
    reproduced = 0
    for w in witnesses:
        if w["suite"] not in S.SUITES:
            raise SchemaError(f"witness names unknown suite {w['suite']!r}")
        ok, detail = S.run_case(w["suite"], w["payload"])
        status = "passes now" if ok else "reproduced"
        reproduced += not ok
        print(f"{w['suite']}/{w.get('case', '?')}: {status}")
    print(f"{reproduced}/{len(witnesses)} failures reproduced")
    return 1 if reproduced else 0


def cmd_report(args) -> int:
    data = _read_json(args.report)
    if not isinstance(data, dict) or data.get("kind") != "report":
        raise SchemaError("expected a report written by 'transfinia check'")
    width = max((len(s["name"]) for s in data["suites"]), default=5)
    for s in data["suites"]:
        mark = "ok" if not s["failures"] else "FAIL"
        print(f"{s['name']:<{width}}  {s['passed']:>6}/{s['cases']:<6} {mark}")
        for w in s["failures"][: args.show]:
            print(f"  {w['case']}: {json.dumps(w['detail'], sort_keys=True)[:200]}")
    print(f"{'total':<{width}}  {data['failures']} failure(s)")
    return 0 if data["ok"] else 1


def cmd_gen(args) -> int:
    cfg, plan = _plan(args)
    out = Path(args.out)
    count = 0
    for name, _, cases in plan:
        target = out / name
        target.mkdir(parents=True, exist_ok=True)
        for cid, payload in cases:
            doc = {"kind": "case", "suite": name, "case": cid, "payload": payload}
            (target / f"{cid}.json").write_text(canonical(doc))
            count += 1
    print(f"wrote {count} cases to {out}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# eval: one result from the library, one from an independent oracle

def _jv(v):
    if v is UNDEFINED or v is None:
        return "undefined"
    if isinstance(v, Ordinal):
        return to_json(v)
    if isinstance(v, frozenset):
        return sorted(v)
    if isinstance(v, (list, tuple)):
        return [_jv(a) for a in v]
    return v


def _eval_ordinal(a: Ordinal) -> dict:
    info = {"normal_form": str(a), "class": type(classify(a)).__name__.lower()}
    if a.is_limit:
        info["fundamental_sequence"] = [str(fundamental_seq(a, k)) for k in range(4)]
    return {"result": {"parity": parity(a), **info}, "oracle": {"parity": O.nested_parity(a)}}


def _seq_oracle(seq: SeqSpec):
    if seq.length.is_finite:
        sets = [seq.slice(i).final for i in range(int(seq.length))]
        return O.nested_diff_inc(sets) if seq.direction == INCREASING else O.nested_diff_dec(sets)
    return S.transfinite_oracle(seq)


def _eval_object(obj) -> dict:
    if isinstance(obj, Ordinal):
        return _eval_ordinal(obj)
    if isinstance(obj, SeqSpec):
        return {"result": _jv(eval_diff(obj)), "oracle": _jv(_seq_oracle(obj))}
    if isinstance(obj, HybridSpec):
        res = _jv(eval_hybrid(obj))
        out = {"result": res}
        if obj == HybridSpec(obj.c, obj.seq):
            d = _seq_oracle(obj.seq)
            out["oracle"] = [int(x in d) for x in range(obj.seq.size)]
        return out
    if isinstance(obj, OmegaChangeMatrix):
        problems = validate_matrix(obj)
        return {
            "result": [eval_matrix_diff(obj, x) for x in range(obj.size)],
            "oracle": [O.matrix_value_oracle(obj, x) for x in range(obj.size)],
            "violations": [str(p) for p in problems],
        }
    if isinstance(obj, CellDecomposition):
        tree = build_tree(obj)
        sets = [frozenset(x for x in range(obj.size) if obj.theta[x][n] is not None) for n in range(obj.levels)]
        d = O.nested_diff_dec(sets)
        return {
            "result": [recover_membership(obj, x, tree) for x in range(obj.size)],
            "oracle": [int(x in d) for x in range(obj.size)],
        }
    if isinstance(obj, StagedSet):
        return {
            "result": {"min": _jv(Wh.lnp_pi11(obj) if obj.final else None), "count": Wh.count_pi11(obj)},
            "oracle": {"min": _jv(O.brute_min(obj.final)), "count": O.brute_count(obj.final)},
        }
    if isinstance(obj, CoStagedSet):
        return {
            "result": {"min": _jv(Wh.lnp_sigma11(obj) if obj.final else None), "count": Wh.count_sigma11(obj)},
            "oracle": {"min": _jv(O.brute_min(obj.final)), "count": O.brute_count(obj.final)},
        }
    if isinstance(obj, tuple) and len(obj) == 2:
        s, y = obj
        want = 0
        if isinstance(y, WellOrder) and s.final:
            want = y.par(min(s.final, key=lambda n: y.rank[n]))
        if isinstance(s, StagedSet):
            return {"result": Wh.lnp_wo_two_valued(s, y), "oracle": want if isinstance(y, WellOrder) else 0}
        res = Wh.sigma_lnp_wo_two_valued(s, y)
        return {"result": res, "oracle": Wh.sigma_lnp_wo_by_changes(s, y)}
    raise SchemaError(f"nothing to evaluate for {type(obj).__name__}")


def _agrees(result, oracle) -> bool:
    """Every field the oracle defines matches the result."""
    if isinstance(oracle, dict) and isinstance(result, dict):
        return all(result.get(k) == v for k, v in oracle.items())
    return result == oracle


def cmd_eval(args) -> int:
    target = args.input
    if Path(target).is_file():
        data = _read_json(target)
        if isinstance(data, dict) and data.get("kind") == "case":
            ok, detail = S.run_case(data["suite"], data["payload"])
            out = {"suite": data["suite"], "case": data["case"], "ok": ok, "detail": detail}
            sys.stdout.write(canonical(out))
            return 0 if ok else 1
        obj = load(data)
    elif target.endswith(".json") or os.sep in target:
        raise UsageError(f"no such file: {target}")
    else:
        obj = _parse_ordinal(target)
    out = _eval_object(obj)
    sys.stdout.write(canonical(out))
    agree = _agrees(out.get("result"), out.get("oracle", out.get("result")))
    if isinstance(obj, OmegaChangeMatrix) and out["violations"]:
        agree = False
    return 0 if agree else 1


# ---------------------------------------------------------------------------

def _add_run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="base seed for every random case (default 0)")
    p.add_argument("--universe", type=int, help="override the universe bound of every suite")
    p.add_argument("--eta", action="append", metavar="ORD", help="restrict random lengths to these ordinals, e.g. 'w+1'")
    p.add_argument("--suite", action="append", metavar="NAME", help="suites to run, comma separated or repeated; an empty value selects none (default: all but 'negative')")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="transfinia", description="Difference hierarchies over ordinals below epsilon_0.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run property suites and write a report")
    _add_run_options(p)
    p.add_argument("--out", help="report path (default stdout)")
    p.add_argument("--jobs", type=int, default=1, help="worker threads; the report does not depend on it")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="write suite cases as JSON files")
    _add_run_options(p)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("eval", help="evaluate an ordinal literal or a JSON document")
    p.add_argument("input", help="ordinal literal such as 'w^2+1', or a path to a JSON document")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("replay", help="re-run the failure witnesses in a report")
    p.add_argument("report")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("report", help="summarize a report")
    p.add_argument("report")
    p.add_argument("--show", type=int, default=3, help="failures shown per suite")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if getattr(args, "jobs", 1) < 1:
        return _err("--jobs must be at least 1")
    if getattr(args, "universe", None) is not None and args.universe < 0:
        return _err("--universe must be non-negative")
    try:
        return args.func(args)
    except (UsageError, SchemaError, ParseError) as exc:
        return _err(str(exc))


if __name__ == "__main__":
    sys.exit(main())
