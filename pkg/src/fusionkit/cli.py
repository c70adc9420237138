"""Command-line driver: ``fusionkit analyze | verify | conjecture``.

Exit codes: 0 all checks pass, 1 a mathematical violation was found,
2 operational failure (bad spec, cap exceeded, time budget spent).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout

from . import caps as _caps
from .caps import CapError
from .catalog import (
    CONJECTURE_PAIRS,
    DEFAULT_GROUPS,
    DEFAULT_PAIRS,
    SpecError,
    build_group,
    build_pair,
    parse_spec,
    regression_example_weakly_normal,
    sn_an_pairs,
)
from .fusion import (
    FusionError,
    center_of_fusion_system,
    centralizer_subgroup_direct,
    centralizer_system,
    hyperfocal,
)
from .groups import GroupError, centralizer
from .linking import LinkingError, verify_theorem_a
from .local import (
    ModelError,
    PreconditionError,
    centralizer_subgroup_local,
    run_conjecture_52,
    run_conjecture_53,
    verify_gross,
    verify_op_containment,
    verify_theorem_b,
)

SCHEMA = 1
OPERATIONAL = (SpecError, CapError, GroupError, FusionError, LinkingError, PreconditionError)


class BudgetExceeded(RuntimeError):
    pass


def _pair_spec(spec, prime):
    """Accept ``pair:(...)`` or a bare group spec plus ``--prime`` (as ``(G, G, p)``)."""
    kind, _ = parse_spec(spec)
    if kind == "pair" or spec.strip() == "example:weakly-normal":
        return spec
    if prime is None:
        raise SpecError("a group spec needs --prime")
    return f"pair:({spec}, {spec}, {prime})"


# -- per-item work -------------------------------------------------------------------


def analyze_item(spec):
    if spec.strip() == "example:weakly-normal":
        t0 = time.perf_counter()
        reg = regression_example_weakly_normal()
        return {
            "spec": spec,
            "classification": reg["level"],
            "C_S(E)_direct": reg["direct_set"],
            "C_S(E)_is_subgroup": reg["direct_is_subgroup"],
            "timings": {"total_s": round(time.perf_counter() - t0, 3)},
        }
    timings = {}
    t0 = time.perf_counter()
    pair = build_pair(spec)
    timings["build_s"] = round(time.perf_counter() - t0, 3)
    out = {"spec": spec, "classification": pair.level, "p": pair.p}
    out["|S|"] = pair.S.order
    out["|T|"] = pair.T.order
    out["C_S(T)"] = centralizer(pair.S, pair.T).as_list()
    t0 = time.perf_counter()
    direct = centralizer_subgroup_direct(pair.F, pair.E)
    timings["direct_s"] = round(time.perf_counter() - t0, 3)
    out["C_S(E)_direct"] = direct.members
    out["C_S(E)_is_subgroup"] = direct.is_subgroup
    if pair.level == "normal":
        t0 = time.perf_counter()
        loc = centralizer_subgroup_local(pair, direct=direct)
        timings["local_s"] = round(time.perf_counter() - t0, 3)
        out["C_S(E)_local"] = loc["subgroup"].as_list()
        out["pipelines_agree"] = loc["agree"]
        out["hyp(C_F(T))"] = hyperfocal(centralizer_system(pair.F, pair.T)).as_list()
    out["Z(F)"] = center_of_fusion_system(pair.F).as_list()
    out["timings"] = timings
    return out


def verify_item(suite, spec):
    if suite == "example":
        reg = regression_example_weakly_normal()
        expected = {
            "E_equals_F_S1(H1)": True,
            "E_saturated": True,
            "E_invariant": True,
            "E_normal": False,
            "witness_c_x1x2_fails": True,
            "E_in_C_F(S2)": True,
            "E_in_C_F(S3)": True,
            "E_in_C_F(S2S3)": False,
        }
        verdicts = {k: reg[k] for k in expected}
        bad = {k: v for k, v in verdicts.items() if v != expected[k]}
        return {
            "spec": spec,
            "ok": not bad,
            "verdicts": verdicts,
            "mismatches": bad,
            "direct_set": reg["direct_set"],
            "direct_is_subgroup": reg["direct_is_subgroup"],
        }
    if suite == "gross":
        group_spec, at, p = spec.rpartition("@")
        if at:
            rep = verify_gross(build_group(group_spec).whole, int(p))
        elif parse_spec(spec)[0] == "pair":
            pair = build_pair(spec, classify=False)
            rep = verify_gross(pair.G, pair.p)
        else:
            raise SpecError("gross needs 'group-spec@p' or a pair spec")
        rep["spec"] = spec
        return rep
    pair = build_pair(spec)
    if pair.level != "normal":
        return {"spec": spec, "ok": True, "skipped": f"pair level is {pair.level}"}
    if suite == "theorem-a":
        rep = verify_theorem_a(pair)
    elif suite == "theorem-b":
        rep = verify_theorem_b(pair)
    elif suite == "op-containment":
        rep = verify_op_containment(pair)
    else:
        raise SpecError(f"unknown suite {suite!r}")
    rep = dict(rep)
    rep["spec"] = spec
    return rep


def conjecture_item(which, spec):
    pair = build_pair(spec)
    if pair.level != "normal":
        return {"spec": spec, "verdict": "SKIPPED", "reason": f"pair level is {pair.level}"}
    direct = centralizer_subgroup_direct(pair.F, pair.E)
    rep = run_conjecture_52(pair, direct) if which == "5.2" else run_conjecture_53(pair, direct)
    rep = dict(rep)
    rep["spec"] = spec
    return rep


# -- running -------------------------------------------------------------------------


def _run_all(fn, items, workers, budget, *extra):
    start = time.monotonic()
    items = sorted(items)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(fn, *extra, it) for it in items]
            results = []
            for f in futs:
                remaining = None if budget is None else max(0.0, budget - (time.monotonic() - start))
                try:
                    results.append(f.result(timeout=remaining))
                except FutureTimeout:
                    raise BudgetExceeded("time budget exhausted") from None
            return results
    results = []
    for it in items:
        if budget is not None and time.monotonic() - start > budget:
            raise BudgetExceeded("time budget exhausted")
        results.append(fn(*extra, it))
    return results


def _default_items(suite):
    if suite == "example":
        return ["example:weakly-normal"]
    if suite == "gross":
        return sorted({f"{e.spec}@{e.p}" for e in DEFAULT_GROUPS})
    return list(DEFAULT_PAIRS)


def _parse_range(text):
    lo, _, hi = text.partition("-")
    try:
        lo, hi = int(lo), int(hi or lo)
    except ValueError:
        raise SpecError(f"bad --n-range {text!r}") from None
    if lo > hi:
        raise SpecError("empty --n-range")
    return lo, hi


# -- rendering ---------------------------------------------------------------------------


def render_markdown(report):
    lines = [f"# fusionkit {report['command']}", ""]
    lines.append(f"- kind: {report['kind']}")
    for key in ("suite", "which"):
        if key in report:
            lines.append(f"- {key}: {report[key]}")
    lines.append("")
    for item in report["items"]:
        lines.append(f"## {item.get('spec', '?')}")
        lines.append("")
        for k, v in item.items():
            if k == "spec":
                continue
            lines.append(f"- **{k}**: `{json.dumps(v, sort_keys=True)}`")
        lines.append("")
    return "\n".join(lines)


def emit(report, fmt, out):
    text = (
        json.dumps(report, indent=2, sort_keys=True, default=str)
        if fmt == "json"
        else render_markdown(report)
    )
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# -- argument parsing ------------------------------------------------------------------


def _common(p):
    p.add_argument("--pair", action="append", default=[], help="pair spec (repeatable)")
    p.add_argument("--spec", action="append", default=[], help="group or example spec")
    p.add_argument("--prime", type=int, help="prime for bare group specs")
    p.add_argument("--format", choices=("json", "md"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--max-order", type=int, help="cap on group orders")
    p.add_argument("--max-subgroups", type=int, help="cap on |S| for subgroup enumeration")
    p.add_argument("--functor-cap", type=int, help="cap on functor candidates")
    p.add_argument("--time-budget-secs", type=float, help="wall-clock budget")
    p.add_argument("--workers", type=int, default=1)


def build_parser():
    ap = argparse.ArgumentParser(prog="fusionkit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", help="classify a pair and compute C_S(E)")
    _common(a)
    v = sub.add_parser("verify", help="run a verification suite")
    _common(v)
    v.add_argument(
        "--suite",
        required=True,
        choices=("theorem-a", "theorem-b", "gross", "op-containment", "example"),
    )
    c = sub.add_parser("conjecture", help="run a conjecture experiment")
    _common(c)
    c.add_argument("--which", required=True, choices=("5.2", "5.3"))
    c.add_argument("--n-range", help="symmetric/alternating family, e.g. 6-7")
    return ap


def _apply_caps(args):
    kw = {}
    if args.max_order is not None:
        kw["max_group_order"] = args.max_order
    if args.max_subgroups is not None:
        kw["max_sylow_order"] = args.max_subgroups
    if args.functor_cap is not None:
        kw["max_functor_candidates"] = args.functor_cap
    if kw:
        _caps.set_caps(_caps.CAPS.override(**kw))
    if args.workers < 1:
        raise SpecError("--workers must be positive")
    if args.time_budget_secs is not None and args.time_budget_secs <= 0:
        raise SpecError("--time-budget-secs must be positive")


def run(args):
    _apply_caps(args)
    budget = args.time_budget_secs
    report = {"schema": SCHEMA, "command": args.command}
    if args.command == "analyze":
        specs = list(args.pair) + [_pair_spec(s, args.prime) for s in args.spec]
        if not specs:
            raise SpecError("analyze needs --pair or --spec")
        items = _run_all(analyze_item, specs, args.workers, budget)
        bad = [it for it in items if it.get("pipelines_agree") is False]
        report["kind"] = "likely-bug" if bad else "ok"
    elif args.command == "verify":
        report["suite"] = args.suite
        specs = list(args.pair) + list(args.spec)
        if args.suite == "gross" and args.spec and args.prime:
            specs = list(args.pair) + [f"{s}@{args.prime}" for s in args.spec]
        specs = specs or _default_items(args.suite)
        items = _run_all(verify_item, specs, args.workers, budget, args.suite)
        bad = [it for it in items if not it.get("ok", True)]
        report["kind"] = "likely-bug" if bad else "ok"
    else:
        report["which"] = args.which
        specs = list(args.pair)
        if args.n_range:
            lo, hi = _parse_range(args.n_range)
            specs += sn_an_pairs(lo, hi, args.prime or 2)
        specs = specs or list(CONJECTURE_PAIRS)
        items = _run_all(conjecture_item, specs, args.workers, budget, args.which)
        bad = [it for it in items if it.get("verdict") == "FAILS"]
        report["kind"] = "finding" if bad else "ok"
    report["items"] = items
    return report, (1 if report["kind"] != "ok" else 0)


def main(argv=None):
    args = build_parser().parse_args(argv)
    saved = _caps.CAPS
    try:
        report, code = run(args)
    except (OPERATIONAL + (BudgetExceeded, ModelError, OSError)) as exc:
        err = {"schema": SCHEMA, "command": args.command, "kind": "error", "error": str(exc)}
        if isinstance(exc, ModelError):
            err["kind"] = "likely-bug"
            err["axiom"] = exc.axiom
            emit(err, args.format, args.out)
            return 1
        emit(err, args.format, args.out)
        return 2
    finally:
        _caps.set_caps(saved)
    emit(report, args.format, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
