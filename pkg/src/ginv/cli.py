"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

from .distribution import CurvatureFrame, certify, chi_fields, generic_rank
from .invariants import (
    annihilation_check,
    base_invariants,
    independence_rank,
    max_independent_count,
    push_through_psi,
    slot_invariants,
)
from .jetgauge import GaugeParam, curvature_components, gauge_action
from .liealg import (
    DEFAULT_BOUND,
    DEFAULT_TRIALS,
    AlgebraError,
    LieAlgebraSpec,
    algebra_to_dict,
    build_standard,
    killing_form,
    load_algebra,
    profile,
    validate,
)
from .linalg import determinant
from .poly import format_rational
from .verify import SUITES, run_suite

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def resolve_algebra(source: str) -> LieAlgebraSpec:
    try:
        if source.startswith("file:"):
            return load_algebra(source[len("file:"):])
        return build_standard(source)
    except OSError as exc:
        raise InputError(f"cannot read algebra file: {exc}") from None
    except AlgebraError as exc:
        raise InputError(str(exc)) from None


def default_seed() -> int:
    raw = os.environ.get("GINV_SEED")
    if raw is None:
        return 42
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"GINV_SEED must be an integer, got {raw!r}") from None


def emit(obj, as_json: bool, text: str):
    if as_json:
        print(json.dumps(obj, indent=2))
    else:
        print(text)


def cmd_algebra(args) -> int:
    spec = resolve_algebra(args.algebra)
    if args.action == "validate":
        violations = validate(spec)
        payload = {"algebra": spec.name, "valid": not violations,
                   "violations": [v.describe() for v in violations]}
        text = f"{spec.name}: valid" if not violations else "\n".join(
            [f"{spec.name}: {len(violations)} violation(s)"] + ["  " + v.describe() for v in violations])
        emit(payload, args.json, text)
        return EXIT_OK if not violations else EXIT_MISMATCH
    prof = profile(spec, args.trials, args.seed)
    k = killing_form(spec)
    payload = {
        "algebra": spec.name,
        "dim": spec.m,
        "rank": prof.l,
        "abelian": prof.abelian,
        "semisimple": prof.semisimple,
        "killing_determinant": format_rational(determinant(k)),
        "matrix_rep_size": len(spec.matrix_rep[0]) if spec.matrix_rep else None,
        "structure": algebra_to_dict(spec),
    }
    lines = [
        f"algebra     {spec.name}",
        f"dimension   {spec.m}",
        f"rank        {prof.l}",
        f"abelian     {prof.abelian}",
        f"semisimple  {prof.semisimple} (det Killing = {payload['killing_determinant']})",
    ]
    for (a, b, g), c in sorted(spec.brackets.items(), key=lambda t: (t[0][1], t[0][2], t[0][0])):
        lines.append(f"  c^{a}_{b}{g} = {format_rational(c)}")
    emit(payload, args.json, "\n".join(lines))
    return EXIT_OK


def cmd_rank(args) -> int:
    spec = resolve_algebra(args.algebra)
    if args.n < 2:
        raise InputError("--n must be >= 2")
    try:
        if args.certify:
            report = certify(spec, args.n, args.trials, args.bound, args.seed)
        else:
            report = generic_rank(spec, args.n, args.trials, args.bound, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    pred = "none" if report.predicted is None else str(report.predicted)
    text = (f"{report.algebra} n={report.n}: observed generic rank {report.observed}, "
            f"predicted {pred} [{report.rule}] (trials={report.trials}, bound={report.bound}, seed={report.seed})")
    emit(report.to_dict(), args.json, text)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def _load_gauge(raw: str, m: int, n: int) -> GaugeParam:
    try:
        text = raw if raw.lstrip().startswith("{") else Path(raw).read_text()
    except OSError as exc:
        raise InputError(f"cannot read gauge file: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"gauge JSON line {exc.lineno}: {exc.msg}") from None
    if not isinstance(data, dict) or not isinstance(data.get("g"), list):
        raise InputError('gauge JSON must look like {"g": ["x1", ...]}')
    if len(data["g"]) != m:
        raise InputError(f"gauge parameter needs {m} components, got {len(data['g'])}")
    try:
        return GaugeParam.parse(data["g"], n)
    except ValueError as exc:
        raise InputError(f"gauge polynomial: {exc}") from None


def cmd_invariants(args) -> int:
    spec = resolve_algebra(args.algebra)
    if args.n < 2:
        raise InputError("--n must be >= 2")
    if spec.matrix_rep is None:
        raise InputError(f"{spec.name} has no matrix representation; invariants need one")
    frame = CurvatureFrame(args.n, spec.m)
    base = base_invariants(spec)
    slots = slot_invariants(base, frame.N)
    invs = [push_through_psi(s, frame) for s in slots]
    chis = chi_fields(spec, args.n)
    reports = [annihilation_check(i, spec, args.n, chis) for i in invs]
    rank = independence_rank(invs, args.trials, args.bound, args.seed)
    prof = profile(spec, seed=args.seed)
    max_count = max_independent_count(prof, args.n)
    payload = {
        "frame": {"n": args.n, "m": spec.m},
        "invariants": [
            {"id": f"inv{k + 1}", "source": s.id, "degree": s.degree, "poly": inv.poly.to_text(frame.name)}
            for k, (s, inv) in enumerate(zip(slots, invs))
        ],
        "certification": {
            "base": [p.to_text() for p in base],
            "annihilated": sum(r.ok for r in reports),
            "total": len(invs),
            "independence_rank": rank,
            "max_independent_count": max_count,
        },
    }
    ok = all(r.ok for r in reports)
    if args.gauge:
        g = _load_gauge(args.gauge, spec.m, args.n)
        act = gauge_action(spec, args.n, g)
        comps = curvature_components(spec, args.n)
        gauge_ok = sum(act.apply(inv.poly.compose(comps)).is_zero() for inv in invs)
        payload["certification"]["gauge_invariant"] = gauge_ok
        ok = ok and gauge_ok == len(invs)
    lines = [f"{spec.name} n={args.n}: {len(invs)} invariants"]
    for item in payload["invariants"]:
        lines.append(f"  {item['source']:>10}  {item['poly']}")
    cert = payload["certification"]
    lines.append(f"annihilated by every chi: {cert['annihilated']}/{cert['total']}")
    lines.append(f"independence rank: {rank} (max independent count: "
                 f"{'no prediction' if max_count is None else max_count})")
    if "gauge_invariant" in cert:
        lines.append(f"gauge invariant under the given parameter: {cert['gauge_invariant']}/{cert['total']}")
    emit(payload, args.json, "\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_verify(args) -> int:
    try:
        result = run_suite(args.suite, args.only, args.seed)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    if args.json:
        print(json.dumps(result.to_list(), indent=2))
    else:
        for r in result.records:
            print(f"[{r.status.upper():4}] {r.id:40} {r.description}")
            if not r.passed:
                print(f"       expected: {r.expected}\n       observed: {r.observed}")
        passed = sum(r.passed for r in result.records)
        print(f"{passed}/{len(result.records)} checks passed")
    return EXIT_OK if result.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ginv", description="Gauge-invariant Lagrangian generators for Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def sampling(p):
        p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
        p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--json", action="store_true")

    alg = sub.add_parser("algebra", help="describe or validate an algebra")
    alg.add_argument("action", choices=["info", "validate"])
    alg.add_argument("--algebra", required=True, help="built-in name, abelian:m or file:<path>")
    sampling(alg)
    alg.set_defaults(func=cmd_algebra)

    rank = sub.add_parser("rank", help="generic rank of the invariance distribution")
    rank.add_argument("--algebra", required=True)
    rank.add_argument("--n", type=int, required=True)
    rank.add_argument("--certify", action="store_true", help="resample with independent seeds")
    sampling(rank)
    rank.set_defaults(func=cmd_rank)

    inv = sub.add_parser("invariants", help="polarized invariants on curvature coordinates")
    inv.add_argument("--algebra", required=True)
    inv.add_argument("--n", type=int, required=True)
    inv.add_argument("--gauge", help='JSON {"g": [...]} or a path to such a file')
    sampling(inv)
    inv.set_defaults(func=cmd_invariants)

    ver = sub.add_parser("verify", help="run the worked-example verification suite")
    ver.add_argument("--suite", default="paper-examples", choices=sorted(SUITES))
    ver.add_argument("--only", help="run only checks whose group starts with this id")
    ver.add_argument("--seed", type=int, default=None)
    ver.add_argument("--json", action="store_true")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.seed is None:
            args.seed = default_seed()
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
