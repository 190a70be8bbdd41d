"""Command-line front end.

Exit codes are the machine contract: 0 for a verified property, 1 for a
property that was checked and found false, 2 for usage or document errors.
Pass --json for a machine-readable report on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import factorial

from .brackets import SKEW, SYMMETRIC, first_difference, verify_jacobi
from .builtin import (
    DEFAULT_ORDER,
    b_closed,
    c1_closed,
    c1_recursive,
    c2_daily,
    example1_system,
    example2_system,
    theta_sector_sign,
)
from .document import load_document, save_document, system_to_document
from .errors import ConsistencyError, DocumentError, TruncationError
from .series import g_series, lambert_w_series
from .superspace import (
    brackets_from_delta,
    delta_squared_check,
    nilpotency_conditions,
)

BUILTINS = ("example1", "example2")

PASS, FAIL, USAGE = 0, 1, 2


def _load_input(name: str, order: int):
    """Resolve a builtin name or a document path to (system, delta)."""
    if name == "example1":
        ex = example1_system(order=order)
        return ex.skew_system, ex.symmetric_system, ex.delta_spec
    if name == "example2":
        ex = example2_system(order=order)
        return ex.skew_system, ex.symmetric_system, ex.delta_spec
    system, delta = load_document(name)
    skew = system if system.symmetry == SKEW else None
    symmetric = system if system.symmetry == SYMMETRIC else None
    return skew, symmetric, delta


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        for line in lines:
            print(line)


def cmd_verify(args) -> int:
    skew, _, _ = _load_input(args.input, DEFAULT_ORDER)
    if skew is None:
        raise DocumentError("verify needs a skew system (use a skew document)")
    n_max = min(args.max_arity, skew.max_arity)
    report = verify_jacobi(skew, n_max)
    lines = []
    if n_max < args.max_arity:
        lines.append(f"note: document stores arities up to {n_max}; checking that far")
    arities = []
    for check in report.checks:
        if check.ok:
            lines.append(f"arity {check.arity}: ok ({check.inputs_checked} tuples)")
            arities.append({"arity": check.arity, "ok": True,
                            "tuples": check.inputs_checked})
        else:
            inputs = ", ".join(v.name for v in check.counterexample)
            lines.append(
                f"arity {check.arity}: FAIL on ({inputs}): defect = {check.defect}"
            )
            arities.append({
                "arity": check.arity,
                "ok": False,
                "counterexample": [v.name for v in check.counterexample],
                "defect": str(check.defect),
            })
    if report.passed:
        lines.append(f"PASS: all Jacobi identities hold through arity {n_max}")
    else:
        lines.append("FAIL: at least one Jacobi identity is violated")
    _emit(args, {"command": "verify", "pass": report.passed, "arities": arities}, lines)
    return PASS if report.passed else FAIL


def cmd_delta_check(args) -> int:
    _, _, delta = _load_input(args.input, args.order)
    if delta is None:
        raise DocumentError("delta-check needs operator data (a 'delta' section)")
    report = delta_squared_check(delta, args.degree)
    residuals = nilpotency_conditions(delta)
    lines = []
    res_payload = {}
    for label, group in residuals.groups():
        entries = {}
        for key, series in group.items():
            entries[key] = "0" if series.is_zero() else str(series)
            state = "zero" if series.is_zero() else f"NONZERO {series}"
            lines.append(f"residual {label}[{key}] (order {series.order}): {state}")
        res_payload[label] = entries
    if report.passed:
        lines.append(
            f"squared operator vanishes on all {report.monomials_checked} "
            f"monomials through degree {args.degree}"
        )
    else:
        lines.append(
            f"FAIL: squared operator is nonzero on {report.witness}: {report.residue}"
        )
    ok = report.passed and residuals.all_zero
    lines.append("PASS" if ok else "FAIL")
    _emit(
        args,
        {
            "command": "delta-check",
            "pass": ok,
            "monomials_checked": report.monomials_checked,
            "witness": str(report.witness) if report.witness else None,
            "residuals": res_payload,
        },
        lines,
    )
    return PASS if ok else FAIL


def cmd_compare(args) -> int:
    _, symmetric, delta = _load_input(args.input, DEFAULT_ORDER)
    if delta is None or symmetric is None:
        raise DocumentError(
            "compare needs both a symmetric system and a 'delta' section"
        )
    n_max = min(args.max_arity, symmetric.max_arity)
    rebuilt = brackets_from_delta(delta, n_max)
    diff = first_difference(symmetric, rebuilt, n_max)
    if diff is None:
        lines = [
            f"PASS: operator brackets match the declared tables through "
            f"arity {n_max}"
        ]
        payload = {"command": "compare", "pass": True}
        _emit(args, payload, lines)
        return PASS
    arity, key, declared, recovered = diff
    where = "space/symmetry" if key is None else "(" + ", ".join(v.name for v in key) + ")"
    lines = [
        f"FAIL at arity {arity}, inputs {where}:",
        f"  declared:  {declared}",
        f"  recovered: {recovered}",
    ]
    payload = {
        "command": "compare",
        "pass": False,
        "arity": arity,
        "inputs": None if key is None else [v.name for v in key],
        "declared": str(declared),
        "recovered": str(recovered),
    }
    _emit(args, payload, lines)
    return FAIL


def _coefficient_rows(which: str, n_max: int):
    if which == "c1":
        if n_max < 3:
            raise DocumentError("c1 is defined from n = 3")
        return [(n, c1_closed(n)) for n in range(3, n_max + 1)]
    if which == "c2":
        if n_max < 3:
            raise DocumentError("c2 is defined from n = 3")
        return [(n, c2_daily(n)) for n in range(3, n_max + 1)]
    if which == "b":
        if n_max < 0:
            raise DocumentError("b is defined from M = 0")
        return [(m, b_closed(m)) for m in range(0, n_max + 1)]
    # lambert: the integer values n! * [p^n] of the inverse-of-we^w series
    if n_max < 0:
        raise DocumentError("lambert takes a non-negative bound")
    return [(n, Fraction(-n) ** (n - 1)) for n in range(1, n_max + 1)]


def _coefficient_check(which: str, n_max: int) -> list[str]:
    """Cross-validate closed forms against an independent generation route."""
    problems = []
    if which == "c1":
        for n in range(3, n_max + 1):
            if c1_closed(n) != c1_recursive(n):
                problems.append(f"n={n}: closed {c1_closed(n)} != recursive {c1_recursive(n)}")
    elif which == "c2":
        for n in range(3, n_max + 1):
            image = theta_sector_sign(n) * c2_daily(n)
            if image != b_closed(n - 1):
                problems.append(
                    f"n={n}: shifted value {image} != closed form {b_closed(n - 1)}"
                )
    elif which == "b":
        series = g_series(max(n_max, 1))
        for m in range(0, n_max + 1):
            if b_closed(m) != factorial(m) * series[m]:
                problems.append(f"M={m}: closed {b_closed(m)} != series value")
    else:
        series = lambert_w_series(max(n_max, 1))
        for n in range(1, n_max + 1):
            if Fraction(-n) ** (n - 1) != factorial(n) * series[n]:
                problems.append(f"n={n}: closed form != series value")
    return problems


def cmd_coefficients(args) -> int:
    rows = _coefficient_rows(args.which, args.n_max)
    lines = [f"{n}\t{value}" for n, value in rows]
    problems: list[str] = []
    if args.check:
        problems = _coefficient_check(args.which, args.n_max)
        lines += [f"MISMATCH {p}" for p in problems]
        lines.append("PASS: cross-check agrees" if not problems else "FAIL")
    _emit(
        args,
        {
            "command": "coefficients",
            "which": args.which,
            "values": {str(n): str(v) for n, v in rows},
            "pass": not problems,
        },
        lines,
    )
    return PASS if not problems else FAIL


def cmd_export(args) -> int:
    if args.builtin == "example1":
        ex = example1_system(order=args.order)
    else:
        ex = example2_system(order=args.order)
    if args.formulation == "jacobi":
        doc = system_to_document(ex.skew_system)
    else:
        doc = system_to_document(ex.symmetric_system, ex.delta_spec)
    if args.output:
        save_document(doc, args.output)
        if not args.json:
            print(f"wrote {args.output}")
    else:
        print(json.dumps(doc, indent=2))
    return PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linfcheck",
        description="Verify homotopy Lie bracket hierarchies exactly, in both "
        "the Jacobi-identity and the odd-operator formulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--json", action="store_true", help="machine-readable report")

    p = sub.add_parser("verify", help="check generalized Jacobi identities")
    p.add_argument("input", help="builtin name (example1, example2) or document path")
    p.add_argument("--max-arity", type=int, default=8)
    add_common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("delta-check", help="check that the odd operator squares to zero")
    p.add_argument("input", help="builtin name or document path")
    p.add_argument("--degree", type=int, default=10, help="even-degree bound for monomials")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER,
                   help="series order for builtin inputs")
    add_common(p)
    p.set_defaults(fn=cmd_delta_check)

    p = sub.add_parser("compare", help="rebuild brackets from the operator and diff")
    p.add_argument("input", help="builtin name or document path")
    p.add_argument("--max-arity", type=int, default=8)
    add_common(p)
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("coefficients", help="print coefficient tables")
    p.add_argument("which", choices=("c1", "c2", "b", "lambert"))
    p.add_argument("n_max", type=int)
    p.add_argument("--check", action="store_true",
                   help="cross-validate against an independent route")
    add_common(p)
    p.set_defaults(fn=cmd_coefficients)

    p = sub.add_parser("export", help="write a builtin system as a JSON document")
    p.add_argument("builtin", choices=BUILTINS)
    p.add_argument("--formulation", choices=("jacobi", "operator"), default="operator")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("-o", "--output", default=None)
    add_common(p)
    p.set_defaults(fn=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else PASS
    try:
        return args.fn(args)
    except (DocumentError, TruncationError, ConsistencyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
