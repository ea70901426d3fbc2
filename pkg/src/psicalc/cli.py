"""Command-line front end.

Four subcommands: ``seq`` tabulates a sequence with its factorials,
binomials, and kernel triangle; ``op`` applies series operations to JSON
series files or inline coefficient lists; ``pascal`` renders the operator
triangle; ``check`` runs the verification suites.

Exit codes: 0 success, 1 operation or verification failure, 2 usage or
input errors.  Output is deterministic for a fixed command line; the JSON
forms carry no timestamps or environment data.
"""

from __future__ import annotations

import argparse
import ast
import json
import sys
from dataclasses import dataclass

from .coefficients import format_scalar, scalar_from_json, scalar_to_json
from .errors import (
    BadIndices,
    BadSpec,
    IndexOutOfBound,
    KernelUndefined,
    KOutOfRange,
    ParseError,
    PsiCalcError,
)
from .operator_algebra import binomial_operator
from .psi_context import get_context
from .series import WardSeries, make_series
from . import verify

_USAGE_ERRORS = (BadSpec, ParseError, BadIndices, KOutOfRange,
                 KernelUndefined, IndexOutOfBound)


@dataclass(frozen=True)
class CliConfig:
    psi: str | None
    order: int
    fmt: str
    seed: int
    trials: int

    def __post_init__(self):
        if self.order < 0:
            raise BadSpec("order must be nonnegative")
        if self.trials < 1:
            raise BadSpec("trial count must be at least 1")


def _fmt_row(values) -> str:
    return ", ".join(format_scalar(v) for v in values)


def cmd_seq(spec: str, n_max: int, fmt: str) -> str:
    ctx = get_context(spec, 0 if spec.startswith("custom:") else max(n_max, 1))
    if n_max > ctx.bound:
        raise BadSpec(f"custom sequence too short for n={n_max}")
    values = [ctx.psi_value(n) for n in range(n_max + 1)]
    facts = [ctx.psi_factorial(n) for n in range(n_max + 1)]
    binoms = [[ctx.psi_binomial(n, k) for k in range(n + 1)] for n in range(n_max + 1)]
    kernels = [[ctx.fontane_kernel(n, k) for k in range(n)] for n in range(1, n_max + 1)]
    if fmt == "json":
        payload = {
            "psi": ctx.spec_string(),
            "n": n_max,
            "values": [scalar_to_json(v) for v in values],
            "factorials": [scalar_to_json(v) for v in facts],
            "binomials": [[scalar_to_json(v) for v in row] for row in binoms],
            "kernels": [[scalar_to_json(v) for v in row] for row in kernels],
        }
        return json.dumps(payload, indent=2)
    lines = [
        f"spec: {ctx.spec_string()}",
        f"psi:  {_fmt_row(values)}",
        f"fact: {_fmt_row(facts)}",
        "binomials:",
    ]
    lines += [f"  n={n}: {_fmt_row(row)}" for n, row in enumerate(binoms)]
    lines.append("kernels:")
    lines += [f"  n={n}: {_fmt_row(row)}" for n, row in enumerate(kernels, start=1)]
    return "\n".join(lines)


_OP_KINDS = ("mul", "fontane", "star", "chain", "derive", "div")


def _parse_chain(text: str) -> tuple[tuple[int, int], ...]:
    try:
        raw = ast.literal_eval(text)
        pairs = tuple((int(i), int(j)) for i, j in raw)
    except (ValueError, SyntaxError, TypeError) as exc:
        raise ParseError(f"cannot parse chain {text!r}") from exc
    return pairs


def _load_operands(args_list, psi_flag: str | None, headroom: int) -> list[WardSeries]:
    """Read series from JSON files or inline ``[a0,a1,...]`` literals.

    All operands end up on one shared context so binary operations see the
    same sequence object.
    """
    dicts = []
    for arg in args_list:
        if arg.lstrip().startswith("["):
            try:
                coeffs = json.loads(arg)
            except json.JSONDecodeError as exc:
                raise ParseError(f"cannot parse inline series {arg!r}") from exc
            dicts.append({"psi": None, "order": len(coeffs) - 1, "coeffs": coeffs})
        else:
            with open(arg, encoding="utf-8") as fh:
                data = json.load(fh)
            if not isinstance(data, dict):
                raise ParseError(f"{arg}: series JSON must be an object")
            dicts.append(data)

    specs = {d["psi"] for d in dicts if d.get("psi") is not None}
    if psi_flag is not None:
        specs.add(psi_flag)
    if not specs:
        raise BadSpec("inline series need --psi")
    if len(specs) > 1:
        raise ParseError(f"operands disagree on the sequence: {sorted(specs)}")
    spec = specs.pop()

    orders = [int(d["order"]) for d in dicts]
    bound = 0 if spec.startswith("custom:") else max(orders) + headroom
    ctx = get_context(spec, bound)

    out = []
    for d in dicts:
        if d.get("psi") is None:
            coeffs = [scalar_from_json(c, symbolic=ctx.symbolic) for c in d["coeffs"]]
            out.append(make_series(ctx, coeffs))
        else:
            out.append(WardSeries.from_json_dict(d, ctx=ctx))
    return out


def cmd_op(kind: str, operands, psi: str | None, i: int, j: int,
           chain_text: str | None) -> str:
    pairs: tuple[tuple[int, int], ...] = ()
    if kind == "chain":
        if chain_text is None:
            raise BadSpec("op chain needs --chain \"[(i,j),...]\"")
        pairs = _parse_chain(chain_text)

    headroom = {"fontane": i, "star": i, "chain": max((p[0] for p in pairs), default=0)}.get(kind, 0)
    need = 2 if kind != "derive" else 1
    if len(operands) != need:
        raise BadSpec(f"op {kind} takes {need} series operand(s), got {len(operands)}")
    series = _load_operands(operands, psi, headroom)

    if kind == "mul":
        result = series[0] * series[1]
    elif kind == "fontane":
        result = series[0].fontane(series[1], i, j)
    elif kind == "star":
        result = series[0].star(series[1], i, j)
    elif kind == "chain":
        result = series[0].chain(series[1], pairs)
    elif kind == "derive":
        result = series[0].derivative()
    else:
        result = series[0].divide(series[1])
    return json.dumps(result.to_json_dict(), indent=2)


def cmd_pascal(n_max: int, fmt: str) -> str:
    rows = [
        [binomial_operator(n, k).render() for k in range(n + 1)]
        for n in range(n_max + 1)
    ]
    if fmt == "json":
        payload = {
            "n": n_max,
            "rows": [
                {"n": n, "k": k, "op": op}
                for n, row in enumerate(rows)
                for k, op in enumerate(row)
            ],
        }
        return json.dumps(payload, indent=2)
    return "\n".join(" | ".join(row) for row in rows)


def cmd_check(suite: str, config: CliConfig) -> tuple[str, bool]:
    suites = verify.SUITE_NAMES if suite == "all" else (suite,)
    specs = (config.psi,) if config.psi else verify.default_specs(config.order + verify.RULE_HEADROOM)
    reports = verify.run_suites(suites, specs, config.order, config.trials, config.seed)
    ok = all(r.ok for r in reports)
    if config.fmt == "json":
        payload = {
            "suites": list(suites),
            "specs": list(specs),
            "order": config.order,
            "trials": config.trials,
            "seed": config.seed,
            "ok": ok,
            "reports": [r.to_json_dict() for r in reports],
        }
        return json.dumps(payload, indent=2), ok
    lines = []
    for r in reports:
        status = "PASS" if r.ok else "FAIL"
        tail = "" if r.first_diff is None else f"  first_diff={r.first_diff}"
        lines.append(f"{status} {r.rule} [{r.psi}] order={r.order}{tail}")
    lines.append(f"{'OK' if ok else 'FAILED'}: {sum(r.ok for r in reports)}/{len(reports)} checks")
    return "\n".join(lines), ok


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psicalc",
        description="Exact calculus on factorial-normalized power series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_seq = sub.add_parser("seq", help="tabulate a sequence with factorials, binomials, kernels")
    p_seq.add_argument("--psi", required=True)
    p_seq.add_argument("--n", type=int, default=6)
    p_seq.add_argument("--format", choices=("plain", "json"), default="plain")

    p_op = sub.add_parser("op", help="apply a series operation")
    p_op.add_argument("kind", choices=_OP_KINDS)
    p_op.add_argument("operands", nargs="+",
                      help="series JSON files or inline [a0,a1,...] lists")
    p_op.add_argument("--psi")
    p_op.add_argument("--i", type=int, default=1)
    p_op.add_argument("--j", type=int, default=0)
    p_op.add_argument("--chain", dest="chain_text")

    p_pascal = sub.add_parser("pascal", help="render the operator triangle")
    p_pascal.add_argument("--n", type=int, default=4)
    p_pascal.add_argument("--format", choices=("plain", "json"), default="plain")

    p_check = sub.add_parser("check", help="run verification suites")
    p_check.add_argument("suite", choices=verify.SUITE_NAMES + ("all",))
    p_check.add_argument("--psi")
    p_check.add_argument("--order", type=int, default=8)
    p_check.add_argument("--trials", type=int, default=25)
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--format", choices=("plain", "json"), default="plain")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    try:
        if args.command == "seq":
            if args.n < 0:
                raise BadSpec("--n must be nonnegative")
            print(cmd_seq(args.psi, args.n, args.format))
            return 0
        if args.command == "op":
            print(cmd_op(args.kind, args.operands, args.psi, args.i, args.j,
                         args.chain_text))
            return 0
        if args.command == "pascal":
            if args.n < 0:
                raise BadSpec("--n must be nonnegative")
            print(cmd_pascal(args.n, args.format))
            return 0
        config = CliConfig(psi=args.psi, order=args.order, fmt=args.format,
                           seed=args.seed, trials=args.trials)
        text, ok = cmd_check(args.suite, config)
        print(text)
        return 0 if ok else 1
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PsiCalcError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
