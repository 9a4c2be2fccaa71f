"""Command-line front end.

Every subcommand prints exact values; ``--approx`` appends a marked decimal
rendering in table output. Exit status is 0 on success, 1 on invalid input
and 2 when a verification step finds a mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from fixedspace import bruteforce, curvelab
from fixedspace.distributions import (
    DistributionTable,
    affine_rank_bounds,
    alpha,
    alpha_limit,
    alpha_table,
    formula_table,
    fw_gap,
    phi,
    trigonal_table,
    unitary_alpha_limit,
)
from fixedspace.exactmath import RatFun, format_scalar
from fixedspace.grouporders import GeneralLinear, GSpCoset, Symplectic, Unitary

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MISMATCH = 2

#: Normalized alpha(g, r) for g <= 3, as printed by ``table1``.
TABLE1 = {
    (1, 0): "(l^2 - l - 1)/(l^2 - 1)",
    (1, 1): "(1)/(l)",
    (1, 2): "(1)/(l^3 - l)",
    (2, 0): "(l^6 - l^5 - l^4 + l + 1)/(l^6 - l^4 - l^2 + 1)",
    (2, 1): "(l^3 - l - 1)/(l^4 - l^2)",
    (2, 2): "(l^3 - l - 1)/(l^6 - 2*l^4 + l^2)",
    (2, 3): "(1)/(l^6 - l^4)",
    (2, 4): "(1)/(l^10 - l^8 - l^6 + l^4)",
    (3, 0): "(l^12 - l^11 - l^10 + l^7 + l^5 + l^4 - l^3 - l - 1)/(l^12 - l^10 - l^8 + l^4 + l^2 - 1)",
    (3, 1): "(l^8 - l^6 - l^5 - l^4 + l^2 + l + 1)/(l^9 - l^7 - l^5 + l^3)",
    (3, 2): "(l^8 - l^6 - l^5 - l^4 + l^2 + l + 1)/(l^11 - 2*l^9 + 2*l^5 - l^3)",
    (3, 3): "(l^5 - l^3 - 1)/(l^11 - 2*l^9 + l^7)",
    (3, 4): "(l^5 - l^3 - 1)/(l^15 - 2*l^13 + 2*l^9 - l^7)",
    (3, 5): "(1)/(l^15 - l^13 - l^11 + l^9)",
    (3, 6): "(1)/(l^21 - l^19 - l^17 + l^13 + l^11 - l^9)",
}


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Mismatch(Exception):
    """A verification subcommand disagreed with its reference; carries the report text."""

    def __init__(self, text: str):
        super().__init__("verification mismatch")
        self.text = text


# --------------------------------------------------------------------------
# rendering


def _approx(x) -> str:
    if isinstance(x, Fraction):
        return f"  (~{float(x):.6g})"
    return ""


def _render_value(label: dict[str, Any], value, args) -> str:
    if args.format == "json":
        return json.dumps({**label, "value": format_scalar(value)}, indent=2)
    if args.format == "csv":
        keys = list(label) + ["value"]
        vals = [str(label[k]) for k in label] + [format_scalar(value)]
        return ",".join(keys) + "\n" + ",".join(vals)
    return format_scalar(value) + (_approx(value) if args.approx else "")


def _render_table(table: DistributionTable, args) -> str:
    if args.format == "json":
        return table.to_json()
    if args.format == "csv":
        return table.to_csv().rstrip("\n")
    lines = []
    for k, v in table.sorted_items():
        key = "x".join(map(str, k)) if isinstance(k, tuple) else str(k)
        lines.append(f"{key or '1'}\t{format_scalar(v)}" + (_approx(v) if args.approx else ""))
    return "\n".join(lines)


def _render_mapping(d: dict[str, Any], args) -> str:
    if args.format == "json":
        return json.dumps(d, indent=2)
    if args.format == "csv":
        return ",".join(d) + "\n" + ",".join(str(v) for v in d.values())
    return "\n".join(f"{k}\t{v}" for k, v in d.items())


def _ell(args, required: bool = False):
    if getattr(args, "symbolic", False):
        if required:
            raise UsageError("this subcommand needs a concrete --ell")
        return None
    if args.ell is None and required:
        raise UsageError("--ell is required")
    if args.ell is not None and args.ell < 2:
        raise UsageError("--ell must be at least 2")
    return args.ell


def _m(args, required: bool = False):
    if getattr(args, "symbolic", False):
        if required:
            raise UsageError("this subcommand needs a concrete --m")
        return None
    if args.m is None and required:
        raise UsageError("--m is required")
    return args.m


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n} is required")


# --------------------------------------------------------------------------
# subcommands


def cmd_alpha(args) -> str:
    _need(args, "g")
    ell = _ell(args)
    if args.r is None:
        return _render_table(DistributionTable(Symplectic(args.g, ell), alpha_table(args.g, ell)), args)
    return _render_value({"g": args.g, "r": args.r, "ell": ell or "l"}, alpha(args.g, args.r, ell), args)


def cmd_phi(args) -> str:
    _need(args, "g")
    ell = _ell(args)
    return _render_value({"g": args.g, "ell": ell or "l"}, phi(args.g, ell), args)


def cmd_limit(args) -> str:
    bound = Fraction(args.tolerance) if args.tolerance is not None else Fraction(1, 10 ** 6)
    r = args.r or 0
    if args.m is not None:
        value, tail = unitary_alpha_limit(r, args.m, bound)
        label = {"group": "gu", "m": args.m}
    else:
        value, tail = alpha_limit(r, bound, _ell(args, required=True))
        label = {"group": "sp", "ell": args.ell}
    d = {**label, "r": r, "value": format_scalar(value), "tail_bound": format_scalar(tail)}
    if args.format == "table" and args.approx:
        d["value"] += _approx(value)
    return _render_mapping(d, args)


def cmd_gsp1(args) -> str:
    _need(args, "xi")
    return _render_table(formula_table(GSpCoset(1, _ell(args, required=True), args.xi)), args)


def cmd_unitary(args) -> str:
    _need(args, "n")
    return _render_table(formula_table(Unitary(args.n, _m(args))), args)


def cmd_trigonal(args) -> str:
    return _render_table(trigonal_table(_m(args)), args)


def cmd_bounds(args) -> str:
    _need(args, "g", "r")
    ell = _ell(args)
    eps = Fraction(args.epsilon or 0)
    lo_le, lo_ge = affine_rank_bounds(args.g, args.s, args.r, eps, ell)
    return _render_mapping(
        {"g": args.g, "s": args.s, "r": args.r, "ell": ell or "l", "epsilon": str(eps),
         "p_rank_le_r_at_least": format_scalar(lo_le), "p_rank_ge_r_at_least": format_scalar(lo_ge)},
        args,
    )


def cmd_fw_gap(args) -> str:
    _need(args, "g")
    ell = _ell(args)
    gap = fw_gap(args.g, ell)
    d = {"g": args.g, "ell": ell or "l", "gap": format_scalar(gap)}
    if isinstance(gap, RatFun):
        d["degree"] = gap.degree
    elif args.approx and args.format == "table":
        d["gap"] += _approx(gap)
    return _render_mapping(d, args)


def _group_spec(args):
    kind = args.group
    if kind == "sp":
        _need(args, "g")
        return Symplectic(args.g, _ell(args, required=True), args.e)
    if kind == "gsp":
        _need(args, "g", "xi")
        return GSpCoset(args.g, _ell(args, required=True), args.xi, args.e)
    if kind == "gu":
        _need(args, "n")
        return Unitary(args.n, _m(args, required=True))
    if kind == "gl":
        _need(args, "n")
        return GeneralLinear(args.n, _ell(args, required=True))
    raise UsageError(f"unknown group {kind!r}")


def cmd_oracle(args) -> str:
    spec = _group_spec(args)
    table = bruteforce.empirical_group_distribution(spec, workers=args.jobs)
    text = _render_table(table, args)
    if args.against == "formula":
        expected = formula_table(spec)
        if expected.entries != table.entries:
            raise Mismatch(text + "\n" + _render_table(expected, args))
    return text


def cmd_crt_check(args) -> str:
    p1, p2 = args.primes
    res = bruteforce.crt_product_check(p1, p2, args.g or 1)
    d = {
        "moduli": f"{p1}*{p2}",
        "order": res["order"],
        "factorizes": res["factorizes"],
        "marginals_match_fields": res["marginals_match_fields"],
    }
    if args.format == "json":
        d["moduli"] = [p1, p2]
        d["joint"] = {f"{a},{b}": format_scalar(v) for (a, b), v in sorted(res["joint"].items())}
    text = _render_mapping(d, args)
    if not (res["factorizes"] and res["marginals_match_fields"]):
        raise Mismatch(text)
    return text


def cmd_curves(args) -> str:
    _need(args, "q")
    ell = _ell(args, required=True)
    if args.family == "hyperelliptic":
        report = curvelab.beta_genus2_divisibility(args.q, ell, workers=args.jobs)
    else:
        report = curvelab.beta_elliptic(args.q, ell, args.family, workers=args.jobs)
    within = None
    if args.tolerance is not None:
        within = report.within(Fraction(args.tolerance))
    if args.format == "json":
        d = report.to_dict()
        if within is not None:
            d["c"] = str(Fraction(args.tolerance))
            d["within_c_over_sqrt_q"] = within
        text = json.dumps(d, indent=2)
    elif args.format == "csv":
        text = report.to_csv().rstrip("\n")
    else:
        lines = [f"family\t{report.family}", f"q\t{report.q}", f"ell\t{report.ell}", f"xi\t{report.xi}",
                 f"sample_size\t{report.sample_size}",
                 ("l|h" if args.family == "hyperelliptic" else "rank") + "\tempirical\tpredicted\tdeviation"]
        for k in sorted(report.deviations):
            dev = report.deviations[k]
            lines.append(f"{k}\t{format_scalar(report.empirical[k])}\t{format_scalar(report.predicted[k])}\t"
                         f"{format_scalar(dev)}" + (_approx(dev) if args.approx else ""))
        lines.append(f"scale\t{report.sqrt_q_scale}")
        if within is not None:
            lines.append(f"within {args.tolerance}/sqrt(q)\t{within}")
        text = "\n".join(lines)
    if args.verify and within is False:
        raise Mismatch(text)
    return text


def cmd_table1(args) -> str:
    rows = []
    bad = False
    for (g, r), expected in TABLE1.items():
        got = alpha(g, r).to_str()
        ok = got == expected
        bad |= not ok
        rows.append({"g": g, "r": r, "value": got, "match": ok})
    if args.format == "json":
        text = json.dumps(rows, indent=2)
    elif args.format == "csv":
        text = "g,r,value,match\n" + "\n".join(f'{x["g"]},{x["r"]},{x["value"]},{x["match"]}' for x in rows)
    else:
        text = "\n".join(f'{x["g"]}\t{x["r"]}\t{x["value"]}' + ("" if x["match"] else "\tMISMATCH") for x in rows)
    if args.verify and bad:
        raise Mismatch(text)
    return text


def cmd_eigenspace(args) -> str:
    _need(args, "g")
    ell = _ell(args, required=True)
    spec = Symplectic(args.g, ell)
    ring = bruteforce.ring_for(spec)
    rng = random.Random(args.seed)
    failures = {}
    for _ in range(args.samples):
        x = bruteforce.random_element(spec, rng)
        E, C = bruteforce.eigenspace_split(x, ring)
        for name, ok in bruteforce.check_eigenspace_split(x, ring, E, C).items():
            failures[name] = failures.get(name, 0) + (not ok)
    d = {"g": args.g, "ell": ell, "seed": args.seed, "samples": args.samples, **{f"failures_{k}": v for k, v in failures.items()}}
    text = _render_mapping(d, args)
    if any(failures.values()):
        raise Mismatch(text)
    return text


COMMANDS = {
    "alpha": (cmd_alpha, "alpha(g, r), or the full table when --r is omitted"),
    "phi": (cmd_phi, "proportion of Sp_2g without fixed vectors"),
    "limit": (cmd_limit, "large-g limit of alpha(., r) with a certified tail bound (--tolerance)"),
    "gsp1": (cmd_gsp1, "fixed-space table on the multiplier-xi coset of GSp_2"),
    "unitary": (cmd_unitary, "fixed-space table of GU_n"),
    "trigonal": (cmd_trigonal, "torsion ranks for y^3 = f(x), deg f = 4"),
    "bounds": (cmd_bounds, "rank bounds for affine class groups"),
    "fw-gap": (cmd_fw_gap, "GL heuristic minus the symplectic alpha(g, 0)"),
    "oracle": (cmd_oracle, "brute-force fixed-space distribution of a finite group"),
    "crt-check": (cmd_crt_check, "independence of fixed spaces modulo two primes"),
    "curves": (cmd_curves, "exhaustive curve statistics against the prediction"),
    "table1": (cmd_table1, "symbolic alpha(g, r) for g <= 3"),
    "eigenspace": (cmd_eigenspace, "check the eigenspace decomposition on random symplectic elements"),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--symbolic", action="store_true", help="keep l as an indeterminate")
    mode.add_argument("--ell", type=int, help="concrete prime l")
    common.add_argument("--m", type=int, help="size of the fixed field for unitary groups")
    common.add_argument("--g", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--r", type=int)
    common.add_argument("--s", type=int, default=1, help="number of removed points (bounds)")
    common.add_argument("--xi", type=int, help="multiplier of the GSp coset")
    common.add_argument("--e", "--modulus-exponent", dest="e", type=int, default=1, help="work modulo l^e")
    common.add_argument("--q", type=int, help="field size for curve enumeration")
    common.add_argument("--family", default="short_weierstrass",
                        choices=list(curvelab.FAMILIES) + ["hyperelliptic"])
    common.add_argument("--tolerance", type=Fraction, help="tail bound (limit) or constant c in c/sqrt(q) (curves)")
    common.add_argument("--epsilon", type=Fraction)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--output", help="write the report to this file instead of stdout")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: $FIXEDSPACE_JOBS or 1)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--approx", action="store_true", help="append a decimal rendering in table output")
    common.add_argument("--verify", action="store_true", help="exit 2 on mismatch")
    common.add_argument("--group", choices=("sp", "gsp", "gu", "gl"), default="sp")
    common.add_argument("--against", choices=("formula",))
    common.add_argument("--primes", type=int, nargs=2, default=(3, 5))

    parser = _Parser(prog="fixedspace", description="Fixed-space statistics of finite classical groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, str]:
    """Parse and dispatch; returns (exit status, report or error text)."""
    try:
        args = build_parser().parse_args(argv)
        if args.jobs is not None and args.jobs < 1:
            raise UsageError("--jobs must be positive")
        text = COMMANDS[args.command][0](args)
    except Mismatch as exc:
        return EXIT_MISMATCH, exc.text
    except (UsageError, ValueError, TypeError, ZeroDivisionError) as exc:
        return EXIT_INVALID, f"error: {exc}"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        return EXIT_OK, ""
    return EXIT_OK, text


def main(argv: Optional[Sequence[str]] = None) -> int:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8", line_buffering=True)
    status, text = run(argv)
    if status == EXIT_INVALID:
        print(text, file=sys.stderr)
    elif text:
        try:
            print(text)
        except BrokenPipeError:
            # downstream closed early (e.g. piped into head)
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return status


if __name__ == "__main__":
    sys.exit(main())
