"""Command-line front end.

Exit codes: 0 every check passed, 1 a verification failed, 2 usage error,
3 a resource cap or time budget ran out before a verdict.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Sequence

from .budget import Deadline
from .cache import CACHE_ENV, Cache, cached_character_table
from .errors import BudgetExceeded, GroupConstructionError, ResourceError, TorsionObstructError
from .expr import ExprError, Metacyclic, build_group, format_expr, parse_group

SCHEMA = "torsion-obstruct/1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
DEFAULT_CAP = 200
DEFAULT_TIME_BUDGET = 600.0
SUITE_NAMES = ("lemma-mz", "exceptional-genera", "s3-groups", "s4-groups", "metacyclic-bounds", "symplectic", "char-sanity")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _UsageError(f"{self.prog}: error: {message}")


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", action="store_true", default=d(False), help="emit a JSON report")
    p.add_argument("--cache-dir", default=d(None), help=f"cache directory (overridden by ${CACHE_ENV})")
    p.add_argument("--cap", type=int, default=d(DEFAULT_CAP), help="maximum group order")
    p.add_argument("--time-budget", type=float, default=d(DEFAULT_TIME_BUDGET), help="seconds per command or suite")
    p.add_argument("--jobs", type=int, default=d(1), help="parallel worker processes for suites")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="torsion-obstruct", description="Finite group actions on surfaces and spheres.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        _global_flags(p, suppress=True)
        return p

    p = add("spectrum", "genera in a range on which the group acts")
    p.add_argument("expr")
    p.add_argument("--min", type=int, default=2)
    p.add_argument("--max", type=int, required=True)
    p = add("ssg", "strong symmetric genus")
    p.add_argument("expr")
    p.add_argument("--ceiling", type=int, default=None)
    p = add("embeds-so", "is the group a subgroup of SO(n)?")
    p.add_argument("n", type=int)
    p.add_argument("expr")
    p = add("sphere", "SO(3)/SO(4)/SO(5) tests and S^3/S^4 verdicts")
    p.add_argument("expr")
    p = add("sphere-min-dim", "least sphere dimension for Z_p x| Z_k")
    p.add_argument("p", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--any-orientation", action="store_true")
    p = add("witness-sp", "check the (Z/3)^g subgroup of Sp(2g, Z)")
    p.add_argument("g", type=int)
    p = add("verify", "run a verification suite")
    p.add_argument("suite", choices=SUITE_NAMES + ("all",))
    return parser


# -- commands ------------------------------------------------------------------------------


def _group(args):
    g = build_group(parse_group(args.expr), cap=args.cap)
    cached_character_table(g, args.cache, cap=None)
    return g


def cmd_spectrum(args) -> tuple[dict, str, int]:
    from .surfaces import genus_spectrum

    if args.min > args.max:
        raise _UsageError("--min must not exceed --max")
    g = _group(args)
    kind = f"spectrum-{args.min}-{args.max}"
    report = args.cache.get(g, kind)
    if report is None:
        report = genus_spectrum(g, args.min, args.max, deadline=args.deadline, cap=None).to_json()
        if not report["undecided"]:
            args.cache.put(g, kind, report)
    lines = [f"{report['group']}: acts on genera {report['genera']} within {report['range']}"]
    for genus, w in report["witnesses"].items():
        lines.append(f"  g = {genus}: signature ({w['g0']}; {', '.join(map(str, w['periods']))})")
    code = EXIT_RESOURCE if report["undecided"] else EXIT_OK
    if report["undecided"]:
        lines.append(f"  undecided (time budget): {report['undecided']}")
    return report, "\n".join(lines), code


def cmd_ssg(args) -> tuple[dict, str, int]:
    from .groups import abelian_invariants
    from .surfaces import decide_genus, strong_symmetric_genus

    g = _group(args)
    genus = strong_symmetric_genus(g, args.ceiling, cap=None)
    res = decide_genus(g, genus, deadline=args.deadline)
    report = {"schema": SCHEMA, "group": g.name, "ssg": genus, "signature": res.signature.to_json()}
    inv = abelian_invariants(g)
    if g.is_abelian and len(inv) >= 2 and set(inv) == {3}:
        rank = len(inv)
        report["mu0"] = {"rank": rank, "value": str(Fraction(genus - 1, 3 ** (rank - 1)))}
    return report, f"{g.name}: strong symmetric genus {genus}, signature {res.signature}", EXIT_OK


def cmd_embeds_so(args) -> tuple[dict, str, int]:
    from .characters import embeds_in_SO

    if args.n < 1:
        raise _UsageError("n must be >= 1")
    g = _group(args)
    res = embeds_in_SO(g, args.n, cap=None)
    report = {"schema": SCHEMA, "group": g.name, "n": args.n, "embeds": res.embeds, "witness": res.describe(),
              "blocks_searched": res.blocks_searched}
    text = f"{g.name} {'is' if res.embeds else 'is not'} a subgroup of SO({args.n})"
    if res.embeds:
        text += "; witness degrees " + " + ".join(str(b["degree"]) for b in res.describe())
    return report, text, EXIT_OK


def cmd_sphere(args) -> tuple[dict, str, int]:
    from .catalog import metacyclic_params
    from .spheres import sphere_report

    e = parse_group(args.expr)
    g = _group(args)
    meta = (e.p, e.q) if isinstance(e, Metacyclic) else metacyclic_params(format_expr(e))
    rep = sphere_report(g, cap=None, metacyclic=meta)
    lines = [f"{g.name}:"] + [f"  {k}: {v}" for k, v in sorted(rep.tests.items())] + [f"  note: {n}" for n in rep.notes]
    return rep.to_json(), "\n".join(lines), EXIT_OK


def cmd_sphere_min_dim(args) -> tuple[dict, str, int]:
    from .spheres import MetacyclicParams, min_sphere_dim

    orientation = "any" if args.any_orientation else "preserving"
    m = MetacyclicParams(args.p, args.k, orientation=orientation)
    n = min_sphere_dim(m)
    report = {"schema": SCHEMA, "p": m.p, "k": m.k, "r": m.r, "orientation": orientation, "min_dim": n}
    return report, str(n), EXIT_OK


def cmd_witness_sp(args) -> tuple[dict, str, int]:
    from .symplectic import verify_witness

    if args.g < 1:
        raise _UsageError("g must be >= 1")
    rep = verify_witness(args.g, raise_on_failure=False)
    text = f"g = {args.g}: {'pass' if rep.passed else 'FAIL ' + str(rep.failure)}, group order {rep.group_order}"
    return rep.to_json(), text, EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify(args) -> tuple[dict, str, int]:
    from .suites import run_suites

    names = list(SUITE_NAMES) if args.suite == "all" else [args.suite]
    results = run_suites(names, args.time_budget, max(1, args.jobs))
    statuses = [r["status"] for r in results]
    if "fail" in statuses:
        code = EXIT_FAIL
    elif "inconclusive" in statuses:
        code = EXIT_RESOURCE
    else:
        code = EXIT_OK
    lines = []
    for r in results:
        lines.append(f"[{r['status'].upper()}] {r['suite']}")
        for c in r["checks"]:
            lines.append(f"    {'ok  ' if c['passed'] else 'FAIL'} {c['check']}")
        for n in r["notes"]:
            lines.append(f"    note: {n}")
        if r.get("error"):
            lines.append(f"    error: {r['error']}")
    report = {"schema": SCHEMA, "suites": results, "status": "pass" if code == EXIT_OK else statuses}
    return report, "\n".join(lines), code


COMMANDS = {
    "spectrum": cmd_spectrum,
    "ssg": cmd_ssg,
    "embeds-so": cmd_embeds_so,
    "sphere": cmd_sphere,
    "sphere-min-dim": cmd_sphere_min_dim,
    "witness-sp": cmd_witness_sp,
    "verify": cmd_verify,
}


def _emit(payload: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    cache_dir = os.environ.get(CACHE_ENV) or args.cache_dir
    args.cache = Cache(cache_dir)
    args.deadline = Deadline(args.time_budget)
    try:
        payload, text, code = COMMANDS[args.command](args)
    except (_UsageError, ExprError, GroupConstructionError) as exc:
        _emit({"schema": SCHEMA, "error": "usage", "message": str(exc)}, args.json, f"error: {exc}")
        return EXIT_USAGE
    except (BudgetExceeded, ResourceError) as exc:
        _emit({"schema": SCHEMA, "error": "resource", "message": str(exc)}, args.json, f"inconclusive: {exc}")
        return EXIT_RESOURCE
    except TorsionObstructError as exc:
        _emit({"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc)}, args.json, f"verification failed: {exc}")
        return EXIT_FAIL
    _emit(payload, args.json, text)
    return code


if __name__ == "__main__":
    sys.exit(main())
