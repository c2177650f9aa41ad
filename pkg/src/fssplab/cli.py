"""Batch command line front door.

Exit codes, stable across subcommands:

* 0 -- success (simulation fired, verification/refutation completed)
* 2 -- premature or partial firing
* 3 -- no firing within the horizon / nothing refuted
* 4 -- parse or argument error
* 5 -- open problem or unsupported family
"""

from __future__ import annotations

import argparse
import random
import sys

from .engine import (Automaton, EngineError, FiredAt, NoFireWithinHorizon,
                     PrematureOrPartial, default_horizon, firing_time,
                     simulate)
from .families import FamilyError, VariationSpec, build
from .grid import Configuration
from .line import UnsupportedFamily, generic_solution
from .mft import OpenProblem, mft
from .covering import cover_rect, piece_solutions, verify_cover
from .lower_bound import verify_mft_lower
from .refuter import refute_minimality
from .registry import bundled_automata
from .solutions import cover_composed, generate_cab

EXIT_OK, EXIT_PARTIAL, EXIT_NOFIRE, EXIT_PARSE, EXIT_OPEN = 0, 2, 3, 4, 5


def _parse_variation(text: str) -> VariationSpec:
    """Descriptor form ``FAMILY[:a,b[;c,d]]``, e.g. ``LSP_ab:3,2``."""
    family, _, rest = text.partition(":")
    kw: dict = {}
    if rest:
        ratio, _, offs = rest.partition(";")
        kw["a"], kw["b"] = (int(x) for x in ratio.split(","))
        if offs:
            kw["c"], kw["d"] = (int(x) for x in offs.split(","))
    return VariationSpec(family, **kw)


def _parse_params(text: str | None) -> dict:
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        key, _, value = item.partition("=")
        out[key.strip()] = int(value)
    return out


def _build_member(args) -> tuple[VariationSpec, Configuration]:
    spec = _parse_variation(args.variation)
    return spec, build(spec, **_parse_params(args.params))


def _automaton_for(args, spec, C) -> Automaton:
    if args.automaton_file:
        return Automaton.parse(open(args.automaton_file).read())
    if args.automaton:
        return bundled_automata(args.model)[args.automaton]
    return generate_cab(spec, C, args.model).automaton


def _emit(text: str, args) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _outcome_exit(out) -> int:
    if isinstance(out, FiredAt):
        return EXIT_OK
    if isinstance(out, PrematureOrPartial):
        return EXIT_PARTIAL
    return EXIT_NOFIRE


def cmd_simulate(args) -> int:
    spec, C = _build_member(args)
    A = _automaton_for(args, spec, C)
    horizon = args.horizon or default_horizon(C)
    trace = simulate(C, A, horizon=horizon)
    out = firing_time(C, A, horizon=horizon)
    body = trace.diagram() if args.format == "text" else trace.dump()
    _emit(f"outcome {out!r}\n\n{body}", args)
    return _outcome_exit(out)


def cmd_mft(args) -> int:
    spec, C = _build_member(args)
    try:
        res = mft(spec, C, args.model)
    except OpenProblem as exc:
        _emit(f"open problem: {exc}\n", args)
        return EXIT_OPEN
    _emit(f"{res.value}\n" if args.format == "text"
          else f"mft {spec.descriptor()} {sorted(C.params.items())} "
               f"{res.value} {res.case_label}\n", args)
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = _parse_variation(args.variation)
    lines, worst = [], EXIT_OK
    for C in spec.enumerate_members(args.scale):
        try:
            want = mft(spec, C, args.model).value
        except OpenProblem:
            lines.append(f"skip {C.params} (open problem)")
            continue
        try:
            sol = generate_cab(spec, C, args.model)
        except UnsupportedFamily:
            lines.append(f"skip {C.params} (no construction)")
            continue
        got = firing_time(C, sol.automaton,
                          horizon=max(default_horizon(C), want + 2))
        upper = isinstance(got, FiredAt) and got.t == want
        witness = verify_mft_lower(spec, C, args.model)
        ok = upper and witness is not None
        lines.append(f"{'pass' if ok else 'FAIL'} {C.params} mft={want} "
                     f"fired={got!r} witness={'ok' if witness else 'none'}")
        if not ok:
            worst = EXIT_NOFIRE
    _emit("\n".join(lines) + "\n", args)
    return worst


def cmd_refute(args) -> int:
    spec = _parse_variation(args.variation)
    try:
        A = (bundled_automata(args.model)[args.automaton]
             if args.automaton else generic_solution(spec, args.model))
    except UnsupportedFamily as exc:
        _emit(f"unsupported: {exc}\n", args)
        return EXIT_OPEN
    report = refute_minimality(A, spec, args.scale)
    _emit(report.render() + "\n", args)
    return EXIT_OK if report.refuted else EXIT_NOFIRE


def cmd_cover(args) -> int:
    pieces = cover_rect(args.a, args.b, args.w, args.h)
    lines = ["general activation firing"]
    for p in pieces:
        lines.append(f"{p.general_at} {p.activation} {p.firing}")
    lines.append(f"verify_cover {verify_cover(pieces, args.w, args.h)}")
    grid = [[" ."] * (args.w + 1) for _ in range(args.h + 1)]
    for k, p in enumerate(pieces):
        for (x, y) in p.cells():
            grid[y][x] = f"{k:2d}"
    for p in pieces:
        i, j = p.general_at
        grid[j][i] = " G"
    lines += ["".join(row) for row in reversed(grid)]
    out = cover_composed(pieces, piece_solutions(pieces), args.w, args.h)
    lines.append(f"composed {out!r}")
    _emit("\n".join(lines) + "\n", args)
    return _outcome_exit(out)


def cmd_plan(args) -> int:
    spec, C = _build_member(args)
    sol = generate_cab(spec, C, args.model)
    if sol.plan is None:
        _emit("no signal plan for this construction\n", args)
        return EXIT_OPEN
    _emit(sol.plan.serialize(), args)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(
        prog="fssplab",
        description="firing squad synchronization laboratory")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, params=True):
        p.add_argument("--variation", required=True)
        if params:
            p.add_argument("--params", default="")
        p.add_argument("--model", choices=("tr", "bs"), default="tr")
        p.add_argument("--out")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("text", "records"),
                       default="text")

    p = sub.add_parser("simulate", help="run an automaton on a member")
    common(p)
    p.add_argument("--automaton", help="bundled automaton name")
    p.add_argument("--automaton-file", help="explicit rule table file")
    p.add_argument("--horizon", type=int)
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("mft", help="print the minimum firing time")
    common(p)
    p.set_defaults(fn=cmd_mft)

    p = sub.add_parser("verify", help="sweep upper and lower bounds")
    common(p, params=False)
    p.add_argument("--scale", type=int, default=3)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("refute", help="refute minimality of an automaton")
    common(p, params=False)
    p.add_argument("--scale", type=int, default=10)
    p.add_argument("--automaton", help="bundled automaton name "
                                       "(default: generic solution)")
    p.set_defaults(fn=cmd_refute)

    p = sub.add_parser("cover", help="staircase cover of a rectangle")
    for name in ("a", "b", "w", "h"):
        p.add_argument(name, type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=("text", "records"), default="text")
    p.set_defaults(fn=cmd_cover)

    p = sub.add_parser("plan", help="dump the signal plan of a construction")
    common(p)
    p.set_defaults(fn=cmd_plan)

    args = ap.parse_args(argv)
    random.seed(getattr(args, "seed", 0))
    try:
        return args.fn(args)
    except (FamilyError, EngineError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
