"""Command-line front end.

Exit status: 0 on success, 1 when the computation itself fails (inaction,
an unsatisfiable request, a library error), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import isa, satc, semantics, synthesis
from .formulas import parse_circuit, parse_dimacs, parse_formula
from .reduction import MissingTarget, build_reachability_formula, normalize_for_reduction
from .sat import to_3cnf

UNSAT_INSTANCE = "110"  # v1 & ~v1


class UsageError(Exception):
    pass


def _bits(s: str) -> tuple[bool, ...]:
    try:
        return satc.text_to_bits(s)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load(path: str) -> isa.InstructionSequence:
    try:
        return isa.parse(_read(path))
    except isa.InseqError as e:
        raise UsageError(f"{path}: {e}") from None


def _format_lits(lits) -> str:
    return ",".join(("" if p else "~") + f"v{v}" for v, p in sorted(lits, key=lambda l: (l[0], not l[1])))


def _parse_lits(text: str):
    out = set()
    for tok in text.replace(" ", "").split(","):
        neg = tok.startswith("~")
        name = tok[1:] if neg else tok
        if not (name.startswith("v") and name[1:].isdigit() and int(name[1:]) >= 1):
            raise UsageError(f"bad literal {tok!r}")
        out.add((int(name[1:]), not neg))
    if not 1 <= len(out) <= 3:
        raise UsageError("a literal set has 1 to 3 literals")
    return out


def cmd_compile(args) -> int:
    text = _read(args.path)
    try:
        if args.kind == "table":
            x = synthesis.inseq_from_table(semantics.TruthTable.from_text(text))
        elif args.kind == "cnf":
            x = synthesis.inseqcnf(parse_dimacs(text))
        elif args.kind == "formula":
            x = synthesis.inseqf(parse_formula(text))
        else:
            x = synthesis.inseqc(parse_circuit(text))
    except (ValueError, isa.InseqError) as e:
        raise UsageError(f"{args.path}: {e}") from None
    print(isa.render(x))
    return 0


def cmd_run(args) -> int:
    x = _load(args.path)
    o = semantics.execute(x, _bits(args.input))
    if not isinstance(o, semantics.Terminated):
        print("inaction", file=sys.stderr)
        return 1
    print(f"out={int(o.out)}")
    return 0


def cmd_table(args) -> int:
    x = _load(args.path)
    t = semantics.truth_table(x, args.arity)
    if t is None:
        print("inaction on some input", file=sys.stderr)
        return 1
    sys.stdout.write(t.to_text())
    return 0


def cmd_transform(args) -> int:
    x = _load(args.path)
    if args.kind == "eliminate-set-false":
        y = synthesis.eliminate_set_false(x)
    else:
        y = normalize_for_reduction(x)
    print(isa.render(y))
    return 0


def cmd_reduce(args) -> int:
    x = _load(args.path)
    if synthesis.mentions_out_set_false(x):
        x = synthesis.eliminate_set_false(x)
    x = normalize_for_reduction(x)
    try:
        rf = build_reachability_formula(x, _bits(args.fixed), args.m)
    except MissingTarget:
        print("no out.set:T: the answer is constantly F", file=sys.stderr)
        print(UNSAT_INSTANCE)
        return 0
    print(satc.bits_to_text(satc.encode_cnf(to_3cnf(rf.formula))))
    if args.map:
        Path(args.map).write_text(rf.variable_map(), encoding="utf-8")
    return 0


def cmd_satc(args) -> int:
    w = _bits(_read(args.path))
    print(int(satc.satc_eval(w)))
    return 0


def cmd_check(args) -> int:
    x = _load(args.path)
    c = isa.classify(x)
    print(f"in_arity={c.in_arity} max_aux={c.max_aux} max_jump={c.max_jump} psize={isa.psize(x)}")
    return 0


def cmd_rank(args) -> int:
    print(satc.alpha_rank(_parse_lits(args.set)))
    return 0


def cmd_unrank(args) -> int:
    if args.index < 1:
        raise UsageError("positions start at 1")
    print(_format_lits(satc.alpha_unrank(args.index)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="inseq", description="Boolean-register instruction sequences.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("compile", help="synthesize a sequence from a table, CNF, formula or circuit")
    s.add_argument("kind", choices=["table", "cnf", "formula", "circuit"])
    s.add_argument("path")
    s.set_defaults(fn=cmd_compile)

    s = sub.add_parser("run", help="execute a sequence on input bits")
    s.add_argument("--input", required=True, help="input bits as a 1/0 string")
    s.add_argument("path")
    s.set_defaults(fn=cmd_run)

    s = sub.add_parser("table", help="print the truth table of a sequence")
    s.add_argument("path")
    s.add_argument("arity", type=int)
    s.set_defaults(fn=cmd_table)

    s = sub.add_parser("transform", help="rewrite a sequence")
    s.add_argument("kind", choices=["eliminate-set-false", "normalize"])
    s.add_argument("path")
    s.set_defaults(fn=cmd_transform)

    s = sub.add_parser("reduce", help="3SATC instance for fixed inputs and m certificate bits")
    s.add_argument("path")
    s.add_argument("--fixed", required=True, help="fixed input bits as a 1/0 string")
    s.add_argument("--m", type=int, required=True, help="number of certificate bits")
    s.add_argument("--map", help="write the variable map to this file")
    s.set_defaults(fn=cmd_reduce)

    s = sub.add_parser("satc", help="evaluate a 3SATC instance file")
    s.add_argument("path")
    s.set_defaults(fn=cmd_satc)

    s = sub.add_parser("check", help="print the classification of a sequence")
    s.add_argument("path")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("rank", help="position of a literal set such as v1,~v1,v2")
    s.add_argument("set")
    s.set_defaults(fn=cmd_rank)

    s = sub.add_parser("unrank", help="literal set at a position")
    s.add_argument("index", type=int)
    s.set_defaults(fn=cmd_unrank)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.command == "reduce" and args.m < 0:
        print("inseq: --m must be >= 0", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"inseq: {e}", file=sys.stderr)
        return 2
    except (isa.InseqError, ValueError) as e:
        print(f"inseq: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
