"""Compilers from truth tables, formulas and circuits to instruction sequences."""

from __future__ import annotations

from typing import Mapping

from .formulas import (
    And,
    Circuit,
    CnfFormula,
    EmptyClause,
    Formula,
    Not,
    Or,
    Var,
    topological_gates,
)
from .isa import (
    BASIC_FORMS,
    HALT,
    BasicInstruction,
    Focus,
    InseqError,
    InstructionSequence,
    Jump,
    Method,
    NegTest,
    OUT,
    Plain,
    PosTest,
    aux,
    basic_of,
    classify,
    inp,
    map_basic,
)
from .semantics import DESK_SCALE_ARITY, ArityTooLarge, TruthTable

OUT_T = BasicInstruction(OUT, Method.SET_T)
OUT_F = BasicInstruction(OUT, Method.SET_F)


class UnmappedInput(InseqError, ValueError):
    pass


class IllegalTarget(InseqError, ValueError):
    pass


def get(f: Focus) -> BasicInstruction:
    return BasicInstruction(f, Method.GET)


def set_true(f: Focus) -> BasicInstruction:
    return BasicInstruction(f, Method.SET_T)


# ------------------------------------------------------------- truth tables

def inseq_from_table(f: TruthTable, limit: int = DESK_SCALE_ARITY) -> InstructionSequence:
    """Branch on the last input, true branch first; no aux registers.

    The result has exactly 5 * 2**n - 2 instructions.  A ``#2`` after the
    test only skips the true branch when that branch is a 3-instruction
    leaf (its own ``#2`` continues the chain past its halt).  Larger true
    branches are skipped with one long jump instead, since landing on their
    second instruction would fall into their own false branch.
    """
    if f.arity > limit:
        raise ArityTooLarge(f"arity {f.arity} exceeds limit {limit}")
    out: list = []

    def emit(outputs: tuple, n: int):
        if n == 0:
            if outputs[0]:
                out.extend((NegTest(OUT_T), Jump(2), HALT))
            else:
                out.extend((PosTest(OUT_F), Jump(2), HALT))
            return
        out.extend((NegTest(get(inp(n))), Jump(2 if n == 1 else 5 * 2 ** (n - 1) - 1)))
        emit(outputs[1::2], n - 1)
        emit(outputs[0::2], n - 1)

    emit(f.outputs, f.arity)
    return InstructionSequence(tuple(out))


# ---------------------------------------------------------------------- CNF

def inseqcnf(phi: CnfFormula) -> InstructionSequence:
    """2 instructions per literal, 3 per clause, 2 at the end."""
    out: list = []
    for clause in phi.clauses:
        if not clause:
            raise EmptyClause("clauses must be nonempty")
        for v, pol in clause:
            out.append((PosTest if pol else NegTest)(get(inp(v))))
            out.append(Jump(2))
        out.extend((PosTest(OUT_F), Jump(2), HALT))
    out.extend((PosTest(OUT_T), HALT))
    return InstructionSequence(tuple(out))


# ------------------------------------------------------------------ formulas

def _inseqf_body(phi: Formula) -> list:
    # continues at the next instruction when phi holds and skips it otherwise
    if isinstance(phi, Var):
        return [PosTest(get(inp(phi.index)))]
    if isinstance(phi, Not):
        return _inseqf_body(phi.arg) + [Jump(2)]
    left, right = _inseqf_body(phi.left), _inseqf_body(phi.right)
    if isinstance(phi, Or):
        return left + [Jump(len(right) + 1)] + right
    if isinstance(phi, And):
        return left + [Jump(2), Jump(len(right) + 2)] + right
    raise TypeError(phi)


def inseqf(phi: Formula) -> InstructionSequence:
    return InstructionSequence(tuple(_inseqf_body(phi) + [PosTest(OUT_T), HALT]))


# ------------------------------------------------------------------ circuits

def inseqc(c: Circuit) -> InstructionSequence:
    """Gate k of a topological order writes aux:k; the output node is read last."""
    order = topological_gates(c)
    slot = {g.name: k for k, g in enumerate(order, start=1)}

    def read(node) -> PosTest:
        kind, k = node
        return PosTest(get(inp(k) if kind == "in" else aux(slot[k])))

    out: list = []
    for k, g in enumerate(order, start=1):
        write = PosTest(set_true(aux(k)))
        if g.op == "NOT":
            out += [read(g.preds[0]), Jump(2), write]
        elif g.op == "OR":
            out += [read(g.preds[0]), Jump(2), read(g.preds[1]), write]
        else:
            out += [read(g.preds[0]), Jump(2), Jump(3), read(g.preds[1]), write]
    out += [read(c.output), PosTest(OUT_T), HALT]
    return InstructionSequence(tuple(out))


# ------------------------------------------------------- removing out.set:F

def _never_skips(u) -> bool:
    # tests whose reply is fixed so that they always fall through
    if isinstance(u, PosTest):
        return u.a.method is Method.SET_T
    if isinstance(u, NegTest):
        return u.a.method is Method.SET_F
    return True


def eliminate_set_false(x: InstructionSequence) -> InstructionSequence:
    """Equivalent sequence in which out.set:F does not occur.

    ``out`` is renamed to a fresh aux register o.  Then, repeatedly, the first
    halt not directly preceded by ``out.set:T`` becomes
    ``+aux:o.get ; out.set:T ; !`` and jumps over it grow by 2.  If the
    preceding instruction is a test that may skip the halt, the block
    ``#2 ; #4 ; +aux:o.get ; out.set:T ; !`` is used instead so that the
    skip still lands on the old successor.
    """
    o = classify(x).max_aux + 1
    reg = aux(o)
    us = list(map_basic(x, lambda a: BasicInstruction(reg, a.method) if a.focus == OUT else a))
    plain_out_t = Plain(OUT_T)
    epilogue = [PosTest(get(reg)), plain_out_t, HALT]
    if us[0] == HALT:
        return InstructionSequence(tuple(us))
    while True:
        j = next(
            (j for j in range(2, len(us) + 1) if us[j - 2] != plain_out_t and us[j - 1] == HALT),
            None,
        )
        if j is None:
            break
        if _never_skips(us[j - 2]):
            block, grow = epilogue, 2
        else:
            block, grow = [Jump(2), Jump(4)] + epilogue, 4
        for i, u in enumerate(us, start=1):
            if isinstance(u, Jump) and i < j < i + u.length:
                us[i - 1] = Jump(u.length + grow)
        us[j - 1 : j] = block
    return InstructionSequence(tuple(us))


# ------------------------------------------------------------- retargeting

def retarget_inputs(x: InstructionSequence, mapping: Mapping[int, Focus]) -> InstructionSequence:
    """Make every ``in:i.get`` read ``mapping[i]`` instead."""
    for tgt in mapping.values():
        if tgt.kind == "out":
            raise IllegalTarget("inputs cannot be redirected to out")

    def fn(a: BasicInstruction) -> BasicInstruction:
        if a.focus.kind != "in":
            return a
        if a.focus.index not in mapping:
            raise UnmappedInput(f"no target for in:{a.focus.index}")
        return BasicInstruction(mapping[a.focus.index], a.method)

    return map_basic(x, fn)


def shift_aux(x: InstructionSequence, offset: int) -> InstructionSequence:
    return map_basic(
        x, lambda a: BasicInstruction(aux(a.focus.index + offset), a.method) if a.focus.kind == "aux" else a
    )


def rename_out(x: InstructionSequence, target: Focus) -> InstructionSequence:
    return map_basic(x, lambda a: BasicInstruction(target, a.method) if a.focus == OUT else a)


def as_subroutine(x: InstructionSequence) -> InstructionSequence:
    """Turn halts into jumps past the end so that execution can continue.

    A trailing ``#0`` keeps falling off the end (or jumping just past it) an
    inaction; jumps reaching further than that become ``#0``.
    """
    k = len(x)
    out = []
    for p, u in enumerate(x, start=1):
        if u == HALT:
            out.append(Jump(k + 2 - p))
        elif isinstance(u, Jump) and p + u.length > k + 1:
            out.append(Jump(0))
        else:
            out.append(u)
    out.append(Jump(0))
    return InstructionSequence(tuple(out))


def mentions_out_set_false(x: InstructionSequence) -> bool:
    return any(basic_of(u) == OUT_F for u in x)
