"""Pairing, certificate padding, projections and projective families."""

from __future__ import annotations

from typing import Sequence

from .isa import InseqError, InstructionSequence, parse
from .semantics import TruthTable, all_inputs, parse_tables


class Malformed(InseqError, ValueError):
    pass


class TargetTooSmall(InseqError, ValueError):
    pass


class ArityIncrease(InseqError, ValueError):
    pass


FamilyPrefix = list  # entry n is a TruthTable of arity n


# ------------------------------------------------------------------ pairing

def pair(w: Sequence[bool], c: Sequence[bool]) -> tuple[bool, ...]:
    """(w1, w1, ..., wn, wn, T, F, c1, ..., cm)."""
    out = []
    for b in w:
        out += [bool(b), bool(b)]
    return tuple(out) + (True, False) + tuple(bool(b) for b in c)


def unpair(x: Sequence[bool]) -> tuple[tuple[bool, ...], tuple[bool, ...]]:
    w = []
    for i in range(0, len(x) - 1, 2):
        a, b = bool(x[i]), bool(x[i + 1])
        if a == b:
            w.append(a)
        elif a:
            return tuple(w), tuple(bool(y) for y in x[i + 2 :])
        else:
            raise Malformed(f"pair (F,T) at position {i + 1}")
    raise Malformed("no separator pair (T,F)")


# ------------------------------------------------------------------ padding

def gamma_pad(c: Sequence[bool], target: int) -> tuple[bool, ...]:
    """(c1, T, c2, T, ..., cn, F) followed by F up to ``target`` bits.

    The empty sequence becomes all F.
    """
    n = len(c)
    if target < 2 * n:
        raise TargetTooSmall(f"{n} bits need at least {2 * n} positions")
    out = []
    for i, b in enumerate(c, start=1):
        out += [bool(b), i != n]
    return tuple(out) + (False,) * (target - len(out))


def gamma_unpad(x: Sequence[bool]) -> tuple[bool, ...]:
    """Inverse of :func:`gamma_pad` for a nonempty padded sequence.

    Reads pairs up to the first one whose second bit is F.
    """
    out = []
    for i in range(0, len(x) - 1, 2):
        out.append(bool(x[i]))
        if not x[i + 1]:
            return tuple(out)
    raise Malformed("no terminating pair")


# --------------------------------------------------------------- projection

def project(f: TruthTable, n: int) -> TruthTable:
    """pi^m_n f: the first n arguments of f, the others fixed to F."""
    if n > f.arity:
        raise ArityIncrease(f"cannot project arity {f.arity} onto {n}")
    # with input 1 as the most significant bit, trailing F's pick every
    # 2**(m-n)-th output
    return TruthTable(n, f.outputs[:: 1 << (f.arity - n)])


def is_projective(prefix: Sequence[TruthTable]) -> bool:
    return all(prefix[n] == project(prefix[n + 1], n) for n in range(len(prefix) - 1))


def projectivize(prefix: Sequence[TruthTable]) -> list[TruthTable]:
    """g_0 .. g_{2N+1}, projective, with f_n(b) = g_{2n}(interleave(b)) for n >= 1.

    An argument x of g_L is read as pairs (b_1, b'_1), (b_2, b'_2), ...
    continued with F beyond its end.  If the first pair with b'_m = F has
    m <= N, the value is f_m(b_1, ..., b_m); otherwise it is F.
    """
    big_n = len(prefix) - 1

    def g(x: tuple) -> bool:
        m = 1
        while True:
            tail = x[2 * m - 1] if 2 * m - 1 < len(x) else False
            if not tail:
                break
            m += 1
        if m > big_n:
            return False
        bits = tuple(x[2 * i] if 2 * i < len(x) else False for i in range(m))
        return prefix[m](bits)

    return [TruthTable(L, tuple(g(x) for x in all_inputs(L))) for L in range(2 * big_n + 2)]


def interleave(b: Sequence[bool]) -> tuple[bool, ...]:
    """(b1, T, b2, T, ..., bn, F): gamma_pad without padding."""
    return gamma_pad(b, 2 * len(b))


def interleave_witnesses(n: int) -> list[InstructionSequence]:
    """Sequences for the 2n coordinates of :func:`interleave` on n inputs."""
    if n < 1:
        raise ValueError("n >= 1")
    out = []
    for i in range(1, n + 1):
        out.append(parse(f"+in:{i}.get ; out.set:T ; !"))
        out.append(parse("out.set:T ; !" if i != n else "!"))
    return out


# -------------------------------------------------------------- file format

def family_to_text(prefix: Sequence[TruthTable]) -> str:
    return "".join(t.to_text() for t in prefix)


def family_from_text(text: str) -> list[TruthTable]:
    tables = parse_tables(text)
    for n, t in enumerate(tables):
        if t.arity != n:
            raise ValueError(f"entry {n} has arity {t.arity}")
    return tables
