"""Single-pass instruction sequences over Boolean registers.

Text grammar, one token per primitive instruction, separated by ``;``::

    out.set:T        plain basic instruction
    +in:1.get        positive test
    -aux:2.set:F     negative test
    #3               forward jump
    !                termination

Foci are ``in:i``, ``aux:i`` and ``out``; methods are ``set:T``, ``set:F``
and ``get``.  Input registers can only be read and the output register can
only be written.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Union


class InseqError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(InseqError, ValueError):
    pass


class IllegalInstruction(InseqError, ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Focus:
    kind: str  # "in", "aux" or "out"
    index: int = 0

    def __post_init__(self):
        if self.kind == "out":
            if self.index != 0:
                raise ValueError("out takes no index")
        elif self.kind in ("in", "aux"):
            if self.index < 1:
                raise ValueError(f"{self.kind} index must be >= 1, got {self.index}")
        else:
            raise ValueError(f"unknown focus kind {self.kind!r}")

    def __str__(self):
        return "out" if self.kind == "out" else f"{self.kind}:{self.index}"


def inp(i: int) -> Focus:
    return Focus("in", i)


def aux(i: int) -> Focus:
    return Focus("aux", i)


OUT = Focus("out")


class Method(enum.Enum):
    SET_T = "set:T"
    SET_F = "set:F"
    GET = "get"

    def __str__(self):
        return self.value


@dataclass(frozen=True, slots=True)
class BasicInstruction:
    focus: Focus
    method: Method

    def __str__(self):
        return f"{self.focus}.{self.method}"

    @property
    def legal(self) -> bool:
        if self.focus.kind == "in":
            return self.method is Method.GET
        if self.focus.kind == "out":
            return self.method is not Method.GET
        return True


@dataclass(frozen=True, slots=True)
class Plain:
    a: BasicInstruction

    def __str__(self):
        return str(self.a)


@dataclass(frozen=True, slots=True)
class PosTest:
    a: BasicInstruction

    def __str__(self):
        return f"+{self.a}"


@dataclass(frozen=True, slots=True)
class NegTest:
    a: BasicInstruction

    def __str__(self):
        return f"-{self.a}"


@dataclass(frozen=True, slots=True)
class Jump:
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("jump length must be a natural number")

    def __str__(self):
        return f"#{self.length}"


@dataclass(frozen=True, slots=True)
class Halt:
    def __str__(self):
        return "!"


HALT = Halt()

Instruction = Union[Plain, PosTest, NegTest, Jump, Halt]
BASIC_FORMS = (Plain, PosTest, NegTest)


def basic_of(u: Instruction) -> BasicInstruction | None:
    """The basic instruction inside ``u``, or None for jumps and halt."""
    return u.a if isinstance(u, BASIC_FORMS) else None


@dataclass(frozen=True, slots=True)
class InstructionSequence:
    instrs: tuple

    def __post_init__(self):
        if not isinstance(self.instrs, tuple):
            object.__setattr__(self, "instrs", tuple(self.instrs))
        if not self.instrs:
            raise ValueError("instruction sequences are non-empty")
        for u in self.instrs:
            a = basic_of(u)
            if a is not None and not a.legal:
                raise IllegalInstruction(f"{a} is not a Boolean-register instruction")

    def __len__(self):
        return len(self.instrs)

    def __iter__(self) -> Iterator[Instruction]:
        return iter(self.instrs)

    def __getitem__(self, i):
        return self.instrs[i]

    def __add__(self, other: InstructionSequence) -> InstructionSequence:
        return InstructionSequence(self.instrs + other.instrs)

    def __str__(self):
        return render(self)

    def at(self, j: int) -> Instruction:
        """1-based access, as positions are numbered in the model."""
        return self.instrs[j - 1]


def seq(*parts: Iterable[Instruction] | Instruction) -> InstructionSequence:
    """Concatenate instructions and instruction lists into a sequence."""
    out: list = []
    for p in parts:
        if isinstance(p, (Plain, PosTest, NegTest, Jump, Halt)):
            out.append(p)
        else:
            out.extend(p)
    return InstructionSequence(tuple(out))


# ---------------------------------------------------------------- parsing

_FOCUS_RE = re.compile(r"^(?:(in|aux):([0-9]+)|(out))$")
_METHODS = {m.value: m for m in Method}


def _parse_basic(text: str) -> BasicInstruction:
    focus_txt, dot, meth_txt = text.rpartition(".")
    if not dot:
        raise ParseError(f"malformed basic instruction {text!r}")
    m = _FOCUS_RE.match(focus_txt)
    if not m or meth_txt not in _METHODS:
        raise ParseError(f"malformed basic instruction {text!r}")
    if m.group(3):
        focus = OUT
    else:
        idx = int(m.group(2))
        if idx < 1:
            raise ParseError(f"register index must be >= 1 in {text!r}")
        focus = Focus(m.group(1), idx)
    a = BasicInstruction(focus, _METHODS[meth_txt])
    if not a.legal:
        raise IllegalInstruction(f"{a} is not a Boolean-register instruction")
    return a


def parse_instruction(token: str) -> Instruction:
    tok = "".join(token.split())
    if not tok:
        raise ParseError("empty instruction")
    if tok == "!":
        return HALT
    if tok[0] == "#":
        if not tok[1:].isdigit() or not tok[1:].isascii():
            raise ParseError(f"malformed jump {token!r}")
        return Jump(int(tok[1:]))
    if tok[0] == "+":
        return PosTest(_parse_basic(tok[1:]))
    if tok[0] == "-":
        return NegTest(_parse_basic(tok[1:]))
    return Plain(_parse_basic(tok))


def parse(text: str) -> InstructionSequence:
    tokens = text.split(";")
    if not text.strip():
        raise ParseError("empty instruction sequence")
    return InstructionSequence(tuple(parse_instruction(t) for t in tokens))


def render(iseq: InstructionSequence) -> str:
    return " ; ".join(str(u) for u in iseq)


def psize(iseq: InstructionSequence) -> int:
    return len(iseq.instrs)


# ----------------------------------------------------------- classification

class Classification(NamedTuple):
    in_arity: int
    max_aux: int
    max_jump: int


def classify(iseq: InstructionSequence) -> Classification:
    """Least (in_arity, k, l) with iseq in RISbr(k, l) reading in:1..in_arity."""
    n = k = l = 0
    for u in iseq:
        if isinstance(u, Jump):
            l = max(l, u.length)
            continue
        a = basic_of(u)
        if a is None:
            continue
        if a.focus.kind == "in":
            n = max(n, a.focus.index)
        elif a.focus.kind == "aux":
            k = max(k, a.focus.index)
    return Classification(n, k, l)


def in_risbr(iseq: InstructionSequence, k: int, l: int) -> bool:
    c = classify(iseq)
    return c.max_aux <= k and c.max_jump <= l


def map_basic(iseq: InstructionSequence, fn) -> InstructionSequence:
    """Rewrite every basic instruction with ``fn``, keeping the instruction form."""
    out = []
    for u in iseq:
        if isinstance(u, BASIC_FORMS):
            out.append(type(u)(fn(u.a)))
        else:
            out.append(u)
    return InstructionSequence(tuple(out))


def alphabet(n_inputs: int, n_aux: int, max_jump: int) -> list[Instruction]:
    """All primitive instructions over in:1..n, aux:1..k, out and jumps #0..#l."""
    basics = [BasicInstruction(inp(i), Method.GET) for i in range(1, n_inputs + 1)]
    for i in range(1, n_aux + 1):
        basics += [BasicInstruction(aux(i), m) for m in Method]
    basics += [BasicInstruction(OUT, Method.SET_T), BasicInstruction(OUT, Method.SET_F)]
    out: list[Instruction] = []
    for a in basics:
        out += [Plain(a), PosTest(a), NegTest(a)]
    out += [Jump(l) for l in range(max_jump + 1)]
    out.append(HALT)
    return out
