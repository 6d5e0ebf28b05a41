"""Execution of instruction sequences on Boolean-register services.

Two independent routes are provided.  :func:`execute` is a plain
program-counter interpreter.  :func:`compute_via_threads` extracts the
behaviour tree of the sequence, feeds it to input/auxiliary registers with
the use operators and finally applies it to the output register.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Sequence, Union

from .isa import (
    BasicInstruction,
    Focus,
    Halt,
    InseqError,
    InstructionSequence,
    Jump,
    Method,
    NegTest,
    OUT,
    Plain,
    PosTest,
    aux,
    classify,
    inp,
)

DESK_SCALE_ARITY = 20
THREAD_BUDGET = 2**20


class BudgetExceeded(InseqError):
    pass


class ArityTooLarge(InseqError, ValueError):
    pass


class Reply(enum.Enum):
    T = "T"
    F = "F"
    B = "B"


# ------------------------------------------------------------------ services

@dataclass(frozen=True, slots=True)
class BoolReg:
    content: bool

    def __str__(self):
        return f"BR_{'T' if self.content else 'F'}"


@dataclass(frozen=True, slots=True)
class EmptyService:
    def __str__(self):
        return "empty"


BR_T = BoolReg(True)
BR_F = BoolReg(False)
EMPTY = EmptyService()

Service = Union[BoolReg, EmptyService]


def boolreg(b: bool) -> BoolReg:
    return BR_T if b else BR_F


def service_step(s: Service, m: Method) -> tuple[Service, Reply]:
    if isinstance(s, EmptyService):
        return EMPTY, Reply.B
    if m is Method.SET_T:
        return BR_T, Reply.T
    if m is Method.SET_F:
        return BR_F, Reply.F
    return s, (Reply.T if s.content else Reply.F)


# ------------------------------------------------------------------- threads

@dataclass(frozen=True, slots=True)
class Stop:
    size: int = field(default=1, compare=False, repr=False)

    def __str__(self):
        return "S"


@dataclass(frozen=True, slots=True)
class Deadlock:
    size: int = field(default=1, compare=False, repr=False)

    def __str__(self):
        return "D"


@dataclass(frozen=True, slots=True)
class Tau:
    next: "Thread"
    size: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "size", 1 + self.next.size)

    def __str__(self):
        return f"tau o {self.next}"


@dataclass(frozen=True, slots=True)
class Pcc:
    action: BasicInstruction
    on_true: "Thread"
    on_false: "Thread"
    size: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "size", 1 + self.on_true.size + self.on_false.size)

    def __str__(self):
        return f"({self.on_true} <| {self.action} |> {self.on_false})"


STOP = Stop()
DEADLOCK = Deadlock()

Thread = Union[Stop, Deadlock, Tau, Pcc]


def prefix(a: BasicInstruction, t: Thread) -> Pcc:
    return Pcc(a, t, t)


def extract_thread(iseq: InstructionSequence, budget: int = THREAD_BUDGET) -> Thread:
    """Thread extraction by the equations for finite sequences.

    ``suffix[j]`` holds the extraction of ``u_j ; ... ; u_k``.  Jumps are
    resolved by the jump equations, peeling one instruction per step.
    Subtrees are shared; ``budget`` bounds the unshared tree size.
    """
    instrs = iseq.instrs
    k = len(instrs)
    suffix: list[Thread] = [DEADLOCK] * (k + 2)

    def jump(l: int, j: int) -> Thread:
        # the extraction of  #l ; u_j ; ... ; u_k
        while True:
            if j > k:                 # #l alone
                return DEADLOCK
            if l == 0:                # #0 ; X
                return DEADLOCK
            if l == 1:                # #1 ; X = X
                return suffix[j]
            if j == k:                # #l+2 ; u
                return DEADLOCK
            l, j = l - 1, j + 1       # #l+2 ; u ; X = #l+1 ; X

    for j in range(k, 0, -1):
        u = instrs[j - 1]
        last = j == k
        if isinstance(u, Halt):
            t: Thread = STOP
        elif isinstance(u, Jump):
            t = jump(u.length, j + 1)
        elif isinstance(u, Plain):
            t = prefix(u.a, DEADLOCK if last else suffix[j + 1])
        elif isinstance(u, PosTest):
            t = prefix(u.a, DEADLOCK) if last else Pcc(u.a, suffix[j + 1], jump(2, j + 1))
        elif isinstance(u, NegTest):
            t = prefix(u.a, DEADLOCK) if last else Pcc(u.a, jump(2, j + 1), suffix[j + 1])
        else:
            raise TypeError(u)
        if t.size > budget:
            raise BudgetExceeded(f"thread exceeds {budget} nodes at position {j}")
        suffix[j] = t
    return suffix[1]


def thread_use(t: Thread, f: Focus, s: Service) -> Thread:
    memo: dict = {}

    def go(t: Thread, s: Service) -> Thread:
        key = (id(t), s)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(t, (Stop, Deadlock)):
            r = t
        elif isinstance(t, Tau):
            r = Tau(go(t.next, s))
        elif t.action.focus != f:
            r = Pcc(t.action, go(t.on_true, s), go(t.on_false, s))
        else:
            s2, reply = service_step(s, t.action.method)
            if reply is Reply.T:
                r = Tau(go(t.on_true, s2))
            elif reply is Reply.F:
                r = Tau(go(t.on_false, s2))
            else:
                r = Tau(DEADLOCK)
        memo[key] = r
        return r

    # ids are stable: every node of t stays alive while t is referenced
    return go(t, s)


def thread_apply(t: Thread, f: Focus, s: Service) -> Service:
    while True:
        if isinstance(t, Stop):
            return s
        if isinstance(t, Deadlock):
            return EMPTY
        if isinstance(t, Tau):
            t = t.next
            continue
        if t.action.focus != f:
            return EMPTY
        s, reply = service_step(s, t.action.method)
        if reply is Reply.B:
            return EMPTY
        t = t.on_true if reply is Reply.T else t.on_false


# ------------------------------------------------------------------ outcomes

@dataclass(frozen=True)
class RegisterFile:
    inputs: tuple
    auxs: tuple
    out: bool


@dataclass(frozen=True)
class Terminated:
    final: RegisterFile | None

    @property
    def out(self) -> bool:
        return self.final.out


@dataclass(frozen=True)
class Inaction:
    pass


INACTION = Inaction()
Outcome = Union[Terminated, Inaction]


def outcome_bit(o: Outcome) -> bool | None:
    """Output bit of a terminated run, None for inaction."""
    return o.out if isinstance(o, Terminated) else None


def _run(iseq: InstructionSequence, inputs: Sequence[bool], trace: list | None):
    instrs = iseq.instrs
    k = len(instrs)
    n = len(inputs)
    n_aux = classify(iseq).max_aux
    auxs = [False] * (n_aux + 1)
    out = False
    pc = 1
    while True:
        if pc > k:
            return INACTION
        if trace is not None:
            trace.append(pc)
        u = instrs[pc - 1]
        if isinstance(u, Halt):
            return Terminated(RegisterFile(tuple(inputs), tuple(auxs[1:]), out))
        if isinstance(u, Jump):
            if u.length == 0:
                return INACTION
            pc += u.length
            continue
        a = u.a
        fk = a.focus.kind
        m = a.method
        if fk == "in":
            if a.focus.index > n:
                return INACTION
            reply = bool(inputs[a.focus.index - 1])
        elif m is Method.GET:
            reply = auxs[a.focus.index]
        else:
            reply = m is Method.SET_T
            if fk == "out":
                out = reply
            else:
                auxs[a.focus.index] = reply
        if isinstance(u, Plain):
            pc += 1
        elif isinstance(u, PosTest):
            pc += 1 if reply else 2
        else:
            pc += 2 if reply else 1


def execute(iseq: InstructionSequence, inputs: Sequence[bool]) -> Outcome:
    return _run(iseq, inputs, None)


def execute_trace(iseq: InstructionSequence, inputs: Sequence[bool]) -> tuple[Outcome, list[int]]:
    """Like :func:`execute`, also returning the visited positions in order."""
    trace: list[int] = []
    return _run(iseq, inputs, trace), trace


def compute_via_threads(
    iseq: InstructionSequence, inputs: Sequence[bool], budget: int = THREAD_BUDGET
) -> Outcome:
    """Nested use of aux:1..l (all F) and in:1..n, then apply at out on BR_F."""
    t = extract_thread(iseq, budget)
    for i in range(1, classify(iseq).max_aux + 1):
        t = thread_use(t, aux(i), BR_F)
    for i, b in enumerate(inputs, start=1):
        t = thread_use(t, inp(i), boolreg(b))
    s = thread_apply(t, OUT, BR_F)
    if isinstance(s, EmptyService):
        return INACTION
    return Terminated(RegisterFile(tuple(inputs), (), s.content))


# -------------------------------------------------------------- truth tables

@dataclass(frozen=True)
class TruthTable:
    """An n-ary Boolean function; input position 1 is the most significant bit."""

    arity: int
    outputs: tuple

    def __post_init__(self):
        if not isinstance(self.outputs, tuple):
            object.__setattr__(self, "outputs", tuple(bool(b) for b in self.outputs))
        if len(self.outputs) != 1 << self.arity:
            raise ValueError(f"need {1 << self.arity} outputs for arity {self.arity}")

    @classmethod
    def from_function(cls, arity: int, fn) -> TruthTable:
        return cls(arity, tuple(bool(fn(bits)) for bits in all_inputs(arity)))

    @classmethod
    def from_int(cls, arity: int, code: int) -> TruthTable:
        """Table whose output at index i is bit i of ``code``."""
        return cls(arity, tuple(bool(code >> i & 1) for i in range(1 << arity)))

    def __call__(self, bits: Sequence[bool]) -> bool:
        return self.outputs[index_of(bits)]

    def restrict_last(self, b: bool) -> TruthTable:
        """f_b(x_1..x_{n-1}) = f(x_1..x_{n-1}, b)."""
        if self.arity == 0:
            raise ValueError("nothing to restrict")
        return TruthTable(self.arity - 1, self.outputs[int(b)::2])

    def to_text(self) -> str:
        return f"n={self.arity}\n" + "".join("1" if b else "0" for b in self.outputs) + "\n"

    @classmethod
    def from_text(cls, text: str) -> TruthTable:
        return parse_tables(text)[0]


def index_of(bits: Sequence[bool]) -> int:
    i = 0
    for b in bits:
        i = (i << 1) | bool(b)
    return i


def all_inputs(n: int):
    return itertools.product((False, True), repeat=n)


def parse_tables(text: str) -> list[TruthTable]:
    """Parse one or more ``n=<k>`` / bit-string blocks."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) % 2:
        raise ValueError("truth table text must alternate 'n=<k>' and bit lines")
    tables = []
    for head, bits in zip(lines[::2], lines[1::2]):
        if not head.startswith("n=") or not head[2:].isdigit():
            raise ValueError(f"expected 'n=<k>', got {head!r}")
        if set(bits) - {"0", "1"}:
            raise ValueError(f"table bits must be 0/1: {bits!r}")
        tables.append(TruthTable(int(head[2:]), tuple(c == "1" for c in bits)))
    return tables


def truth_table(
    iseq: InstructionSequence, n: int, limit: int = DESK_SCALE_ARITY
) -> TruthTable | None:
    """The n-ary function computed by ``iseq``, or None if some input leads to inaction."""
    if n > limit:
        raise ArityTooLarge(f"arity {n} exceeds limit {limit}")
    outs = []
    for bits in all_inputs(n):
        o = execute(iseq, bits)
        if not isinstance(o, Terminated):
            return None
        outs.append(o.out)
    return TruthTable(n, tuple(outs))


def computes(iseq: InstructionSequence, f: TruthTable) -> bool:
    return truth_table(iseq, f.arity) == f
