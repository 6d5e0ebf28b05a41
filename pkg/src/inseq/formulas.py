"""Basic Boolean formulas, CNF formulas and single-output circuits."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence, Union

from .isa import InseqError


class UnboundVariable(InseqError, ValueError):
    pass


class EmptyClause(InseqError, ValueError):
    pass


class CyclicCircuit(InseqError, ValueError):
    pass


# ------------------------------------------------------------------ formulas

@dataclass(frozen=True, slots=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("variables are v1, v2, ...")

    def __str__(self):
        return f"v{self.index}"


@dataclass(frozen=True, slots=True)
class Not:
    arg: "Formula"

    def __str__(self):
        return f"~{_wrap(self.arg, 3)}"


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return f"{_wrap(self.left, 2)} & {_wrap(self.right, 2)}"


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return f"{_wrap(self.left, 1)} | {_wrap(self.right, 1)}"


Formula = Union[Var, Not, And, Or]

_PREC = {Or: 1, And: 2, Not: 3, Var: 4}


def _wrap(f: Formula, prec: int) -> str:
    s = str(f)
    return f"({s})" if _PREC[type(f)] < prec else s


def eval_formula(phi: Formula, assignment: Sequence[bool]) -> bool:
    # explicit stack: generated reachability formulas can be deep
    stack: list = [(phi, False)]
    vals: list[bool] = []
    while stack:
        node, done = stack.pop()
        if isinstance(node, Var):
            if node.index > len(assignment):
                raise UnboundVariable(f"{node} not covered by assignment of length {len(assignment)}")
            vals.append(bool(assignment[node.index - 1]))
        elif not done:
            stack.append((node, True))
            if isinstance(node, Not):
                stack.append((node.arg, False))
            else:
                stack.append((node.right, False))
                stack.append((node.left, False))
        elif isinstance(node, Not):
            vals.append(not vals.pop())
        else:
            r = vals.pop()
            l = vals.pop()
            vals.append((l and r) if isinstance(node, And) else (l or r))
    return vals[0]


def formula_vars(phi: Formula) -> set[int]:
    out: set[int] = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            out.add(node.index)
        elif isinstance(node, Not):
            stack.append(node.arg)
        else:
            stack += [node.left, node.right]
    return out


def formula_size(phi: Formula) -> int:
    """Number of nodes (variables and connectives)."""
    n = 0
    stack = [phi]
    while stack:
        node = stack.pop()
        n += 1
        if isinstance(node, Not):
            stack.append(node.arg)
        elif not isinstance(node, Var):
            stack += [node.left, node.right]
    return n


def conj(parts: Sequence[Formula]) -> Formula:
    """Left-nested conjunction of a nonempty list."""
    it = iter(parts)
    acc = next(it)
    for p in it:
        acc = And(acc, p)
    return acc


def disj(parts: Sequence[Formula]) -> Formula:
    it = iter(parts)
    acc = next(it)
    for p in it:
        acc = Or(acc, p)
    return acc


def implies(a: Formula, b: Formula) -> Formula:
    return Or(Not(a), b)


_TOKEN = re.compile(r"\s*(?:(v[0-9]+)|(.))")


def parse_formula(text: str) -> Formula:
    """Grammar: ``~`` binds tightest, then ``&``, then ``|``; variables ``v<k>``."""
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(1):
            tokens.append(m.group(1))
        elif m.group(2) and not m.group(2).isspace():
            tokens.append(m.group(2))
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected or 'token'} at token {pos} in {text!r}")
        pos += 1
        return tok

    def p_or():
        left = p_and()
        while peek() == "|":
            take()
            left = Or(left, p_and())
        return left

    def p_and():
        left = p_not()
        while peek() == "&":
            take()
            left = And(left, p_not())
        return left

    def p_not():
        if peek() == "~":
            take()
            return Not(p_not())
        if peek() == "(":
            take()
            inner = p_or()
            take(")")
            return inner
        tok = take()
        if not tok.startswith("v") or not tok[1:].isdigit():
            raise ValueError(f"unexpected token {tok!r} in {text!r}")
        return Var(int(tok[1:]))

    phi = p_or()
    if pos != len(tokens):
        raise ValueError(f"trailing input at token {pos} in {text!r}")
    return phi


# ----------------------------------------------------------------------- CNF

Literal = tuple  # (variable index >= 1, polarity)


@dataclass(frozen=True)
class CnfFormula:
    clauses: tuple  # tuple of tuples of (var, polarity)

    def __post_init__(self):
        cl = tuple(tuple((int(v), bool(p)) for v, p in c) for c in self.clauses)
        object.__setattr__(self, "clauses", cl)
        for c in cl:
            if not c:
                raise EmptyClause("clauses must be nonempty")
            for v, _ in c:
                if v < 1:
                    raise ValueError("variables are v1, v2, ...")

    @classmethod
    def from_ints(cls, clauses) -> CnfFormula:
        """DIMACS-style signed integers."""
        return cls(tuple(tuple((abs(x), x > 0) for x in c) for c in clauses))

    def to_ints(self) -> list[list[int]]:
        return [[v if p else -v for v, p in c] for c in self.clauses]

    @property
    def num_vars(self) -> int:
        return max((v for c in self.clauses for v, _ in c), default=0)

    @property
    def num_literals(self) -> int:
        return sum(len(c) for c in self.clauses)

    def __str__(self):
        if not self.clauses:
            return "(empty)"
        return " & ".join(
            "(" + " | ".join(("" if p else "~") + f"v{v}" for v, p in c) + ")" for c in self.clauses
        )


def eval_cnf(phi: CnfFormula, assignment: Sequence[bool]) -> bool:
    for c in phi.clauses:
        for v, p in c:
            if v > len(assignment):
                raise UnboundVariable(f"v{v} not covered by assignment")
        if not any(bool(assignment[v - 1]) == p for v, p in c):
            return False
    return True


def cnf_to_formula(phi: CnfFormula) -> Formula:
    lit = lambda v, p: Var(v) if p else Not(Var(v))
    return conj([disj([lit(v, p) for v, p in c]) for c in phi.clauses])


def parse_dimacs(text: str) -> CnfFormula:
    nums: list[int] = []
    header = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad DIMACS header {line!r}")
            header = (int(parts[2]), int(parts[3]))
            continue
        nums += [int(x) for x in line.split()]
    if header is None:
        raise ValueError("missing 'p cnf' header")
    clauses, cur = [], []
    for x in nums:
        if x == 0:
            if not cur:
                raise EmptyClause("empty clause in DIMACS input")
            clauses.append(cur)
            cur = []
        else:
            if abs(x) > header[0]:
                raise ValueError(f"literal {x} exceeds declared {header[0]} variables")
            cur.append(x)
    if cur:
        clauses.append(cur)
    if len(clauses) != header[1]:
        raise ValueError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula.from_ints(clauses)


def to_dimacs(phi: CnfFormula, num_vars: int | None = None) -> str:
    nv = phi.num_vars if num_vars is None else num_vars
    lines = [f"p cnf {nv} {len(phi.clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in phi.to_ints()]
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------ circuits

Node = tuple  # ("in", k) or ("g", k)


@dataclass(frozen=True)
class Gate:
    name: int
    op: str  # "NOT", "OR" or "AND"
    preds: tuple

    def __post_init__(self):
        arity = {"NOT": 1, "OR": 2, "AND": 2}.get(self.op)
        if arity is None:
            raise ValueError(f"unknown gate type {self.op!r}")
        if len(self.preds) != arity:
            raise ValueError(f"{self.op} gate needs {arity} predecessors")


@dataclass(frozen=True)
class Circuit:
    n_inputs: int
    gates: tuple  # of Gate, in declaration order
    output: Node

    def gate_map(self) -> dict[int, Gate]:
        return {g.name: g for g in self.gates}


def topological_gates(c: Circuit) -> list[Gate]:
    """Gates sorted so predecessors come first; ties keep declaration order."""
    gm = c.gate_map()
    if len(gm) != len(c.gates):
        raise ValueError("duplicate gate names")
    for g in c.gates:
        for kind, k in g.preds:
            if kind == "in" and not 1 <= k <= c.n_inputs:
                raise ValueError(f"gate g{g.name} reads missing input in{k}")
            if kind == "g" and k not in gm:
                raise ValueError(f"gate g{g.name} reads undefined gate g{k}")
    done: set[int] = set()
    order: list[Gate] = []
    remaining = list(c.gates)
    while remaining:
        progress = False
        rest = []
        for g in remaining:
            if all(kind == "in" or k in done for kind, k in g.preds) and not progress:
                order.append(g)
                done.add(g.name)
                progress = True
            else:
                rest.append(g)
        if not progress:
            raise CyclicCircuit("circuit contains a cycle")
        remaining = rest
    return order


def eval_circuit(c: Circuit, assignment: Sequence[bool]) -> bool:
    if len(assignment) < c.n_inputs:
        raise UnboundVariable("assignment does not cover all circuit inputs")
    vals: dict = {("in", i): bool(assignment[i - 1]) for i in range(1, c.n_inputs + 1)}
    for g in topological_gates(c):
        xs = [vals[p] for p in g.preds]
        if g.op == "NOT":
            v = not xs[0]
        elif g.op == "OR":
            v = xs[0] or xs[1]
        else:
            v = xs[0] and xs[1]
        vals[("g", g.name)] = v
    return vals[c.output]


def unfold_circuit(c: Circuit) -> Formula:
    """The formula obtained by unsharing the circuit below its output."""
    gm = c.gate_map()
    topological_gates(c)
    memo: dict = {}

    def node(n):
        if n in memo:
            return memo[n]
        kind, k = n
        if kind == "in":
            r = Var(k)
        else:
            g = gm[k]
            xs = [node(p) for p in g.preds]
            r = Not(xs[0]) if g.op == "NOT" else (Or if g.op == "OR" else And)(xs[0], xs[1])
        memo[n] = r
        return r

    return node(c.output)


_NODE_RE = re.compile(r"^(in|g)([0-9]+)$")


def _parse_node(tok: str) -> Node:
    m = _NODE_RE.match(tok)
    if not m:
        raise ValueError(f"bad node {tok!r}")
    return ("in" if m.group(1) == "in" else "g", int(m.group(2)))


def parse_circuit(text: str, n_inputs: int | None = None) -> Circuit:
    """Line format ``g<k> = NOT|OR|AND <node> [<node>]`` and ``out = <node>``."""
    gates = []
    output = None
    max_in = 0
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lhs, eq, rhs = line.partition("=")
        if not eq:
            raise ValueError(f"bad circuit line {raw!r}")
        lhs, parts = lhs.strip(), rhs.split()
        if lhs == "out":
            if len(parts) != 1:
                raise ValueError(f"bad output line {raw!r}")
            output = _parse_node(parts[0])
            if output[0] == "in":
                max_in = max(max_in, output[1])
            continue
        name = _parse_node(lhs)
        if name[0] != "g" or not parts:
            raise ValueError(f"bad gate line {raw!r}")
        preds = tuple(_parse_node(p) for p in parts[1:])
        max_in = max([max_in] + [k for kind, k in preds if kind == "in"])
        gates.append(Gate(name[1], parts[0].upper(), preds))
    if output is None:
        raise ValueError("circuit has no 'out = <node>' line")
    c = Circuit(max_in if n_inputs is None else n_inputs, tuple(gates), output)
    topological_gates(c)
    return c


def render_circuit(c: Circuit) -> str:
    node = lambda n: f"{n[0]}{n[1]}"
    lines = [f"g{g.name} = {g.op} " + " ".join(node(p) for p in g.preds) for g in c.gates]
    lines.append(f"out = {node(c.output)}")
    return "\n".join(lines) + "\n"
