"""From instruction sequences with certificates to 3SATC instances, and
length-bounded reductions between Boolean functions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .formulas import And, Formula, Not, Var, conj, disj
from .isa import (
    HALT,
    BasicInstruction,
    InseqError,
    InstructionSequence,
    Jump,
    Method,
    NegTest,
    OUT,
    Plain,
    PosTest,
    alphabet,
    aux,
    basic_of,
    classify,
    inp,
    map_basic,
    psize,
)
from .sat import to_3cnf
from .satc import encode_cnf
from .semantics import BudgetExceeded, TruthTable, all_inputs, truth_table
from .synthesis import OUT_T, as_subroutine, mentions_out_set_false, rename_out, retarget_inputs, shift_aux

ENUMERATION_BUDGET = 10**6


class HasSetFalse(InseqError, ValueError):
    pass


class NotNormalized(InseqError, ValueError):
    pass


class MissingTarget(InseqError, ValueError):
    pass


class ArityMismatch(InseqError, ValueError):
    pass


def _is_test(u) -> bool:
    return isinstance(u, (PosTest, NegTest))


# ------------------------------------------------------------ normalization

def _target_positions(x) -> list[int]:
    return [p for p, u in enumerate(x, start=1) if basic_of(u) == OUT_T]


def _after(x, p: int) -> int:
    # where control goes after out.set:T at p (the reply is always T)
    return p + 2 if isinstance(x[p - 1], NegTest) else p + 1


def _halts_at(instrs, p: int) -> bool:
    return p <= len(instrs) and instrs[p - 1] == HALT


def normalize_for_reduction(x: InstructionSequence) -> InstructionSequence:
    """Same truth table, at most one out.set:T, no jumps past the end and
    no test among the last two instructions.

    When every out.set:T is followed by a halt, all but the last become jumps
    to the last one.  Otherwise ``out`` is renamed to a fresh aux register,
    halts jump to a final ``+aux.get ; out.set:T ; !`` block, and a ``#0``
    in front of that block keeps running off the end an inaction.
    """
    if mentions_out_set_false(x):
        raise HasSetFalse("eliminate out.set:F first")
    us = list(x)
    k = len(us)
    for p, u in enumerate(us, start=1):
        if isinstance(u, Jump) and u.length > k - p:
            us[p - 1] = Jump(0)
    # padding first, so that no skip can reach anything appended below
    if _is_test(us[-1]):
        us += [Jump(0), Jump(0)]
    elif len(us) >= 2 and _is_test(us[-2]):
        us.append(Jump(0))
    k = len(us)
    targets = _target_positions(us)
    if len(targets) > 1:
        last = targets[-1]
        if all(_halts_at(us, _after(us, p)) for p in targets):
            for p in targets[:-1]:
                us[p - 1] = Jump(last - p)
        else:
            reg = aux(classify(x).max_aux + 1)
            body = [Jump(k + 2 - p) if u == HALT else u for p, u in enumerate(us, start=1)]
            body = list(map_basic(
                InstructionSequence(tuple(body)),
                lambda a: BasicInstruction(reg, a.method) if a.focus == OUT else a,
            ))
            us = body + [Jump(0), PosTest(BasicInstruction(reg, Method.GET)), Plain(OUT_T), HALT]
    return InstructionSequence(tuple(us))


def is_normalized(x: InstructionSequence) -> bool:
    k = len(x)
    return (
        not mentions_out_set_false(x)
        and len(_target_positions(x)) <= 1
        and all(u.length <= k - p for p, u in enumerate(x, start=1) if isinstance(u, Jump))
        and not any(_is_test(u) for u in x.instrs[-2:])
    )


# ------------------------------------------------------ reachability formula
# Formulas are built with Python booleans standing for constants, which are
# folded away before anything is returned.

def _and(*parts):
    parts = [p for p in parts if p is not True]
    if any(p is False for p in parts):
        return False
    return conj(parts) if parts else True


def _or(*parts):
    parts = [p for p in parts if p is not False]
    if any(p is True for p in parts):
        return True
    return disj(parts) if parts else False


def _not(a):
    return (not a) if isinstance(a, bool) else Not(a)


def _implies(a, b):
    return _or(_not(a), b)


@dataclass(frozen=True)
class ReachabilityFormula:
    """phi_b over r_1..r_{n+m} (variables 1..n+m) and v_1..v_k (n+m+1..n+m+k)."""

    formula: Formula
    n: int
    m: int
    k: int
    target: int
    fixed: tuple = field(default=())

    def reg_var(self, i: int) -> int:
        return i

    def pos_var(self, j: int) -> int:
        return self.n + self.m + j

    def describe(self, var: int) -> tuple[str, int]:
        """("r", i) for register bit i, ("v", j) for position j."""
        if var <= self.n + self.m:
            return ("r", var)
        return ("v", var - self.n - self.m)

    def variable_map(self) -> str:
        lines = [f"{i} in:{i}" for i in range(1, self.n + self.m + 1)]
        lines += [f"{self.pos_var(j)} pos:{j}" for j in range(1, self.k + 1)]
        return "\n".join(lines) + "\n"

    def certificate(self, assignment) -> tuple[bool, ...]:
        """The certificate bits c_1..c_m of a satisfying assignment."""
        return tuple(bool(assignment[self.reg_var(self.n + i)]) for i in range(1, self.m + 1))


def build_reachability_formula(x: InstructionSequence, fixed: Sequence[bool], m: int) -> ReachabilityFormula:
    """Satisfiable iff some certificate c in B^m makes ``x`` on fixed ++ c
    pass the out.set:T position and then halt.

    A variable v_j says that position j lies on the execution path.  A halt
    before the target is excluded from the path; halts after it are free.
    Running past the last position counts as an unreachable v_{k+1}.
    """
    if not is_normalized(x):
        raise NotNormalized("apply normalize_for_reduction first")
    targets = _target_positions(x)
    if not targets:
        raise MissingTarget("no out.set:T occurs")
    n, k = len(fixed), len(x)
    target = targets[0]
    regs = n + m
    us = x.instrs

    def v(j: int):
        return Var(regs + j) if j <= k else False

    def skip(j: int):
        return _and(_not(v(j + 1)), v(j + 2))

    sets: dict[tuple[int, bool], list[int]] = {}
    for j, u in enumerate(us, start=1):
        a = basic_of(u)
        if a is not None and a.focus.kind == "aux" and a.method is not Method.GET:
            sets.setdefault((a.focus.index, a.method is Method.SET_T), []).append(j)

    def holds(i: int, b: bool, j: int):
        # aux:i contains b when position j is reached
        own = [p for p in sets.get((i, b), ()) if p < j]
        other = [p for p in sets.get((i, not b), ()) if p < j]
        alts = [_and(v(p), *[_not(v(q)) for q in other if q > p]) for p in own]
        if not b:
            alts.append(_and(*[_not(v(q)) for q in own + other]))
        return _or(*alts)

    psis = []
    for j, u in enumerate(us, start=1):
        vj = v(j)
        if u == HALT:
            psi = _not(vj) if j < target else True
        elif isinstance(u, Jump):
            if u.length == 0:
                psi = _not(vj)
            else:
                psi = _implies(vj, _and(*[_not(v(q)) for q in range(j + 1, j + u.length)], v(j + u.length)))
        else:
            a = u.a
            if a.focus.kind == "in" and a.focus.index > regs:
                psi = _not(vj)
            elif isinstance(u, Plain):
                psi = _implies(vj, v(j + 1))
            else:
                if a.method is not Method.GET:
                    yes = a.method is Method.SET_T
                    cond_t, cond_f = yes, not yes
                elif a.focus.kind == "in":
                    cond_t = Var(a.focus.index)
                    cond_f = _not(cond_t)
                else:
                    cond_t = holds(a.focus.index, True, j)
                    cond_f = holds(a.focus.index, False, j)
                if isinstance(u, NegTest):
                    cond_t, cond_f = cond_f, cond_t
                psi = _and(_implies(_and(vj, cond_t), v(j + 1)), _implies(_and(vj, cond_f), skip(j)))
        psis.append(psi)

    chis = [Var(i) if b else Not(Var(i)) for i, b in enumerate(fixed, start=1)]
    phi = _and(*chis, v(1), v(target), *psis)
    if isinstance(phi, bool):
        # v_1 is always a conjunct, so only False can survive folding
        phi = And(v(1), Not(v(1)))
    return ReachabilityFormula(phi, n, m, k, target, tuple(bool(b) for b in fixed))


def reduce_to_satc(x: InstructionSequence, fixed: Sequence[bool], m: int) -> tuple[bool, ...]:
    return encode_cnf(to_3cnf(build_reachability_formula(x, fixed, m).formula))


# ----------------------------------------------------- length-bounded reductions

@dataclass(frozen=True)
class ReductionWitness:
    """Component sequences X_1..X_m, each of length at most ``bound``."""

    components: tuple
    bound: int

    @property
    def m(self) -> int:
        return len(self.components)


def witness(components: Sequence[InstructionSequence], bound: int | None = None) -> ReductionWitness:
    comps = tuple(components)
    return ReductionWitness(comps, max(map(psize, comps), default=0) if bound is None else bound)


def identity_witness(n: int) -> ReductionWitness:
    """X_i = +in:i.get ; out.set:T ; !  for i = 1..n."""
    return witness(
        [InstructionSequence((PosTest(BasicInstruction(inp(i), Method.GET)), Plain(OUT_T), HALT)) for i in range(1, n + 1)],
        3,
    )


def verify_llred(f: TruthTable, g: TruthTable, w: ReductionWitness) -> bool:
    """f(b) = g(h_1(b), ..., h_m(b)) with every h_i computed by a component of length <= bound."""
    if w.m != g.arity:
        return False
    hs = []
    for x in w.components:
        if psize(x) > w.bound or classify(x).in_arity > f.arity:
            return False
        h = truth_table(x, f.arity)
        if h is None:
            return False
        hs.append(h)
    return all(f(b) == g(tuple(h(b) for h in hs)) for b in all_inputs(f.arity))


def compose_reductions(w1: ReductionWitness, w2: ReductionWitness) -> ReductionWitness:
    """Witness for f -> e from witnesses for f -> g and g -> e.

    Each Z_j runs every X_i of ``w1`` as a subroutine that leaves h_i(b) in
    aux:i, then runs Y_j of ``w2`` with in:i redirected to aux:i.  Every
    subroutine gets its own fresh range of aux registers.
    """
    m1 = w1.m
    blocks = []
    offset = m1
    for i, x in enumerate(w1.components, start=1):
        blocks.append(as_subroutine(rename_out(shift_aux(x, offset), aux(i))))
        offset += classify(x).max_aux
    prefix = [u for b in blocks for u in b]
    zs = []
    for y in w2.components:
        if classify(y).in_arity > m1:
            raise ArityMismatch(f"component reads in:{classify(y).in_arity} but only {m1} values are produced")
        y2 = retarget_inputs(shift_aux(y, offset), {i: aux(i) for i in range(1, m1 + 1)})
        zs.append(InstructionSequence(tuple(prefix) + y2.instrs))
    return witness(zs)


# ---------------------------------------------------------------- counting

def count_bound(k: int, n: int) -> int:
    """(3n + 10k - 2)^k: sequences of length k over the RISbr(k-1, k-1) alphabet."""
    if k < 1:
        raise ValueError("k >= 1")
    return (3 * n + 10 * k - 2) ** k


def computed_functions(k: int, n: int, budget: int = ENUMERATION_BUDGET) -> set[TruthTable]:
    """Distinct total n-ary functions computed by length-k sequences over RISbr(k-1, k-1)."""
    letters = alphabet(n, k - 1, k - 1)
    if len(letters) ** k > budget:
        raise BudgetExceeded(f"{len(letters)}^{k} sequences exceed {budget}")
    found = set()
    for word in itertools.product(letters, repeat=k):
        t = truth_table(InstructionSequence(word), n)
        if t is not None:
            found.add(t)
    return found


def enumerate_computed_functions(k: int, n: int, budget: int = ENUMERATION_BUDGET) -> int:
    return len(computed_functions(k, n, budget))
