"""A small DPLL solver and a structural 3CNF converter."""

from __future__ import annotations

from collections import Counter

from .formulas import And, CnfFormula, Formula, Not, Var, formula_vars


def sat_solve(phi: CnfFormula | list, num_vars: int | None = None) -> dict[int, bool] | None:
    """Satisfying assignment {var: value} for every var up to ``num_vars``, or None.

    DPLL with two watched literals, unit propagation and chronological
    backtracking.  Accepts a :class:`CnfFormula` or DIMACS-style int lists.
    """
    raw = phi.to_ints() if isinstance(phi, CnfFormula) else [list(c) for c in phi]
    nv = max((abs(x) for c in raw for x in c), default=0)
    if num_vars is not None:
        nv = max(nv, num_vars)

    assign = [0] * (nv + 1)  # 0 unassigned, 1 true, -1 false
    clauses: list[list[int]] = []
    units: list[int] = []
    for c in raw:
        c = list(dict.fromkeys(c))
        if not c:
            return None
        if any(-x in c for x in c):
            continue
        if len(c) == 1:
            units.append(c[0])
        else:
            clauses.append(c)

    watches: dict[int, list[int]] = {}
    for ci, c in enumerate(clauses):
        watches.setdefault(c[0], []).append(ci)
        watches.setdefault(c[1], []).append(ci)

    freq = Counter(abs(x) for c in clauses for x in c)
    order = sorted(range(1, nv + 1), key=lambda v: -freq[v])

    trail: list[int] = []
    qhead = 0

    def value(lit: int) -> int:
        a = assign[abs(lit)]
        return a if lit > 0 else -a

    def enqueue(lit: int) -> bool:
        v = value(lit)
        if v:
            return v == 1
        assign[abs(lit)] = 1 if lit > 0 else -1
        trail.append(lit)
        return True

    def propagate() -> bool:
        nonlocal qhead
        while qhead < len(trail):
            false_lit = -trail[qhead]
            qhead += 1
            ws = watches.get(false_lit)
            if not ws:
                continue
            keep: list[int] = []
            for idx, ci in enumerate(ws):
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                if value(c[0]) == 1:
                    keep.append(ci)
                    continue
                for k in range(2, len(c)):
                    if value(c[k]) != -1:
                        c[1], c[k] = c[k], c[1]
                        watches.setdefault(c[1], []).append(ci)
                        break
                else:
                    keep.append(ci)
                    if not enqueue(c[0]):
                        keep.extend(ws[idx + 1 :])
                        watches[false_lit] = keep
                        return False
            watches[false_lit] = keep
        return True

    for u in units:
        if not enqueue(u):
            return None

    # (trail length at decision, decision literal, already flipped)
    levels: list[tuple[int, int, bool]] = []
    pos = 0
    while True:
        if not propagate():
            while levels:
                start, lit, flipped = levels.pop()
                for x in trail[start:]:
                    assign[abs(x)] = 0
                del trail[start:]
                qhead = start
                if not flipped:
                    levels.append((start, -lit, True))
                    enqueue(-lit)
                    break
            else:
                return None
            pos = 0
            continue
        while pos < len(order) and assign[order[pos]]:
            pos += 1
        if pos == len(order):
            return {v: assign[v] == 1 for v in range(1, nv + 1)}
        v = order[pos]
        levels.append((len(trail), -v, False))
        enqueue(-v)


def is_satisfiable(phi: CnfFormula | list) -> bool:
    return sat_solve(phi) is not None


def _nnf(phi: Formula, positive: bool = True):
    # ("lit", int) | ("and", [...]) | ("or", [...]) with same-kind children merged
    if isinstance(phi, Var):
        return ("lit", phi.index if positive else -phi.index)
    if isinstance(phi, Not):
        return _nnf(phi.arg, not positive)
    kind = "and" if isinstance(phi, And) == positive else "or"
    kids = []
    stack = [phi.right, phi.left]  # long chains of one connective stay flat
    while stack:
        ch = stack.pop()
        if type(ch) is type(phi):
            stack += [ch.right, ch.left]
            continue
        sub = _nnf(ch, positive)
        kids += sub[1] if sub[0] == kind else [sub]
    return (kind, kids)


def to_3cnf(phi: Formula) -> CnfFormula:
    """Equisatisfiable 3CNF of size linear in ``phi``.

    Top-level conjuncts that already are short clauses are kept as they are;
    any other subformula gets a fresh variable implying it, and wide clauses
    are split along a chain of fresh variables.  Original variables keep
    their indices; fresh ones start above the largest variable of ``phi``.
    """
    next_var = max(formula_vars(phi)) + 1
    clauses: list[tuple[int, ...]] = []

    def fresh() -> int:
        nonlocal next_var
        next_var += 1
        return next_var - 1

    def add_clause(lits: list[int]):
        lits = list(dict.fromkeys(lits))
        while len(lits) > 3:
            y = fresh()
            clauses.append((lits[0], lits[1], y))
            lits = [-y] + lits[2:]
        clauses.append(tuple(lits))

    def disjuncts(node) -> list:
        return node[1] if node[0] == "or" else [node]

    def emit_or(lits: list[int], kids: list):
        # require  lits OR kids
        lits = lits + [x[1] for x in kids if x[0] == "lit"]
        ands = [x for x in kids if x[0] == "and"]
        if len(ands) == 1 and len(lits) <= 2:
            for ch in ands[0][1]:
                emit_or(lits, disjuncts(ch))
            return
        for a in ands:
            x = fresh()
            for ch in a[1]:
                emit_or([-x], disjuncts(ch))
            lits.append(x)
        add_clause(lits)

    root = _nnf(phi)
    for part in root[1] if root[0] == "and" else [root]:
        emit_or([], disjuncts(part))
    return CnfFormula.from_ints(clauses)
