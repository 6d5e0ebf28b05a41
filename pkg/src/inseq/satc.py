"""3SATC: 3CNF formulas encoded as bit vectors, one bit per possible clause.

Literals are numbered ``v_j -> 2j-1`` and ``~v_j -> 2j``.  Clauses (sets
of 1 to 3 literals) are ordered by largest literal number, then by size,
then lexicographically on the remaining numbers.  Clauses over v1..vk thus
occupy exactly the positions 1..ndisj(k), whatever k is.
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Sequence

from .formulas import CnfFormula
from .isa import InseqError
from .sat import sat_solve

SATC_LIMIT = 1 << 22

LiteralSet = frozenset  # of (var, polarity)


class ClauseTooWide(InseqError, ValueError):
    pass


class InstanceTooLarge(InseqError, ValueError):
    pass


def ndisj(k: int) -> int:
    """Number of clauses of at most three literals over v1..vk: (4k^3 + 5k) / 3."""
    return (4 * k**3 + 5 * k) // 3


def _upto(m: int) -> int:
    # sets of 1..3 literal numbers drawn from 1..m
    return m + comb(m, 2) + comb(m, 3)


def _lit_number(var: int, pol: bool) -> int:
    return 2 * var - 1 if pol else 2 * var


def _lit_of_number(x: int) -> tuple[int, bool]:
    return (x + 1) // 2, x % 2 == 1


def alpha_unrank(i: int) -> LiteralSet:
    if i < 1:
        raise ValueError("positions start at 1")
    lo, hi = 1, 1
    while _upto(hi) < i:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if _upto(mid) >= i:
            hi = mid
        else:
            lo = mid + 1
    top = lo
    r = i - _upto(top - 1)  # 1-based rank inside the block of sets with maximum `top`
    if r == 1:
        nums = [top]
    elif r <= top:
        nums = [r - 1, top]
    else:
        q = r - top - 1  # 0-based rank among pairs a < b < top
        a = 1
        while q >= top - 1 - a:
            q -= top - 1 - a
            a += 1
        nums = [a, a + 1 + q, top]
    return frozenset(_lit_of_number(x) for x in nums)


def alpha_rank(lits: Iterable[tuple[int, bool]]) -> int:
    nums = sorted({_lit_number(v, p) for v, p in lits})
    if not 1 <= len(nums) <= 3:
        raise ValueError("literal sets have 1 to 3 elements")
    top = nums[-1]
    base = _upto(top - 1)
    if len(nums) == 1:
        return base + 1
    if len(nums) == 2:
        return base + 1 + nums[0]
    a, b = nums[0], nums[1]
    before = sum(top - 1 - x for x in range(1, a))
    return base + top + 1 + before + (b - a - 1)


def clause_set(phi: CnfFormula) -> frozenset:
    return frozenset(frozenset(c) for c in phi.clauses)


def encode_cnf(phi: CnfFormula) -> tuple[bool, ...]:
    """Shortest vector decoding to the clause set of ``phi``."""
    k = phi.num_vars
    bits = [False] * ndisj(k)
    for c in phi.clauses:
        lits = frozenset(c)
        if len(lits) > 3:
            raise ClauseTooWide(f"clause with {len(lits)} literals")
        bits[alpha_rank(lits) - 1] = True
    return tuple(bits)


def meaningful_prefix(n: int) -> int:
    """max { ndisj(k) | ndisj(k) <= n }."""
    k = 0
    while ndisj(k + 1) <= n:
        k += 1
    return ndisj(k)


def decode_vector(w: Sequence[bool]) -> CnfFormula:
    m = meaningful_prefix(len(w))
    clauses = []
    for i, bit in enumerate(w[:m], start=1):
        if bit:
            clauses.append(tuple(sorted(alpha_unrank(i))))
    return CnfFormula(tuple(clauses))


def satc_eval(w: Sequence[bool], limit: int = SATC_LIMIT) -> bool:
    if len(w) > limit:
        raise InstanceTooLarge(f"instance of length {len(w)} exceeds {limit}")
    return sat_solve(decode_vector(w)) is not None


def bits_to_text(w: Sequence[bool]) -> str:
    return "".join("1" if b else "0" for b in w)


def text_to_bits(s: str) -> tuple[bool, ...]:
    s = s.strip()
    if set(s) - {"0", "1"}:
        raise ValueError(f"bit strings use only 0 and 1: {s!r}")
    return tuple(c == "1" for c in s)
