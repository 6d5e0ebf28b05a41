"""Acceptance criteria 1..10, each timed against its runtime limit.

Every criterion prints ``criterion N: PASS|FAIL`` at the end of the run.
Clauses that cannot hold as stated are strict xfails; the decisions ledger
records why.
"""

import itertools
import random
import time
from contextlib import contextmanager
from math import comb

import pytest

from inseq.formulas import eval_circuit, eval_cnf, eval_formula
from inseq.isa import InstructionSequence, Jump, alphabet, basic_of, psize, render
from inseq.projective import (
    interleave,
    interleave_witnesses,
    is_projective,
    pair,
    project,
    projectivize,
    unpair,
)
from inseq.reduction import (
    MissingTarget,
    build_reachability_formula,
    compose_reductions,
    count_bound,
    enumerate_computed_functions,
    identity_witness,
    normalize_for_reduction,
    reduce_to_satc,
    verify_llred,
    witness,
)
from inseq.sat import sat_solve, to_3cnf
from inseq.satc import alpha_rank, alpha_unrank, decode_vector, meaningful_prefix, ndisj, satc_eval
from inseq.semantics import (
    Terminated,
    TruthTable,
    all_inputs,
    compute_via_threads,
    computes,
    execute,
    execute_trace,
    outcome_bit,
    truth_table,
)
from inseq.synthesis import OUT_T, eliminate_set_false, inseq_from_table, inseqc, inseqcnf, inseqf, mentions_out_set_false
from oracles import (
    ACCEPTANCE_LIMITS,
    ACCEPTANCE_LOG,
    brute_sat,
    literal_sets_in_order,
    random_circuit,
    random_cnf,
    random_formula,
    random_iseq,
)

pytestmark = pytest.mark.acceptance

T, F = True, False


@contextmanager
def criterion(n, part):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        ACCEPTANCE_LOG.append((n, part, ok, elapsed))
        print(f"criterion {n} [{part}]: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s)")
    assert elapsed < ACCEPTANCE_LIMITS[n], f"{elapsed:.1f}s exceeds {ACCEPTANCE_LIMITS[n]}s"


def _uses_aux(x):
    return any(basic_of(u) is not None and basic_of(u).focus.kind == "aux" for u in x)


def _jump_lengths(x):
    return {u.length for u in x if isinstance(u, Jump)}


# ---------------------------------------------------------------- criterion 1

def test_c1_table_synthesis():
    with criterion(1, "correctness, length, no aux"):
        for code in range(256):
            t = TruthTable.from_int(3, code)
            x = inseq_from_table(t)
            assert computes(x, t)
            assert not _uses_aux(x)
        rng = random.Random(1)
        for n in range(11):
            t = TruthTable(n, tuple(rng.random() < 0.5 for _ in range(1 << n)))
            assert psize(inseq_from_table(t)) == 5 * 2**n - 2


@pytest.mark.xfail(strict=True, reason="a #2-only layout is incorrect from arity 2 on; see ledger")
def test_c1_only_short_jumps():
    with criterion(1, "no jump other than #2"):
        for code in range(256):
            assert _jump_lengths(inseq_from_table(TruthTable.from_int(3, code))) <= {2}


# ---------------------------------------------------------------- criterion 2

def test_c2_synthesis_oracles():
    with criterion(2, "cnf, formula, circuit"):
        rng = random.Random(2)
        for _ in range(200):
            n = rng.randint(1, 8)
            phi = random_cnf(rng, n, rng.randint(0, 10))
            x = inseqcnf(phi)
            assert computes(x, TruthTable.from_function(n, lambda b: eval_cnf(phi, b)))
            assert psize(x) == 2 * phi.num_literals + 3 * len(phi.clauses) + 2
        for _ in range(200):
            n = rng.randint(1, 6)
            phi = random_formula(rng, n, rng.randint(0, 10))
            x = inseqf(phi)
            assert computes(x, TruthTable.from_function(n, lambda b: eval_formula(phi, b)))
            assert not mentions_out_set_false(x)
        for _ in range(100):
            n = rng.randint(1, 8)
            c = random_circuit(rng, n, rng.randint(1, 12))
            x = inseqc(c)
            assert computes(x, TruthTable.from_function(n, lambda b: eval_circuit(c, b)))
            assert not mentions_out_set_false(x)


# ---------------------------------------------------------------- criterion 3

def _synthesized(rng):
    kind = rng.randrange(4)
    if kind == 0:
        n = rng.randint(0, 4)
        t = TruthTable(n, tuple(rng.random() < 0.5 for _ in range(1 << n)))
        return inseq_from_table(t), n
    n = rng.randint(1, 5)
    if kind == 1:
        return inseqcnf(random_cnf(rng, n, rng.randint(0, 6))), n
    if kind == 2:
        return inseqf(random_formula(rng, n, rng.randint(0, 10))), n
    return inseqc(random_circuit(rng, n, rng.randint(1, 8))), n


def test_c3_eliminate_set_false():
    with criterion(3, "eliminate out.set:F"):
        rng = random.Random(3)
        with_false = 0
        for _ in range(100):
            x, n = _synthesized(rng)
            with_false += mentions_out_set_false(x)
            y = eliminate_set_false(x)
            assert truth_table(y, n) == truth_table(x, n)
            assert not mentions_out_set_false(y)
            assert psize(y) < 3 * psize(x)
        assert with_false >= 20


# ---------------------------------------------------------------- criterion 4

def test_c4_alpha_arithmetic():
    with criterion(4, "ndisj and alpha"):
        assert [ndisj(k) for k in range(1, 6)] == [3, 14, 41, 92, 175]
        for k in range(1, 6):
            assert ndisj(k) == (4 * k**3 + 5 * k) // 3 == comb(2 * k, 1) + comb(2 * k, 2) + comb(2 * k, 3)
            assert (4 * k**3 + 5 * k) % 3 == 0
        for k in range(1, 7):
            block = range(ndisj(k - 1) + 1, ndisj(k) + 1)
            sets = [alpha_unrank(i) for i in block]
            assert len(set(map(frozenset, sets))) == len(sets)
            assert all(max(v for v, _ in s) == k for s in sets)
            assert all(alpha_rank(s) == i for i, s in zip(block, sets))
            assert len(sets) == ndisj(k) - ndisj(k - 1)
        for k in range(1, 6):
            small, big = literal_sets_in_order(k), literal_sets_in_order(k + 1)
            assert big[: len(small)] == small
            assert [alpha_unrank(i) for i in range(1, len(small) + 1)] == small


# ---------------------------------------------------------------- criterion 5

def test_c5_satc_semantics():
    with criterion(5, "agreement with brute force"):
        for w in itertools.product((F, T), repeat=3):
            assert satc_eval(w) == brute_sat(decode_vector(w), 1)
        rng = random.Random(5)
        for _ in range(200):
            w = tuple(rng.random() < 0.3 for _ in range(14))
            assert satc_eval(w) == brute_sat(decode_vector(w), 2)


def test_c5_padding_law_off_block_boundaries():
    with criterion(5, "padding law, lengths n with n+1 not an ndisj value"):
        rng = random.Random(51)
        lengths = [n for n in range(45) if meaningful_prefix(n + 1) != n + 1]
        for _ in range(500):
            w = tuple(rng.random() < 0.5 for _ in range(rng.choice(lengths)))
            assert satc_eval(w) == satc_eval(w + (F,))


@pytest.mark.xfail(strict=True, reason="padding changes the meaningful prefix at ndisj boundaries; see ledger")
def test_c5_padding_law_all_lengths():
    with criterion(5, "padding law, all lengths"):
        rng = random.Random(52)
        for _ in range(500):
            w = tuple(rng.random() < 0.5 for _ in range(rng.randint(0, 44)))
            assert satc_eval(w) == satc_eval(w + (F,))


# ---------------------------------------------------------------- criterion 6

def _total_reduction_case(rng):
    while True:
        n, m = rng.randint(0, 3), rng.randint(0, 3)
        raw = random_iseq(rng, rng.randint(2, 9), n_in=n + m, n_aux=2, max_jump=5, out_false=False)
        if truth_table(raw, n + m) is None:
            continue
        x = normalize_for_reduction(raw)
        if psize(x) <= 12:
            return x, n, m


def _reaches_target(x, bits):
    o, trace = execute_trace(x, bits)
    targets = [p for p, u in enumerate(x, start=1) if basic_of(u) == OUT_T]
    return isinstance(o, Terminated) and any(p in targets for p in trace)


def test_c6_reduction_sound_and_complete():
    with criterion(6, "phi_b and 3SATC instance"):
        rng = random.Random(6)
        cases = 0
        while cases < 150:
            x, n, m = _total_reduction_case(rng)
            has_target = any(basic_of(u) == OUT_T for u in x)
            cases += has_target
            for b in all_inputs(n):
                certs = list(all_inputs(m))
                reach = any(_reaches_target(x, b + c) for c in certs)
                assert reach == any(outcome_bit(execute(x, b + c)) is True for c in certs)
                if not has_target:
                    with pytest.raises(MissingTarget):
                        build_reachability_formula(x, b, m)
                    assert not reach
                    continue
                rf = build_reachability_formula(x, b, m)
                assignment = sat_solve(to_3cnf(rf.formula))
                assert (assignment is not None) == reach, (render(x), b, m)
                if assignment is not None:
                    assert outcome_bit(execute(x, b + rf.certificate(assignment))) is True
                assert satc_eval(reduce_to_satc(x, b, m)) == reach


# ---------------------------------------------------------------- criterion 7

def test_c7_counting_bound():
    with criterion(7, "count bound"):
        assert count_bound(1, 0) == 8
        assert len(alphabet(0, 0, 0)) == 8
        for k, n in [(1, 0), (1, 1), (1, 2), (2, 0), (2, 1)]:
            assert enumerate_computed_functions(k, n) <= count_bound(k, n)


# ---------------------------------------------------------------- criterion 8

def test_c8_dual_semantics():
    with criterion(8, "execute vs threads"):
        rng = random.Random(8)
        letters = alphabet(2, 2, 8)
        inputs = list(all_inputs(2))
        for _ in range(10**5):
            x = InstructionSequence(tuple(rng.choice(letters) for _ in range(rng.randint(1, 8))))
            for b in inputs:
                assert outcome_bit(execute(x, b)) == outcome_bit(compute_via_threads(x, b))


# ---------------------------------------------------------------- criterion 9

def _satc_family(top):
    return [TruthTable.from_function(n, satc_eval) for n in range(top + 1)]


def test_c9_gadgets():
    with criterion(9, "pairing, projection, projectivize"):
        rng = random.Random(9)
        for lw in range(9):
            for lc in range(9):
                for _ in range(5):
                    w = tuple(rng.random() < 0.5 for _ in range(lw))
                    c = tuple(rng.random() < 0.5 for _ in range(lc))
                    assert unpair(pair(w, c)) == (w, c)
        for arity in range(7):
            f = TruthTable(arity, tuple(rng.random() < 0.5 for _ in range(1 << arity)))
            for p in range(arity + 1):
                for n in range(p + 1):
                    assert project(f, n) == project(project(f, p), n)
        for _ in range(10):
            big_n = rng.randint(1, 4)
            fam = [TruthTable(n, tuple(rng.random() < 0.5 for _ in range(1 << n))) for n in range(big_n + 1)]
            g = projectivize(fam)
            assert is_projective(g)
            for n in range(1, big_n + 1):
                assert all(fam[n](b) == g[2 * n](interleave(b)) for b in all_inputs(n))
                assert verify_llred(fam[n], g[2 * n], witness(interleave_witnesses(n), 3))


@pytest.mark.xfail(strict=True, reason="follows from the padding-law failure at ndisj boundaries; see ledger")
def test_c9_satc_family_projective():
    with criterion(9, "3SATC family projective for arities 0..14"):
        assert is_projective(_satc_family(14))


# --------------------------------------------------------------- criterion 10

def _random_total(rng, n):
    """A random sequence computing a total n-ary function, or a synthesized one."""
    if rng.random() < 0.5:
        return inseq_from_table(TruthTable(n, tuple(rng.random() < 0.5 for _ in range(1 << n))))
    while True:
        x = random_iseq(rng, rng.randint(1, 6), n_in=n, n_aux=2, max_jump=4)
        if truth_table(x, n) is not None:
            return x


def test_c10_reducibility_algebra():
    with criterion(10, "reflexivity and transitivity"):
        for n in range(4):
            for code in range(1 << (1 << n)):
                f = TruthTable.from_int(n, code)
                assert verify_llred(f, f, identity_witness(n))
        rng = random.Random(10)
        for _ in range(50):
            n, m1, m2 = rng.randint(0, 3), rng.randint(1, 3), rng.randint(0, 3)
            xs = [_random_total(rng, n) for _ in range(m1)]
            ys = [_random_total(rng, m1) for _ in range(m2)]
            e = TruthTable(m2, tuple(rng.random() < 0.5 for _ in range(1 << m2)))
            hs = [truth_table(x, n) for x in xs]
            ks = [truth_table(y, m1) for y in ys]
            g = TruthTable.from_function(m1, lambda b: e(tuple(k(b) for k in ks)))
            f = TruthTable.from_function(n, lambda b: g(tuple(h(b) for h in hs)))
            w1, w2 = witness(xs), witness(ys)
            assert verify_llred(f, g, w1) and verify_llred(g, e, w2)
            assert verify_llred(f, e, compose_reductions(w1, w2))
