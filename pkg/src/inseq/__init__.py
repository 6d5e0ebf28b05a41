"""Boolean-register instruction sequences: parsing, execution, synthesis,
3SATC encodings and reductions."""

from .isa import InseqError, InstructionSequence, classify, parse, psize, render
from .semantics import TruthTable, compute_via_threads, computes, execute, truth_table
from .synthesis import eliminate_set_false, inseq_from_table, inseqc, inseqcnf, inseqf
from .satc import alpha_rank, alpha_unrank, decode_vector, encode_cnf, ndisj, satc_eval
from .sat import sat_solve, to_3cnf
from .reduction import (
    ReductionWitness,
    build_reachability_formula,
    compose_reductions,
    count_bound,
    enumerate_computed_functions,
    normalize_for_reduction,
    reduce_to_satc,
    verify_llred,
)
from .projective import gamma_pad, gamma_unpad, is_projective, pair, project, projectivize, unpair

__version__ = "0.1.0"
