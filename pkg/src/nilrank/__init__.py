"""Commutator calculus and rank-over-center witnesses for free class-2 nilpotent groups."""

from .core import (
    CyclicCentralSubgroup,
    GroupElement,
    RankMismatch,
    commutator,
    commutator_exponents,
    generator,
    identity,
    inv,
    is_central_mod_C,
    membership_in_C,
    mul,
    pow_,
)
from .diophantine import (
    DiophantineSolution,
    KernelReport,
    centrality_kernel,
    gcd_many,
    kernel_rank,
    solve_linear_2var,
)
from .search import SearchSpec, SoundnessViolation, brute_force_witness_search, soundness_sweep
from .theorems import (
    ConditionReport,
    ConstructionError,
    WitnessPair,
    det_A,
    pfaffian,
    theorem_a_construct,
    theorem_b_condition,
    theorem_c_check,
)

__version__ = "0.1.0"
