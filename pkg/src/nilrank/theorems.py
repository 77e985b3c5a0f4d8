"""Rank-over-center results for F_n / C.

* n = 3: an explicit pair alpha_1, alpha_2 with [alpha_1, alpha_2] = generator
  of C whose images are independent modulo the center.
* n >= 4: a necessary integer inequality on every 4-subset of generators,
  plus the Pfaffian / det(A) diagnostics behind it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .core import (
    CyclicCentralSubgroup,
    GroupElement,
    commutator,
    commutator_exponents,
    membership_in_C,
    num_pairs,
    pair_index,
)
from .diophantine import KernelReport, kernel_rank, solve_linear_2var


class ConstructionError(RuntimeError):
    """The n = 3 construction produced something it should never produce."""


@dataclass(frozen=True)
class WitnessPair:
    C: CyclicCentralSubgroup
    alpha1: GroupElement
    alpha2: GroupElement
    l: int
    kernel: KernelReport

    @property
    def minors(self) -> Tuple[int, ...]:
        return commutator_exponents(self.alpha1, self.alpha2)

    @property
    def is_rank2(self) -> bool:
        return self.kernel.kernel_rank == 0

    def to_json(self) -> dict:
        return {
            "n": self.C.n,
            "a": list(self.C.a),
            "alpha1": self.alpha1.to_json(),
            "alpha2": self.alpha2.to_json(),
            "minors": list(self.minors),
            "l": self.l,
            "kernel_rank": self.kernel.kernel_rank,
            "kernel_basis": [list(b) for b in self.kernel.basis],
        }


def make_witness(alpha1: GroupElement, alpha2: GroupElement, C: CyclicCentralSubgroup) -> WitnessPair:
    l = membership_in_C(commutator(alpha1, alpha2), C)
    if l is None:
        raise ValueError("[alpha1, alpha2] is not in C")
    return WitnessPair(C, alpha1, alpha2, l, kernel_rank(alpha1, alpha2, C))


def _require_nonzero(values: Sequence[int]) -> None:
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int):
            raise TypeError(f"exponents must be integers, got {v!r}")
    if not all(values):
        raise ValueError(f"every exponent must be nonzero, got {list(values)}")


def theorem_a_construct(a1: int, a2: int, a3: int) -> WitnessPair:
    """Rank-2 witness for F_3 / <[x1,x2]^a1 [x2,x3]^a2 [x1,x3]^a3>.

    Arguments follow that (1,2), (2,3), (1,3) order; the returned C stores
    them lexicographically as (a1, a3, a2).
    """
    _require_nonzero((a1, a2, a3))
    g = math.gcd(a1, a2, a3)
    g12, g13, g23 = math.gcd(a1, a2), math.gcd(a1, a3), math.gcd(a2, a3)
    sol = solve_linear_2var(a1 * g23 // g, a2 * g13 // g, a3 * g12 // g)
    if sol is None:
        raise ConstructionError(f"Diophantine equation unsolvable for {(a1, a2, a3)}")
    w1, w2 = sol.x, sol.y
    alpha1 = GroupElement.from_gens((g13 * w2, g12, g23 * w1))
    alpha2 = GroupElement.from_gens((-a1 // g12, 0, a2 // g12))

    C = CyclicCentralSubgroup.from_paper_order(a1, a2, a3)
    d = commutator_exponents(alpha1, alpha2)
    idx = pair_index(3)
    got = (d[idx[(0, 1)]], d[idx[(1, 2)]], d[idx[(0, 2)]])
    if got != (a1, a2, a3):
        raise ConstructionError(f"minors {got} != {(a1, a2, a3)}")
    witness = make_witness(alpha1, alpha2, C)
    if witness.l != 1 or witness.kernel.kernel_rank != 0:
        raise ConstructionError(f"bad certificate l={witness.l}, kernel={witness.kernel}")
    return witness


@dataclass(frozen=True)
class ConditionReport:
    quadruple: Tuple[int, int, int, int]
    lhs_term: int
    rhs_term: int
    epsilon: int
    holds: bool
    pfaffian: int

    def to_json(self) -> dict:
        return {
            "quadruple": list(self.quadruple),
            "lhs_term": self.lhs_term,
            "rhs_term": self.rhs_term,
            "epsilon": self.epsilon,
            "holds": self.holds,
            "pfaffian": self.pfaffian,
        }


def pfaffian(a: Sequence[int]) -> int:
    a12, a13, a14, a23, a24, a34 = a
    return a12 * a34 - a13 * a24 + a14 * a23


def matrix_A(a: Sequence[int]) -> List[List[int]]:
    a12, a13, a14, a23, a24, a34 = a
    return [
        [a23, -a13, a12, 0],
        [a24, -a14, 0, a12],
        [a34, 0, -a14, a13],
        [0, a34, -a24, a23],
    ]


def _det(m: List[List[int]]) -> int:
    if len(m) == 1:
        return m[0][0]
    total = 0
    for c, x in enumerate(m[0]):
        if x:
            minor = [row[:c] + row[c + 1:] for row in m[1:]]
            total += (-1) ** c * x * _det(minor)
    return total


def det_A(a: Sequence[int]) -> int:
    """Cofactor expansion of the 4x4 matrix A; equals pfaffian(a)**2."""
    a = tuple(a)
    if len(a) != 6:
        raise ValueError("det_A needs six exponents (a12, a13, a14, a23, a24, a34)")
    _require_nonzero(a)
    return _det(matrix_A(a))


def _condition(quadruple, a: Sequence[int]) -> ConditionReport:
    a12, a13, a14, a23, a24, a34 = a
    lhs = a13 * a14 * a23 * a24 + a12 * a13 * a24 * a34
    rhs = a12 * a14 * a23 * a34
    eps = 1 if math.prod(a) > 0 else -1
    return ConditionReport(tuple(quadruple), lhs, rhs, eps, lhs > rhs, pfaffian(a))


def theorem_b_condition(a: Sequence[int]) -> ConditionReport:
    """Necessary condition for rank > 1 over the center in F_4 / C.

    a = (a12, a13, a14, a23, a24, a34).  Evaluated as an integer inequality;
    equality counts as a violation.
    """
    a = tuple(a)
    if len(a) != 6:
        raise ValueError("theorem_b_condition needs six exponents")
    _require_nonzero(a)
    return _condition((1, 2, 3, 4), a)


def epsilon_form_holds(a: Sequence[int]) -> bool:
    """The same inequality in its reciprocal form, with exact rationals."""
    a12, a13, a14, a23, a24, a34 = a
    eps = 1 if math.prod(a) > 0 else -1
    left = eps * (Fraction(1, a14 * a23) + Fraction(1, a12 * a34))
    right = eps * Fraction(1, a13 * a24)
    return left > right


def quadruple_exponents(C: CyclicCentralSubgroup, quad: Sequence[int]) -> Tuple[int, ...]:
    """Six exponents of C restricted to one-based indices k1 < k2 < k3 < k4."""
    return tuple(C.entry(i, j) for i, j in itertools.combinations(quad, 2))


def theorem_c_check(n: int, a: Sequence[int]) -> List[ConditionReport]:
    """One report per 4-subset of {1..n}, in lexicographic order."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"n must be an integer, got {n!r}")
    if n < 4:
        raise ValueError(
            f"the quadruple condition needs n >= 4, got n={n}; "
            "for n = 3 a rank-2 witness always exists (use theorem_a_construct)"
        )
    a = tuple(a)
    if len(a) != num_pairs(n):
        raise ValueError(f"expected {num_pairs(n)} exponents for n={n}, got {len(a)}")
    _require_nonzero(a)
    C = CyclicCentralSubgroup(n, a)
    return [
        _condition(quad, quadruple_exponents(C, quad))
        for quad in itertools.combinations(range(1, n + 1), 4)
    ]


def all_hold(reports: Sequence[ConditionReport]) -> bool:
    return all(r.holds for r in reports)
