"""Exact integer and rational linear algebra used by the witness constructions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import List, Optional, Sequence, Tuple

from .core import (
    CyclicCentralSubgroup,
    GroupElement,
    _check_rank,
    commutator_exponents,
    generator,
    is_central_mod_C,
    mul,
    pow_,
)


def gcd_many(values: Sequence[int]) -> int:
    values = list(values)
    if not values or not any(values):
        raise ValueError("gcd_many needs at least one nonzero value")
    return reduce(math.gcd, values)


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(x, y, g) with a*x + b*y == g == gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


@dataclass(frozen=True)
class DiophantineSolution:
    x: int
    y: int


def solve_linear_2var(p: int, q: int, r: int) -> Optional[DiophantineSolution]:
    """One integer solution of p*X + q*Y = r, or None.

    The answer is canonical: when q != 0, x is the least positive residue
    modulo |q/gcd(p, q)|, i.e. x lies in [1, |q/g|].  When q == 0 the free
    variable y is 0.
    """
    if p == 0 and q == 0:
        raise ValueError("p and q must not both be zero")
    x0, y0, g = xgcd(p, q)
    if r % g:
        return None
    s = r // g
    x, y = x0 * s, y0 * s
    if q:
        step = abs(q // g)
        t = (x - 1) // step
        x -= t * step
        y += t * (p // g) * (1 if q > 0 else -1)
    elif p:
        x, y = r // p, 0
    assert p * x + q * y == r
    return DiophantineSolution(x, y)


def _rref(rows: List[List[Fraction]], ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    rows = [list(r) for r in rows]
    pivots: List[int] = []
    top = 0
    for col in range(ncols):
        piv = next((i for i in range(top, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[top], rows[piv] = rows[piv], rows[top]
        lead = rows[top][col]
        rows[top] = [x / lead for x in rows[top]]
        for i in range(len(rows)):
            if i != top and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[top])]
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return rows[:top], pivots


def nullspace(matrix: Sequence[Sequence[int]], ncols: int) -> List[List[Fraction]]:
    """Basis of the rational right kernel."""
    reduced, pivots = _rref([[Fraction(x) for x in row] for row in matrix], ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            vec[pc] = -row[fc]
        basis.append(vec)
    return basis


def row_space_basis(vectors: Sequence[Sequence[Fraction]], ncols: int) -> List[List[Fraction]]:
    reduced, _ = _rref([[Fraction(x) for x in v] for v in vectors], ncols)
    return reduced


def primitive(vec: Sequence[Fraction]) -> List[int]:
    """Clear denominators, divide by the content, make the leading entry positive."""
    den = reduce(math.lcm, (Fraction(x).denominator for x in vec), 1)
    ints = [int(Fraction(x) * den) for x in vec]
    g = reduce(math.gcd, ints, 0)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    return [-x for x in ints] if lead < 0 else ints


@dataclass(frozen=True)
class KernelReport:
    kernel_rank: int
    basis: Tuple[Tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"kernel_rank": self.kernel_rank, "basis": [list(b) for b in self.basis]}


def _central_scale(elements, coeffs: Sequence[int], C: CyclicCentralSubgroup) -> int:
    """Least t > 0 with prod alpha_i^{t*c_i} central mod C (direction assumed rationally central)."""
    n = C.n
    pivot = next(k for k, x in enumerate(C.a) if x)
    t = 1
    for k in range(1, n + 1):
        xk = generator(n, k)
        vec = [0] * len(C.a)
        for c, alpha in zip(coeffs, elements):
            vec = [s + c * d for s, d in zip(vec, commutator_exponents(alpha, xk))]
        l = Fraction(vec[pivot], C.a[pivot])
        t = math.lcm(t, l.denominator)
    return t


def centrality_kernel(elements: Sequence[GroupElement], C: CyclicCentralSubgroup) -> KernelReport:
    """Rank of the lattice of m with prod alpha_i^{m_i} central modulo C.

    Unknowns are the m_i plus one multiplier l_k per generator x_k; the
    condition [prod alpha_i^{m_i}, x_k] = l_k * a is linear because the
    commutator form is bilinear.
    """
    for alpha in elements:
        _check_rank(alpha, C)
    n, r, npairs = C.n, len(elements), len(C.a)
    ncols = r + n
    columns = [[commutator_exponents(alpha, generator(n, k)) for k in range(1, n + 1)]
               for alpha in elements]
    rows = []
    for k in range(n):
        for p in range(npairs):
            row = [columns[i][k][p] for i in range(r)] + [0] * n
            row[r + k] = -C.a[p]
            rows.append(row)
    kernel = nullspace(rows, ncols)
    projected = row_space_basis([v[:r] for v in kernel], r)
    basis = []
    for v in projected:
        d = primitive(v)
        t = _central_scale(elements, d, C)
        basis.append(tuple(t * x for x in d))
    return KernelReport(len(basis), tuple(basis))


def kernel_rank(alpha1: GroupElement, alpha2: GroupElement, C: CyclicCentralSubgroup) -> KernelReport:
    return centrality_kernel([alpha1, alpha2], C)


def combination(elements: Sequence[GroupElement], coeffs: Sequence[int]) -> GroupElement:
    """prod alpha_i^{c_i}, left to right."""
    out = pow_(elements[0], coeffs[0])
    for alpha, c in zip(elements[1:], coeffs[1:]):
        out = mul(out, pow_(alpha, c))
    return out


def basis_is_central(elements, report: KernelReport, C: CyclicCentralSubgroup) -> bool:
    return all(is_central_mod_C(combination(elements, b), C) for b in report.basis)
