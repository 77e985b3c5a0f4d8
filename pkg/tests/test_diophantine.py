import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import elements
from nilrank.core import (
    CyclicCentralSubgroup,
    GroupElement,
    generator,
    identity,
    is_central_mod_C,
    mul,
    pow_,
)
from nilrank.diophantine import (
    basis_is_central,
    centrality_kernel,
    combination,
    gcd_many,
    kernel_rank,
    nullspace,
    solve_linear_2var,
    xgcd,
)


@pytest.mark.parametrize("values,expected", [((6, 10), 2), ((1, 1, 1), 1), ((-4, 6), 2), ((0, -9), 9)])
def test_gcd_many(values, expected):
    assert gcd_many(values) == expected


def test_gcd_many_rejects_zero():
    with pytest.raises(ValueError):
        gcd_many([0, 0])
    with pytest.raises(ValueError):
        gcd_many([])


@given(st.integers(-10**30, 10**30), st.integers(-10**30, 10**30))
def test_xgcd_bezout(a, b):
    x, y, g = xgcd(a, b)
    assert g == math.gcd(a, b)
    assert a * x + b * y == g


class TestSolve:
    def test_example(self):
        sol = solve_linear_2var(6, 10, 8)
        assert 6 * sol.x + 10 * sol.y == 8
        assert (sol.x, sol.y) == (3, -1)

    def test_parity_obstruction(self):
        assert solve_linear_2var(2, 4, 3) is None

    def test_unit_case_canonical(self):
        sol = solve_linear_2var(1, 1, 1)
        assert (sol.x, sol.y) == (1, 0)

    def test_degenerate_coefficients(self):
        assert solve_linear_2var(0, 3, 6).y == 2
        sol = solve_linear_2var(4, 0, -8)
        assert (sol.x, sol.y) == (-2, 0)
        assert solve_linear_2var(4, 0, 6) is None
        with pytest.raises(ValueError):
            solve_linear_2var(0, 0, 1)

    def test_exhaustive_box(self):
        for p, q, r in itertools.product(range(-20, 21), repeat=3):
            if p == 0 and q == 0:
                continue
            sol = solve_linear_2var(p, q, r)
            # brute force over a box that always contains a solution when one exists
            witness = any(
                (r - p * x) % q == 0 if q else p * x == r
                for x in range(-abs(q) - 1, abs(q) + 2)
            ) if q else (r % p == 0)
            assert (sol is not None) == witness, (p, q, r)
            if sol is not None:
                assert p * sol.x + q * sol.y == r
                if q:
                    assert 1 <= sol.x <= abs(q // math.gcd(p, q))

    @given(st.integers(-10**20, 10**20), st.integers(-10**20, 10**20), st.integers(-10**20, 10**20))
    def test_big(self, p, q, r):
        if p == 0 and q == 0:
            return
        sol = solve_linear_2var(p, q, r)
        assert (sol is not None) == (r % math.gcd(p, q) == 0)
        if sol:
            assert p * sol.x + q * sol.y == r


def test_nullspace_kills_rows():
    m = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, -1, 0]]
    basis = nullspace(m, 4)
    assert len(basis) == 2
    for v in basis:
        for row in m:
            assert sum(Fraction(a) * b for a, b in zip(row, v)) == 0


C111 = CyclicCentralSubgroup(3, (1, 1, 1))


def g(*gen):
    return GroupElement.from_gens(gen)


class TestKernel:
    def test_identity_pair(self):
        rep = kernel_rank(identity(3), identity(3), C111)
        assert rep.kernel_rank == 2
        assert basis_is_central([identity(3)] * 2, rep, C111)

    def test_construction_pair_is_rank2(self):
        # the explicit n = 3 pair for a = (1, 1, 1)
        rep = kernel_rank(g(0, 1, 1), g(-1, 0, 1), C111)
        assert rep.kernel_rank == 0
        assert rep.basis == ()

    def test_dependent_pair(self):
        x1 = generator(3, 1)
        rep = kernel_rank(x1, pow_(x1, 2), C111)
        assert rep.kernel_rank >= 1
        assert rep.basis == ((2, -1),)
        assert mul(pow_(x1, 2), pow_(pow_(x1, 2), -1)) == identity(3)

    def test_basis_is_minimal_lattice_multiple(self):
        # F_2 / <[x1,x2]^2>: x1^m is central iff m is even
        C = CyclicCentralSubgroup(2, (2,))
        rep = kernel_rank(generator(2, 1), identity(2), C)
        assert rep.kernel_rank == 2
        assert set(rep.basis) == {(2, 0), (0, 1)}
        assert basis_is_central([generator(2, 1), identity(2)], rep, C)

    def test_rank_mismatch(self):
        with pytest.raises(ValueError):
            kernel_rank(identity(2), identity(2), C111)

    @given(elements(3, -3, 3), elements(3, -3, 3), st.integers(-3, 3))
    def test_symmetric_and_center_invariant(self, u, v, l):
        C = CyclicCentralSubgroup(3, (2, -1, 3))
        k = kernel_rank(u, v, C)
        assert k.kernel_rank == kernel_rank(v, u, C).kernel_rank
        z = pow_(C.generator(), l)
        assert k.kernel_rank == kernel_rank(mul(u, z), v, C).kernel_rank
        assert kernel_rank(u, u, C).kernel_rank >= 1
        assert len(k.basis) == k.kernel_rank
        assert basis_is_central([u, v], k, C)

    @given(st.integers(2, 4).flatmap(lambda n: st.tuples(
        elements(n, -2, 2), elements(n, -2, 2),
        st.tuples(*[st.integers(-2, 2)] * (n * (n - 1) // 2)).filter(any))))
    def test_brute_force_rank(self, case):
        # rank of the projected kernel = dimension spanned by central (m1, m2) in a box
        u, v, a = case
        C = CyclicCentralSubgroup(u.n, a)
        rep = kernel_rank(u, v, C)
        found = [(m1, m2) for m1 in range(-6, 7) for m2 in range(-6, 7)
                 if (m1, m2) != (0, 0) and is_central_mod_C(combination([u, v], [m1, m2]), C)]
        if not found:
            dim = 0
        elif any(p[0] * q[1] - p[1] * q[0] for p in found for q in found):
            dim = 2
        else:
            dim = 1
        # the box can miss lattice points only if every basis entry exceeds it
        if all(max(abs(x) for x in b) <= 6 for b in rep.basis):
            assert dim == rep.kernel_rank
        else:
            assert dim <= rep.kernel_rank


def test_centrality_kernel_three_elements():
    C = CyclicCentralSubgroup(3, (1, 1, 1))
    rep = centrality_kernel([generator(3, k) for k in (1, 2, 3)], C)
    assert rep.kernel_rank == 0
