"""Normal-form arithmetic in the free nilpotent group of class 2.

An element of F_n is stored as

    x_1^{e_1} ... x_n^{e_n} * prod_{i<j} [x_i, x_j]^{c_ij}

with commutator pairs in lexicographic order (1,2), (1,3), ..., (n-1,n).
The commutator convention is [x, y] = x^-1 y^-1 x y.  All exponents are
Python ints, so nothing overflows.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Tuple


class RankMismatch(ValueError):
    pass


@lru_cache(maxsize=None)
def pair_list(n: int) -> Tuple[Tuple[int, int], ...]:
    """Zero-based (i, j), i < j, in lexicographic order."""
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


@lru_cache(maxsize=None)
def pair_index(n: int) -> dict:
    return {p: k for k, p in enumerate(pair_list(n))}


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def _ints(values, what: str) -> Tuple[int, ...]:
    out = []
    for v in values:
        # bool is an int subclass; floats are never silently truncated
        if isinstance(v, bool) or not isinstance(v, int):
            raise TypeError(f"{what} must contain integers, got {v!r}")
        out.append(int(v))
    return tuple(out)


@dataclass(frozen=True)
class GroupElement:
    n: int
    gen_exps: Tuple[int, ...]
    comm_exps: Tuple[int, ...]

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"rank must be a positive integer, got {self.n!r}")
        gen = _ints(self.gen_exps, "gen_exps")
        comm = _ints(self.comm_exps, "comm_exps")
        if len(gen) != self.n:
            raise ValueError(f"gen_exps has length {len(gen)}, expected {self.n}")
        if len(comm) != num_pairs(self.n):
            raise ValueError(
                f"comm_exps has length {len(comm)}, expected {num_pairs(self.n)}"
            )
        object.__setattr__(self, "gen_exps", gen)
        object.__setattr__(self, "comm_exps", comm)

    @classmethod
    def from_gens(cls, gen_exps: Sequence[int], comm_exps: Optional[Sequence[int]] = None):
        n = len(gen_exps)
        if comm_exps is None:
            comm_exps = (0,) * num_pairs(n)
        return cls(n, tuple(gen_exps), tuple(comm_exps))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return mul(self, other)

    def __pow__(self, k: int) -> "GroupElement":
        return pow_(self, k)

    def __invert__(self) -> "GroupElement":
        return inv(self)

    def is_identity(self) -> bool:
        return not any(self.gen_exps) and not any(self.comm_exps)

    def to_json(self) -> dict:
        return {"gen_exps": list(self.gen_exps), "comm_exps": list(self.comm_exps)}

    @classmethod
    def from_json(cls, data: dict) -> "GroupElement":
        gen = data["gen_exps"]
        comm = data.get("comm_exps")
        return cls.from_gens(gen, comm)


@dataclass(frozen=True)
class CyclicCentralSubgroup:
    """C = < prod_{i<j} [x_i, x_j]^{a_ij} >, a in lexicographic pair order."""

    n: int
    a: Tuple[int, ...]

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"a cyclic central subgroup needs n >= 2, got {self.n!r}")
        a = _ints(self.a, "a")
        if len(a) != num_pairs(self.n):
            raise ValueError(f"a has length {len(a)}, expected {num_pairs(self.n)}")
        if not any(a):
            raise ValueError("a must not be the zero vector")
        object.__setattr__(self, "a", a)

    @classmethod
    def from_paper_order(cls, a1: int, a2: int, a3: int) -> "CyclicCentralSubgroup":
        """n = 3 with C generated by [x1,x2]^a1 [x2,x3]^a2 [x1,x3]^a3."""
        return cls(3, (a1, a3, a2))

    def generator(self) -> GroupElement:
        return GroupElement(self.n, (0,) * self.n, self.a)

    def all_nonzero(self) -> bool:
        return all(self.a)

    def require_nonzero(self) -> None:
        if not self.all_nonzero():
            raise ValueError(f"every a_ij must be nonzero, got {list(self.a)}")

    def entry(self, i: int, j: int) -> int:
        """a_ij for one-based i < j."""
        return self.a[pair_index(self.n)[(i - 1, j - 1)]]


def _check_rank(u: GroupElement, v) -> None:
    if u.n != v.n:
        raise RankMismatch(f"rank mismatch: {u.n} vs {v.n}")


def identity(n: int) -> GroupElement:
    return GroupElement(n, (0,) * n, (0,) * num_pairs(n))


def generator(n: int, k: int) -> GroupElement:
    """x_k, one-based."""
    if not 1 <= k <= n:
        raise ValueError(f"generator index {k} out of range 1..{n}")
    gen = [0] * n
    gen[k - 1] = 1
    return GroupElement(n, tuple(gen), (0,) * num_pairs(n))


def mul(u: GroupElement, v: GroupElement) -> GroupElement:
    # Moving x_i^{f_i} of v left past x_j^{e_j} of u (j > i) uses
    # x_j^e x_i^f = x_i^f x_j^e [x_i, x_j]^{-ef}.
    _check_rank(u, v)
    e, f = u.gen_exps, v.gen_exps
    comm = [c + d for c, d in zip(u.comm_exps, v.comm_exps)]
    for k, (i, j) in enumerate(pair_list(u.n)):
        comm[k] -= e[j] * f[i]
    gen = tuple(x + y for x, y in zip(e, f))
    return GroupElement(u.n, gen, tuple(comm))


def inv(u: GroupElement) -> GroupElement:
    # (prod x_i^{e_i})^-1 = prod x_i^{-e_i} * prod_{i<j} [x_i,x_j]^{-e_i e_j}
    e = u.gen_exps
    comm = tuple(-c - e[i] * e[j] for c, (i, j) in zip(u.comm_exps, pair_list(u.n)))
    return GroupElement(u.n, tuple(-x for x in e), comm)


def pow_(u: GroupElement, k: int) -> GroupElement:
    """u**k in closed form: gens scale by k, commutators pick up C(k,2) e_i e_j."""
    if isinstance(k, bool) or not isinstance(k, int):
        raise TypeError(f"exponent must be an integer, got {k!r}")
    e = u.gen_exps
    # (prod x^e)^k = prod x^{ke} * prod_{i<j}[x_i,x_j]^{-C(k,2) e_i e_j};
    # k(k-1)/2 is valid for negative k too.
    binom = k * (k - 1) // 2
    comm = tuple(k * c - binom * e[i] * e[j] for c, (i, j) in zip(u.comm_exps, pair_list(u.n)))
    return GroupElement(u.n, tuple(k * x for x in e), comm)


def commutator_exponents(u: GroupElement, v: GroupElement) -> Tuple[int, ...]:
    """Exponents d_ij of [u, v]; d_ij = e_i(u) e_j(v) - e_i(v) e_j(u)."""
    _check_rank(u, v)
    e, f = u.gen_exps, v.gen_exps
    return tuple(e[i] * f[j] - f[i] * e[j] for i, j in pair_list(u.n))


def commutator(u: GroupElement, v: GroupElement) -> GroupElement:
    return GroupElement(u.n, (0,) * u.n, commutator_exponents(u, v))


def multiplier(vec: Sequence[int], a: Sequence[int]) -> Optional[int]:
    """The integer l with vec == l * a, or None."""
    pivot = next(k for k, x in enumerate(a) if x)
    l, rem = divmod(vec[pivot], a[pivot])
    if rem:
        return None
    if any(x != l * y for x, y in zip(vec, a)):
        return None
    return l


def membership_in_C(g: GroupElement, C: CyclicCentralSubgroup) -> Optional[int]:
    _check_rank(g, C)
    if any(g.gen_exps):
        return None
    return multiplier(g.comm_exps, C.a)


def is_central_mod_C(g: GroupElement, C: CyclicCentralSubgroup) -> bool:
    _check_rank(g, C)
    for k in range(1, g.n + 1):
        if multiplier(commutator_exponents(g, generator(g.n, k)), C.a) is None:
            return False
    return True
