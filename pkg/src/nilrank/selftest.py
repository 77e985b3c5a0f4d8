"""Seeded randomized property checks, runnable without pytest."""

from __future__ import annotations

import math
import random
from typing import Callable, Dict, List

from .core import (
    CyclicCentralSubgroup,
    GroupElement,
    commutator_exponents,
    identity,
    inv,
    is_central_mod_C,
    membership_in_C,
    mul,
    num_pairs,
    pow_,
)
from .diophantine import kernel_rank, solve_linear_2var
from .search import soundness_sweep
from .theorems import (
    det_A,
    epsilon_form_holds,
    pfaffian,
    theorem_a_construct,
    theorem_b_condition,
)


def random_element(rng: random.Random, n: int, lo: int = -5, hi: int = 5) -> GroupElement:
    return GroupElement(
        n,
        tuple(rng.randint(lo, hi) for _ in range(n)),
        tuple(rng.randint(lo, hi) for _ in range(num_pairs(n))),
    )


def _nonzero(rng: random.Random, lim: int) -> int:
    while True:
        v = rng.randint(-lim, lim)
        if v:
            return v


def check_group_laws(rng: random.Random) -> bool:
    n = rng.randint(1, 5)
    u, v, w = (random_element(rng, n) for _ in range(3))
    k = rng.randint(-6, 6)
    return (
        mul(mul(u, v), w) == mul(u, mul(v, w))
        and mul(u, inv(u)) == identity(n)
        and mul(inv(u), u) == identity(n)
        and pow_(u, k) == mul(pow_(u, k - 1), u)
    )


def check_commutator_form(rng: random.Random) -> bool:
    n = rng.randint(2, 5)
    u, v, w = (random_element(rng, n) for _ in range(3))
    expanded = mul(mul(inv(u), inv(v)), mul(u, v))
    d = commutator_exponents(u, v)
    duw = commutator_exponents(mul(u, w), v)
    dw = commutator_exponents(w, v)
    return (
        not any(expanded.gen_exps)
        and expanded.comm_exps == d
        and duw == tuple(x + y for x, y in zip(d, dw))
        and commutator_exponents(v, u) == tuple(-x for x in d)
        and not any(commutator_exponents(u, u))
    )


def check_membership(rng: random.Random) -> bool:
    n = rng.randint(2, 5)
    a = tuple(rng.randint(-5, 5) for _ in range(num_pairs(n)))
    if not any(a):
        a = (1,) + a[1:]
    C = CyclicCentralSubgroup(n, a)
    l = rng.randint(-20, 20)
    g = pow_(C.generator(), l)
    z = random_element(rng, n)
    pure = GroupElement(n, (0,) * n, z.comm_exps)
    return (
        membership_in_C(g, C) == l
        and is_central_mod_C(mul(z, g), C) == is_central_mod_C(z, C)
        and is_central_mod_C(mul(z, pure), C) == is_central_mod_C(z, C)
    )


def check_diophantine(rng: random.Random) -> bool:
    p, q, r = (rng.randint(-20, 20) for _ in range(3))
    if p == 0 and q == 0:
        return True
    sol = solve_linear_2var(p, q, r)
    solvable = r % math.gcd(p, q) == 0
    if sol is None:
        return not solvable
    return solvable and p * sol.x + q * sol.y == r


def check_kernel_symmetry(rng: random.Random) -> bool:
    n = rng.randint(2, 4)
    a = tuple(_nonzero(rng, 4) for _ in range(num_pairs(n)))
    C = CyclicCentralSubgroup(n, a)
    u = random_element(rng, n, -3, 3)
    v = random_element(rng, n, -3, 3)
    z = pow_(C.generator(), rng.randint(-3, 3))
    k = kernel_rank(u, v, C).kernel_rank
    return (
        k == kernel_rank(v, u, C).kernel_rank
        and k == kernel_rank(mul(u, z), v, C).kernel_rank
        and kernel_rank(u, u, C).kernel_rank >= 1
    )


def check_theorem_a(rng: random.Random) -> bool:
    a1, a2, a3 = (_nonzero(rng, 50) for _ in range(3))
    w = theorem_a_construct(a1, a2, a3)
    d12, d13, d23 = w.minors
    return (d12, d23, d13) == (a1, a2, a3) and w.l == 1 and w.kernel.kernel_rank == 0


def check_pfaffian(rng: random.Random) -> bool:
    a = [_nonzero(rng, 100) for _ in range(6)]
    return det_A(a) == pfaffian(a) ** 2


def check_condition_forms(rng: random.Random) -> bool:
    a = [_nonzero(rng, 10) for _ in range(6)]
    c = _nonzero(rng, 10)
    holds = theorem_b_condition(a).holds
    return holds == epsilon_form_holds(a) and holds == theorem_b_condition([c * x for x in a]).holds


PROPERTIES: Dict[str, Callable[[random.Random], bool]] = {
    "group_laws": check_group_laws,
    "commutator_form": check_commutator_form,
    "membership": check_membership,
    "diophantine": check_diophantine,
    "kernel_symmetry": check_kernel_symmetry,
    "theorem_a": check_theorem_a,
    "pfaffian_identity": check_pfaffian,
    "condition_forms": check_condition_forms,
}


def run_selftest(trials: int, seed: int, sweep_n: int = 4, sweep_bound: int = 2) -> dict:
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    results: List[dict] = []
    failures = 0
    for offset, (name, check) in enumerate(PROPERTIES.items()):
        rng = random.Random(seed * 1000 + offset)
        failed = [t for t in range(trials) if not check(rng)]
        failures += len(failed)
        results.append({"property": name, "cases": trials, "failed": len(failed)})
    sweep = soundness_sweep(sweep_n, sweep_bound, trials, seed, strict=False)
    failures += len(sweep.violations)
    sweep_json = sweep.to_json()
    del sweep_json["cases"]
    return {"properties": results, "soundness_sweep": sweep_json, "failures": failures}
