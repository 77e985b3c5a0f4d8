"""Brute-force witness search over a box of generator exponents.

Candidates are the nonzero vectors of [-bound, bound]^n in lexicographic
order.  A pair (alpha1, alpha2) is tried only when alpha1 <= alpha2, which
loses nothing because swapping the pair negates the commutator.  The first
hit in (alpha1, alpha2) lexicographic order is returned, whatever the
number of worker processes.
"""

from __future__ import annotations

import itertools
import json
import logging
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .core import CyclicCentralSubgroup, GroupElement, pair_list
from .diophantine import centrality_kernel
from .theorems import WitnessPair, all_hold, make_witness, theorem_c_check

log = logging.getLogger(__name__)

NONZERO_RANGE = [v for v in range(-5, 6) if v]


class SoundnessViolation(AssertionError):
    """A rank-2 witness exists although the quadruple condition fails."""


@dataclass(frozen=True)
class SearchSpec:
    C: CyclicCentralSubgroup
    bound: int
    require_rank2: bool = False
    allow_trivial_l: bool = False

    def __post_init__(self):
        if isinstance(self.bound, bool) or not isinstance(self.bound, int) or self.bound < 1:
            raise ValueError(f"bound must be a positive integer, got {self.bound!r}")

    @property
    def space_size(self) -> int:
        return (2 * self.bound + 1) ** (2 * self.C.n)

    def to_json(self) -> dict:
        return {
            "n": self.C.n,
            "a": list(self.C.a),
            "bound": self.bound,
            "require_rank2": self.require_rank2,
            "allow_trivial_l": self.allow_trivial_l,
            "space_size": self.space_size,
        }


def candidate_grid(n: int, bound: int) -> np.ndarray:
    rng = range(-bound, bound + 1)
    rows = [v for v in itertools.product(rng, repeat=n) if any(v)]
    return np.array(rows, dtype=np.int64).reshape(len(rows), n)


def _int_dtype(a: Sequence[int], bound: int):
    # minors are bounded by 2*bound^2, multiples l*a by 2*bound^2*max|a|
    worst = 2 * bound * bound * max(abs(x) for x in a) + 2 * bound * bound
    return np.int64 if worst < 2**62 else object


class _Scanner:
    """Per-row vectorised membership test: which alpha2 make [alpha1, alpha2] in C."""

    def __init__(self, spec: SearchSpec):
        self.spec = spec
        n = spec.C.n
        dtype = _int_dtype(spec.C.a, spec.bound)
        self.grid = candidate_grid(n, spec.bound).astype(dtype)
        self.a = np.array(spec.C.a, dtype=dtype)
        pairs = pair_list(n)
        self.pi = np.array([i for i, _ in pairs], dtype=np.intp)
        self.pj = np.array([j for _, j in pairs], dtype=np.intp)
        self.pivot = next(k for k, x in enumerate(spec.C.a) if x)

    def hits(self, i: int) -> np.ndarray:
        """Indices j >= i (ascending) passing the membership test for alpha1 = grid[i]."""
        g = self.grid
        u = g[i]
        v = g[i:]
        d = u[self.pi] * v[:, self.pj] - v[:, self.pi] * u[self.pj]
        ap = self.a[self.pivot]
        col = d[:, self.pivot]
        ok = (col % ap) == 0
        l = col // ap
        ok &= np.all(d == l[:, None] * self.a[None, :], axis=1)
        if not self.spec.allow_trivial_l:
            ok &= l != 0
        return np.nonzero(ok)[0] + i

    def element(self, k: int) -> GroupElement:
        return GroupElement.from_gens(tuple(int(x) for x in self.grid[k]))

    def accept(self, i: int, j: int) -> Optional[WitnessPair]:
        w = make_witness(self.element(i), self.element(j), self.spec.C)
        if self.spec.require_rank2 and w.kernel.kernel_rank != 0:
            return None
        return w

    def scan(self, rows: range, progress: Optional[Callable[[int, int], None]] = None):
        """First (i, j) hit within the given alpha1 rows, or None."""
        for i in rows:
            for j in self.hits(i):
                if self.accept(i, int(j)) is not None:
                    return i, int(j)
            if progress is not None:
                progress(i, len(self.grid) - i)
        return None


def _scan_chunk(args) -> Optional[Tuple[int, int]]:
    spec, start, stop = args
    return _Scanner(spec).scan(range(start, stop))


class ProgressStream:
    """Writes one JSON status line per `every` candidate pairs."""

    def __init__(self, total_rows: int, every: int = 100_000, stream=None):
        self.every = every
        self.stream = stream if stream is not None else sys.stderr
        self.total_rows = total_rows
        self.checked = 0
        self._next = every

    def __call__(self, row: int, pairs: int) -> None:
        self.checked += pairs
        if self.checked >= self._next:
            self._next = (self.checked // self.every + 1) * self.every
            status = {"event": "progress", "row": row + 1, "rows_total": self.total_rows,
                      "pairs_checked": self.checked}
            self._write(status)

    def finish(self, found: bool) -> None:
        self._write({"event": "done", "pairs_checked": self.checked, "found": found})

    def _write(self, status: dict) -> None:
        self.stream.write(json.dumps(status) + "\n")
        self.stream.flush()


def brute_force_witness_search(
    spec: SearchSpec,
    workers: int = 1,
    progress: Optional[Callable[[int, int], None]] = None,
) -> Optional[WitnessPair]:
    log.debug("searching %d candidate pairs", spec.space_size)
    scanner = _Scanner(spec)
    nrows = len(scanner.grid)
    if workers <= 1:
        hit = scanner.scan(range(nrows), progress)
    else:
        # row blocks are independent; the least hit over all blocks is the
        # same as the first hit of a serial scan
        nchunks = workers * 4
        bounds = np.linspace(0, nrows, nchunks + 1).astype(int)
        jobs = [(spec, int(s), int(e)) for s, e in zip(bounds[:-1], bounds[1:]) if e > s]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            found = [h for h in pool.map(_scan_chunk, jobs) if h is not None]
        hit = min(found) if found else None
    if hasattr(progress, "finish"):
        progress.finish(hit is not None)
    if hit is None:
        return None
    return scanner.accept(*hit)


@dataclass(frozen=True)
class TripleWitness:
    C: CyclicCentralSubgroup
    elements: Tuple[GroupElement, GroupElement, GroupElement]
    kernel_rank: int

    def to_json(self) -> dict:
        return {
            "n": self.C.n,
            "a": list(self.C.a),
            "elements": [e.to_json() for e in self.elements],
            "kernel_rank": self.kernel_rank,
        }


def triple_search(C: CyclicCentralSubgroup, bound: int) -> Optional[TripleWitness]:
    """Experimental: three pairwise commuting-mod-C elements of rank 3 over the center.

    No claim is attached to the outcome either way.
    """
    scanner = _Scanner(SearchSpec(C, bound, allow_trivial_l=True))
    nrows = len(scanner.grid)
    partners: Dict[int, set] = {i: set(int(j) for j in scanner.hits(i) if j > i) for i in range(nrows)}
    for i in range(nrows):
        for j in sorted(partners[i]):
            for k in sorted(partners[i] & partners[j]):
                elems = tuple(scanner.element(x) for x in (i, j, k))
                report = centrality_kernel(elems, C)
                if report.kernel_rank == 0:
                    return TripleWitness(C, elems, 0)
    return None


def random_exponents(rng: random.Random, n: int) -> Tuple[int, ...]:
    return tuple(rng.choice(NONZERO_RANGE) for _ in range(n * (n - 1) // 2))


@dataclass
class SweepReport:
    n: int
    bound: int
    trials: int
    seed: int
    witness_found: int = 0
    no_witness: int = 0
    condition_holds: int = 0
    condition_violated: int = 0
    violations: List[dict] = field(default_factory=list)
    cases: List[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "bound": self.bound,
            "trials": self.trials,
            "seed": self.seed,
            "witness_found": self.witness_found,
            "no_witness": self.no_witness,
            "condition_holds": self.condition_holds,
            "condition_violated": self.condition_violated,
            "violations": self.violations,
            "cases": self.cases,
        }


def soundness_sweep(
    n: int,
    bound: int,
    trials: int,
    seed: int,
    vectors: Optional[Sequence[Sequence[int]]] = None,
    workers: int = 1,
    strict: bool = True,
) -> SweepReport:
    """Random C, exhaustive rank-2 search, and the quadruple condition on each.

    `vectors` replaces the random draws (one trial per vector).  With
    `strict`, any witness found under a violated condition raises.
    """
    if n < 4:
        raise ValueError(f"soundness sweep needs n >= 4, got {n}")
    if vectors is not None:
        vectors = [tuple(v) for v in vectors]
        trials = len(vectors)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = random.Random(seed)
    report = SweepReport(n, bound, trials, seed)
    for t in range(trials):
        a = vectors[t] if vectors is not None else random_exponents(rng, n)
        C = CyclicCentralSubgroup(n, a)
        holds = all_hold(theorem_c_check(n, a))
        w = brute_force_witness_search(SearchSpec(C, bound, require_rank2=True), workers=workers)
        found = w is not None
        report.witness_found += found
        report.no_witness += not found
        report.condition_holds += holds
        report.condition_violated += not holds
        report.cases.append({"a": list(a), "witness": found, "holds": holds})
        if found and not holds:
            report.violations.append({"a": list(a), "witness": w.to_json()})
    if strict and report.violations:
        raise SoundnessViolation(f"{len(report.violations)} soundness violations: {report.violations}")
    return report
