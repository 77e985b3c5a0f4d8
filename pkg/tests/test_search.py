import io
import itertools
import json

import pytest

from nilrank.core import CyclicCentralSubgroup, GroupElement, commutator, membership_in_C
from nilrank.diophantine import kernel_rank
from nilrank.search import (
    ProgressStream,
    SearchSpec,
    SoundnessViolation,
    brute_force_witness_search,
    soundness_sweep,
    triple_search,
)
from nilrank.theorems import all_hold, pfaffian, theorem_c_check

DECOMPOSABLE = (1, 1, 1, 1, 2, 1)
PAPER_EXAMPLE = (1, 1, 1, -1, 1, -1)


def naive_search(spec):
    """Pure-Python scan in the documented order; no numpy, no shortcuts."""
    n, B = spec.C.n, spec.bound
    grid = [v for v in itertools.product(range(-B, B + 1), repeat=n) if any(v)]
    for i, u in enumerate(grid):
        for v in grid[i:]:
            a1, a2 = GroupElement.from_gens(u), GroupElement.from_gens(v)
            l = membership_in_C(commutator(a1, a2), spec.C)
            if l is None or (l == 0 and not spec.allow_trivial_l):
                continue
            if spec.require_rank2 and kernel_rank(a1, a2, spec.C).kernel_rank != 0:
                continue
            return u, v, l
    return None


def check_witness(w):
    assert membership_in_C(commutator(w.alpha1, w.alpha2), w.C) == w.l
    assert kernel_rank(w.alpha1, w.alpha2, w.C) == w.kernel
    swapped = membership_in_C(commutator(w.alpha2, w.alpha1), w.C)
    assert swapped == -w.l


def test_spec_validation():
    C = CyclicCentralSubgroup(4, DECOMPOSABLE)
    with pytest.raises(ValueError):
        SearchSpec(C, 0)
    assert SearchSpec(C, 2).space_size == 5**8


def test_decomposable_has_witness():
    spec = SearchSpec(CyclicCentralSubgroup(4, DECOMPOSABLE), 2, require_rank2=True)
    w = brute_force_witness_search(spec)
    assert w is not None and w.is_rank2 and w.l != 0
    check_witness(w)
    u, v, l = naive_search(spec)
    assert (w.alpha1.gen_exps, w.alpha2.gen_exps, w.l) == (u, v, l)


def test_hand_checked_witness_is_valid():
    C = CyclicCentralSubgroup(4, DECOMPOSABLE)
    u = GroupElement.from_gens((1, 0, -1, -2))
    v = GroupElement.from_gens((0, 1, 1, 1))
    assert membership_in_C(commutator(u, v), C) == 1
    assert kernel_rank(u, v, C).kernel_rank == 0


def test_paper_example_has_none():
    spec = SearchSpec(CyclicCentralSubgroup(4, PAPER_EXAMPLE), 3, require_rank2=True)
    assert brute_force_witness_search(spec) is None


def test_three_generators():
    spec = SearchSpec(CyclicCentralSubgroup(3, (1, 1, 1)), 1, require_rank2=True)
    w = brute_force_witness_search(spec)
    assert w is not None and w.is_rank2
    check_witness(w)
    # the explicit construction lies in the same box, so the search hit is no later
    # (up to the swap that puts the pair in lexicographic order)
    assert (w.alpha1.gen_exps, w.alpha2.gen_exps) <= ((-1, 0, 1), (0, 1, 1))
    assert naive_search(spec)[:2] == (w.alpha1.gen_exps, w.alpha2.gen_exps)


@pytest.mark.parametrize("a,bound,rank2,trivial", [
    ((1, 1, 1), 1, False, False),
    ((1, 1, 1), 1, False, True),
    ((2, -1, 3), 2, True, False),
    ((0, 1, 0), 1, False, False),
    ((3,), 2, True, False),
    (DECOMPOSABLE, 1, True, False),
    ((1, 2, 1, 1, -1, 1), 2, False, False),
])
def test_matches_naive(a, bound, rank2, trivial):
    n = {1: 2, 3: 3, 6: 4}[len(a)]
    spec = SearchSpec(CyclicCentralSubgroup(n, a), bound, require_rank2=rank2, allow_trivial_l=trivial)
    w = brute_force_witness_search(spec)
    expected = naive_search(spec)
    if expected is None:
        assert w is None
    else:
        assert (w.alpha1.gen_exps, w.alpha2.gen_exps, w.l) == expected
        check_witness(w)


def test_monotone_in_bound():
    C = CyclicCentralSubgroup(4, DECOMPOSABLE)
    first = brute_force_witness_search(SearchSpec(C, 1, require_rank2=True))
    assert first is not None
    key = (first.alpha1.gen_exps, first.alpha2.gen_exps)
    for B in (2, 3):
        w = brute_force_witness_search(SearchSpec(C, B, require_rank2=True))
        assert w is not None
        assert (w.alpha1.gen_exps, w.alpha2.gen_exps) <= key


def test_big_exponents_fall_back_to_exact():
    big = 3 * 10**20
    spec = SearchSpec(CyclicCentralSubgroup(3, (big, big, big)), 1)
    assert brute_force_witness_search(spec) is None
    spec = SearchSpec(CyclicCentralSubgroup(2, (big,)), 1, allow_trivial_l=True)
    w = brute_force_witness_search(spec)
    assert w.l == 0


def test_parallel_matches_serial():
    spec = SearchSpec(CyclicCentralSubgroup(4, (2, 1, 1, 1, 1, 1)), 2, require_rank2=False)
    serial = brute_force_witness_search(spec)
    parallel = brute_force_witness_search(spec, workers=3)
    assert serial == parallel


def test_progress_stream():
    buf = io.StringIO()
    spec = SearchSpec(CyclicCentralSubgroup(4, PAPER_EXAMPLE), 1, require_rank2=True)
    stream = ProgressStream(80, every=500, stream=buf)
    brute_force_witness_search(spec, progress=stream)
    lines = [json.loads(x) for x in buf.getvalue().splitlines()]
    assert lines and all(x["event"] == "progress" for x in lines[:-1])
    assert lines[-1] == {"event": "done", "pairs_checked": 80 * 81 // 2, "found": False}


def test_triple_search_is_experimental():
    assert triple_search(CyclicCentralSubgroup(3, (1, 1, 1)), 1) is None
    t = triple_search(CyclicCentralSubgroup(2, (1,)), 1)
    assert t is None or t.kernel_rank == 0


class TestSweep:
    def test_seed7(self):
        r = soundness_sweep(4, 2, 100, 7)
        assert r.violations == []
        assert r.witness_found + r.no_witness == 100
        assert r.condition_holds + r.condition_violated == 100

    def test_paper_example_injected(self):
        r = soundness_sweep(4, 2, 1, 0, vectors=[PAPER_EXAMPLE])
        assert (r.witness_found, r.condition_violated) == (0, 1)

    def test_decomposable_injected(self):
        r = soundness_sweep(4, 2, 1, 0, vectors=[DECOMPOSABLE, (2, 2, 2, 2, 4, 2)])
        assert r.witness_found == 2 and r.condition_holds == 2

    def test_rejects(self):
        with pytest.raises(ValueError):
            soundness_sweep(4, 2, 0, 1)
        with pytest.raises(ValueError):
            soundness_sweep(3, 2, 5, 1)

    def test_deterministic(self):
        assert soundness_sweep(4, 1, 20, 3).to_json() == soundness_sweep(4, 1, 20, 3).to_json()

    def test_witnesses_only_when_pfaffian_vanishes(self):
        # soundness, exactly as provable: witness => condition holds
        r = soundness_sweep(4, 2, 60, 99)
        for case in r.cases:
            if case["witness"]:
                assert case["holds"]
                assert pfaffian(case["a"]) == 0

    def test_violation_is_hard_failure(self, monkeypatch):
        import nilrank.search as search
        monkeypatch.setattr(search, "all_hold", lambda reports: False)
        with pytest.raises(SoundnessViolation):
            soundness_sweep(4, 2, 1, 0, vectors=[DECOMPOSABLE])
