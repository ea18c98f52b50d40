
import pytest
from hypothesis import given, strategies as st

from batchpair.errors import ArityMismatch, NotAllEqual, SumNonzero, UnsupportedSize, ZeroRequest
from batchpair.field import FieldCtx
from batchpair.instance import Requests
from batchpair.pairing import (
    Pairing, SweepOptions, apply_map, canonical_form, count_solutions, enumerate_instances,
    gl_maps, is_all_odd_weight, sample_instances, sample_nonzero_sum, solve, solve_all_equal,
    sweep, verify_solution,
)

from oracles import (
    brute_force_labeled_solutions, brute_force_pairings_small, count_orbits_burnside,
    count_sum_zero_multisets, gl_order,
)

F2, F3, F4 = FieldCtx(2), FieldCtx(3), FieldCtx(4)

# frozen from the DP and Burnside oracles in oracles.py
SUM_ZERO_COUNTS = {2: 3, 3: 35, 4: 20295}
ORBIT_COUNTS = {2: 1, 3: 3, 4: 22}


def test_solver_examples():
    assert solve(Requests(F2, (1, 1))) == Pairing([(0, 1), (2, 3)])
    assert solve(Requests(F2, (2, 2))) == Pairing([(0, 2), (1, 3)])
    assert count_solutions(Requests(F2, (1, 1))) == 2


def test_solver_errors():
    with pytest.raises(SumNonzero):
        solve(Requests(F2, (1, 2)))
    with pytest.raises(ArityMismatch):
        solve(Requests(F3, (1, 1)))
    with pytest.raises(ZeroRequest):
        Requests(F2, (0, 1))


def test_all_equal_cosets():
    v = Requests(F3, (5, 5, 5, 5))
    assert solve_all_equal(v) == Pairing([(0, 5), (1, 4), (2, 7), (3, 6)])
    with pytest.raises(NotAllEqual):
        solve_all_equal(Requests(F3, (1, 2, 4, 7)))


def test_verify_solution_rejects_bad_pairings():
    v = Requests(F2, (1, 1))
    assert not verify_solution(v, Pairing([(0, 1), (0, 1)]))
    assert not verify_solution(v, Pairing([(0, 1), (2, 1)]))


def test_oracles_agree_with_frozen_counts():
    for s, n in SUM_ZERO_COUNTS.items():
        assert count_sum_zero_multisets(1 << s, 1 << (s - 1)) == n
    for s in (2, 3):
        assert count_orbits_burnside(s) == ORBIT_COUNTS[s]


@pytest.mark.parametrize("s", [2, 3, 4])
def test_enumeration_counts(s):
    ctx = FieldCtx(s)
    inst = list(enumerate_instances(ctx, "sorted"))
    assert len(inst) == SUM_ZERO_COUNTS[s]
    assert len({v.values for v in inst}) == len(inst)
    assert all(v.sum_zero and list(v.values) == sorted(v.values) for v in inst)
    assert len(list(enumerate_instances(ctx, "linear"))) == ORBIT_COUNTS[s]


def test_gl_group_orders():
    for s in (1, 2, 3, 4):
        maps = gl_maps(s)
        assert len(maps) == gl_order(s) == len(set(maps))


def test_linear_representatives_are_canonical():
    for v in enumerate_instances(F4, "linear"):
        assert canonical_form(v) == v.values


@pytest.mark.parametrize("s", [2, 3])
def test_count_matches_brute_force(s):
    ctx = FieldCtx(s)
    for v in enumerate_instances(ctx):
        n = count_solutions(v)
        assert n == brute_force_labeled_solutions(ctx.q, v.values)
        assert n > 0


def test_solver_output_is_a_brute_force_solution():
    for v in enumerate_instances(F3):
        sol = solve(v)
        assert tuple(tuple(sorted(p)) for p in sol.pairs) in brute_force_pairings_small(8, v.values)


def test_count_s4_all_equal():
    # 8 cosets of {0, w} assigned to 8 labeled requests
    assert count_solutions(Requests(F4, (3,) * 8)) == 40320


@st.composite
def s3_instances(draw):
    seed = draw(st.integers(0, 10 ** 6))
    return sample_instances(F3, 1, seed)[0]


@given(s3_instances(), st.integers(0, 167))
def test_gl_action_preserves_solvability_and_counts(v, m):
    w = apply_map(gl_maps(3)[m], v)
    assert canonical_form(w) == canonical_form(v)
    assert count_solutions(w) == count_solutions(v)


@given(s3_instances(), st.permutations(range(4)))
def test_permutation_invariance(v, perm):
    w = Requests(F3, [v.values[i] for i in perm])
    sol = solve(w)
    assert sol is not None and verify_solution(w, sol)
    assert count_solutions(w) == count_solutions(v)


def test_sampling_is_seeded_and_valid():
    a = sample_instances(F4, 50, 7)
    assert a == sample_instances(F4, 50, 7)
    assert a != sample_instances(F4, 50, 8)
    assert all(v.sum_zero for v in a)
    b = sample_nonzero_sum(F3, 30, 1)
    assert all(not v.sum_zero for v in b)


def test_sampling_is_roughly_uniform():
    # s=2 has 3 sum-zero 2-multisets, each should get about a third
    counts = {}
    for v in sample_instances(F2, 3000, 0):
        counts[v.values] = counts.get(v.values, 0) + 1
    assert set(counts) == {(1, 1), (2, 2), (3, 3)}
    assert all(900 < c < 1100 for c in counts.values())


@pytest.mark.parametrize("s", [2, 3, 4])
def test_exhaustive_sweeps(s):
    r = sweep(FieldCtx(s))
    assert r.verified and r.instance_count == SUM_ZERO_COUNTS[s] == r.solved_count


def test_sweep_options():
    r = sweep(F3, SweepOptions(canonical="linear", count=True))
    assert r.instance_count == 3
    assert [c for _, c in r.solution_counts] == [count_solutions(Requests(F3, v)) for v, _ in r.solution_counts]
    r5 = sweep(FieldCtx(5), SweepOptions(sample=3, seed=1))
    assert r5.verified and r5.to_json()["mode"] == "sample(3)"
    with pytest.raises(UnsupportedSize):
        sweep(FieldCtx(5))


def test_sweep_progress_callback():
    seen = []
    sweep(F3, progress=lambda done, solved: seen.append((done, solved)))
    assert seen[-1] == (35, 35)


def test_sweep_workers_do_not_change_the_report():
    a = sweep(F3, SweepOptions(count=True)).to_json()
    b = sweep(F3, SweepOptions(count=True, workers=3)).to_json()
    assert a == b


def test_odd_weight_class_s4():
    odd = [v for v in enumerate_instances(F4) if is_all_odd_weight(v)]
    assert odd and all(verify_solution(v, solve(v)) for v in odd)
