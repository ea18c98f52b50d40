import random
from itertools import combinations, product

import pytest

from batchpair.errors import ArityMismatch, UnsupportedSize, ZeroRequest
from batchpair.field import FieldCtx
from batchpair.fv import (
    build_fv_concrete, build_fv_symbolic, claim9_check, claim9_monomial, coeff_table,
    degree_lemma_check, dyson_parity_check, factor_grid, fv_from_values,
    fv_monomial_multiplicity, theorem5_oracles, vandermonde_check, vandermonde_grid, vvars, xvars,
)
from batchpair.instance import Requests
from batchpair.pairing import sample_instances
from batchpair.polyring import Poly, reduce_quotient

from oracles import int_linear_product

F2, F3 = FieldCtx(2), FieldCtx(3)


def test_concrete_s2_values():
    x1, x2 = Poly.gens(F2, xvars(2))
    assert build_fv_concrete(Requests(F2, (1, 1))) == x1 ** 2 + x1 + x2 ** 2 + x2
    assert build_fv_concrete(Requests(F2, (1, 2))).is_zero()
    assert build_fv_concrete(Requests(F2, (2, 2))) == (x1 ** 2).scale(2) + x1.scale(3) + (x2 ** 2).scale(2) + x2.scale(3)


def test_concrete_rejects_zero_but_raw_builder_accepts():
    with pytest.raises(ZeroRequest):
        Requests(F2, (0, 1))
    assert fv_from_values(F2, (0, 1)).is_zero()


def test_dense_and_sparse_builders_agree():
    # q^k = 2^12 goes through the dense path; rebuild it term by term
    for v in sample_instances(F3, 5, 11):
        gens = Poly.gens(F3, xvars(4), reduced=True)
        f = Poly.const(F3, xvars(4), 1, reduced=True)
        for w in v.values:
            f = f.scale(w)
        for i, j in combinations(range(4), 2):
            for c in (0, v.values[i], v.values[j], v.values[i] ^ v.values[j]):
                f = f * (gens[i] + gens[j] + c)
        assert build_fv_concrete(v) == f


def test_symbolic_s2_against_integer_expansion():
    # slots: v1, v2, x1, x2
    factors = [[2, 3], [2, 3, 0], [2, 3, 1], [2, 3, 0, 1]]
    ints = int_linear_product(factors, (1, 1, 0, 0))
    expect = {e for e, c in ints.items() if c % 2}
    assert set(build_fv_symbolic(F2, reduce=False).terms) == expect


def test_symbolic_s2_support():
    table = coeff_table(build_fv_symbolic(F2))
    assert table.support == [(2, 0), (1, 0), (0, 2), (0, 1)]


@pytest.mark.parametrize("seed", range(6))
def test_symbolic_specializes_to_concrete(seed):
    rng = random.Random(seed)
    for ctx in (F2, F3):
        k = ctx.q // 2
        fsym = build_fv_symbolic(ctx)
        vals = [rng.randrange(1, ctx.q) for _ in range(k)]
        fixed = fsym.specialize(dict(zip(vvars(k), vals)), ctx).with_vars(xvars(k))
        assert reduce_quotient(fixed) == build_fv_concrete(Requests(ctx, vals))


def test_symbolic_s3_sizes():
    # frozen from the packed engine, cross-checked by specialization above
    fsym = build_fv_symbolic(F3)
    table = coeff_table(fsym)
    assert len(fsym) == 96672
    assert len(table) == 1110
    assert len(coeff_table(build_fv_symbolic(F3, prefix_all=False))) == 1110


def test_symbolic_s4_rejected():
    with pytest.raises(UnsupportedSize):
        build_fv_symbolic(FieldCtx(4))


def test_claim9():
    assert claim9_monomial(4, 8) == (6, 8, 4, 0)
    r2 = claim9_check(F2)
    assert r2.ok and r2.witness["coefficient"] == "v1^3*v2 + v1^2*v2^2 + v1*v2^3"
    r3 = claim9_check(F3)
    assert r3.ok and r3.witness["coefficient_terms"] == 29
    assert r3.notes  # the printed exponent pattern does not sum to deg f_v


def test_dyson_parity():
    w2 = dyson_parity_check(F2).witness
    assert (w2["integer_plus_form"], w2["f2"]) == (6, 0)
    w3 = dyson_parity_check(F3).witness
    assert w3["integer_difference_form"] == 2520
    assert w3["integer_plus_form"] == 242136
    assert w3["f2"] == 0


def test_degree_lemma():
    for ctx in (F2, F3):
        table = coeff_table(build_fv_symbolic(ctx))
        assert degree_lemma_check(table, ctx.q).witness["checked"] == len(table)


def test_s3_special_monomial_multiplicity():
    # cross-checked once against an independent computer-algebra expansion
    assert fv_monomial_multiplicity(4, (7, 0, 0, 2), (6, 6, 4, 0), prefix_all=False) == 23
    g = coeff_table(build_fv_symbolic(F3, prefix_all=False))[(6, 6, 4, 0)]
    assert g.terms[(7, 0, 0, 2)] == 1
    assert (len(g), g.degree()) == (76, 9)


def test_vandermonde_matches_distinct_endpoints():
    rng = random.Random(3)
    for ctx in (F2, F3):
        for v in sample_instances(ctx, 4, 5):
            grid = vandermonde_grid(v)
            assert (grid == factor_grid(v)).all()
            for _ in range(20):
                a = tuple(rng.randrange(ctx.q) for _ in range(v.k))
                assert vandermonde_check(v, a) == bool(grid[a])
    with pytest.raises(ArityMismatch):
        vandermonde_check(Requests(F2, (1, 1)), [0])


def test_theorem5_s2_all_pairs():
    for v in product(range(1, 4), repeat=2):
        o = theorem5_oracles(Requests(F2, v))
        assert set(o.values()) == {v[0] == v[1]}
