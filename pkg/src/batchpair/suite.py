"""Every check in dependency order, consolidated into one report.

Each entry is run in isolation: a mathematical failure marks it ``fail``, a
resource cap marks it ``partial``, and neither stops later entries.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable

import numpy as np

from .batchcode import fb22_optimality, simplex_check
from .config import RunConfig
from .errors import BatchPairError, CheckFailed, ReducibleModulus, ResourceCap
from .field import DEFAULT_MODULI, FieldCtx, clmod, clmul
from .fv import (
    build_fv_symbolic, claim9_check, coeff_table, degree_lemma_check,
    dyson_parity_check, fv_from_values, fv_monomial_multiplicity, theorem5_oracles,
)
from .instance import Requests
from .nullsatz import claim11_verify, corollary10_classify, example1_verify, lemma12_decompose
from .pairing import (
    SweepOptions, enumerate_instances, is_all_equal, is_all_odd_weight, sample_instances,
    sample_nonzero_sum, solve, solve_all_equal, sweep, verify_solution,
)
from .polyring import random_poly, reduce_quotient, term_cap
from .reports import FAIL, PARTIAL, PASS, Report

S3_TARGET = (6, 6, 4, 0)
S3_SPECIAL_V = (7, 0, 0, 2)


@dataclass
class Entry:
    name: str
    citation: str
    run: Callable[[RunConfig], Report]
    symbolic: bool = False


# -- field and quotient ring ----------------------------------------------------

def _table_axioms(T: np.ndarray) -> dict:
    q = T.shape[0]
    a = np.arange(q)
    # row x: T[T[x, y], z] against T[x, T[y, z]]
    assoc = bool(all((T[T[x]] == T[x][T]).all() for x in range(q)))
    distrib = bool(all((T[x][a[:, None] ^ a[None, :]] == (T[x][:, None] ^ T[x][None, :])).all()
                       for x in range(q)))
    return {
        "commutative": bool((T == T.T).all()),
        "associative": assoc,
        "distributive": distrib,
        "identity": bool((T[1] == a).all()),
        "inverses": bool(all((T[x] == 1).any() for x in range(1, q))),
    }


def field_check(s: int, modulus: int | None = None) -> Report:
    modulus = DEFAULT_MODULI[s] if modulus is None else modulus
    q = 1 << s
    witness = {"s": s, "modulus": modulus}
    try:
        ctx = FieldCtx(s, modulus)
        T = ctx.mul_table
        direct = all(T[x, y] == clmod(clmul(x, y), modulus) for x in range(q) for y in range(q))
        witness["table_matches_carryless"] = direct
    except ReducibleModulus:
        T = np.array([[clmod(clmul(x, y), modulus) for y in range(q)] for x in range(q)])
        zd = next([x, y] for x in range(1, q) for y in range(1, q) if T[x, y] == 0)
        witness["irreducible"] = False
        witness["zero_divisor"] = zd
    witness.update(_table_axioms(T))
    ok = all(v for k, v in witness.items() if isinstance(v, bool))
    return Report("field", PASS if ok else FAIL, witness)


def run_field(cfg: RunConfig) -> Report:
    if cfg.modulus is not None:
        s = cfg.s if cfg.s is not None else cfg.modulus.bit_length() - 1
        return field_check(s, cfg.modulus)
    reports = [field_check(s) for s in range(1, 5)]
    status = PASS if all(r.ok for r in reports) else FAIL
    return Report("field", status, [r.witness for r in reports])


def run_quotient(cfg: RunConfig) -> Report:
    rng = random.Random(cfg.seed)
    checked = 0
    for s, nv in ((2, 2), (2, 3), (3, 2), (3, 3)):
        ctx = FieldCtx(s)
        names = tuple(f"x{i}" for i in range(1, nv + 1))
        for _ in range(25):
            p = random_poly(ctx, names, 8, 3 * ctx.q, rng)
            r = random_poly(ctx, names, 8, 3 * ctx.q, rng)
            rp = reduce_quotient(p)
            if reduce_quotient(rp) != rp:
                raise CheckFailed("reduction is not idempotent", p.to_json())
            if reduce_quotient(p * r) != reduce_quotient(rp * reduce_quotient(r)):
                raise CheckFailed("reduction does not commute with products", p.to_json())
            for _ in range(8):
                pt = [rng.randrange(ctx.q) for _ in names]
                if p.evaluate(pt) != rp.evaluate(pt):
                    raise CheckFailed("reduction changes a value", {"p": p.to_json(), "point": pt})
            checked += 1
    return Report("quotient", PASS, {"random_pairs": checked, "seed": cfg.seed})


# -- characteristic polynomial ---------------------------------------------------

def run_claim9(cfg: RunConfig) -> Report:
    parts = [claim9_check(FieldCtx(s)) for s in (2, 3)]
    return Report("claim9", PASS, [p.witness for p in parts], sum((p.notes for p in parts), []))


def run_dyson(cfg: RunConfig) -> Report:
    return Report("dyson_parity", PASS, [dyson_parity_check(FieldCtx(s)).witness for s in (2, 3)])


def run_degree_lemma(cfg: RunConfig) -> Report:
    out = []
    for s in (2, 3):
        ctx = FieldCtx(s)
        out.append(degree_lemma_check(coeff_table(build_fv_symbolic(ctx)), ctx.q).witness)
    return Report("degree_lemma", PASS, out)


def run_theorem5(cfg: RunConfig) -> Report:
    F2, F3 = FieldCtx(2), FieldCtx(3)
    instances = [Requests(F2, v) for v in product(range(1, 4), repeat=2)]
    instances += sample_instances(F3, 200, cfg.seed)
    instances += sample_nonzero_sum(F3, 20, cfg.seed)
    agree = 0
    for v in instances:
        o = theorem5_oracles(v)
        if len(set(o.values())) != 1:
            raise CheckFailed("solvability criteria disagree", {"v": list(v.values), **o})
        agree += 1
    return Report("theorem5", PASS, {"instances": agree, "seed": cfg.seed})


def run_lemma6(cfg: RunConfig) -> Report:
    F2, F3 = FieldCtx(2), FieldCtx(3)
    # ordered pairs over all of GF(4), zero entries included
    s2 = [v for v in product(range(4), repeat=2) if v[0] ^ v[1]]
    s3 = [v.values for v in sample_nonzero_sum(F3, 100, cfg.seed)]
    for ctx, group in ((F2, s2), (F3, s3)):
        for v in group:
            if not fv_from_values(ctx, v).is_zero():
                raise CheckFailed("sum-nonzero instance with nonzero f_v", list(v))
    return Report("lemma6", PASS, {"s2_ordered_pairs": len(s2), "s3_random": len(s3),
                                   "seed": cfg.seed})


# -- search --------------------------------------------------------------------

def run_sweeps(cfg: RunConfig) -> Report:
    out = []
    for s in (2, 3, 4):
        r = sweep(FieldCtx(s), SweepOptions(canonical=cfg.canonical, workers=cfg.workers))
        out.append(r.to_json())
        if not r.verified:
            return Report("sweeps", FAIL, out)
    return Report("sweeps", PASS, out)


def run_corollary8(cfg: RunConfig) -> Report:
    counts = []
    for s in (2, 3, 4):
        ctx = FieldCtx(s)
        eq = odd = 0
        for v in enumerate_instances(ctx, "sorted"):
            if is_all_equal(v):
                if not verify_solution(v, solve_all_equal(v)):
                    raise CheckFailed("coset pairing fails", list(v.values))
                eq += 1
            if is_all_equal(v) or is_all_odd_weight(v):
                sol = solve(v)
                if sol is None or not verify_solution(v, sol):
                    raise CheckFailed("special-class instance unsolved", list(v.values))
                odd += is_all_odd_weight(v)
        counts.append({"s": s, "all_equal": eq, "all_odd_weight": odd})
    return Report("corollary8", PASS, counts)


def run_simplex(cfg: RunConfig) -> Report:
    parts = [simplex_check(FieldCtx(s)) for s in (2, 3)]
    return Report("simplex", PASS if all(p.ok for p in parts) else FAIL, [p.witness for p in parts])


def run_fb22(cfg: RunConfig) -> Report:
    r = fb22_optimality()
    w = dict(r.witness)
    w["two_server_configs"] = len(w["two_server_configs"])
    return Report("fb22", r.status, w)


# -- certificates ----------------------------------------------------------------

def run_example1(cfg: RunConfig) -> Report:
    return example1_verify()


def run_claim11(cfg: RunConfig) -> Report:
    return claim11_verify()


def run_lemma12(cfg: RunConfig) -> Report:
    F2, F3 = FieldCtx(2), FieldCtx(3)
    table = coeff_table(build_fv_symbolic(F2))
    s2 = [lemma12_decompose(table.entries[j], F2) for j in table.support]
    s2_h1 = {str(list(j)): str(r.h1) for j, r in zip(table.support, s2)}
    g = coeff_table(build_fv_symbolic(F3, prefix_all=False))[S3_TARGET]
    r3 = lemma12_decompose(g, F3, omitted_prefix=("v2", "v3", "v4"))
    cor = corollary10_classify([r3], F3).witness
    witness = {
        "s2_h1": s2_h1,
        "s2_corollary10": corollary10_classify(s2, F2).witness,
        "s3_target": list(S3_TARGET),
        "s3_h1": str(r3.h1),
        "s3_deg_h1": r3.h1.degree(),
        "s3_deg_g": g.degree(),
        "s3_corollary10": cor,
    }
    if not (cor["cond2"] and cor["cond3"]):
        raise CheckFailed("h1 satisfies neither sufficient condition", witness)
    return Report("lemma12", PASS, witness)


def run_s3_coefficient(cfg: RunConfig) -> Report:
    F3 = FieldCtx(3)
    g = coeff_table(build_fv_symbolic(F3, prefix_all=False))[S3_TARGET]
    mult = fv_monomial_multiplicity(4, S3_SPECIAL_V, S3_TARGET, prefix_all=False)
    witness = {"x_monomial": list(S3_TARGET), "v_monomial": list(S3_SPECIAL_V),
               "present_over_f2": g.terms.get(S3_SPECIAL_V) == 1,
               "integer_multiplicity": mult, "coefficient_terms": len(g),
               "coefficient_degree": g.degree()}
    if not witness["present_over_f2"] or mult % 2 == 0:
        raise CheckFailed("special monomial does not survive mod 2", witness)
    return Report("s3_coefficient", PASS, witness)


ENTRIES = [
    Entry("field", "finite field GF(2^s) arithmetic", run_field),
    Entry("quotient", "reduction modulo x_i^q + x_i preserves values", run_quotient),
    Entry("example1", "Example 1", run_example1),
    Entry("claim11", "Claim 11", run_claim11, symbolic=True),
    Entry("claim9", "Claim 9", run_claim9, symbolic=True),
    Entry("dyson_parity", "Dyson parity remark", run_dyson, symbolic=True),
    Entry("degree_lemma", "degree lemma on g_j", run_degree_lemma, symbolic=True),
    Entry("theorem5", "Theorem 5", run_theorem5),
    Entry("lemma6", "Lemma 6", run_lemma6),
    Entry("sweeps", "Conjecture 2, s = 2, 3, 4", run_sweeps),
    Entry("corollary8", "Corollary 8", run_corollary8),
    Entry("simplex", "simplex batch code", run_simplex),
    Entry("fb22", "FB(2,2) = 3", run_fb22),
    Entry("s3_coefficient", "s = 3 coefficient of x1^6 x2^6 x3^4", run_s3_coefficient, symbolic=True),
    Entry("lemma12", "Lemma 12 and Corollary 10", run_lemma12, symbolic=True),
]


def run_suite(cfg: RunConfig) -> tuple[dict, int]:
    """Consolidated report and exit code (0 pass, 1 any failure, 3 any partial).

    The term cap binds only the symbolic entries; the worker count only the sweeps.
    """
    entries = []
    cap = cfg.term_cap
    for e in ENTRIES:
        try:
            if cap is not None and e.symbolic:
                with term_cap(cap):
                    r = e.run(cfg)
            else:
                r = e.run(cfg)
            d = {"status": r.status, "witness": r.witness}
            if r.notes:
                d["notes"] = r.notes
        except ResourceCap as exc:
            d = {"status": PARTIAL, "reason": str(exc)}
        except CheckFailed as exc:
            d = {"status": FAIL, "reason": str(exc), "witness": exc.witness}
        except BatchPairError as exc:
            d = {"status": FAIL, "reason": f"{type(exc).__name__}: {exc}"}
        entries.append({"name": e.name, "citation": e.citation, **d})
    statuses = {d["status"] for d in entries}
    code = 1 if FAIL in statuses else 3 if PARTIAL in statuses else 0
    verdict = {0: PASS, 1: FAIL, 3: PARTIAL}[code]
    return {"config": cfg.to_json(), "verdict": verdict, "entries": entries}, code
