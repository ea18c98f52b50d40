"""Division certificates for polynomials that vanish on a grid.

``grid_divide`` writes f = sum_i h_i g_i(x_i) + r with g_i(x) = prod_{s in S_i}
(x - s) and deg_{x_i} r < |S_i|; when f vanishes on S_1 x ... x S_n the
remainder is zero.  ``shifted_divide`` does the same after the change of
variable u = x_1 + x_2 + ... + x_n, which in characteristic 2 is its own
inverse.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import CheckFailed, DependenceViolation, NonzeroRemainder
from .field import Elem, FieldCtx
from .polyring import F2, Poly, dense_ok, evaluate_grid, reduce_quotient, substitute
from .reports import PASS, Report


def _values(subset: Iterable) -> list[int]:
    vals = sorted({x.value if isinstance(x, Elem) else int(x) for x in subset})
    if not vals:
        raise ValueError("empty subset")
    return vals


def grid_poly_coeffs(ctx: FieldCtx, subset: Sequence[int]) -> list[int]:
    """Coefficients (constant term first) of prod_{s in subset} (x + s)."""
    c = [1]
    for s in subset:
        nxt = [0] * (len(c) + 1)
        for i, a in enumerate(c):
            nxt[i + 1] ^= a
            nxt[i] ^= ctx.mul(a, s)
        c = nxt
    return c


def grid_poly(ctx: FieldCtx, vars: Sequence[str], var: str, subset: Sequence[int]) -> Poly:
    i = list(vars).index(var)
    terms = {}
    for d, a in enumerate(grid_poly_coeffs(ctx, subset)):
        if a:
            e = [0] * len(vars)
            e[i] = d
            terms[tuple(e)] = a
    return Poly(ctx, vars, terms)


@dataclass
class Certificate:
    """target = sum(quotients[i] * divisors[i]) + remainder."""

    target: Poly
    divisors: list[Poly]
    quotients: list[Poly]
    remainder: Poly
    labels: list[str] = field(default_factory=list)
    subset_sizes: list[int] = field(default_factory=list)
    working: Certificate | None = None

    def recompose(self) -> Poly:
        total = self.remainder
        for h, g in zip(self.quotients, self.divisors):
            total = total + h * g
        return total

    def verify(self) -> bool:
        return self.recompose() == self.target

    def degree_bounds_ok(self) -> bool:
        """deg h_i <= deg target - deg g_i for every nonzero quotient."""
        dt = self.target.degree()
        return all(h.is_zero() or h.degree() <= dt - g.degree()
                   for h, g in zip(self.quotients, self.divisors))

    def exponent_bounds_ok(self) -> bool:
        """No divisor variable carries an exponent above |S_j| in any quotient.

        Checked in the coordinates where the division ran.
        """
        c = self.working or self
        vars = c.target.vars
        idx = [(vars.index(l), n) for l, n in zip(c.labels, c.subset_sizes)]
        for h in c.quotients:
            for e in h.terms:
                if any(e[i] > n for i, n in idx):
                    return False
        return True

    def to_json(self) -> dict:
        d = {
            "target": self.target.to_json(),
            "divisors": [g.to_json() for g in self.divisors],
            "quotients": [h.to_json() for h in self.quotients],
            "remainder": self.remainder.to_json(),
        }
        if self.labels:
            d["labels"] = list(self.labels)
        return d

    @classmethod
    def from_json(cls, d: dict) -> Certificate:
        return cls(
            Poly.from_json(d["target"]),
            [Poly.from_json(g) for g in d["divisors"]],
            [Poly.from_json(h) for h in d["quotients"]],
            Poly.from_json(d["remainder"]),
            list(d.get("labels", [])),
        )


def grid_divide(f: Poly, subsets: Mapping[str, Iterable], assert_vanishing: bool = False) -> Certificate:
    """Divide by the grid polynomials, one variable at a time in ``f.vars`` order."""
    ctx, vars = f.ctx, f.vars
    mul = ctx.mul
    work = dict(f.terms)
    labels, sizes, divisors, quotients = [], [], [], []
    for i, var in enumerate(vars):
        if var not in subsets:
            continue
        sub = _values(subsets[var])
        g = grid_poly_coeffs(ctx, sub)
        d = len(sub)
        low = [(t, a) for t, a in enumerate(g[:-1]) if a]
        quot: dict[tuple, int] = {}
        pending = sorted((e for e in work if e[i] >= d), key=lambda e: e[i], reverse=True)
        # descending in x_i: each rewrite only creates lower x_i exponents
        by_exp: dict[int, list[tuple]] = {}
        for e in pending:
            by_exp.setdefault(e[i], []).append(e)
        top = max(by_exp, default=-1)
        for ex in range(top, d - 1, -1):
            for e in sorted({e for e in by_exp.get(ex, ()) if e in work}):
                c = work.pop(e)
                qe = e[:i] + (ex - d,) + e[i + 1:]
                quot[qe] = quot.get(qe, 0) ^ c
                for t, a in low:
                    ne = e[:i] + (ex - d + t,) + e[i + 1:]
                    v = work.get(ne, 0) ^ mul(c, a)
                    if v:
                        work[ne] = v
                        if ne[i] >= d:
                            by_exp.setdefault(ne[i], []).append(ne)
                    else:
                        work.pop(ne, None)
        labels.append(var)
        sizes.append(d)
        divisors.append(grid_poly(ctx, vars, var, sub))
        quotients.append(Poly(ctx, vars, quot))
    cert = Certificate(f, divisors, quotients, Poly(ctx, vars, work), labels, sizes)
    if assert_vanishing and not cert.remainder.is_zero():
        raise NonzeroRemainder("f does not vanish on the grid", cert.to_json())
    return cert


def shift_poly(f: Poly, shift_var: str, over: Sequence[str]) -> Poly:
    gens = dict(zip(f.vars, Poly.gens(f.ctx, f.vars)))
    L = gens[shift_var]
    for v in over:
        L = L + gens[v]
    return L


def shifted_divide(f: Poly, S1: Iterable, subsets: Mapping[str, Iterable],
                   shift_var: str | None = None, over: Sequence[str] | None = None,
                   assert_vanishing: bool = False) -> Certificate:
    """Grid division with the first grid attached to u = x_1 + sum(over).

    ``shift_var`` defaults to the first variable and ``over`` to every other
    variable.  Divisors and quotients of the result are in the original
    variables; ``working`` holds the certificate in (u, x_2, ...) coordinates.
    """
    shift_var = shift_var or f.vars[0]
    if over is None:
        over = [v for v in f.vars if v != shift_var]
    L = shift_poly(f, shift_var, over)
    fw = substitute(f, shift_var, L)
    grids = {shift_var: S1, **{k: v for k, v in subsets.items() if k != shift_var}}
    w = grid_divide(fw, grids)
    back = lambda p: substitute(p, shift_var, L)
    cert = Certificate(
        f,
        [back(g) for g in w.divisors],
        [back(h) for h in w.quotients],
        back(w.remainder),
        list(w.labels),
        list(w.subset_sizes),
        working=w,
    )
    if assert_vanishing and not cert.remainder.is_zero():
        raise NonzeroRemainder("f does not vanish on the shifted grid", cert.to_json())
    return cert


# -- decomposition of coefficient polynomials ---------------------------------

@dataclass
class Lemma12Result:
    """g = ((v_1+...+v_k)^(q-1) + 1)(v_2+...+v_k) h1 + sum_{j>=2} (v_j^q + v_j) h_j + residual.

    ``residual`` is zero unless the caller declared an omitted prefix, in
    which case ``compensator * residual`` vanishes on the whole grid.
    """

    source_gj: Poly
    h1: Poly
    side_quotients: list[Poly]
    q: int
    residual: Poly | None = None
    compensator: Poly | None = None
    stage1: Certificate | None = None
    stage2: Certificate | None = None
    premise_checked: bool = False

    def factors(self) -> tuple[Poly, Poly, list[Poly]]:
        g = self.source_gj
        gens = Poly.gens(g.ctx, g.vars)
        u = sum(gens[1:], gens[0])
        t = sum(gens[2:], gens[1]) if len(gens) > 1 else Poly.zero(g.ctx, g.vars)
        grids = [x ** self.q + x for x in gens[1:]]
        return u ** (self.q - 1) + 1, t, grids

    def recompose(self) -> Poly:
        a, t, grids = self.factors()
        total = a * t * self.h1
        for h, p in zip(self.side_quotients, grids):
            total = total + h * p
        if self.residual is not None:
            total = total + self.residual
        return total

    def to_json(self) -> dict:
        d = {
            "source_gj": self.source_gj.to_json(),
            "h1": self.h1.to_json(),
            "side_quotients": [h.to_json() for h in self.side_quotients],
            "q": self.q,
        }
        if self.residual is not None and not self.residual.is_zero():
            d["residual"] = self.residual.to_json()
            d["compensator"] = self.compensator.to_json()
        return d


def _coordinate_sums(ctx: FieldCtx, n: int) -> np.ndarray:
    sums = np.zeros((ctx.q,) * n, dtype=np.int64)
    for axis in range(n):
        shape = [1] * n
        shape[axis] = ctx.q
        sums = sums ^ np.arange(ctx.q).reshape(shape)
    return sums


def _vanishes_off_sum_zero(g: Poly, ctx: FieldCtx) -> bool | None:
    """True if g is zero at every point with nonzero coordinate sum (None: too big)."""
    if not dense_ok(ctx, len(g.vars)):
        return None
    vals = evaluate_grid(g, ctx)
    return not vals[_coordinate_sums(ctx, len(g.vars)) != 0].any()


def vanishes_on_grid(p: Poly, ctx: FieldCtx) -> bool:
    return reduce_quotient(p.embed(ctx)).is_zero()


def lemma12_decompose(gj: Poly, ctx: FieldCtx, omitted_prefix: Sequence[str] = ()) -> Lemma12Result:
    """Two-stage division of a coefficient polynomial g_j(v_1..v_k) over GF(q).

    Stage 1 divides by (u^(q-1) + 1) with u = v_1 + ... + v_k and by
    v_j^q + v_j (j >= 2); its u-quotient h1' does not involve v_1.  Stage 2
    divides h1' by t = v_2 + ... + v_k (and v_j^q + v_j, j >= 3).  Both
    remainders must vanish.

    ``omitted_prefix`` names variables whose factor was left out of f_v's
    scalar prefix (the v_1-only convention).  Such a g_j only vanishes off
    the sum-zero set after multiplying by those variables back, so a stage
    remainder r is accepted iff prod(omitted) * r is zero on the whole grid.
    """
    g = gj.embed(ctx)
    q = ctx.q
    vars = g.vars
    k = len(vars)
    gens = dict(zip(vars, Poly.gens(ctx, vars)))
    comp = Poly.const(ctx, vars, 1)
    for name in omitted_prefix:
        comp = comp * gens[name]
    premise = _vanishes_off_sum_zero(comp * g, ctx)
    if premise is False:
        raise NonzeroRemainder("g_j is nonzero at a point with nonzero coordinate sum")
    zero = Poly.zero(ctx, vars)
    if g.is_zero():
        return Lemma12Result(g, zero, [zero] * (k - 1), q, zero, comp,
                             premise_checked=premise is not None)

    def settle(rem: Poly, stage: str) -> Poly:
        if rem.is_zero():
            return rem
        if omitted_prefix and vanishes_on_grid(comp * rem, ctx):
            return rem
        raise NonzeroRemainder(f"{stage} remainder is nonzero", rem.to_json())

    field_all = range(q)
    s1 = shifted_divide(g, range(1, q), {v: field_all for v in vars[1:]},
                        shift_var=vars[0], over=vars[1:])
    residual = settle(s1.remainder, "stage 1")
    h1p = s1.quotients[0]
    if h1p.depends_on(vars[0]):
        raise DependenceViolation("stage 1 quotient involves v_1", h1p.to_json())
    side = list(s1.quotients[1:])
    if k >= 2:
        s2 = shifted_divide(h1p, [0], {v: field_all for v in vars[2:]},
                            shift_var=vars[1], over=vars[2:])
        a = s1.divisors[0]
        residual = residual + a * settle(s2.remainder, "stage 2")
        h1 = s2.quotients[0]
        for j, h in enumerate(s2.quotients[1:], start=1):
            side[j] = side[j] + a * h
    else:
        s2, h1 = None, h1p
    if h1.depends_on(vars[0]):
        raise DependenceViolation("h1 involves v_1", h1.to_json())
    res = Lemma12Result(g, h1, side, q, residual, comp, s1, s2,
                        premise_checked=premise is not None)
    if res.recompose() != g:
        raise CheckFailed("decomposition does not recompose", res.to_json())
    if not h1.is_zero() and h1.degree() > g.degree() - q:
        raise CheckFailed("deg h1 exceeds deg g_j - q",
                          {"deg_h1": h1.degree(), "deg_g": g.degree(), "q": q})
    return res


def corollary10_classify(results: Sequence[Lemma12Result], ctx: FieldCtx) -> Report:
    """Which of the three sufficient conditions on the h1 family hold."""
    hs = [r.h1 for r in results if not r.h1.is_zero()]
    per = []
    cond2 = cond3 = False
    restricted = []
    for h in hs:
        rest = h.vars[1:]
        hr = h.with_vars(rest)
        restricted.append(hr)
        omits = [v for v in rest if not hr.depends_on(v)]
        multilinear = all(hr.deg_var(v) <= 1 for v in rest)
        cond2 |= bool(omits)
        cond3 |= multilinear
        per.append({"h1": str(h), "omits": omits, "multilinear": multilinear})
    cond1 = False
    cond1_status = "exhaustive"
    if restricted:
        nv = len(restricted[0].vars)
        if dense_ok(ctx, nv):
            covered = np.zeros((ctx.q,) * nv, dtype=bool)
            for h in restricted:
                covered |= evaluate_grid(h, ctx) != 0
            cond1 = bool(covered[_coordinate_sums(ctx, nv) != 0].all())
        else:
            cond1_status = "partial"
    witness = {"family_size": len(results), "nonzero": len(hs),
               "cond1": cond1, "cond2": cond2, "cond3": cond3,
               "cond1_evaluation": cond1_status, "per_h1": per[:50]}
    return Report("corollary10", PASS if cond1_status == "exhaustive" else "partial", witness)


# -- fixed GF(4) examples ---------------------------------------------------------

def _gf4_vs():
    ctx = FieldCtx(2)
    v1, v2 = Poly.gens(ctx, ("v1", "v2"))
    return ctx, v1, v2


def example1_verify() -> Report:
    ctx, v1, v2 = _gf4_vs()
    f = v1 * v2 * (v1 ** 2 * v2 + v1 * v2 ** 2 + 1)
    rhs = ((v1 + v2) ** 3 + 1) * v2 ** 2 + (v2 ** 4 + v2) * (v1 + v2)
    if f != rhs:
        raise CheckFailed("identity fails", {"f": str(f), "rhs": str(rhs)})
    zeros = sorted((a, b) for a, b in product(range(4), repeat=2) if not f.evaluate([a, b]))
    off_diagonal = sorted((a, b) for a, b in product(range(4), repeat=2) if a != b)
    expected = sorted(off_diagonal + [(0, 0)])
    if zeros != expected:
        raise CheckFailed("vanishing locus differs", {"zeros": zeros})
    nonzero_pairs = [(a, b) for a, b in zeros if a and b]
    witness = {
        "identity": str(rhs),
        "zeros": [list(z) for z in zeros],
        "f(1,1)": f.evaluate([1, 1]).value,
        "zeros_on_nonzero_pairs_are_exactly_v1_ne_v2":
            nonzero_pairs == [(a, b) for a, b in off_diagonal if a and b],
    }
    return Report("example1", PASS, witness)


def claim11_polys():
    """g_1, g_2 of the s=2 closed form, as F_2 polynomials in (v1, v2)."""
    v1, v2 = Poly.gens(F2, ("v1", "v2"))
    g1 = v1 * v2 * (v1 * v2 + v1 ** 2 + v2 ** 2)
    g2 = v1 * v2 * (v1 ** 2 * v2 + v1 * v2 ** 2 + 1)
    return g1, g2


def claim11_verify() -> Report:
    from .fv import build_fv_concrete, build_fv_symbolic
    from .instance import Requests

    ctx = FieldCtx(2)
    fsym = build_fv_symbolic(ctx, prefix_all=True)
    g1, g2 = claim11_polys()
    names = fsym.vars
    v1, v2, x1, x2 = Poly.gens(F2, names)
    lift = lambda p: p.with_vars(names)
    closed = lift(g1) * (x1 + x2) ** 2 + lift(g2) * (x1 + x2)
    if fsym != closed:
        raise CheckFailed("closed form differs from reduced f_v",
                          {"f": str(fsym), "closed": str(closed)})
    table = []
    for a, b in product(range(1, 4), repeat=2):
        zero = build_fv_concrete(Requests(ctx, (a, b))).is_zero()
        if zero != (a != b):
            raise CheckFailed("f_v = 0 does not match v1 != v2", {"v": [a, b]})
        table.append({"v": [a, b], "fv_zero": zero})
    return Report("claim11", PASS, {"closed_form": str(closed), "pairs": table})
