"""Sparse multivariate polynomials over a :class:`FieldCtx`.

A polynomial maps exponent tuples (one entry per variable, in the order of
``vars``) to nonzero coefficient values.  Polynomials flagged ``reduced``
live in the quotient ring F_q[x_1..x_n] / <x_i^q + x_i>: every exponent is at
most q - 1 and products are reduced eagerly.
"""
from __future__ import annotations

import os
from collections import defaultdict
from contextlib import contextmanager
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    ArityMismatch,
    ContextMismatch,
    TermCapExceeded,
    UnknownVariable,
    VarSetMismatch,
)
from .field import Elem, FieldCtx

DEFAULT_TERM_CAP = 1 << 24
_term_cap = int(os.environ.get("BATCHPAIR_TERM_CAP", DEFAULT_TERM_CAP))

F2 = FieldCtx(1)


def get_term_cap() -> int:
    return _term_cap


def set_term_cap(cap: int) -> None:
    global _term_cap
    _term_cap = int(cap)


@contextmanager
def term_cap(cap: int):
    old = get_term_cap()
    set_term_cap(cap)
    try:
        yield
    finally:
        set_term_cap(old)


def check_cap(count: int) -> None:
    if count > _term_cap:
        raise TermCapExceeded(count, _term_cap)


def reduce_exponent(e: int, q: int) -> int:
    """Representative of x^e modulo x^q - x (exponent at most q - 1)."""
    if e < q:
        return e
    return (e - 1) % (q - 1) + 1


def _coerce_value(c) -> int:
    return c.value if isinstance(c, Elem) else int(c)


class Poly:
    __slots__ = ("ctx", "vars", "terms", "reduced")

    def __init__(self, ctx: FieldCtx, vars: Sequence[str],
                 terms: Mapping[tuple, int] | None = None, reduced: bool = False):
        self.ctx = ctx
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        clean = {}
        n = len(self.vars)
        for e, c in (terms or {}).items():
            c = _coerce_value(c)
            if len(e) != n:
                raise ArityMismatch(f"exponent {e} for {n} variables")
            if c:
                if not 0 < c < ctx.q:
                    raise ValueError(f"coefficient {c} outside GF({ctx.q})")
                clean[tuple(e)] = c
        self.terms = clean
        self.reduced = reduced
        if reduced:
            q = ctx.q
            if any(x >= q for e in clean for x in e):
                raise ValueError("reduced polynomial with exponent >= q")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ctx, vars, reduced=False):
        return cls(ctx, vars, {}, reduced)

    @classmethod
    def const(cls, ctx, vars, c, reduced=False):
        return cls(ctx, vars, {(0,) * len(vars): c}, reduced)

    @classmethod
    def monomial(cls, ctx, vars, exps: Mapping[str, int] | Sequence[int], c=1,
                 reduced=False):
        vars = tuple(vars)
        if isinstance(exps, Mapping):
            e = [0] * len(vars)
            for name, x in exps.items():
                e[_index(vars, name)] = x
            exps = e
        return cls(ctx, vars, {tuple(exps): c}, reduced)

    @classmethod
    def var(cls, ctx, vars, name, reduced=False):
        return cls.monomial(ctx, vars, {name: 1}, 1, reduced)

    @classmethod
    def gens(cls, ctx, vars, reduced=False) -> list[Poly]:
        return [cls.var(ctx, vars, v, reduced) for v in vars]

    # -- basic protocol -----------------------------------------------------

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> list[tuple[tuple, int]]:
        """Terms in descending lexicographic order of exponent vectors."""
        return sorted(self.terms.items(), reverse=True)

    def coeff(self, exps: Sequence[int]) -> Elem:
        return Elem(self.terms.get(tuple(exps), 0), self.ctx)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == Poly.const(self.ctx, self.vars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.ctx == other.ctx and self.vars == other.vars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ctx, self.vars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.items():
            factors = [f"{v}^{x}" if x > 1 else v for v, x in zip(self.vars, e) if x]
            if c != 1 or not factors:
                factors.insert(0, str(c))
            out.append("*".join(factors))
        return " + ".join(out)

    def _compatible(self, other) -> Poly:
        if isinstance(other, (int, Elem)):
            return Poly.const(self.ctx, self.vars, _coerce_value(other), self.reduced)
        if not isinstance(other, Poly):
            return NotImplemented
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
        if other.vars != self.vars:
            raise VarSetMismatch(f"{self.vars} vs {other.vars}")
        return other

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = self._compatible(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) ^ c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ctx, self.vars, out, self.reduced and other.reduced)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._compatible(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other, quotient=self.reduced and other.reduced)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(self.ctx, self.vars, 1, self.reduced)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> Poly:
        c = _coerce_value(c)
        mul = self.ctx.mul
        return Poly(self.ctx, self.vars,
                    {e: mul(x, c) for e, x in self.terms.items()}, self.reduced)

    # -- degrees --------------------------------------------------------------

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def deg_var(self, var: str) -> int:
        i = _index(self.vars, var)
        return max((e[i] for e in self.terms), default=-1)

    def depends_on(self, var: str) -> bool:
        return self.deg_var(var) > 0

    def support_vars(self) -> list[str]:
        return [v for v in self.vars if self.depends_on(v)]

    # -- conversions ------------------------------------------------------------

    def with_vars(self, vars: Sequence[str]) -> Poly:
        """Re-express over another variable list containing every used variable."""
        vars = tuple(vars)
        pos = []
        for i, v in enumerate(self.vars):
            if v in vars:
                pos.append(vars.index(v))
            elif self.deg_var(v) > 0:
                raise UnknownVariable(f"{v} is used but missing from {vars}")
            else:
                pos.append(None)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for i, x in enumerate(e):
                if pos[i] is not None:
                    ne[pos[i]] = x
            out[tuple(ne)] = c
        return Poly(self.ctx, vars, out, self.reduced)

    def embed(self, ctx: FieldCtx) -> Poly:
        """Move an F_2-coefficient polynomial into a larger coefficient field."""
        if ctx == self.ctx:
            return self
        if self.ctx.s != 1:
            raise ContextMismatch("only F_2 coefficients embed into GF(2^s)")
        return Poly(ctx, self.vars, self.terms, False)

    def to_json(self) -> dict:
        return {
            "ctx": self.ctx.to_json(),
            "vars": list(self.vars),
            "terms": [{"e": list(e), "c": c} for e, c in self.items()],
            "reduced": self.reduced,
        }

    @classmethod
    def from_json(cls, d: dict) -> Poly:
        ctx = FieldCtx.from_json(d["ctx"])
        terms = {}
        for t in d["terms"]:
            e = tuple(int(x) for x in t["e"])
            if e in terms:
                raise ValueError(f"duplicate exponent {e}")
            terms[e] = int(t["c"])
        return cls(ctx, d["vars"], terms, bool(d.get("reduced", False)))

    # -- method forms of the module functions -----------------------------------

    def reduce_quotient(self, q=None, only=None):
        return reduce_quotient(self, q, only)

    def evaluate(self, point):
        return evaluate(self, point)

    def coeff_extract(self, fixed):
        return coeff_extract(self, fixed)

    def substitute(self, var, replacement):
        return substitute(self, var, replacement)

    def specialize(self, values, ctx=None):
        return specialize(self, values, ctx)


def _index(vars: Sequence[str], name: str) -> int:
    try:
        return vars.index(name)
    except ValueError:
        raise UnknownVariable(f"{name!r} not in {tuple(vars)}") from None


def poly_add(p: Poly, r: Poly) -> Poly:
    return p + r


def poly_mul(p: Poly, r: Poly, quotient: bool = False) -> Poly:
    """Exact product; with ``quotient`` set every exponent is folded into [0, q-1]."""
    r = p._compatible(r)
    q = p.ctx.q
    mul = p.ctx.mul
    out: dict[tuple, int] = {}
    # iterate the smaller factor in the inner loop
    a, b = (p, r) if len(p) >= len(r) else (r, p)
    b_items = list(b.terms.items())
    for ea, ca in a.terms.items():
        for eb, cb in b_items:
            if quotient:
                e = tuple(reduce_exponent(x + y, q) for x, y in zip(ea, eb))
            else:
                e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) ^ mul(ca, cb)
            if v:
                out[e] = v
            else:
                del out[e]
        check_cap(len(out))
    return Poly(p.ctx, p.vars, out, quotient)


def reduce_quotient(p: Poly, q: int | None = None, only: Iterable[str] | None = None) -> Poly:
    """Fold exponents using x^q = x.

    ``q`` defaults to the coefficient field's size.  ``only`` restricts the
    fold to some variables (used for symbolic polynomials whose coefficient
    field is F_2 but whose variables range over a larger field); the result is
    flagged reduced only when the fold covered every variable at the
    coefficient field's own q.
    """
    qq = p.ctx.q if q is None else q
    idx = range(len(p.vars)) if only is None else [_index(p.vars, v) for v in only]
    idx = set(idx)
    out: dict[tuple, int] = {}
    for e, c in p.terms.items():
        ne = tuple(reduce_exponent(x, qq) if i in idx else x for i, x in enumerate(e))
        v = out.get(ne, 0) ^ c
        if v:
            out[ne] = v
        else:
            del out[ne]
    full = qq == p.ctx.q and len(idx) == len(p.vars)
    return Poly(p.ctx, p.vars, out, full)


def _point_values(p: Poly, point) -> list[int]:
    if len(point) != len(p.vars):
        raise ArityMismatch(f"{len(point)} values for {len(p.vars)} variables")
    vals = []
    for x in point:
        if isinstance(x, Elem):
            if x.ctx != p.ctx and p.ctx.s != 1:
                raise ContextMismatch(f"{x.ctx} vs {p.ctx}")
            vals.append(x.value)
        else:
            vals.append(int(x))
    return vals


def evaluate(p: Poly, point: Sequence, ctx: FieldCtx | None = None) -> Elem:
    """Value of ``p`` at ``point``.

    F_2-coefficient polynomials may be evaluated at points of any GF(2^s):
    pass Elems (their context is used) or integers plus ``ctx``.
    """
    if ctx is None:
        ctxs = {x.ctx for x in point if isinstance(x, Elem)}
        if len(ctxs) > 1:
            raise ContextMismatch("point mixes field contexts")
        ctx = ctxs.pop() if ctxs else p.ctx
    if ctx != p.ctx and p.ctx.s != 1:
        raise ContextMismatch(f"{ctx} vs {p.ctx}")
    vals = _point_values(p, point)
    pw = ctx.pow
    mul = ctx.mul
    total = 0
    for e, c in p.terms.items():
        t = c
        for x, k in zip(vals, e):
            if k:
                t = mul(t, pw(x, k))
                if not t:
                    break
        total ^= t
    return Elem(total, ctx)


def specialize(p: Poly, values: Mapping[str, int | Elem], ctx: FieldCtx | None = None) -> Poly:
    """Substitute field values for some variables; the rest stay symbolic.

    The result keeps the full variable list (substituted variables get
    exponent 0) and lives over ``ctx`` (default: ``p.ctx``).
    """
    ctx = ctx or p.ctx
    if ctx != p.ctx and p.ctx.s != 1:
        raise ContextMismatch(f"{ctx} vs {p.ctx}")
    idx = {_index(p.vars, v): _coerce_value(x) for v, x in values.items()}
    pw, mul = ctx.pow, ctx.mul
    out: dict[tuple, int] = {}
    for e, c in p.terms.items():
        t = c
        ne = list(e)
        for i, x in idx.items():
            if e[i]:
                t = mul(t, pw(x, e[i]))
            ne[i] = 0
        if t:
            ne = tuple(ne)
            v = out.get(ne, 0) ^ t
            if v:
                out[ne] = v
            else:
                del out[ne]
    return Poly(ctx, p.vars, out, p.reduced and ctx == p.ctx)


def coeff_extract(p: Poly, fixed: Mapping[str, int]) -> Poly:
    """Coefficient of the monomial ``fixed`` as a polynomial in the other variables."""
    idx = {_index(p.vars, v): x for v, x in fixed.items()}
    rest = [i for i in range(len(p.vars)) if i not in idx]
    out = {}
    for e, c in p.terms.items():
        if all(e[i] == x for i, x in idx.items()):
            out[tuple(e[i] for i in rest)] = c
    return Poly(p.ctx, [p.vars[i] for i in rest], out, p.reduced)


def deg_var(p: Poly, var: str) -> int:
    return p.deg_var(var)


def substitute(p: Poly, var: str, replacement: Poly) -> Poly:
    """Compose ``p`` with ``var := replacement``."""
    replacement = p._compatible(replacement)
    i = _index(p.vars, var)
    groups: dict[int, dict] = defaultdict(dict)
    for e, c in p.terms.items():
        groups[e[i]][e[:i] + (0,) + e[i + 1:]] = c
    quotient = p.reduced and replacement.reduced
    result = Poly.zero(p.ctx, p.vars, quotient)
    power = Poly.const(p.ctx, p.vars, 1, quotient)
    k = 0
    for exp in sorted(groups):
        while k < exp:
            power = poly_mul(power, replacement, quotient)
            k += 1
        result = result + poly_mul(Poly(p.ctx, p.vars, groups[exp], quotient), power, quotient)
    return Poly(p.ctx, p.vars, result.terms, p.reduced and replacement.reduced)


def random_poly(ctx: FieldCtx, vars: Sequence[str], nterms: int, max_exp: int, rng) -> Poly:
    """Up to ``nterms`` random terms with every exponent in [0, max_exp]."""
    terms: dict[tuple[int, ...], int] = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, max_exp) for _ in vars)
        c = rng.randrange(1, ctx.q)
        v = terms.get(e, 0) ^ c
        if v:
            terms[e] = v
        else:
            terms.pop(e, None)
    return Poly(ctx, vars, terms)


# -- dense form -------------------------------------------------------------
#
# A reduced polynomial in n variables over GF(q) is also an n-dimensional
# array of coefficients indexed by exponents in [0, q-1].  Only used where
# q**n is small (at most 2**16 entries).

DENSE_LIMIT = 1 << 16


def dense_ok(ctx: FieldCtx, nvars: int) -> bool:
    return ctx.q ** nvars <= DENSE_LIMIT


def to_dense(p: Poly) -> np.ndarray:
    if not p.reduced:
        p = reduce_quotient(p)
    a = np.zeros((p.ctx.q,) * len(p.vars), dtype=np.int64)
    for e, c in p.terms.items():
        a[e] = c
    return a


def from_dense(ctx: FieldCtx, vars: Sequence[str], a: np.ndarray) -> Poly:
    idx = np.nonzero(a)
    terms = {tuple(int(x) for x in e): int(a[e]) for e in zip(*idx)}
    return Poly(ctx, vars, terms, reduced=True)


def dense_mul_var(a: np.ndarray, axis: int) -> np.ndarray:
    """Multiply a dense reduced polynomial by one variable (x * x^(q-1) = x)."""
    a = np.moveaxis(a, axis, 0)
    out = np.zeros_like(a)
    out[1:] = a[:-1]
    out[1] ^= a[-1]
    return np.moveaxis(out, 0, axis)


def evaluate_grid(p: Poly, ctx: FieldCtx | None = None) -> np.ndarray:
    """Values of ``p`` at every point of GF(q)^n, as an array indexed by the point."""
    ctx = ctx or p.ctx
    if ctx != p.ctx and p.ctx.s != 1:
        raise ContextMismatch(f"{ctx} vs {p.ctx}")
    if not dense_ok(ctx, len(p.vars)):
        raise ValueError("grid too large for dense evaluation")
    a = to_dense(reduce_quotient(p.embed(ctx) if ctx != p.ctx else p))
    mt, pt = ctx.mul_table, ctx.pow_table
    q = ctx.q
    for axis in range(a.ndim):
        a = np.moveaxis(a, axis, 0)
        out = np.empty_like(a)
        for x in range(q):
            w = pt[x].reshape((q,) + (1,) * (a.ndim - 1))
            out[x] = np.bitwise_xor.reduce(mt[a, w], axis=0)
        a = np.moveaxis(out, 0, axis)
    return a
