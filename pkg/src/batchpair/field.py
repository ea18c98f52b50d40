"""Arithmetic in GF(2^s) with elements stored as s-bit integers.

Bit i of an element is the coefficient of alpha^i, so field addition is XOR
and the F_2^s vector view of an element is its binary representation.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    ContextMismatch,
    DegreeMismatch,
    DivisionByZero,
    ReducibleModulus,
    UnsupportedSize,
)

MAX_S = 8

# bit i <-> alpha^i
DEFAULT_MODULI = {
    1: 0b11,           # alpha + 1, so alpha = 1 and GF(2) = {0, 1}
    2: 0b111,          # alpha^2 + alpha + 1
    3: 0b1011,         # alpha^3 + alpha + 1
    4: 0b10011,        # alpha^4 + alpha + 1
    5: 0b100101,       # alpha^5 + alpha^2 + 1
    6: 0b1000011,      # alpha^6 + alpha + 1
    7: 0b10000011,     # alpha^7 + alpha + 1
    8: 0b100011011,    # alpha^8 + alpha^4 + alpha^3 + alpha + 1
}


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit-polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def clmod(a: int, m: int) -> int:
    """Remainder of bit-polynomial ``a`` modulo ``m`` (m != 0)."""
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def is_irreducible(modulus: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2."""
    deg = modulus.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in range(1 << d):
            if clmod(modulus, (1 << d) | low) == 0:
                return False
    return True


class FieldCtx:
    """GF(2^s) defined by an explicit irreducible modulus.

    Integer-level methods (``add``, ``mul``, ...) are the fast path used by
    the search and polynomial code; :class:`Elem` wraps them for callers that
    want operator syntax and context checking.
    """

    def __init__(self, s: int, modulus: int | None = None):
        if not isinstance(s, int) or not 1 <= s <= MAX_S:
            raise UnsupportedSize(f"s={s} outside [1, {MAX_S}]")
        if modulus is None:
            modulus = DEFAULT_MODULI[s]
        if modulus.bit_length() - 1 != s:
            raise DegreeMismatch(
                f"modulus {modulus:#b} has degree {modulus.bit_length() - 1}, expected {s}")
        if not is_irreducible(modulus):
            raise ReducibleModulus(f"modulus {modulus:#b} factors over F_2")
        self.s = s
        self.modulus = modulus
        self.q = 1 << s

    def __repr__(self):
        return f"FieldCtx(s={self.s}, modulus={self.modulus:#b})"

    def __eq__(self, other):
        return (isinstance(other, FieldCtx)
                and self.s == other.s and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.s, self.modulus))

    def __reduce__(self):
        return (FieldCtx, (self.s, self.modulus))

    def to_json(self) -> dict:
        return {"s": self.s, "modulus": self.modulus}

    @classmethod
    def from_json(cls, d: dict) -> FieldCtx:
        return cls(int(d["s"]), int(d["modulus"]))

    # -- integer arithmetic ------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul_direct(self, a: int, b: int) -> int:
        r = 0
        top = self.q
        m = self.modulus
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= m
        return r

    @cached_property
    def mul_table(self) -> np.ndarray:
        """q x q product table; ``mul_table[a, b] == mul_direct(a, b)``."""
        q = self.q
        t = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                t[a, b] = t[b, a] = self.mul_direct(a, b)
        return t

    @cached_property
    def _mul_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(x) for x in row) for row in self.mul_table)

    def mul(self, a: int, b: int) -> int:
        return self._mul_rows[a][b]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent")
        r = 1
        rows = self._mul_rows
        while e:
            if e & 1:
                r = rows[r][a]
            a = rows[a][a]
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return self.pow(a, self.q - 2)

    @cached_property
    def inv_table(self) -> np.ndarray:
        t = np.zeros(self.q, dtype=np.int64)
        for a in range(1, self.q):
            t[a] = self.inv(a)
        return t

    @cached_property
    def pow_table(self) -> np.ndarray:
        """``pow_table[a, e] == a**e`` for 0 <= e < q (with 0**0 == 1)."""
        q = self.q
        t = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            x = 1
            for e in range(q):
                t[a, e] = x
                x = self.mul(x, a)
        return t

    # -- element construction ------------------------------------------------

    def __call__(self, value: int) -> Elem:
        return Elem(value, self)

    def elements(self) -> list[Elem]:
        return [Elem(a, self) for a in range(self.q)]

    @property
    def zero(self) -> Elem:
        return Elem(0, self)

    @property
    def one(self) -> Elem:
        return Elem(1, self)


def field_new(s: int, modulus: int | None = None) -> FieldCtx:
    return FieldCtx(s, modulus)


@dataclass(frozen=True)
class Elem:
    value: int
    ctx: FieldCtx

    def __post_init__(self):
        if not 0 <= self.value < self.ctx.q:
            raise ValueError(f"{self.value} not in [0, {self.ctx.q})")

    def _check(self, other: Elem):
        if not isinstance(other, Elem):
            return NotImplemented
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
        return None

    def __add__(self, other):
        if (bad := self._check(other)) is not None:
            return bad
        return Elem(self.value ^ other.value, self.ctx)

    __sub__ = __add__
    __radd__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        if (bad := self._check(other)) is not None:
            return bad
        return Elem(self.ctx.mul(self.value, other.value), self.ctx)

    def __pow__(self, e: int):
        return Elem(self.ctx.pow(self.value, e), self.ctx)

    def __truediv__(self, other):
        if (bad := self._check(other)) is not None:
            return bad
        return Elem(self.ctx.mul(self.value, self.ctx.inv(other.value)), self.ctx)

    def inverse(self) -> Elem:
        return Elem(self.ctx.inv(self.value), self.ctx)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Elem({self.value})"

    @property
    def weight(self) -> int:
        return bin(self.value).count("1")


def add(a: Elem, b: Elem) -> Elem:
    return a + b


def mul(a: Elem, b: Elem) -> Elem:
    return a * b


def power(a: Elem, e: int) -> Elem:
    return a ** e


def inv(a: Elem) -> Elem:
    return a.inverse()


def weight(a: Elem | int) -> int:
    """Hamming weight of the element's bit representation."""
    return bin(int(a)).count("1")
