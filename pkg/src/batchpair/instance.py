"""Request multisets v = (v_1..v_k) and the instance file format."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce
from operator import xor
from pathlib import Path
from typing import Sequence

from .errors import ZeroRequest
from .field import Elem, FieldCtx


@dataclass(frozen=True)
class Requests:
    """Ordered multiset of nonzero field elements, stored as integer values."""

    ctx: FieldCtx
    values: tuple[int, ...]

    def __init__(self, ctx: FieldCtx, values: Sequence[int | Elem]):
        vals = tuple(v.value if isinstance(v, Elem) else int(v) for v in values)
        for v in vals:
            if not 0 <= v < ctx.q:
                raise ValueError(f"request {v} outside GF({ctx.q})")
            if v == 0:
                raise ZeroRequest(f"zero request in {vals}")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "values", vals)

    @property
    def k(self) -> int:
        return len(self.values)

    @property
    def total(self) -> int:
        return reduce(xor, self.values, 0)

    @property
    def sum_zero(self) -> bool:
        return self.total == 0

    def elems(self) -> list[Elem]:
        return [Elem(v, self.ctx) for v in self.values]

    def sorted(self) -> Requests:
        return Requests(self.ctx, sorted(self.values))

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def to_json(self) -> dict:
        return {"s": self.ctx.s, "modulus": self.ctx.modulus, "requests": list(self.values)}

    @classmethod
    def from_json(cls, d: dict) -> Requests:
        ctx = FieldCtx(int(d["s"]), int(d["modulus"]) if "modulus" in d else None)
        return cls(ctx, [int(x) for x in d["requests"]])

    @classmethod
    def load(cls, path: str | Path) -> Requests:
        return cls.from_json(json.loads(Path(path).read_text()))
