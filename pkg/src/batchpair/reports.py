"""Check reports and deterministic JSON output."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, PARTIAL = "pass", "fail", "partial"


@dataclass
class Report:
    check: str
    status: str
    witness: Any = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        d = {"check": self.check, "status": self.status, "witness": self.witness}
        if self.notes:
            d["notes"] = list(self.notes)
        return d


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, default=_default) + "\n"


def _default(o):
    if hasattr(o, "to_json"):
        return o.to_json()
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")
