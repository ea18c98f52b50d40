"""Run configuration shared by every CLI subcommand."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from .errors import BatchPairError

COMMANDS = ("solve", "sweep", "coeff", "decompose", "verify-code", "paper-suite",
            "verify-certificate")


class ConfigError(BatchPairError):
    pass


@dataclass
class RunConfig:
    command: str
    s: Optional[int] = None
    modulus: Optional[int] = None
    input: Optional[str] = None
    output: Optional[str] = None
    canonical: str = "sorted"
    term_cap: Optional[int] = None
    workers: int = 1
    sample: Optional[int] = None
    seed: int = 0
    keep_going: bool = False
    target: Optional[tuple[int, ...]] = None
    prefix: str = "all"

    def validate(self) -> RunConfig:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.canonical not in ("sorted", "linear"):
            raise ConfigError(f"--canonical must be sorted or linear, not {self.canonical!r}")
        if self.prefix not in ("all", "v1"):
            raise ConfigError(f"--prefix must be all or v1, not {self.prefix!r}")
        if self.workers < 1:
            raise ConfigError("--workers must be >= 1")
        if self.term_cap is not None and self.term_cap < 1:
            raise ConfigError("--term-cap must be >= 1")
        if self.sample is not None and self.sample < 1:
            raise ConfigError("--sample must be >= 1")
        if self.s is not None and not 1 <= self.s <= 8:
            raise ConfigError("--s must be in 1..8")
        if self.command in ("solve", "verify-code", "verify-certificate") and not self.input:
            raise ConfigError(f"{self.command} needs --in")
        if self.command in ("sweep", "coeff", "decompose") and self.s is None:
            raise ConfigError(f"{self.command} needs --s")
        return self

    def to_json(self) -> dict:
        """Everything that determines the report; the worker count and the
        output path do not, so they are left out."""
        d = asdict(self)
        del d["workers"], d["output"]
        if d["target"] is not None:
            d["target"] = list(d["target"])
        return d
