"""Labeled solution counts over every GL(s,2) orbit representative (s <= 4)."""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from batchpair.field import FieldCtx
from batchpair.pairing import count_solutions, enumerate_instances


@dataclass
class CountConfig:
    s: int = 3


def run(cfg: CountConfig) -> list[tuple[tuple[int, ...], int]]:
    ctx = FieldCtx(cfg.s)
    rows = [(v.values, count_solutions(v)) for v in enumerate_instances(ctx, "linear")]
    for values, n in sorted(rows, key=lambda r: r[1]):
        print(f"{list(values)}: {n}")
    print(f"{len(rows)} orbits, minimum count {min(n for _, n in rows)}")
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--s", type=int, default=3)
    run(CountConfig(p.parse_args().s))


if __name__ == "__main__":
    main()
