"""Exhaustive (and optionally sampled) pairing sweeps with timings.

    python3 scripts/run_sweeps.py --max-s 4 --sample-s5 100 --workers 4
"""
from __future__ import annotations

import argparse
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from batchpair.field import FieldCtx
from batchpair.pairing import SweepOptions, sweep
from batchpair.reports import dumps


@dataclass
class SweepConfig:
    max_s: int = 4
    canonical: str = "sorted"
    sample_s5: int = 0
    seed: int = 0
    workers: int = 1
    out: str = "results/sweeps.json"


def run(cfg: SweepConfig) -> dict:
    rows = []
    for s in range(2, cfg.max_s + 1):
        t0 = time.perf_counter()
        r = sweep(FieldCtx(s), SweepOptions(canonical=cfg.canonical, workers=cfg.workers))
        rows.append(r.to_json() | {"seconds": round(time.perf_counter() - t0, 2)})
        print(f"s={s}: {r.instance_count} instances, {len(r.counterexamples)} counterexamples, "
              f"{rows[-1]['seconds']} s")
    if cfg.sample_s5:
        t0 = time.perf_counter()
        r = sweep(FieldCtx(5), SweepOptions(sample=cfg.sample_s5, seed=cfg.seed, workers=cfg.workers))
        rows.append(r.to_json() | {"seconds": round(time.perf_counter() - t0, 2)})
        print(f"s=5 sample: {r.instance_count} instances, {len(r.counterexamples)} counterexamples, "
              f"{rows[-1]['seconds']} s")
    return {"config": asdict(cfg), "sweeps": rows}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(SweepConfig()).items():
        p.add_argument("--" + name.replace("_", "-"), type=type(default), default=default)
    cfg = SweepConfig(**vars(p.parse_args()))
    out = Path(cfg.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(dumps(run(cfg)))
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
