"""The s = 3 coefficient of x1^6 x2^6 x3^4 and its two-stage decomposition.

Compares the v1-only prefix with the full v1 v2 v3 v4 prefix.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from batchpair.field import FieldCtx
from batchpair.fv import build_fv_symbolic, coeff_table, fv_monomial_multiplicity
from batchpair.nullsatz import corollary10_classify, lemma12_decompose


@dataclass
class CoeffConfig:
    target: tuple[int, ...] = (6, 6, 4, 0)
    special: tuple[int, ...] = (7, 0, 0, 2)


def run(cfg: CoeffConfig) -> None:
    ctx = FieldCtx(3)
    for prefix_all in (False, True):
        label = "v1 v2 v3 v4" if prefix_all else "v1 only"
        g = coeff_table(build_fv_symbolic(ctx, prefix_all=prefix_all))[cfg.target]
        omitted = () if prefix_all else ("v2", "v3", "v4")
        r = lemma12_decompose(g, ctx, omitted_prefix=omitted)
        cor = corollary10_classify([r], ctx).witness
        print(f"prefix {label}:")
        print(f"  g has {len(g)} terms, degree {g.degree()}")
        if not prefix_all:
            mult = fv_monomial_multiplicity(4, cfg.special, cfg.target, prefix_all=False)
            print(f"  v^{list(cfg.special)} present: {g.terms.get(cfg.special) == 1}, "
                  f"integer multiplicity {mult}")
            print(f"  stage-1 residual: {len(r.residual)} terms, killed by v2 v3 v4")
        print(f"  h1 = {r.h1}  (degree {r.h1.degree()})")
        print(f"  cond1={cor['cond1']} cond2={cor['cond2']} cond3={cor['cond3']}")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--target", default="6,6,4,0")
    a = p.parse_args()
    run(CoeffConfig(target=tuple(int(x) for x in a.target.split(","))))


if __name__ == "__main__":
    main()
