"""Partition GF(q) into k = q/2 labeled pairs with prescribed differences.

An instance is a request multiset v with XOR-sum zero; a solution assigns to
each request index i a pair {a_i, b_i} with a_i + b_i = v_i such that the
pairs partition the field.
"""
from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from math import factorial, prod
from typing import Iterator, Sequence

from .errors import ArityMismatch, NotAllEqual, SumNonzero, UnsupportedSize
from .field import FieldCtx, weight
from .instance import Requests

SOLVE_MAX_S = 5
COUNT_MAX_S = 4
EXHAUSTIVE_MAX_S = 4
PROGRESS_EVERY = 1000


@dataclass(frozen=True)
class Pairing:
    pairs: tuple[tuple[int, int], ...]

    def __init__(self, pairs: Sequence[Sequence[int]]):
        object.__setattr__(self, "pairs", tuple((int(a), int(b)) for a, b in pairs))

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def to_json(self) -> dict:
        return {"pairs": [list(p) for p in self.pairs]}

    @classmethod
    def from_json(cls, d: dict) -> Pairing:
        return cls(d["pairs"])


def _validate(v: Requests) -> None:
    if 2 * v.k != v.ctx.q:
        raise ArityMismatch(f"k={v.k} but q/2={v.ctx.q // 2}")
    if not v.sum_zero:
        raise SumNonzero(f"requests {list(v.values)} sum to {v.total}, so no pairing exists")


def _label(v: Requests, unlabeled: list[tuple[int, int, int]]) -> Pairing:
    """Bind (a, b, w) triples to request indices holding w, lowest index first."""
    slots: dict[int, list[int]] = {}
    for i, w in enumerate(v.values):
        slots.setdefault(w, []).append(i)
    out = [None] * v.k
    for a, b, w in unlabeled:
        out[slots[w].pop(0)] = (a, b)
    return Pairing(out)


def solve(v: Requests) -> Pairing | None:
    """First pairing found by depth-first search, or None.

    The search always extends the smallest uncovered element e, which must be
    the smaller member of its pair, so only the request value is branched
    on; equal request values are tried once per depth.
    """
    _validate(v)
    q = v.ctx.q
    if v.ctx.s > SOLVE_MAX_S:
        raise UnsupportedSize(f"s={v.ctx.s}")
    distinct = sorted(set(v.values))
    mult = [v.values.count(w) for w in distinct]
    full = (1 << q) - 1
    dead: set[tuple[int, tuple[int, ...]]] = set()
    stack: list[tuple[int, int, int]] = []

    def rec(mask: int) -> bool:
        if mask == full:
            return True
        key = (mask, tuple(mult))
        if key in dead:
            return False
        e = (~mask & (mask + 1)).bit_length() - 1
        for idx, w in enumerate(distinct):
            if not mult[idx]:
                continue
            p = e ^ w
            if mask >> p & 1:
                continue
            mult[idx] -= 1
            stack.append((e, p, w))
            if rec(mask | (1 << e) | (1 << p)):
                return True
            stack.pop()
            mult[idx] += 1
        dead.add(key)
        return False

    if not rec(0):
        return None
    return _label(v, stack)


def verify_solution(v: Requests, p: Pairing) -> bool:
    """Independent check of a pairing against the requests."""
    if len(p) != v.k:
        raise ArityMismatch(f"{len(p)} pairs for {v.k} requests")
    seen = set()
    for (a, b), w in zip(p.pairs, v.values):
        if not (0 <= a < v.ctx.q and 0 <= b < v.ctx.q):
            return False
        if a ^ b != w:
            return False
        seen.update((a, b))
    return len(seen) == 2 * v.k == v.ctx.q


def count_solutions(v: Requests) -> int:
    """Number of labeled solutions (equal values at distinct indices counted separately)."""
    _validate(v)
    if v.ctx.s > COUNT_MAX_S:
        raise UnsupportedSize(f"s={v.ctx.s} > {COUNT_MAX_S}")
    q = v.ctx.q
    c = Counter(v.values)
    distinct = sorted(c)
    full = (1 << q) - 1

    @lru_cache(maxsize=None)
    def rec(mask: int, mult: tuple[int, ...]) -> int:
        if mask == full:
            return 1
        e = (~mask & (mask + 1)).bit_length() - 1
        total = 0
        for idx, w in enumerate(distinct):
            if not mult[idx]:
                continue
            p = e ^ w
            if mask >> p & 1:
                continue
            m = list(mult)
            m[idx] -= 1
            total += rec(mask | (1 << e) | (1 << p), tuple(m))
        return total

    unlabeled = rec(0, tuple(c[w] for w in distinct))
    return unlabeled * prod(factorial(c[w]) for w in distinct)


def solve_all_equal(v: Requests) -> Pairing:
    """The forced solution when every request is the same w: cosets of {0, w}."""
    if len(set(v.values)) != 1:
        raise NotAllEqual(list(v.values))
    if 2 * v.k != v.ctx.q:
        raise ArityMismatch(f"k={v.k} but q/2={v.ctx.q // 2}")
    w = v.values[0]
    pairs, used = [], set()
    for a in range(v.ctx.q):
        if a not in used:
            pairs.append((a, a ^ w))
            used.update((a, a ^ w))
    return Pairing(pairs)


def is_all_equal(v: Requests) -> bool:
    return len(set(v.values)) == 1


def is_all_odd_weight(v: Requests) -> bool:
    return all(weight(x) % 2 for x in v.values)


# -- GL(s, 2) ---------------------------------------------------------------

@lru_cache(maxsize=None)
def gl_maps(s: int) -> tuple[tuple[int, ...], ...]:
    """Every invertible linear map of F_2^s, as a lookup table of length 2^s."""
    q = 1 << s
    maps = []

    def extend(cols: list[int], span: set[int]):
        if len(cols) == s:
            table = [0] * q
            for x in range(1, q):
                low = x & -x
                table[x] = table[x ^ low] ^ cols[low.bit_length() - 1]
            maps.append(tuple(table))
            return
        for c in range(1, q):
            if c not in span:
                extend(cols + [c], span | {x ^ c for x in span})

    extend([], {0})
    return tuple(maps)


def apply_map(table: Sequence[int], v: Requests) -> Requests:
    return Requests(v.ctx, [table[x] for x in v.values])


def canonical_form(v: Requests) -> tuple[int, ...]:
    """Lex-least sorted image of v under GL(s, 2)."""
    return min(tuple(sorted(t[x] for x in v.values)) for t in gl_maps(v.ctx.s))


# -- instance enumeration ---------------------------------------------------

def _sum_zero_multisets(q: int, k: int) -> Iterator[tuple[int, ...]]:
    """Non-decreasing k-tuples of nonzero values with XOR zero, in lex order."""
    for head in combinations_with_replacement(range(1, q), k - 1):
        last = 0
        for x in head:
            last ^= x
        if last and last >= head[-1]:
            yield head + (last,)


def enumerate_instances(ctx: FieldCtx, canonicalize: str = "sorted") -> Iterator[Requests]:
    if ctx.s > SOLVE_MAX_S:
        raise UnsupportedSize(f"s={ctx.s}")
    if canonicalize not in ("sorted", "linear"):
        raise ValueError(f"unknown canonicalization {canonicalize!r}")
    q, k = ctx.q, ctx.q // 2
    if k == 1:
        return
    if canonicalize == "sorted":
        for t in _sum_zero_multisets(q, k):
            yield Requests(ctx, t)
        return
    # lex order means the first member met of each orbit is its lex-least one
    seen: set[tuple[int, ...]] = set()
    maps = gl_maps(ctx.s)
    for t in _sum_zero_multisets(q, k):
        if t in seen:
            continue
        seen.update(tuple(sorted(m[x] for x in t)) for m in maps)
        yield Requests(ctx, t)


def sample_instances(ctx: FieldCtx, n: int, seed: int) -> list[Requests]:
    """``n`` uniform random sum-zero multisets (stars-and-bars with rejection)."""
    q, k = ctx.q, ctx.q // 2
    rng = random.Random(seed)
    out = []
    slots = q - 1 + k - 1
    while len(out) < n:
        bars = sorted(rng.sample(range(slots), k))
        vals = tuple(1 + b - i for i, b in enumerate(bars))
        x = 0
        for w in vals:
            x ^= w
        if x == 0:
            out.append(Requests(ctx, vals))
    return out


def sample_nonzero_sum(ctx: FieldCtx, n: int, seed: int, k: int | None = None) -> list[Requests]:
    """``n`` seeded random k-multisets of nonzero requests whose sum is not zero."""
    k = k or ctx.q // 2
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        vals = tuple(sorted(rng.randrange(1, ctx.q) for _ in range(k)))
        v = Requests(ctx, vals)
        if not v.sum_zero:
            out.append(v)
    return out


# -- sweeps -------------------------------------------------------------------

@dataclass
class SweepOptions:
    canonical: str = "sorted"
    count: bool = False
    keep_going: bool = True
    sample: int | None = None
    seed: int = 0
    workers: int = 1


@dataclass
class SweepReport:
    s: int
    modulus: int
    mode: str
    canonical: str
    instance_count: int = 0
    solved_count: int = 0
    counterexamples: list[list[int]] = field(default_factory=list)
    solution_counts: list[list] | None = None
    seed: int | None = None
    stopped_early: bool = False
    wall_time: float | None = None

    @property
    def verified(self) -> bool:
        return not self.counterexamples and not self.stopped_early

    def to_json(self, timing: bool = False) -> dict:
        d = {
            "s": self.s,
            "modulus": self.modulus,
            "mode": self.mode,
            "canonical": self.canonical,
            "instance_count": self.instance_count,
            "solved_count": self.solved_count,
            "counterexamples": self.counterexamples,
            "verified": self.verified,
        }
        if self.solution_counts is not None:
            d["solution_counts"] = self.solution_counts
        if self.seed is not None:
            d["seed"] = self.seed
        if self.stopped_early:
            d["stopped_early"] = True
        if timing:
            d["wall_time"] = self.wall_time
        return d


def _check_one(args) -> tuple[tuple[int, ...], bool, int | None]:
    s, modulus, values, want_count = args
    v = Requests(FieldCtx(s, modulus), values)
    sol = solve(v)
    ok = sol is not None and verify_solution(v, sol)
    n = count_solutions(v) if want_count else None
    return values, ok, n


def sweep(ctx: FieldCtx, options: SweepOptions | None = None, progress=None) -> SweepReport:
    """Solve and verify every instance; ``progress(done, solved)`` is called every
    ``PROGRESS_EVERY`` instances and once at the end."""
    opts = options or SweepOptions()
    t0 = time.perf_counter()
    if opts.sample is not None:
        if ctx.s > SOLVE_MAX_S:
            raise UnsupportedSize(f"s={ctx.s} > {SOLVE_MAX_S}")
        instances = sample_instances(ctx, opts.sample, opts.seed)
        mode = f"sample({opts.sample})"
    else:
        if ctx.s > EXHAUSTIVE_MAX_S:
            raise UnsupportedSize(f"exhaustive sweep capped at s <= {EXHAUSTIVE_MAX_S}; use sample mode")
        instances = enumerate_instances(ctx, opts.canonical)
        mode = "exhaustive"
    if opts.count and ctx.s > COUNT_MAX_S:
        raise UnsupportedSize(f"solution counting capped at s <= {COUNT_MAX_S}")
    report = SweepReport(ctx.s, ctx.modulus, mode, opts.canonical,
                         seed=opts.seed if opts.sample is not None else None)
    jobs = ((ctx.s, ctx.modulus, v.values, opts.count) for v in instances)
    counts = [] if opts.count else None
    for values, ok, n in _run(jobs, opts.workers):
        report.instance_count += 1
        if ok:
            report.solved_count += 1
        else:
            report.counterexamples.append(list(values))
        if counts is not None:
            counts.append([list(values), n])
        if progress is not None and report.instance_count % PROGRESS_EVERY == 0:
            progress(report.instance_count, report.solved_count)
        if not ok and not opts.keep_going:
            report.stopped_early = True
            break
    if progress is not None:
        progress(report.instance_count, report.solved_count)
    report.counterexamples.sort()
    if counts is not None:
        report.solution_counts = sorted(counts)
    report.wall_time = time.perf_counter() - t0
    return report


def _run(jobs, workers: int):
    """Map ``_check_one`` over jobs, preserving input order."""
    if workers <= 1:
        yield from map(_check_one, jobs)
        return
    from multiprocessing import Pool

    with Pool(workers) as pool:
        yield from pool.imap(_check_one, jobs, chunksize=256)
