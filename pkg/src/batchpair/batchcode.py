"""Functional batch codes over F_2^s = GF(q).

Servers store field elements (coefficient vectors of the information bits);
a request v_i is served by any set of servers whose values XOR to v_i, and
a multiset of k requests needs k pairwise disjoint such sets.  Server
indices are 0-based throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence

from .errors import (
    CheckFailed, ResourceCap, TooManyServers, UnsupportedSize, ZeroRequest,
)
from .field import Elem, FieldCtx
from .instance import Requests
from .pairing import Pairing, enumerate_instances, solve, verify_solution
from .reports import FAIL, PASS, Report

MAX_SERVERS = 16
MAX_MULTISETS = 10 ** 6
SIMPLEX_MAX_S = 4


@dataclass(frozen=True)
class ServerSet:
    ctx: FieldCtx
    servers: tuple[int, ...]

    def __init__(self, ctx: FieldCtx, servers: Sequence[int | Elem]):
        vals = tuple(x.value if isinstance(x, Elem) else int(x) for x in servers)
        if not vals:
            raise ValueError("a server set needs at least one server")
        for x in vals:
            if not 0 <= x < ctx.q:
                raise ValueError(f"server value {x} outside GF({ctx.q})")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "servers", vals)

    def __len__(self):
        return len(self.servers)

    @classmethod
    def simplex(cls, ctx: FieldCtx) -> ServerSet:
        """All nonzero vectors; server i holds the value i + 1."""
        return cls(ctx, range(1, ctx.q))

    def to_json(self) -> dict:
        return {"s": self.ctx.s, "modulus": self.ctx.modulus, "servers": list(self.servers)}

    @classmethod
    def from_json(cls, d: dict) -> ServerSet:
        ctx = FieldCtx(int(d["s"]), int(d["modulus"]) if "modulus" in d else None)
        return cls(ctx, [int(x) for x in d["servers"]])


@dataclass(frozen=True)
class RecoveryPlan:
    sets: tuple[tuple[int, ...], ...]

    def __init__(self, sets: Sequence[Sequence[int]]):
        object.__setattr__(self, "sets", tuple(tuple(sorted(int(i) for i in s)) for s in sets))

    def to_json(self) -> dict:
        return {"sets": [list(s) for s in self.sets]}

    @classmethod
    def from_json(cls, d: dict) -> RecoveryPlan:
        return cls(d["sets"])


def verify_plan(servers: ServerSet, v: Requests, plan: RecoveryPlan) -> bool:
    """Index-disjoint, in range, and each set XORs to its request."""
    if len(plan.sets) != len(v):
        return False
    used: set[int] = set()
    for idx, w in zip(plan.sets, v.values):
        if not idx or any(not 0 <= i < len(servers) for i in idx):
            return False
        if used.intersection(idx) or len(set(idx)) != len(idx):
            return False
        used.update(idx)
        x = 0
        for i in idx:
            x ^= servers.servers[i]
        if x != w:
            return False
    return True


@lru_cache(maxsize=None)
def _subset_order(n: int) -> tuple[int, ...]:
    """Nonempty index masks ordered by size, then lexicographically by index tuple."""
    masks = range(1, 1 << n)
    return tuple(sorted(masks, key=lambda m: (bin(m).count("1"),
                                               [i for i in range(n) if m >> i & 1])))


def _candidates(servers: tuple[int, ...]) -> dict[int, list[int]]:
    n = len(servers)
    xor = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        xor[m] = xor[m ^ low] ^ servers[low.bit_length() - 1]
    out: dict[int, list[int]] = {}
    for m in _subset_order(n):
        out.setdefault(xor[m], []).append(m)
    return out


def find_recovery(servers: ServerSet, v: Requests, _cands=None) -> RecoveryPlan | None:
    """First plan in (request order, subset size, subset lex) search order, or None."""
    n = len(servers)
    if n > MAX_SERVERS:
        raise TooManyServers(f"{n} servers > {MAX_SERVERS}")
    if servers.ctx != v.ctx:
        raise ValueError("servers and requests live in different fields")
    if any(w == 0 for w in v.values):
        raise ZeroRequest(list(v.values))
    cands = _cands if _cands is not None else _candidates(servers.servers)
    k = len(v)
    chosen: list[int] = []
    dead: set[tuple[int, int]] = set()

    def rec(i: int, used: int) -> bool:
        if i == k:
            return True
        if (i, used) in dead:
            return False
        for m in cands.get(v.values[i], ()):
            if m & used:
                continue
            chosen.append(m)
            if rec(i + 1, used | m):
                return True
            chosen.pop()
        dead.add((i, used))
        return False

    if not rec(0, 0):
        return None
    return RecoveryPlan([[j for j in range(n) if m >> j & 1] for m in chosen])


def multiset_count(q: int, k: int) -> int:
    return comb(q - 1 + k - 1, k)


def _verify_chunk(args) -> tuple[int, list[int] | None]:
    s, modulus, servers, k, heads = args
    ctx = FieldCtx(s, modulus)
    ss = ServerSet(ctx, servers)
    cands = _candidates(ss.servers)
    checked = 0
    for t in heads:
        checked += 1
        if find_recovery(ss, Requests(ctx, t), cands) is None:
            return checked, list(t)
    return checked, None


def verify_code(servers: ServerSet, k: int, workers: int = 1) -> Report:
    """Is every k-multiset of nonzero requests recoverable?  Fails on the lex-first bad one."""
    q = servers.ctx.q
    total = multiset_count(q, k)
    if total > MAX_MULTISETS:
        raise ResourceCap(f"{total} request multisets > {MAX_MULTISETS}")
    if len(servers) > MAX_SERVERS:
        raise TooManyServers(f"{len(servers)} servers > {MAX_SERVERS}")
    multisets = list(combinations_with_replacement(range(1, q), k))
    base = (servers.ctx.s, servers.ctx.modulus, servers.servers, k)
    if workers <= 1:
        results = [_verify_chunk(base + (multisets,))]
    else:
        from multiprocessing import Pool

        size = max(1, len(multisets) // (4 * workers))
        chunks = [base + (multisets[i:i + size],) for i in range(0, len(multisets), size)]
        with Pool(workers) as pool:
            results = pool.map(_verify_chunk, chunks)
    failure = next((bad for _, bad in results if bad is not None), None)
    checked = sum(c for c, _ in results) if failure is None else None
    witness = {"servers": list(servers.servers), "k": k, "multisets": total}
    if failure is None:
        witness["checked"] = checked
        return Report("verify_code", PASS, witness)
    witness["first_failure"] = failure
    return Report("verify_code", FAIL, witness)


# -- the simplex configuration ------------------------------------------------

def pairing_to_plan(p: Pairing) -> RecoveryPlan:
    """Drop the virtual zero server; server index of value x is x - 1."""
    return RecoveryPlan([[x - 1 for x in pair if x] for pair in p.pairs])


def plan_to_pairing(plan: RecoveryPlan) -> Pairing:
    """Inverse of ``pairing_to_plan``: singletons get the zero server back."""
    pairs = []
    for idx in plan.sets:
        vals = [i + 1 for i in idx]
        if len(vals) == 1:
            vals = [0] + vals
        if len(vals) != 2:
            raise ValueError(f"recovery set {list(idx)} is not a pair")
        pairs.append(tuple(vals))
    return Pairing(pairs)


def simplex_check(ctx: FieldCtx, cross_check: bool | None = None) -> Report:
    """Decode every sum-zero k-multiset (k = q/2) on the 2^s - 1 server simplex code."""
    if ctx.s > SIMPLEX_MAX_S:
        raise UnsupportedSize(f"s={ctx.s} > {SIMPLEX_MAX_S}")
    if ctx.s < 2:
        raise UnsupportedSize("needs k = q/2 >= 2")
    if cross_check is None:
        cross_check = ctx.s <= 3
    servers = ServerSet.simplex(ctx)
    cands = _candidates(servers.servers)
    k = ctx.q // 2
    failures = []
    decoded = max_size = 0
    for v in enumerate_instances(ctx, "sorted"):
        pairing = solve(v)
        ok = pairing is not None
        if ok:
            plan = pairing_to_plan(pairing)
            back = plan_to_pairing(plan)
            ok = verify_plan(servers, v, plan) and verify_solution(v, back) and back == pairing
            max_size = max([max_size] + [len(s) for s in plan.sets])
        if cross_check and ok != (find_recovery(servers, v, cands) is not None):
            ok = False
        if ok:
            decoded += 1
        else:
            failures.append(list(v.values))
    witness = {"s": ctx.s, "servers": len(servers), "k": k,
               "sum_zero_multisets": decoded + len(failures), "decoded": decoded,
               "max_recovery_set_size": max_size, "generic_cross_check": cross_check}
    if ctx.s == 2:
        nonzero_sum = [t for t in combinations_with_replacement(range(1, ctx.q), k)
                       if _xor(t)]
        fallback = [list(t) for t in nonzero_sum
                    if find_recovery(servers, Requests(ctx, t), cands) is None]
        witness["nonzero_sum_multisets"] = len(nonzero_sum)
        witness["nonzero_sum_fallback_failures"] = fallback
        failures += fallback
    else:
        witness["nonzero_sum_multisets"] = "out of scope of the pairing reduction"
    if failures:
        witness["failures"] = failures[:20]
        return Report("simplex_check", FAIL, witness)
    return Report("simplex_check", PASS, witness)


def _xor(t) -> int:
    x = 0
    for w in t:
        x ^= w
    return x


def fb22_optimality() -> Report:
    """No two-server code serves every pair of requests over GF(4); three servers do."""
    ctx = FieldCtx(2)
    two = []
    for a in range(ctx.q):
        for b in range(ctx.q):
            r = verify_code(ServerSet(ctx, (a, b)), 2)
            two.append({"servers": [a, b], "status": r.status,
                        "first_failure": r.witness.get("first_failure")})
    three = verify_code(ServerSet.simplex(ctx), 2)
    all_fail = all(e["status"] == FAIL for e in two)
    witness = {"two_server_configs": two, "two_server_all_fail": all_fail,
               "three_server_simplex": three.status}
    if not all_fail or not three.ok:
        raise CheckFailed("optimality argument does not go through", witness)
    witness["conclusion"] = "FB(2,2) = 3"
    return Report("fb22_optimality", PASS, witness)
