"""Independent reference computations used to freeze regression constants.

Nothing here imports the search or enumeration code it is checked against.
"""
from itertools import product


def count_sum_zero_multisets(q: int, k: int) -> int:
    """Multisets of k nonzero values in [1, q) with XOR zero, by a DP over values."""
    # dp[(size, xor)] = number of multisets using the values seen so far
    dp = {(0, 0): 1}
    for w in range(1, q):
        nxt = {}
        for (n, x), c in dp.items():
            for m in range(0, k - n + 1):
                key = (n + m, x ^ (w if m % 2 else 0))
                nxt[key] = nxt.get(key, 0) + c
        dp = nxt
    return dp.get((k, 0), 0)


def _all_gl_tables(s: int):
    """Invertible maps of F_2^s by trying every column choice (slow, s <= 4)."""
    q = 1 << s
    for cols in product(range(1, q), repeat=s):
        table = []
        for x in range(q):
            y = 0
            for b in range(s):
                if x >> b & 1:
                    y ^= cols[b]
            table.append(y)
        if len(set(table)) == q:
            yield table


def count_orbits_burnside(s: int) -> int:
    """Orbits of sum-zero k-multisets under GL(s, 2), by Burnside's lemma."""
    q, k = 1 << s, 1 << (s - 1)
    total = group = 0
    for t in _all_gl_tables(s):
        group += 1
        seen, cycles = set(), []
        for x in range(1, q):
            if x in seen:
                continue
            cyc, y = [], x
            while y not in seen:
                seen.add(y)
                cyc.append(y)
                y = t[y]
            xor = 0
            for y in cyc:
                xor ^= y
            cycles.append((len(cyc), xor))
        # a fixed multiset is constant on cycles
        dp = {(0, 0): 1}
        for length, xor in cycles:
            nxt = {}
            for (n, x), c in dp.items():
                m = 0
                while n + m * length <= k:
                    key = (n + m * length, x ^ (xor if m % 2 else 0))
                    nxt[key] = nxt.get(key, 0) + c
                    m += 1
            dp = nxt
        total += dp.get((k, 0), 0)
    assert total % group == 0
    return total // group


def gl_order(s: int) -> int:
    n = 1
    for i in range(s):
        n *= (1 << s) - (1 << i)
    return n


def brute_force_labeled_solutions(q: int, values) -> int:
    """Labeled pairings by enumerating ordered pair choices outright."""
    k = len(values)
    count = 0
    for alphas in product(range(q), repeat=k):
        pts = list(alphas) + [a ^ w for a, w in zip(alphas, values)]
        if len(set(pts)) == 2 * k:
            count += 1
    # each labeled solution is hit once per choice of endpoint order
    return count // (2 ** k)


def brute_force_pairings_small(q: int, values):
    """Every labeled solution as a tuple of (min, max) pairs."""
    out = set()
    for alphas in product(range(q), repeat=len(values)):
        pts = list(alphas) + [a ^ w for a, w in zip(alphas, values)]
        if len(set(pts)) == 2 * len(values):
            out.add(tuple(tuple(sorted((a, a ^ w))) for a, w in zip(alphas, values)))
    return out


def int_linear_product(factors, start):
    """Integer expansion of start * prod(factors); each factor is a list of slots."""
    cur = {tuple(start): 1}
    for fac in factors:
        nxt = {}
        for e, c in cur.items():
            for slot in fac:
                ne = list(e)
                ne[slot] += 1
                ne = tuple(ne)
                nxt[ne] = nxt.get(ne, 0) + c
        cur = nxt
    return cur
