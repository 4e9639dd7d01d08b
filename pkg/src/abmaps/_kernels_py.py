"""Pure-Python implementations of the search/scan kernels.

Same algorithms, visiting order and return values as the compiled module
``_kernels``; bitsets are Python ints here. Inputs follow the compiled
signatures: adjacency rows arrive as a 2-D ``uint64`` array of packed
little-endian bitsets.
"""
from __future__ import annotations

import numpy as np

NO_PAIR = 1 << 30


def _rows_to_ints(rows) -> list[int]:
    rows = np.ascontiguousarray(rows, dtype=np.uint64)
    return [int.from_bytes(r.tobytes(), "little") for r in rows]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def max_clique(rows, lower: int, budget: int):
    """Branch and bound for a clique of size > lower (greedy colouring bound).

    Returns (size, members, nodes, complete). members is empty when no clique
    beats ``lower``; complete is False when the node budget ran out.
    """
    adj = _rows_to_ints(rows)
    n = len(adj)
    best_size = lower
    best: list[int] = []
    current: list[int] = []
    nodes = 0
    out_of_budget = False

    def colour_sort(P: int):
        order, colours = [], []
        colour = 0
        Q = P
        while Q:
            colour += 1
            avail = Q
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~adj[v]
                avail &= ~(1 << v)
                Q &= ~(1 << v)
                order.append(v)
                colours.append(colour)
        return order, colours

    def expand(P: int) -> None:
        nonlocal nodes, best_size, best, out_of_budget
        nodes += 1
        if nodes > budget:
            out_of_budget = True
            return
        order, colours = colour_sort(P)
        for i in range(len(order) - 1, -1, -1):
            if out_of_budget:
                return
            if len(current) + colours[i] <= best_size:
                return
            v = order[i]
            current.append(v)
            newP = P & adj[v]
            if newP:
                expand(newP)
            elif len(current) > best_size:
                best_size = len(current)
                best = list(current)
            current.pop()
            P &= ~(1 << v)

    if n:
        expand((1 << n) - 1)
    return best_size, sorted(best), min(nodes, budget), not out_of_budget


def hom_search(src_rows, dst_rows, order, pin_first: bool, budget: int):
    """Backtracking graph homomorphism search.

    ``order`` lists source vertices in assignment order; when ``pin_first`` the
    first one is sent to target vertex 0. Returns (status, images, nodes) with
    status 1 = found, 0 = none exists, -1 = budget exhausted.
    """
    src = _rows_to_ints(src_rows)
    dst = _rows_to_ints(dst_rows)
    ns, nd = len(src), len(dst)
    order = [int(v) for v in order]
    pos = {v: p for p, v in enumerate(order)}
    earlier = [[q for q in _bits(src[v]) if pos[q] < p] for p, v in enumerate(order)]
    full = (1 << nd) - 1
    image = [-1] * ns
    nodes = 0

    def domain(p: int) -> int:
        if p == 0 and pin_first:
            return 1
        d = full
        for q in earlier[p]:
            d &= dst[image[q]]
        return d

    if ns == 0:
        return 1, [], 0
    doms = [0] * ns
    doms[0] = domain(0)
    p = 0
    while p >= 0:
        if doms[p] == 0:
            image[order[p]] = -1
            p -= 1
            continue
        low = doms[p] & -doms[p]
        doms[p] ^= low
        nodes += 1
        if nodes > budget:
            return -1, [], budget
        image[order[p]] = low.bit_length() - 1
        if p + 1 == ns:
            return 1, image, nodes
        p += 1
        doms[p] = domain(p)
    return 0, [], nodes


def pair_profile(images, k: int):
    """best[w] = min |f(x) ^ f(x')| over pairs at input distance w (NO_PAIR if none)."""
    images = np.asarray(images, dtype=np.uint64)
    N = len(images)
    best = np.full(k + 1, NO_PAIR, dtype=np.int64)
    xs = np.arange(N, dtype=np.uint64)
    for x in range(N - 1):
        rest = slice(x + 1, N)
        dx = np.bitwise_count(xs[rest] ^ np.uint64(x)).astype(np.int64)
        dy = np.bitwise_count(images[rest] ^ images[x]).astype(np.int64)
        np.minimum.at(best, dx, dy)
    return best


def count_violations(images, members, a: int, b: int) -> int:
    """Unordered pairs {x, x'} of members with |x ^ x'| > a and |f(x) ^ f(x')| <= b."""
    images = np.asarray(images, dtype=np.uint64)
    members = np.asarray(members, dtype=np.uint64)
    fm = images[members.astype(np.int64)]
    total = 0
    for i in range(len(members) - 1):
        dx = np.bitwise_count(members[i + 1:] ^ members[i])
        dy = np.bitwise_count(fm[i + 1:] ^ fm[i])
        total += int(np.count_nonzero((dx > a) & (dy <= b)))
    return total
