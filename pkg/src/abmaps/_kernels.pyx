# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled search/scan kernels; mirrors ``_kernels_py`` exactly (same visiting order)."""
import numpy as np

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

NO_PAIR = 1 << 30
cdef int64_t C_NO_PAIR = 1 << 30


cdef inline bint is_empty(const uint64_t* P, int W) noexcept nogil:
    cdef int w
    for w in range(W):
        if P[w]:
            return False
    return True


cdef inline int count_bits(const uint64_t* P, int W) noexcept nogil:
    cdef int w, c = 0
    for w in range(W):
        c += __builtin_popcountll(P[w])
    return c


cdef struct CliqueState:
    const uint64_t* adj
    int W
    int best_size
    int* best
    int* current
    int cur_len
    long long nodes
    long long budget
    bint out


cdef void expand(CliqueState* st, uint64_t* P) noexcept nogil:
    cdef int W = st.W
    cdef int cnt, k, colour, i, v, w, start
    cdef int* order
    cdef int* colours
    cdef uint64_t* Q
    cdef uint64_t* avail
    cdef uint64_t* newP
    cdef const uint64_t* row
    cdef uint64_t word

    st.nodes += 1
    if st.nodes > st.budget:
        st.out = True
        return
    cnt = count_bits(P, W)
    order = <int*> malloc(cnt * sizeof(int) + 1)
    colours = <int*> malloc(cnt * sizeof(int) + 1)
    Q = <uint64_t*> malloc(W * sizeof(uint64_t))
    avail = <uint64_t*> malloc(W * sizeof(uint64_t))
    newP = <uint64_t*> malloc(W * sizeof(uint64_t))
    memcpy(Q, P, W * sizeof(uint64_t))

    k = 0
    colour = 0
    while not is_empty(Q, W):
        colour += 1
        memcpy(avail, Q, W * sizeof(uint64_t))
        start = 0
        while True:
            while start < W and avail[start] == 0:
                start += 1
            if start == W:
                break
            word = avail[start]
            v = start * 64 + __builtin_ctzll(word)
            row = st.adj + <long long> v * W
            for w in range(start, W):
                avail[w] &= ~row[w]
            avail[v >> 6] &= ~((<uint64_t> 1) << (v & 63))
            Q[v >> 6] &= ~((<uint64_t> 1) << (v & 63))
            order[k] = v
            colours[k] = colour
            k += 1

    i = cnt - 1
    while i >= 0:
        if st.out:
            break
        if st.cur_len + colours[i] <= st.best_size:
            break
        v = order[i]
        st.current[st.cur_len] = v
        st.cur_len += 1
        row = st.adj + <long long> v * W
        for w in range(W):
            newP[w] = P[w] & row[w]
        if not is_empty(newP, W):
            expand(st, newP)
        elif st.cur_len > st.best_size:
            st.best_size = st.cur_len
            memcpy(st.best, st.current, st.cur_len * sizeof(int))
        st.cur_len -= 1
        P[v >> 6] &= ~((<uint64_t> 1) << (v & 63))
        i -= 1

    free(order)
    free(colours)
    free(Q)
    free(avail)
    free(newP)


def max_clique(rows, int lower, long long budget):
    """Branch and bound for a clique of size > lower; see ``_kernels_py.max_clique``."""
    cdef uint64_t[:, ::1] adj = np.ascontiguousarray(rows, dtype=np.uint64)
    cdef int n = adj.shape[0]
    cdef int W = adj.shape[1] if n else 1
    cdef CliqueState st
    cdef uint64_t* P
    cdef int v
    if n == 0:
        return lower, [], 0, True
    st.adj = &adj[0, 0]
    st.W = W
    st.best_size = lower
    st.best = <int*> malloc((n + 1) * sizeof(int))
    st.current = <int*> malloc((n + 1) * sizeof(int))
    st.cur_len = 0
    st.nodes = 0
    st.budget = budget
    st.out = False
    P = <uint64_t*> malloc(W * sizeof(uint64_t))
    for v in range(W):
        P[v] = 0
    for v in range(n):
        P[v >> 6] |= (<uint64_t> 1) << (v & 63)
    with nogil:
        expand(&st, P)
    members = []
    if st.best_size > lower:
        members = sorted(st.best[v] for v in range(st.best_size))
    size = st.best_size
    nodes = min(st.nodes, budget)
    complete = not st.out
    free(P)
    free(st.best)
    free(st.current)
    return size, members, nodes, complete


def hom_search(src_rows, dst_rows, order, bint pin_first, long long budget):
    """Backtracking homomorphism search; see ``_kernels_py.hom_search``."""
    cdef uint64_t[:, ::1] src = np.ascontiguousarray(src_rows, dtype=np.uint64)
    cdef uint64_t[:, ::1] dst = np.ascontiguousarray(dst_rows, dtype=np.uint64)
    cdef int ns = src.shape[0]
    cdef int nd = dst.shape[0]
    cdef int Wd = dst.shape[1]
    cdef int p, q, v, w, j
    cdef long long nodes = 0
    cdef uint64_t low
    if ns == 0:
        return 1, [], 0
    order_list = [int(x) for x in order]
    pos = {v_: p_ for p_, v_ in enumerate(order_list)}
    src_int = [int.from_bytes(np.asarray(src[i]).tobytes(), "little") for i in range(ns)]
    starts_py = [0]
    flat_py = []
    for p_, v_ in enumerate(order_list):
        mask = src_int[v_]
        while mask:
            lowbit = mask & -mask
            q_ = lowbit.bit_length() - 1
            if pos[q_] < p_:
                flat_py.append(q_)
            mask ^= lowbit
        starts_py.append(len(flat_py))
    cdef int64_t[::1] starts = np.asarray(starts_py, dtype=np.int64)
    cdef int64_t[::1] flat = np.asarray(flat_py if flat_py else [0], dtype=np.int64)
    cdef int64_t[::1] ordv = np.asarray(order_list, dtype=np.int64)
    cdef int64_t[::1] image = np.full(ns, -1, dtype=np.int64)
    cdef uint64_t[:, ::1] doms = np.zeros((ns, Wd), dtype=np.uint64)
    cdef uint64_t[::1] full = np.zeros(Wd, dtype=np.uint64)
    for v in range(nd):
        full[v >> 6] |= (<uint64_t> 1) << (v & 63)

    cdef int status = 0
    with nogil:
        p = 0
        # domain of position 0
        if pin_first:
            doms[0, 0] = 1
        else:
            for w in range(Wd):
                doms[0, w] = full[w]
        while p >= 0:
            w = 0
            while w < Wd and doms[p, w] == 0:
                w += 1
            if w == Wd:
                image[ordv[p]] = -1
                p -= 1
                continue
            low = doms[p, w] & (~doms[p, w] + 1)
            doms[p, w] ^= low
            nodes += 1
            if nodes > budget:
                status = -1
                break
            image[ordv[p]] = w * 64 + __builtin_ctzll(low)
            if p + 1 == ns:
                status = 1
                break
            p += 1
            for w in range(Wd):
                doms[p, w] = full[w]
            for j in range(starts[p], starts[p + 1]):
                q = flat[j]
                v = image[q]
                for w in range(Wd):
                    doms[p, w] &= dst[v, w]
    if status == 1:
        return 1, [int(image[i]) for i in range(ns)], nodes
    if status == -1:
        return -1, [], budget
    return 0, [], nodes


def pair_profile(images, int k):
    """best[w] = min |f(x) ^ f(x')| over pairs at input distance w."""
    cdef uint64_t[::1] f = np.ascontiguousarray(images, dtype=np.uint64)
    cdef Py_ssize_t N = f.shape[0]
    cdef Py_ssize_t x, y
    cdef int dx, dy
    out = np.full(k + 1, NO_PAIR, dtype=np.int64)
    cdef int64_t[::1] best = out
    with nogil:
        for x in range(N):
            for y in range(x + 1, N):
                dx = __builtin_popcountll(<uint64_t> (x ^ y))
                dy = __builtin_popcountll(f[x] ^ f[y])
                if dy < best[dx]:
                    best[dx] = dy
    return out


def count_violations(images, members, int a, int b):
    cdef uint64_t[::1] f = np.ascontiguousarray(images, dtype=np.uint64)
    cdef uint64_t[::1] S = np.ascontiguousarray(members, dtype=np.uint64)
    cdef Py_ssize_t m = S.shape[0]
    cdef Py_ssize_t i, j
    cdef long long total = 0
    with nogil:
        for i in range(m):
            for j in range(i + 1, m):
                if __builtin_popcountll(S[i] ^ S[j]) > a and __builtin_popcountll(f[S[i]] ^ f[S[j]]) <= b:
                    total += 1
    return total
