"""Hot numeric kernels for the grid homology engine.

Two interchangeable backends compute the same arrays: a numba-compiled
path (default when numba imports) and a pure numpy/python fallback.
Select with GRIDFLOER_BACKEND=numba|numpy; scripts/bench_backends.py
compares them.  All kernels are deterministic; results are bit-identical
across backends.

State encoding: permutations in lexicographic order; each is also
packed into a uint64 (4 bits per column, so n <= 15).
"""
from __future__ import annotations

import itertools
import math
import os

import numpy as np

_ENV_BACKEND = "GRIDFLOER_BACKEND"


def _pick_backend() -> str:
    choice = os.environ.get(_ENV_BACKEND, "").strip().lower()
    if choice in ("numba", "numpy"):
        if choice == "numba":
            try:
                import numba  # noqa: F401
            except ImportError as exc:  # pragma: no cover
                raise RuntimeError("GRIDFLOER_BACKEND=numba but numba is missing") from exc
        return choice
    try:
        import numba  # noqa: F401
        return "numba"
    except ImportError:  # pragma: no cover
        return "numpy"


BACKEND = _pick_backend()


# ---------------------------------------------------------------------------
# pure python/numpy reference implementations


def _grade_all_py(n, MU, MK, O, X):
    total = math.factorial(n)
    au = np.empty(total, dtype=np.int32)
    ak = np.empty(total, dtype=np.int32)
    mm = np.empty(total, dtype=np.int32)
    packed = np.empty(total, dtype=np.uint64)
    chunk = 200_000
    cols = np.arange(n)
    it = itertools.permutations(range(n))
    base = 0
    shifts = (np.uint64(4) * cols.astype(np.uint64))
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            break
        P = np.array(block, dtype=np.int64)
        m = len(block)
        au[base:base + m] = MU[cols, P].sum(axis=1)
        ak[base:base + m] = MK[cols, P].sum(axis=1)
        ixx = np.zeros(m, dtype=np.int64)
        ixo = np.zeros(m, dtype=np.int64)
        iox = np.zeros(m, dtype=np.int64)
        for i in range(n):
            for j in range(i + 1, n):
                ixx += P[:, i] < P[:, j]
                iox += O[i] < P[:, j]
            for j in range(i, n):
                ixo += P[:, i] <= O[j]
        mm[base:base + m] = ixx - ixo - iox
        packed[base:base + m] = (P.astype(np.uint64) << shifts).sum(axis=1)
        base += m
    return au, ak, mm, packed


def _unpack(code: int, n: int):
    return [(int(code) >> (4 * i)) & 0xF for i in range(n)]


def _rect_empty_py(n, p, O, X, i, j):
    """Emptiness of the rectangle over cyclic cols [i, j), rows [p[i], p[j])."""
    a = p[i]
    span = (p[j] - a) % n
    c = i
    while True:
        if (O[c] - a) % n < span or (X[c] - a) % n < span:
            return False
        if c != i and (p[c] - a) % n < span:
            return False
        c = (c + 1) % n
        if c == j:
            return True


def _block_edges_py(n, packed_sorted, O, X):
    edges_u = []
    edges_v = []
    m = len(packed_sorted)
    for s in range(m):
        p = _unpack(packed_sorted[s], n)
        for i in range(n):
            for j in range(i + 1, n):
                count = 0
                for (a, b) in ((i, j), (j, i)):
                    if _rect_empty_py(n, p, O, X, a, b):
                        count += 1
                if count % 2 == 1:
                    q = p[:]
                    q[i], q[j] = q[j], q[i]
                    code = 0
                    for c in range(n):
                        code |= q[c] << (4 * c)
                    t = int(np.searchsorted(packed_sorted, np.uint64(code)))
                    if t >= m or packed_sorted[t] != np.uint64(code):
                        raise AssertionError("differential target left its block")
                    edges_u.append(s)
                    edges_v.append(t)
    return (np.array(edges_u, dtype=np.int64),
            np.array(edges_v, dtype=np.int64))


def _free_cancel_py(nrows, ncols, eu, ev):
    """Rank contributions from unit rows/columns (exact row/col pivoting).

    Returns (rank_found, surviving edge mask).
    """
    ne = len(eu)
    alive = np.ones(ne, dtype=bool)
    deg_r = np.bincount(eu, minlength=nrows)
    deg_c = np.bincount(ev, minlength=ncols)
    by_row = [[] for _ in range(nrows)]
    by_col = [[] for _ in range(ncols)]
    for e in range(ne):
        by_row[eu[e]].append(e)
        by_col[ev[e]].append(e)
    stack = [('r', r) for r in range(nrows) if deg_r[r] == 1]
    stack += [('c', c) for c in range(ncols) if deg_c[c] == 1]
    rank = 0

    def kill(e):
        alive[e] = False
        deg_r[eu[e]] -= 1
        deg_c[ev[e]] -= 1
        if deg_r[eu[e]] == 1:
            stack.append(('r', eu[e]))
        if deg_c[ev[e]] == 1:
            stack.append(('c', ev[e]))

    while stack:
        kind, idx = stack.pop()
        if kind == 'r':
            if deg_r[idx] != 1:
                continue
            e0 = next(e for e in by_row[idx] if alive[e])
            c = ev[e0]
            rank += 1
            for e in by_col[c]:
                if alive[e]:
                    kill(e)
        else:
            if deg_c[idx] != 1:
                continue
            e0 = next(e for e in by_col[idx] if alive[e])
            r = eu[e0]
            rank += 1
            for e in by_row[r]:
                if alive[e]:
                    kill(e)
    return rank, alive


def _dense_rank_py(rows, cols, eu, ev):
    """GF(2) rank of the residual core by bit-packed elimination."""
    rmap = {r: i for i, r in enumerate(rows)}
    cmap = {c: i for i, c in enumerate(cols)}
    words = (len(cols) + 63) // 64
    mat = np.zeros((len(rows), words), dtype=np.uint64)
    for u, v in zip(eu, ev):
        j = cmap[v]
        mat[rmap[u], j >> 6] ^= np.uint64(1) << np.uint64(j & 63)
    pivots: dict[int, np.ndarray] = {}
    rank = 0
    for i in range(len(rows)):
        row = mat[i].copy()
        while True:
            nz = np.nonzero(row)[0]
            if len(nz) == 0:
                break
            w = int(nz[-1])
            lead = (w << 6) + int(row[w]).bit_length() - 1
            if lead in pivots:
                row ^= pivots[lead]
            else:
                pivots[lead] = row
                rank += 1
                break
    return rank


# ---------------------------------------------------------------------------
# numba twins

if BACKEND == "numba":
    from numba import njit

    @njit(cache=True)
    def _grade_all_nb(n, MU, MK, O, X, total):
        au = np.empty(total, dtype=np.int32)
        ak = np.empty(total, dtype=np.int32)
        mm = np.empty(total, dtype=np.int32)
        packed = np.empty(total, dtype=np.uint64)
        p = np.arange(n)
        for idx in range(total):
            a_u = 0
            a_k = 0
            for i in range(n):
                a_u += MU[i, p[i]]
                a_k += MK[i, p[i]]
            ixx = 0
            ixo = 0
            iox = 0
            for i in range(n):
                for j in range(i + 1, n):
                    if p[i] < p[j]:
                        ixx += 1
                    if O[i] < p[j]:
                        iox += 1
                for j in range(i, n):
                    if p[i] <= O[j]:
                        ixo += 1
            au[idx] = a_u
            ak[idx] = a_k
            mm[idx] = ixx - ixo - iox
            code = np.uint64(0)
            for i in range(n):
                code |= np.uint64(p[i]) << np.uint64(4 * i)
            packed[idx] = code
            # lexicographic successor
            k = n - 2
            while k >= 0 and p[k] >= p[k + 1]:
                k -= 1
            if k < 0:
                break
            l = n - 1
            while p[l] <= p[k]:
                l -= 1
            p[k], p[l] = p[l], p[k]
            lo, hi = k + 1, n - 1
            while lo < hi:
                p[lo], p[hi] = p[hi], p[lo]
                lo += 1
                hi -= 1
        return au, ak, mm, packed

    @njit(cache=True)
    def _rect_empty_nb(n, p, O, X, i, j):
        a = p[i]
        span = (p[j] - a) % n
        c = i
        while True:
            if (O[c] - a) % n < span or (X[c] - a) % n < span:
                return False
            if c != i and (p[c] - a) % n < span:
                return False
            c = (c + 1) % n
            if c == j:
                return True

    @njit(cache=True)
    def _block_edges_nb(n, packed_sorted, O, X):
        m = len(packed_sorted)
        # counting pass
        count = 0
        p = np.empty(n, dtype=np.int64)
        for s in range(m):
            code = packed_sorted[s]
            for c in range(n):
                p[c] = (code >> np.uint64(4 * c)) & np.uint64(0xF)
            for i in range(n):
                for j in range(i + 1, n):
                    hits = 0
                    if _rect_empty_nb(n, p, O, X, i, j):
                        hits += 1
                    if _rect_empty_nb(n, p, O, X, j, i):
                        hits += 1
                    if hits % 2 == 1:
                        count += 1
        eu = np.empty(count, dtype=np.int64)
        ev = np.empty(count, dtype=np.int64)
        pos = 0
        for s in range(m):
            code = packed_sorted[s]
            for c in range(n):
                p[c] = (code >> np.uint64(4 * c)) & np.uint64(0xF)
            for i in range(n):
                for j in range(i + 1, n):
                    hits = 0
                    if _rect_empty_nb(n, p, O, X, i, j):
                        hits += 1
                    if _rect_empty_nb(n, p, O, X, j, i):
                        hits += 1
                    if hits % 2 == 1:
                        tmp = p[i]
                        p[i] = p[j]
                        p[j] = tmp
                        code2 = np.uint64(0)
                        for c in range(n):
                            code2 |= np.uint64(p[c]) << np.uint64(4 * c)
                        tmp2 = p[i]
                        p[i] = p[j]
                        p[j] = tmp2
                        lo, hi = 0, m
                        while lo < hi:
                            mid = (lo + hi) // 2
                            if packed_sorted[mid] < code2:
                                lo = mid + 1
                            else:
                                hi = mid
                        eu[pos] = s
                        ev[pos] = lo
                        pos += 1
        return eu, ev

    @njit(cache=True)
    def _free_cancel_nb(nrows, ncols, eu, ev, alive, deg_r, deg_c,
                        row_ptr, row_edges, col_ptr, col_edges):
        stack = np.empty(2 * (nrows + ncols) + 2 * len(eu), dtype=np.int64)
        top = 0
        for r in range(nrows):
            if deg_r[r] == 1:
                stack[top] = r
                top += 1
        for c in range(ncols):
            if deg_c[c] == 1:
                stack[top] = nrows + c
                top += 1
        rank = 0
        while top > 0:
            top -= 1
            node = stack[top]
            if node < nrows:
                r = node
                if deg_r[r] != 1:
                    continue
                e0 = -1
                for k in range(row_ptr[r], row_ptr[r + 1]):
                    if alive[row_edges[k]]:
                        e0 = row_edges[k]
                        break
                c = ev[e0]
                rank += 1
                for k in range(col_ptr[c], col_ptr[c + 1]):
                    e = col_edges[k]
                    if alive[e]:
                        alive[e] = False
                        deg_r[eu[e]] -= 1
                        deg_c[ev[e]] -= 1
                        if deg_r[eu[e]] == 1 and top < len(stack):
                            stack[top] = eu[e]
                            top += 1
                        if deg_c[ev[e]] == 1 and top < len(stack):
                            stack[top] = nrows + ev[e]
                            top += 1
            else:
                c = node - nrows
                if deg_c[c] != 1:
                    continue
                e0 = -1
                for k in range(col_ptr[c], col_ptr[c + 1]):
                    if alive[col_edges[k]]:
                        e0 = col_edges[k]
                        break
                r = eu[e0]
                rank += 1
                for k in range(row_ptr[r], row_ptr[r + 1]):
                    e = row_edges[k]
                    if alive[e]:
                        alive[e] = False
                        deg_r[eu[e]] -= 1
                        deg_c[ev[e]] -= 1
                        if deg_r[eu[e]] == 1 and top < len(stack):
                            stack[top] = eu[e]
                            top += 1
                        if deg_c[ev[e]] == 1 and top < len(stack):
                            stack[top] = nrows + ev[e]
                            top += 1
        return rank

    @njit(cache=True)
    def _dense_rank_nb(rows, cols, eu, ev):
        nr = len(rows)
        nc = len(cols)
        words = (nc + 63) // 64
        mat = np.zeros((nr, words), dtype=np.uint64)
        # compress indices
        rmax = rows[-1] + 1
        cmax = cols[-1] + 1
        rmap = -np.ones(rmax, dtype=np.int64)
        cmap = -np.ones(cmax, dtype=np.int64)
        for i in range(nr):
            rmap[rows[i]] = i
        for j in range(nc):
            cmap[cols[j]] = j
        for e in range(len(eu)):
            i = rmap[eu[e]]
            j = cmap[ev[e]]
            mat[i, j >> 6] ^= np.uint64(1) << np.uint64(j & 63)
        pivot_of = -np.ones(nc, dtype=np.int64)
        rank = 0
        for i in range(nr):
            while True:
                lead = -1
                for w in range(words - 1, -1, -1):
                    if mat[i, w] != np.uint64(0):
                        x = mat[i, w]
                        b = 0
                        while x > np.uint64(1):
                            x >>= np.uint64(1)
                            b += 1
                        lead = (w << 6) + b
                        break
                if lead < 0:
                    break
                p = pivot_of[lead]
                if p >= 0:
                    for w in range(words):
                        mat[i, w] ^= mat[p, w]
                else:
                    pivot_of[lead] = i
                    rank += 1
                    break
        return rank

    def grade_all(n, MU, MK, O, X):
        total = math.factorial(n)
        return _grade_all_nb(n, MU, MK, O, X, total)

    def block_edges(n, packed_sorted, O, X):
        return _block_edges_nb(n, packed_sorted, O, X)

    def free_cancel(nrows, ncols, eu, ev):
        ne = len(eu)
        alive = np.ones(ne, dtype=np.uint8)
        deg_r = np.bincount(eu, minlength=nrows).astype(np.int64)
        deg_c = np.bincount(ev, minlength=ncols).astype(np.int64)
        row_order = np.argsort(eu, kind="stable")
        col_order = np.argsort(ev, kind="stable")
        row_ptr = np.zeros(nrows + 1, dtype=np.int64)
        np.cumsum(np.bincount(eu, minlength=nrows), out=row_ptr[1:])
        col_ptr = np.zeros(ncols + 1, dtype=np.int64)
        np.cumsum(np.bincount(ev, minlength=ncols), out=col_ptr[1:])
        rank = _free_cancel_nb(nrows, ncols, eu, ev, alive, deg_r, deg_c,
                               row_ptr, row_order.astype(np.int64),
                               col_ptr, col_order.astype(np.int64))
        return rank, alive.astype(bool)

else:
    def grade_all(n, MU, MK, O, X):
        return _grade_all_py(n, MU, MK, O, X)

    def block_edges(n, packed_sorted, O, X):
        return _block_edges_py(n, packed_sorted, O, X)

    def free_cancel(nrows, ncols, eu, ev):
        return _free_cancel_py(nrows, ncols, eu, ev)


def graded_rank(nrows, ncols, eu, ev) -> int:
    """GF(2) rank of one graded boundary matrix (sparse edge lists)."""
    if len(eu) == 0:
        return 0
    rank, alive = free_cancel(nrows, ncols, eu, ev)
    if alive.any():
        eu2 = eu[alive]
        ev2 = ev[alive]
        rows = np.unique(eu2)
        cols = np.unique(ev2)
        if BACKEND == "numba":
            rank += int(_dense_rank_nb(rows.astype(np.int64), cols.astype(np.int64),
                                       eu2.astype(np.int64), ev2.astype(np.int64)))
        else:
            rank += _dense_rank_py(list(rows), list(cols), eu2, ev2)
    return rank
