# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled counting kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np

from libc.stdint cimport int32_t, int64_t, uint8_t, uint64_t
from libcpp.vector cimport vector
from libcpp.algorithm cimport sort

NAME = "cython"


cdef inline int64_t lower(const int32_t[::1] arr, int64_t s, int64_t e, int64_t v) noexcept nogil:
    cdef int64_t mid
    while s < e:
        mid = (s + e) >> 1
        if arr[mid] < v:
            s = mid + 1
        else:
            e = mid
    return s


cdef inline bint contains(const int32_t[::1] arr, int64_t s, int64_t e, int32_t v) noexcept nogil:
    cdef int64_t k = lower(arr, s, e, v)
    return k < e and arr[k] == v


cdef inline int64_t joint_count(const int64_t[::1] keys, const int32_t[::1] counts,
                                int64_t key) noexcept nogil:
    cdef int64_t s = 0, e = keys.shape[0], mid
    while s < e:
        mid = (s + e) >> 1
        if keys[mid] < key:
            s = mid + 1
        else:
            e = mid
    if s < keys.shape[0] and keys[s] == key:
        return counts[s]
    return 0


def project(const int64_t[::1] paper_ptr, const int32_t[::1] paper_authors,
            const int64_t[::1] author_ptr, const int32_t[::1] author_papers,
            int64_t lo, int64_t hi):
    cdef int64_t n = author_ptr.shape[0] - 1
    cdef vector[int32_t] idx
    cdef vector[int32_t] mark
    cdef int64_t a, i, s, e, p, k, start
    cdef int32_t b
    indptr = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] ip = indptr
    with nogil:
        mark.resize(n, -1)
        for a in range(n):
            start = idx.size()
            s = lower(author_papers, author_ptr[a], author_ptr[a + 1], lo)
            e = lower(author_papers, s, author_ptr[a + 1], hi)
            for i in range(s, e):
                p = author_papers[i]
                for k in range(paper_ptr[p], paper_ptr[p + 1]):
                    b = paper_authors[k]
                    if b != a and mark[b] != a:
                        mark[b] = <int32_t>a
                        idx.push_back(b)
            sort(idx.begin() + start, idx.end())
            ip[a + 1] = idx.size()
    indices = np.empty(idx.size(), dtype=np.int32)
    cdef int32_t[::1] out = indices
    cdef int64_t t
    for t in range(<int64_t>idx.size()):
        out[t] = idx[t]
    return indptr, indices


def two_path_counts(const int64_t[::1] indptr, const int32_t[::1] indices):
    cdef int64_t n = indptr.shape[0] - 1
    cdef int64_t u, v, w, i, j, d
    cdef int64_t two = 0, tri = 0
    cdef vector[int64_t] mark
    with nogil:
        mark.resize(n, -1)
        for u in range(n):
            d = indptr[u + 1] - indptr[u]
            two += d * (d - 1) // 2
            for i in range(indptr[u], indptr[u + 1]):
                mark[indices[i]] = u
            for i in range(indptr[u], indptr[u + 1]):
                v = indices[i]
                if v <= u:
                    continue
                for j in range(indptr[v], indptr[v + 1]):
                    w = indices[j]
                    if w > v and mark[w] == u:
                        tri += 1
    return int(two), 3 * int(tri)


def four_path_counts(const int64_t[::1] paper_ptr, const int32_t[::1] paper_authors,
                     const int64_t[::1] author_ptr, const int32_t[::1] author_papers,
                     int64_t lo, int64_t hi,
                     const int64_t[::1] keys, const int32_t[::1] counts):
    cdef int64_t n = author_ptr.shape[0] - 1
    cdef int64_t x, s, e, i, j, pa, pb, ka, kb, sa, ea, sb, eb, shared, c, key
    cdef int32_t y, z
    cdef int64_t total = 0, closed = 0
    with nogil:
        for x in range(n):
            s = lower(author_papers, author_ptr[x], author_ptr[x + 1], lo)
            e = lower(author_papers, s, author_ptr[x + 1], hi)
            for i in range(s, e):
                pa = author_papers[i]
                sa = paper_ptr[pa]
                ea = paper_ptr[pa + 1]
                for j in range(i + 1, e):
                    pb = author_papers[j]
                    sb = paper_ptr[pb]
                    eb = paper_ptr[pb + 1]
                    # |A & B| by sorted merge; X is in both
                    shared = 0
                    ka = sa
                    kb = sb
                    while ka < ea and kb < eb:
                        if paper_authors[ka] < paper_authors[kb]:
                            ka += 1
                        elif paper_authors[ka] > paper_authors[kb]:
                            kb += 1
                        else:
                            shared += 1
                            ka += 1
                            kb += 1
                    total += (ea - sa - 1) * (eb - sb - 1) - (shared - 1)
                    for ka in range(sa, ea):
                        y = paper_authors[ka]
                        if y == x:
                            continue
                        for kb in range(sb, eb):
                            z = paper_authors[kb]
                            if z == x or z == y:
                                continue
                            key = y * n + z if y < z else z * n + y
                            c = joint_count(keys, counts, key)
                            if c == 0:
                                continue
                            c -= contains(paper_authors, sa, ea, z)
                            c -= contains(paper_authors, sb, eb, y)
                            if c > 0:
                                closed += 1
    return int(total), int(closed)


def four_path_triples(const int64_t[::1] paper_ptr, const int32_t[::1] paper_authors,
                      const int64_t[::1] author_ptr, const int32_t[::1] author_papers,
                      int64_t lo, int64_t hi,
                      const int64_t[::1] keys, const int32_t[::1] counts,
                      const uint8_t[::1] active, bint strict):
    cdef int64_t n = author_ptr.shape[0] - 1
    cdef bint filtered = active.shape[0] > 0
    cdef int64_t x, s, e, i, j, pa, pb, ka, kb, sa, ea, sb, eb, c, key
    cdef int32_t y, z
    cdef uint8_t flag
    cdef vector[int32_t] ys, zs, xs
    cdef vector[uint8_t] cl
    with nogil:
        for x in range(n):
            s = lower(author_papers, author_ptr[x], author_ptr[x + 1], lo)
            e = lower(author_papers, s, author_ptr[x + 1], hi)
            for i in range(s, e):
                pa = author_papers[i]
                sa = paper_ptr[pa]
                ea = paper_ptr[pa + 1]
                for j in range(i + 1, e):
                    pb = author_papers[j]
                    sb = paper_ptr[pb]
                    eb = paper_ptr[pb + 1]
                    for ka in range(sa, ea):
                        y = paper_authors[ka]
                        if y == x or (filtered and not active[y]):
                            continue
                        for kb in range(sb, eb):
                            z = paper_authors[kb]
                            if z == x or z == y or (filtered and not active[z]):
                                continue
                            key = y * n + z if y < z else z * n + y
                            c = joint_count(keys, counts, key)
                            if strict:
                                if c:
                                    continue
                                flag = 0
                            else:
                                if c:
                                    c -= contains(paper_authors, sa, ea, z)
                                    c -= contains(paper_authors, sb, eb, y)
                                flag = 1 if c > 0 else 0
                            if y < z:
                                ys.push_back(y)
                                zs.push_back(z)
                            else:
                                ys.push_back(z)
                                zs.push_back(y)
                            xs.push_back(<int32_t>x)
                            cl.push_back(flag)
    cdef int64_t m = ys.size(), t
    oy = np.empty(m, dtype=np.int32)
    oz = np.empty(m, dtype=np.int32)
    ox = np.empty(m, dtype=np.int32)
    oc = np.empty(m, dtype=np.uint8)
    cdef int32_t[::1] vy = oy, vz = oz, vx = ox
    cdef uint8_t[::1] vc = oc
    with nogil:
        for t in range(m):
            vy[t] = ys[t]
            vz[t] = zs[t]
            vx[t] = xs[t]
            vc[t] = cl[t]
    return oy, oz, ox, oc


def involvement(const int64_t[::1] paper_ptr, const int32_t[::1] paper_authors,
                const int64_t[::1] author_ptr, const int32_t[::1] author_papers,
                int64_t lo, int64_t hi,
                const int32_t[::1] ys, const int32_t[::1] zs,
                const int64_t[::1] mid_ptr, const int32_t[::1] mids):
    cdef int64_t m = ys.shape[0], i, k, s, e, p, ps, pe, q
    cdef bint hit
    out = np.zeros(m, dtype=np.uint8)
    cdef uint8_t[::1] vo = out
    with nogil:
        for i in range(m):
            s = lower(author_papers, author_ptr[ys[i]], author_ptr[ys[i] + 1], lo)
            e = lower(author_papers, s, author_ptr[ys[i] + 1], hi)
            hit = False
            for k in range(s, e):
                p = author_papers[k]
                ps = paper_ptr[p]
                pe = paper_ptr[p + 1]
                if not contains(paper_authors, ps, pe, zs[i]):
                    continue
                for q in range(mid_ptr[i], mid_ptr[i + 1]):
                    if contains(paper_authors, ps, pe, mids[q]):
                        hit = True
                        break
                if hit:
                    break
            vo[i] = hit
    return out
