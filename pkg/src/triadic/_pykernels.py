"""Pure-Python counting kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when
the extension is unavailable or ``TRIADIC_PURE_PYTHON`` is set.
"""

from __future__ import annotations

from bisect import bisect_left

import numpy as np

NAME = "python"


def _paper_lists(paper_ptr, paper_authors, lo, hi):
    ptr = paper_ptr.tolist()
    flat = paper_authors.tolist()
    return {p: flat[ptr[p] : ptr[p + 1]] for p in range(lo, hi)}


def _author_papers(author_ptr, author_papers, lo, hi):
    ptr = author_ptr.tolist()
    flat = author_papers.tolist()
    out = []
    for a in range(len(ptr) - 1):
        seg = flat[ptr[a] : ptr[a + 1]]
        out.append(seg[bisect_left(seg, lo) : bisect_left(seg, hi)])
    return out


def _pair_dict(keys, counts):
    return dict(zip(keys.tolist(), counts.tolist()))


def project(paper_ptr, paper_authors, author_ptr, author_papers, lo, hi):
    """One-mode projection of papers ``[lo, hi)`` as CSR (indptr, indices)."""
    papers = _paper_lists(paper_ptr, paper_authors, lo, hi)
    by_author = _author_papers(author_ptr, author_papers, lo, hi)
    indptr = [0]
    indices: list[int] = []
    for a, mine in enumerate(by_author):
        nbrs = {b for p in mine for b in papers[p] if b != a}
        indices.extend(sorted(nbrs))
        indptr.append(len(indices))
    return np.asarray(indptr, dtype=np.int64), np.asarray(indices, dtype=np.int32)


def two_path_counts(indptr, indices):
    """Return (centered 2-paths, closed 2-paths = 3 * triangles)."""
    ptr = indptr.tolist()
    flat = indices.tolist()
    nbrs = [flat[ptr[u] : ptr[u + 1]] for u in range(len(ptr) - 1)]
    sets = [set(n) for n in nbrs]
    two = 0
    tri = 0
    for u, nu in enumerate(nbrs):
        d = len(nu)
        two += d * (d - 1) // 2
        su = sets[u]
        for v in nu:
            if v <= u:
                continue
            for w in nbrs[v]:
                if w > v and w in su:
                    tri += 1
    return two, 3 * tri


def four_path_counts(paper_ptr, paper_authors, author_ptr, author_papers, lo, hi, keys, counts):
    """Return (4-paths, closed 4-paths) among papers ``[lo, hi)``.

    ``keys``/``counts`` give the number of papers in range containing each
    author pair (key ``y * n_authors + z``, y < z).
    """
    n = len(author_ptr) - 1
    papers = _paper_lists(paper_ptr, paper_authors, lo, hi)
    sets = {p: set(a) for p, a in papers.items()}
    joint = _pair_dict(keys, counts)
    total = 0
    closed = 0
    for x, mine in enumerate(_author_papers(author_ptr, author_papers, lo, hi)):
        for i, pa in enumerate(mine):
            a_auth = papers[pa]
            a_set = sets[pa]
            for pb in mine[i + 1 :]:
                b_auth = papers[pb]
                b_set = sets[pb]
                shared = len(a_set & b_set) - 1
                total += (len(a_auth) - 1) * (len(b_auth) - 1) - shared
                for y in a_auth:
                    if y == x:
                        continue
                    for z in b_auth:
                        if z == x or z == y:
                            continue
                        key = y * n + z if y < z else z * n + y
                        c = joint.get(key, 0) - (z in a_set) - (y in b_set)
                        if c > 0:
                            closed += 1
    return total, closed


def four_path_triples(
    paper_ptr, paper_authors, author_ptr, author_papers, lo, hi, keys, counts, active, strict
):
    """Emit (y, z, x, closed) for every 4-path Y-A-X-B-Z in ``[lo, hi)``.

    y < z. Paths whose endpoints fail ``active`` (uint8 mask, empty = no
    filter) are skipped. With ``strict`` paths whose endpoints share any paper
    are skipped; otherwise ``closed`` marks paths closed by a third paper.
    """
    n = len(author_ptr) - 1
    papers = _paper_lists(paper_ptr, paper_authors, lo, hi)
    sets = {p: set(a) for p, a in papers.items()}
    joint = _pair_dict(keys, counts)
    act = active.tolist() if len(active) else None
    ys: list[int] = []
    zs: list[int] = []
    xs: list[int] = []
    cl: list[int] = []
    for x, mine in enumerate(_author_papers(author_ptr, author_papers, lo, hi)):
        for i, pa in enumerate(mine):
            a_set = sets[pa]
            for pb in mine[i + 1 :]:
                b_set = sets[pb]
                for y in papers[pa]:
                    if y == x or (act is not None and not act[y]):
                        continue
                    for z in papers[pb]:
                        if z == x or z == y or (act is not None and not act[z]):
                            continue
                        key = y * n + z if y < z else z * n + y
                        j = joint.get(key, 0)
                        if strict:
                            if j:
                                continue
                            c = 0
                        else:
                            c = 1 if j - (z in a_set) - (y in b_set) > 0 else 0
                        ys.append(min(y, z))
                        zs.append(max(y, z))
                        xs.append(x)
                        cl.append(c)
    return (
        np.asarray(ys, dtype=np.int32),
        np.asarray(zs, dtype=np.int32),
        np.asarray(xs, dtype=np.int32),
        np.asarray(cl, dtype=np.uint8),
    )


def involvement(paper_ptr, paper_authors, author_ptr, author_papers, lo, hi, ys, zs, mid_ptr, mids):
    """Flag pairs with a paper in ``[lo, hi)`` holding both endpoints and a middle."""
    ptr = paper_ptr.tolist()
    flat = paper_authors.tolist()
    aptr = author_ptr.tolist()
    apap = author_papers.tolist()
    mptr = mid_ptr.tolist()
    mflat = mids.tolist()
    out = np.zeros(len(ys), dtype=np.uint8)
    for i, (y, z) in enumerate(zip(ys.tolist(), zs.tolist())):
        seg = apap[aptr[y] : aptr[y + 1]]
        middles = mflat[mptr[i] : mptr[i + 1]]
        for p in seg[bisect_left(seg, lo) : bisect_left(seg, hi)]:
            members = set(flat[ptr[p] : ptr[p + 1]])
            if z in members and any(m in members for m in middles):
                out[i] = 1
                break
    return out
