"""Compiled inner loops over a Hull (distance matrix ``D`` plus step table).

A canonical geodesic is recovered by the greedy walk: from the current vertex
take the smallest letter that lowers the distance to the target.  Walks that
touch the hull boundary return -1 so the caller can retry on a larger hull.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def walk(D, step, src, dst, buf):
    """Write the canonical geodesic src -> dst into buf; return its vertex count or -1."""
    cur = src
    n = 0
    buf[n] = cur
    n += 1
    while D[cur, dst] > 0:
        want = D[cur, dst] - 1
        nxt = -1
        for k in range(step.shape[1]):
            s = step[cur, k]
            if s < 0:
                return -1
            if D[s, dst] == want:
                nxt = s
                break
        if nxt < 0:
            return -1
        cur = nxt
        buf[n] = cur
        n += 1
    return n


@njit(cache=True)
def _side_gap(D, side, ns, other1, n1, other2, n2):
    """max over w on side of d(w, other1 U other2), and the argmax position."""
    best = -1
    arg = 0
    for i in range(ns):
        w = side[i]
        m = 1 << 30
        for j in range(n1):
            d = D[w, other1[j]]
            if d < m:
                m = d
        for j in range(n2):
            d = D[w, other2[j]]
            if d < m:
                m = d
        if m > best:
            best = m
            arg = i
    return best, arg


@njit(cache=True)
def delta_pairs(D, step, origin, ys, zs, out):
    """out[t] = thinness of the triangle (origin, ys[t], zs[t]) over all three sides.

    Returns 0, or -1 as soon as a walk leaves the hull.
    """
    L = D.shape[0]
    a = np.empty(L, np.int64)
    b = np.empty(L, np.int64)
    c = np.empty(L, np.int64)
    last_y = -1
    na = 0
    for t in range(ys.shape[0]):
        y = ys[t]
        z = zs[t]
        if y != last_y:
            na = walk(D, step, origin, y, a)
            last_y = y
            if na < 0:
                return -1
        nb = walk(D, step, y, z, b)
        nc = walk(D, step, z, origin, c)
        if nb < 0 or nc < 0:
            return -1
        g1, _ = _side_gap(D, a, na, b, nb, c, nc)
        g2, _ = _side_gap(D, b, nb, c, nc, a, na)
        g3, _ = _side_gap(D, c, nc, a, na, b, nb)
        out[t] = max(g1, max(g2, g3))
    return 0


@njit(cache=True)
def _center(D, s0, n0, s1, n1, s2, n2):
    best_k = 1 << 30
    best_s = 1 << 30
    best_c = -1
    for which in range(3):
        if which == 0:
            cand, nc = s0, n0
        elif which == 1:
            cand, nc = s1, n1
        else:
            cand, nc = s2, n2
        for t in range(nc):
            c = cand[t]
            worst = 0
            total = 0
            pruned = False
            for side in range(3):
                if side == which:
                    continue
                if side == 0:
                    sv, ns = s0, n0
                elif side == 1:
                    sv, ns = s1, n1
                else:
                    sv, ns = s2, n2
                m = 1 << 30
                for j in range(ns):
                    d = D[c, sv[j]]
                    if d < m:
                        m = d
                        if m == 0:
                            break
                if m > worst:
                    worst = m
                total += m
                if worst > best_k:
                    pruned = True
                    break
            if pruned:
                continue
            if (worst < best_k or (worst == best_k and total < best_s)
                    or (worst == best_k and total == best_s and c < best_c)):
                best_k, best_s, best_c = worst, total, c
    return best_c, best_k


@njit(cache=True)
def centers(D, step, triples, out_c, out_k):
    """Minimax centre of each triple against its three sides.

    The side on {p, q} is the canonical geodesic from min(p, q) to max(p, q);
    hull indices follow shortlex order, so this is orientation by shortlex.
    Returns 0, or -1 if a walk leaves the hull.
    """
    L = D.shape[0]
    s0 = np.empty(L, np.int64)
    s1 = np.empty(L, np.int64)
    s2 = np.empty(L, np.int64)
    for t in range(triples.shape[0]):
        x, y, z = triples[t, 0], triples[t, 1], triples[t, 2]
        n0 = walk(D, step, min(x, y), max(x, y), s0)
        n1 = walk(D, step, min(y, z), max(y, z), s1)
        n2 = walk(D, step, min(x, z), max(x, z), s2)
        if n0 < 0 or n1 < 0 or n2 < 0:
            return -1
        c, k = _center(D, s0, n0, s1, n1, s2, n2)
        out_c[t] = c
        out_k[t] = k
    return 0


@njit(cache=True)
def free_haus(codes, img_len, parent, lo, hi, out_haus, out_nbhd):
    """Image of the canonical geodesic [1, g] against the geodesic [1, g phi] in a tree.

    codes holds the padded images of a prefix-closed ball, ``parent[i]`` is the
    index of the word with its last letter removed.  For each g in [lo, hi)
    writes the Hausdorff distance and the one-sided deviation.
    """
    W = codes.shape[1]
    P = np.empty(64, np.int64)
    lp = np.empty(64, np.int64)
    for g in range(lo, hi):
        n = 0
        v = g
        while v >= 0:
            P[n] = v
            n += 1
            v = parent[v]
        Lg = img_len[g]
        nb = 0
        for t in range(n):
            p = P[t]
            l = 0
            while l < W and codes[p, l] != 0 and codes[p, l] == codes[g, l]:
                l += 1
            lp[t] = l
            dev = img_len[p] - l
            if dev > nb:
                nb = dev
        back = 0
        for j in range(Lg + 1):
            m = 1 << 30
            for t in range(n):
                jj = j if j < lp[t] else lp[t]
                d = j + img_len[P[t]] - 2 * jj
                if d < m:
                    m = d
            if m > back:
                back = m
        out_nbhd[g - lo] = nb
        out_haus[g - lo] = nb if nb > back else back


@njit(cache=True)
def _lcp(A, i, B, j):
    W = min(A.shape[1], B.shape[1])
    l = 0
    while l < W and A[i, l] != 0 and A[i, l] == B[j, l]:
        l += 1
    return l


@njit(cache=True)
def _ancestor(parent, blen, v, depth):
    while blen[v] > depth:
        v = parent[v]
    return v


@njit(cache=True)
def free_cmp(bcodes, blen, parent, icodes, ilen, triples, out):
    """d(phi(mu(x,y,z)), mu(x phi, y phi, z phi)) for ball-index triples in a free group.

    The tree median is the deepest of the three pairwise meets; images are
    rows of ``icodes`` aligned with the ball.
    """
    for t in range(triples.shape[0]):
        x, y, z = triples[t, 0], triples[t, 1], triples[t, 2]
        lxy = _lcp(bcodes, x, bcodes, y)
        lyz = _lcp(bcodes, y, bcodes, z)
        lxz = _lcp(bcodes, x, bcodes, z)
        src, l = x, lxy
        if lyz > l:
            src, l = y, lyz
        if lxz > l:
            src, l = x, lxz
        m = _ancestor(parent, blen, src, l)
        # median of the images
        ixy = _lcp(icodes, x, icodes, y)
        iyz = _lcp(icodes, y, icodes, z)
        ixz = _lcp(icodes, x, icodes, z)
        isrc, il = x, ixy
        if iyz > il:
            isrc, il = y, iyz
        if ixz > il:
            isrc, il = x, ixz
        c = _lcp(icodes, m, icodes, isrc)
        if c > il:
            c = il
        out[t] = ilen[m] + il - 2 * c
