"""Extremes of image Gromov products (u phi | v phi) at each level of (u|v).

For a ball B_r and a level a (a half-integer, stored doubled) we want

* ``upper[a]``:   max (u phi|v phi) over pairs with (u|v) <= a
* ``lower[a]``:   min (u phi|v phi) over pairs with (u|v) >= a (u = v allowed)
* ``lower_h[a]``: the same restricted to pairs with u phi != v phi

Every scan that compares Gromov products of pairs and of their images reads off
these three curves.  Two routes compute them: brute force over pairs, and a
sorting route for free groups where (u|v) is the common-prefix length of the
reduced words.  The second never touches pairs explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cayley import Ball


@dataclass
class Extreme:
    value2: int  # doubled Gromov product of the images
    pair: tuple  # (u, v) words


@dataclass
class Frontier:
    radius: int
    upper: dict  # doubled level -> Extreme
    lower: dict
    lower_h: dict

    def levels(self):
        return sorted(set(self.upper) | set(self.lower))

    def upper_at(self, a2: int) -> Extreme | None:
        """Max image product over pairs with doubled level <= a2."""
        keys = [k for k in self.upper if k <= a2]
        return self.upper[max(keys)] if keys else None

    def lower_at(self, a2: int, holder: bool = False) -> Extreme | None:
        table = self.lower_h if holder else self.lower
        keys = [k for k in table if k >= a2]
        return table[min(keys)] if keys else None


def _encode(words, width):
    """Rows of letter codes (1..2n), zero padded, so that prefixes sort first."""
    out = np.zeros((len(words), max(width, 1)), dtype=np.int8)
    for i, w in enumerate(words):
        for j, l in enumerate(w):
            out[i, j] = 2 * (abs(l) - 1) + (l < 0) + 1
    return out


def _lcp_rows(A, B):
    eq = (A == B) & (A != 0)
    return np.cumprod(eq, axis=1).sum(axis=1)


def _shortlex_pair(u, v):
    key = lambda w: (len(w), tuple(2 * (abs(l) - 1) + (l < 0) for l in w))
    return (u, v) if key(u) <= key(v) else (v, u)


class FreeRoute:
    """Sorting route for free groups; valid for basepoint 1 only."""

    def __init__(self, ball: Ball, images: list):
        self.ball = ball
        self.images = images
        self.words = ball.words
        self.lens = np.asarray(ball.dist)
        self.img_len = np.array([len(w) for w in images], dtype=np.int64)
        self.codes = _encode(images, int(self.img_len.max(initial=0)))
        cols = [self.codes[:, j] for j in range(self.codes.shape[1] - 1, -1, -1)]
        self.order = np.lexsort(cols)  # lexicographic order of images
        self.rank = np.empty_like(self.order)
        self.rank[self.order] = np.arange(len(self.order))
        width = int(self.lens.max(initial=0))
        self.wcodes = _encode(self.words, width).astype(np.int64)
        base = int(self.wcodes.max(initial=0)) + 1
        # prefix_id[:, a] identifies the length-a prefix of each ball word
        pid = np.zeros((len(self.words), width + 1), dtype=np.int64)
        for a in range(1, width + 1):
            pid[:, a] = pid[:, a - 1] * base + self.wcodes[:, a - 1]
        self.prefix_id = pid

    def frontier(self, r: int) -> Frontier:
        upper, lower, lower_h = {}, {}, {}
        keep = self.lens <= r
        idx = self.order[keep[self.order]]  # members of B_r in image order
        A, B = self.codes[idx[:-1]], self.codes[idx[1:]]
        adj = _lcp_rows(A, B) if len(idx) > 1 else np.zeros(0, dtype=np.int64)
        lens_r = self.lens[idx]
        # best self pair (u, u) with |u| <= a: value |u phi|
        self_best = {}
        for a in range(r + 1):
            m = keep & (self.lens <= a)
            if m.any():
                i = int(np.flatnonzero(m)[np.argmax(self.img_len[m])])
                self_best[a] = (int(self.img_len[i]), i)
        for a in range(r + 1):
            # upper: pairs whose (a+1)-prefixes differ, adjacent in image order suffice
            lab = np.where(lens_r > a, self.prefix_id[idx, min(a + 1, self.prefix_id.shape[1] - 1)],
                           -1 - idx)
            ok = lab[:-1] != lab[1:]
            best, pair = -1, None
            if ok.any():
                cand = np.where(ok, adj, -1)
                t = int(np.argmax(cand))
                best = int(cand[t])
                pair = (self.words[idx[t]], self.words[idx[t + 1]])
            sb = self_best.get(a)
            if sb is not None and sb[0] > best:
                best, pair = sb[0], (self.words[sb[1]], self.words[sb[1]])
            upper[2 * a] = Extreme(2 * best, _shortlex_pair(*pair))
            # lower: group by a-prefix, extremes of image rank inside each group
            m = keep & (self.lens >= a)
            members = np.flatnonzero(m)
            if len(members) == 0:
                continue
            gid = self.prefix_id[members, a]
            srt = np.lexsort((self.rank[members], gid))
            members, gid = members[srt], gid[srt]
            starts = np.flatnonzero(np.r_[True, gid[1:] != gid[:-1]])
            ends = np.r_[starts[1:], len(members)] - 1
            lo, hi = members[starts], members[ends]
            l = _lcp_rows(self.codes[lo], self.codes[hi])
            t = int(np.argmin(l))
            lower[2 * a] = Extreme(2 * int(l[t]), _shortlex_pair(self.words[lo[t]], self.words[hi[t]]))
            distinct = self.rank[lo] != self.rank[hi]
            same_img = np.all(self.codes[lo] == self.codes[hi], axis=1)
            distinct &= ~same_img
            if distinct.any():
                lh = np.where(distinct, l, np.iinfo(np.int64).max)
                t = int(np.argmin(lh))
                lower_h[2 * a] = Extreme(2 * int(lh[t]), _shortlex_pair(self.words[lo[t]], self.words[hi[t]]))
        return Frontier(r, upper, lower, lower_h)


def brute_frontiers(model, ball: Ball, images: list, R: int, basepoint=()) -> dict:
    """All radii 0..R by explicit pairs; (u|v) and (u phi|v phi) at ``basepoint``."""
    words = ball.words
    d = model.distance
    p = basepoint
    pimg = p  # basepoint for the image side is the same element
    lw = [d(p, w) for w in words]
    li = [d(pimg, w) for w in images]
    # exact aggregates keyed by (pair radius, doubled level)
    hi, lo, loh = {}, {}, {}
    n = len(words)
    for i in range(n):
        for j in range(i, n):
            a2 = lw[i] + lw[j] - d(words[i], words[j])
            g2 = li[i] + li[j] - d(images[i], images[j])
            r = max(len(words[i]), len(words[j]))
            key = (r, a2)
            pair = (words[i], words[j])
            if key not in hi or g2 > hi[key].value2:
                hi[key] = Extreme(g2, pair)
            if key not in lo or g2 < lo[key].value2:
                lo[key] = Extreme(g2, pair)
            if images[i] != images[j] and (key not in loh or g2 < loh[key].value2):
                loh[key] = Extreme(g2, pair)
    out = {}
    for r in range(R + 1):
        levels = sorted({a for (rr, a) in hi if rr <= r})
        up, dn, dnh = {}, {}, {}

        exact_hi, exact_lo, exact_loh = {}, {}, {}
        for (rr, a), e in sorted(hi.items()):
            if rr <= r and (a not in exact_hi or e.value2 > exact_hi[a].value2):
                exact_hi[a] = e
        for (rr, a), e in sorted(lo.items()):
            if rr <= r and (a not in exact_lo or e.value2 < exact_lo[a].value2):
                exact_lo[a] = e
        for (rr, a), e in sorted(loh.items()):
            if rr <= r and (a not in exact_loh or e.value2 < exact_loh[a].value2):
                exact_loh[a] = e
        run = None
        for a in levels:
            e = exact_hi.get(a)
            if e is not None and (run is None or e.value2 > run.value2):
                run = e
            up[a] = run
        run = runh = None
        for a in reversed(levels):
            e = exact_lo.get(a)
            if e is not None and (run is None or e.value2 < run.value2):
                run = e
            if run is not None:
                dn[a] = run
            e = exact_loh.get(a)
            if e is not None and (runh is None or e.value2 < runh.value2):
                runh = e
            if runh is not None:
                dnh[a] = runh
        out[r] = Frontier(r, up, dn, dnh)
    return out
