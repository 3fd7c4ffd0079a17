"""K-centres of geodesic triangles, the induced coarse median, and CMP scans."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cayley import Hull, geodesic, get_hull, with_hull
from .endo import Endomorphism, ScanProfile, image_table, rational_grid
from .frontier import _encode
from .groups import GroupModel, Word, shortlex_key
from .kernels import centers, free_cmp


@dataclass(frozen=True)
class MedianPoint:
    point: Word
    K_achieved: int


def side(model: GroupModel, p: Word, q: Word) -> list:
    """Vertices of the canonical geodesic between p and q, oriented from the shortlex-smaller end."""
    if shortlex_key(q) < shortlex_key(p):
        p, q = q, p
    return geodesic(model, p, q).vertices


def k_center(model: GroupModel, x: Word, y: Word, z: Word, space=None) -> MedianPoint:
    """mu(x, y, z): the vertex of the three canonical sides minimising its largest
    distance to a side, then the sum of the three distances, then shortlex."""
    d = (space or model).distance
    sides = [side(model, x, y), side(model, y, z), side(model, x, z)]
    best = None
    for c in dict.fromkeys(v for s in sides for v in s):
        ds = [min(d(c, v) for v in s) for s in sides]
        key = (max(ds), sum(ds), shortlex_key(c))
        if best is None or key < best[0]:
            best = (key, c)
    return MedianPoint(best[1], best[0][0])


def tree_median(x: Word, y: Word, z: Word) -> Word:
    """Median of three reduced words in a free group: the deepest pairwise meet."""
    def meet(u, v):
        n = 0
        while n < min(len(u), len(v)) and u[n] == v[n]:
            n += 1
        return u[:n]
    return max((meet(x, y), meet(y, z), meet(x, z)), key=len)


def batch_centers(model: GroupModel, triples: list, chunk: int = 500_000) -> list:
    """k_center for many triples at once on a hull; returns (points, K values)."""
    if not triples:
        return [], []
    reach = max(len(w) for t in triples for w in t)

    def run(hull: Hull):
        idx = np.array([[hull.index[w] for w in t] for t in triples], dtype=np.int64)
        pts = np.empty(len(idx), np.int64)
        ks = np.empty(len(idx), np.int64)
        for lo in range(0, len(idx), chunk):
            sl = slice(lo, lo + chunk)
            if centers(hull.D, hull.step, idx[sl], pts[sl], ks[sl]) < 0:
                return None
        return [hull.words[i] for i in pts], ks.tolist()

    return with_hull(model, reach, run)


def median_axiom_constants(model: GroupModel, R: int, mode: str = "exhaustive",
                           seed: int = 0, count: int = 20_000,
                           exhaustive_cap: int = 10_000_000) -> dict:
    """Measured axiom constants of mu on B_R.

    axiom 2: C2 = max d(mu(mu(a,x,b),x,c), mu(a,x,mu(b,x,c)))
    axiom 3: minimal additive then multiplicative pair with
             d(mu(a,b,c), mu(x,b,c)) <= mult d(a,x) + add
    Quadruples are exhaustive while |B_R|^4 <= exhaustive_cap, otherwise sampled.
    """
    def run(hull: Hull):
        try:
            return _axioms_on(hull, R, mode, seed, count, exhaustive_cap)
        except _Escaped:
            return None

    return with_hull(model, R, run)


class _Escaped(Exception):
    pass


class _MedianTable:
    """Lazily filled dense table of mu over hull indices."""

    def __init__(self, hull: Hull):
        self.hull = hull
        n = len(hull.words)
        self.n = n
        self.table = np.full(n ** 3, -1, dtype=np.int32)

    def __call__(self, a, b, c):
        t = np.sort(np.stack([a, b, c], axis=1), axis=1)
        key = (t[:, 0] * self.n + t[:, 1]) * self.n + t[:, 2]
        miss = np.unique(key[self.table[key] < 0])
        if len(miss):
            trip = np.stack([miss // (self.n * self.n), (miss // self.n) % self.n, miss % self.n], axis=1)
            pts = np.empty(len(trip), np.int64)
            ks = np.empty(len(trip), np.int64)
            if centers(self.hull.D, self.hull.step, trip, pts, ks) < 0:
                raise _Escaped
            self.table[miss] = pts
        return self.table[key].astype(np.int64)


def _axioms_on(hull, R, mode, seed, count, cap):
    D = hull.D
    ball = np.flatnonzero(D[0] <= R)
    nb = len(ball)
    if mode == "exhaustive" and nb ** 4 > cap:
        mode = "sampled"
    mu = _MedianTable(hull)
    c2, c2_wit = 0, None
    worst = np.full(2 * R + 1, -1, dtype=np.int64)
    worst_wit: dict = {}
    if mode == "exhaustive":
        rest = np.array(list(itertools.product(range(nb), repeat=3)), dtype=np.int64)
        blocks = [np.column_stack([np.full(len(rest), i), rest]) for i in range(nb)]
    else:
        rng = np.random.default_rng(seed)
        blocks = [rng.integers(0, nb, size=(count, 4))]
    total = 0
    for q in blocks:
        total += len(q)
        a, b, c, x = (ball[q[:, i]] for i in range(4))
        o1 = mu(mu(a, x, b), x, c)
        o2 = mu(a, x, mu(b, x, c))
        e = D[o1, o2]
        t = int(np.argmax(e))
        if e[t] > c2:
            c2, c2_wit = int(e[t]), tuple(hull.words[v] for v in (a[t], b[t], c[t], x[t]))
        e3 = D[mu(a, b, c), mu(x, b, c)].astype(np.int64)
        dist = D[a, x].astype(np.int64)
        for t_ in np.unique(dist):
            sel = np.flatnonzero(dist == t_)
            j = sel[np.argmax(e3[sel])]
            if e3[j] > worst[t_]:
                worst[t_] = e3[j]
                worst_wit[int(t_)] = tuple(hull.words[v] for v in (a[j], b[j], c[j], x[j]))
    profile = {int(t): (int(v), worst_wit[int(t)]) for t, v in enumerate(worst) if v >= 0}
    mult, add = _fit_axiom3(profile, R)
    return {"C2": c2, "C2_witness": c2_wit, "C3_mult": mult, "C3_add": add,
            "axiom3_profile": {t: v for t, (v, _) in profile.items()},
            "mode": mode, "quadruples": total}


def _fit_axiom3(worst: dict, R: int):
    grid = rational_grid(4, Fraction(1, 4), 2 * R)
    for add in range(0, 2 * R + 1):
        for mult in grid:
            if all(e <= mult * t + add for t, (e, _) in worst.items()):
                return mult, add
    return None, None


# --------------------------------------------------------------------------- CMP


def _cmp_free(phi: Endomorphism, R: int, triples: np.ndarray) -> np.ndarray:
    tab = image_table(phi, R)
    key = ("free", id(tab))
    cache = _free_cache.get(key)
    if cache is None:
        bcodes = _encode(tab.ball.words, R + 1)
        icodes = _encode(tab.images, int(tab.img_len.max(initial=0)) + 1)
        cache = (bcodes, np.asarray(tab.ball.dist), tab.ball.parents(), icodes, tab.img_len)
        _free_cache.clear()
        _free_cache[key] = cache
    out = np.zeros(len(triples), np.int64)
    free_cmp(*cache, triples, out)
    return out


_free_cache: dict = {}


def _cmp_generic(phi: Endomorphism, R: int, triples: np.ndarray) -> np.ndarray:
    tab = image_table(phi, R)
    model = phi.model
    words, images = tab.ball.words, tab.images
    trip_w = [tuple(words[i] for i in t) for t in triples]
    mu, _ = batch_centers(model, trip_w)
    img_trip = [tuple(images[i] for i in t) for t in triples]
    mu_img, _ = batch_centers(model, img_trip)
    return np.array([model.distance(phi(m), n) for m, n in zip(mu, mu_img)], dtype=np.int64)


def _geodesic_triples(tab, r_max):
    """(1, y_k, y) for y in B_r and y_k the vertices of [1, y]."""
    ball = tab.ball
    parent = ball.parents()
    rows = []
    for i in range(len(ball)):
        v = i
        while v >= 0:
            rows.append((0, v, i))
            v = parent[v]
    return np.array(rows, dtype=np.int64).reshape(-1, 3)


def cmp_scan(phi: Endomorphism, R: int, seed: int = 0, count: int = 20_000,
             budget: int = 200_000) -> ScanProfile:
    """Per radius: max d(mu(x,y,z) phi, mu(x phi, y phi, z phi)).

    Triples: every (1, y_k, y) with y_k on [1, y], y in B_r, plus all triples of
    B_r when there are at most ``budget`` of them, otherwise ``count`` seeded
    samples per radius.  Free groups evaluate mu by the tree median.
    """
    tab = image_table(phi, R)
    model = phi.model
    lens = np.asarray(tab.ball.dist)
    evaluate = _cmp_free if model.is_free() else _cmp_generic
    geo = _geodesic_triples(tab, R)
    gvals = evaluate(phi, R, geo)
    greach = lens[geo[:, 2]]
    per, best, wit = [], -1, None
    sampled = False
    for r in range(1, R + 1):
        members = np.flatnonzero(lens <= r)
        n = len(members)
        total = n * (n + 1) * (n + 2) // 6
        if total <= budget:
            trip = np.array(list(itertools.combinations_with_replacement(members, 3)), dtype=np.int64)
        else:
            sampled = True
            rng = np.random.default_rng(seed + r)
            trip = np.sort(members[rng.integers(0, n, size=(count, 3))], axis=1)
        vals = evaluate(phi, R, trip) if len(trip) else np.zeros(0, np.int64)
        gm = np.flatnonzero(greach == r)
        cands = []
        if len(gm):
            t = int(gm[np.argmax(gvals[gm])])
            cands.append((int(gvals[t]), tuple(geo[t])))
        if len(vals):
            t = int(np.argmax(vals))
            cands.append((int(vals[t]), tuple(trip[t])))
        for v, tr in cands:
            if v > best:
                best, wit = v, tr
        words = tab.ball.words
        per.append((r, best, {"x": words[wit[0]], "y": words[wit[1]], "z": words[wit[2]]}))
    prof = ScanProfile("cmp", per, {"endo": phi.name, "seed": seed, "count": count})
    if sampled:
        prof.notes.append(f"general triples sampled ({count} per radius, seed {seed} + r)")
    return prof
