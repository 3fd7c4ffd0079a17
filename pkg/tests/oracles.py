"""Brute-force reference implementations, deliberately independent of hypgroup.

Each group is modelled by a concrete element type (reduced tuples, integer
pairs, affine maps of Z) and every metric quantity is derived from plain BFS
over that model.  Nothing here imports the package.
"""
from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction


def _key(word):
    return (len(word), tuple(2 * (abs(l) - 1) + (l < 0) for l in word))


class OracleGroup:
    def __init__(self, name, rank, mul, inv, gen, identity):
        self.name = name
        self.letters = tuple(l for i in range(1, rank + 1) for l in (i, -i))
        self.mul, self.inv, self.gen, self.identity = mul, inv, gen, identity
        self._bfs_radius = -1
        self._dist = {}
        self._word = {}

    def eval(self, word):
        g = self.identity
        for l in word:
            g = self.mul(g, self.gen(l))
        return g

    def grow(self, radius):
        """BFS in letter order over a shortlex-sorted frontier: first visit is shortlex-least."""
        if radius <= self._bfs_radius:
            return
        self._dist = {self.identity: 0}
        self._word = {self.identity: ()}
        frontier = [self.identity]
        for d in range(1, radius + 1):
            nxt = []
            for g in frontier:
                for l in self.letters:
                    h = self.mul(g, self.gen(l))
                    if h not in self._dist:
                        self._dist[h] = d
                        self._word[h] = self._word[g] + (l,)
                        nxt.append(h)
            nxt.sort(key=lambda h: _key(self._word[h]))
            frontier = nxt
        self._bfs_radius = radius

    def ball(self, radius):
        self.grow(radius)
        out = [g for g, d in self._dist.items() if d <= radius]
        return sorted(out, key=lambda g: _key(self._word[g]))

    def length(self, g):
        if g not in self._dist:
            self.grow(self._bfs_radius + 4)
            return self.length(g)
        return self._dist[g]

    def word(self, g):
        self.length(g)
        return self._word[g]

    def d(self, g, h):
        return self.length(self.mul(self.inv(g), h))

    def geodesic(self, g, h):
        """Vertices of the shortlex-least geodesic from g to h."""
        out = [g]
        for l in self.word(self.mul(self.inv(g), h)):
            out.append(self.mul(out[-1], self.gen(l)))
        return out


def _free_mul(u, v):
    out = list(u)
    for l in v:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


class _FreeOracle(OracleGroup):
    """Elements are freely reduced tuples, which are already the unique geodesic words."""

    def length(self, g):
        return len(g)

    def word(self, g):
        return g


def free_group(rank, name):
    return _FreeOracle(name, rank, _free_mul, lambda u: tuple(-l for l in reversed(u)),
                       lambda l: (l,), ())


def free_group_bfs(rank, name):
    """Free group whose lengths come from plain BFS rather than from reduction."""
    return OracleGroup(name, rank, _free_mul, lambda u: tuple(-l for l in reversed(u)),
                       lambda l: (l,), ())


def zx2():
    gens = {1: (1, 0), -1: (-1, 0), 2: (0, 1), -2: (0, 1)}
    return OracleGroup("Zx2", 2, lambda g, h: (g[0] + h[0], (g[1] + h[1]) % 2),
                       lambda g: (-g[0], g[1]), gens.__getitem__, (0, 0))


def z2():
    gens = {1: (1, 0), -1: (-1, 0), 2: (0, 1), -2: (0, -1)}
    return OracleGroup("Z2", 2, lambda g, h: (g[0] + h[0], g[1] + h[1]),
                       lambda g: (-g[0], -g[1]), gens.__getitem__, (0, 0))


def dinf():
    # affine maps k -> e*k + c of Z; s: k -> -k, r: k -> 1 - k
    def mul(g, h):  # apply g then h (right action matches word order)
        return (g[0] * h[0], h[0] * g[1] + h[1])

    def inv(g):
        return (g[0], -g[0] * g[1])

    gens = {1: (-1, 0), -1: (-1, 0), 2: (-1, 1), -2: (-1, 1)}
    return OracleGroup("Dinf", 2, mul, inv, gens.__getitem__, (1, 0))


def all_groups():
    return {"F2": free_group(2, "F2"), "F3": free_group(3, "F3"), "Zx2": zx2(),
            "Dinf": dinf(), "Z2": z2()}


def words_upto(letters, n):
    for k in range(n + 1):
        yield from itertools.product(letters, repeat=k)


def gromov(G, g, h, p=None):
    p = G.identity if p is None else p
    return Fraction(G.d(p, g) + G.d(p, h) - G.d(g, h), 2)


def set_dist(G, x, S):
    return min(G.d(x, s) for s in S)


def delta(G, R):
    """Thin-triangle delta over triangles (1, y, z), y, z in B_R, all three sides measured."""
    B = G.ball(R)
    e = G.identity
    best = 0
    for y in B:
        for z in B:
            sides = [G.geodesic(e, y), G.geodesic(y, z), G.geodesic(z, e)]
            for i in range(3):
                other = sides[(i + 1) % 3] + sides[(i + 2) % 3]
                for w in sides[i]:
                    best = max(best, set_dist(G, w, other))
    return best


def ftp_geodesics(G, R, tol=1):
    """Max same-index prefix distance for canonical geodesics 1->y, 1->y' with d(y,y') <= tol."""
    B = G.ball(R)
    paths = {y: G.geodesic(G.identity, y) for y in B}
    best = 0
    for y in B:
        for z in B:
            if G.d(y, z) > tol:
                continue
            a, b = paths[y], paths[z]
            for n in range(max(len(a), len(b))):
                best = max(best, G.d(a[min(n, len(a) - 1)], b[min(n, len(b) - 1)]))
    return best


def tree_median(x, y, z):
    def lcp(u, v):
        n = 0
        while n < min(len(u), len(v)) and u[n] == v[n]:
            n += 1
        return n
    # the median is the longest of the three pairwise common prefixes
    cands = [x[:lcp(x, y)], y[:lcp(y, z)], x[:lcp(x, z)]]
    return max(cands, key=len)


def minimax_center(G, x, y, z, search):
    """Brute minimax over ``search`` against the three shortlex-oriented sides."""
    def side(a, b):
        return G.geodesic(a, b) if _key(G.word(a)) <= _key(G.word(b)) else G.geodesic(b, a)
    sides = [side(x, y), side(y, z), side(x, z)]
    best = None
    for c in search:
        ds = [set_dist(G, c, s) for s in sides]
        k = (max(ds), sum(ds), _key(G.word(c)))
        if best is None or k < best[0]:
            best = (k, c)
    return best[1], best[0][0]


def kernel_count(G, images, R):
    phi = lambda g: G.eval(tuple(l2 for l in G.word(g) for l2 in _image(images, l)))
    return sum(1 for g in G.ball(R) if g != G.identity and phi(g) == G.identity)


def _image(images, l):
    w = images[abs(l)]
    return w if l > 0 else tuple(-m for m in reversed(w))


def endo_map(G, images):
    return lambda g: G.eval(tuple(m for l in G.word(g) for m in _image(images, l)))


def brp_gromov(G, images, R, p=0):
    """Per-radius max (u phi | v phi) over u, v in B_r with (u|v) <= p."""
    phi = endo_map(G, images)
    B = G.ball(R)
    img = {g: phi(g) for g in B}
    out = []
    for r in range(1, R + 1):
        Br = [g for g in B if G.length(g) <= r]
        best = Fraction(0)
        for u in Br:
            for v in Br:
                if gromov(G, u, v) <= p:
                    best = max(best, gromov(G, img[u], img[v]))
        out.append(best)
    return out


def concat_defect(G, u, v):
    """Max (j - i) - d(v_i, v_j) along [1, u^-1] + [u^-1, u^-1 v]."""
    ui = G.inv(u)
    verts = G.geodesic(G.identity, ui) + G.geodesic(ui, G.mul(ui, v))[1:]
    worst = 0
    for i in range(len(verts)):
        for j in range(i, len(verts)):
            worst = max(worst, (j - i) - G.d(verts[i], verts[j]))
    return worst


def side_vertices(G, x, y, z):
    def side(a, b):
        return G.geodesic(a, b) if _key(G.word(a)) <= _key(G.word(b)) else G.geodesic(b, a)
    out = []
    for s in (side(x, y), side(y, z), side(x, z)):
        out.extend(v for v in s if v not in out)
    return out


def make_median(G, free=False):
    """mu as a memoised function on group elements (tree median on free groups)."""
    memo = {}

    def mu(x, y, z):
        k = tuple(sorted((x, y, z), key=lambda g: _key(G.word(g))))
        if k not in memo:
            if free:
                memo[k] = tree_median(*k)
            else:
                memo[k] = minimax_center(G, *k, side_vertices(G, *k))[0]
        return memo[k]
    return mu


def median_axioms(G, R, free=False):
    """C2 and the per-distance axiom-3 maxima over all quadruples of B_R."""
    mu = make_median(G, free)
    B = G.ball(R)
    c2, prof = 0, {}
    for a, b, c, x in itertools.product(B, repeat=4):
        c2 = max(c2, G.d(mu(mu(a, x, b), x, c), mu(a, x, mu(b, x, c))))
        t = G.d(a, x)
        prof[t] = max(prof.get(t, 0), G.d(mu(a, b, c), mu(x, b, c)))
    return c2, prof


def cmp_values(G, images, R, free=False):
    """Per-radius max d(mu(x,y,z) phi, mu(x phi, y phi, z phi)) over all triples of B_r."""
    mu = make_median(G, free)
    phi = endo_map(G, images)
    B = G.ball(R)
    out, best = [], 0
    for r in range(1, R + 1):
        Br = [g for g in B if G.length(g) == r]
        inner = [g for g in B if G.length(g) <= r]
        for x, y, z in itertools.product(inner, Br, inner):
            best = max(best, G.d(phi(mu(x, y, z)), mu(phi(x), phi(y), phi(z))))
        out.append(best)
    return out


def qie_gromov_min_A(G, images, R, lam):
    """Least A with (u|v)/lam - A <= (u phi|v phi) <= lam (u|v) + A on B_R."""
    phi = endo_map(G, images)
    B = G.ball(R)
    img = {g: phi(g) for g in B}
    lam = Fraction(lam)
    A = Fraction(0)
    for u in B:
        for v in B:
            a, g = gromov(G, u, v), gromov(G, img[u], img[v])
            A = max(A, a / lam - g, g - lam * a)
    return A


def min_image_product_gap(G, images, R):
    """min over pairs of B_R of (u phi|v phi) - (u|v)."""
    phi = endo_map(G, images)
    B = G.ball(R)
    img = {g: phi(g) for g in B}
    return min(gromov(G, img[u], img[v]) - gromov(G, u, v) for u in B for v in B)
