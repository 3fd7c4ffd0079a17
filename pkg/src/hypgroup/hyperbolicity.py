"""Gromov products and thin-triangle delta estimates."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .cayley import all_geodesics, build_ball, geodesic, with_hull
from .groups import BudgetExceeded, GroupModel, Word
from .kernels import delta_pairs

SCHEMA = "hypgroup.delta/1"


@dataclass(frozen=True)
class GromovContext:
    model: GroupModel
    basepoint: Word = ()

    def product(self, g: Word, h: Word) -> float:
        d = self.model.distance
        p = self.basepoint
        return (d(p, g) + d(p, h) - d(g, h)) / 2


def gromov_product(ctx: GromovContext, g: Word, h: Word) -> float:
    """(g|h)_p; always a nonnegative half-integer."""
    return ctx.product(g, h)


def basepoint_shift_bound(ctx: GromovContext, g: Word, h: Word, q: Word) -> bool:
    """(g|h)_q - d(p,q) <= (g|h)_p <= (g|h)_q + d(p,q)."""
    at_p = ctx.product(g, h)
    at_q = GromovContext(ctx.model, q).product(g, h)
    s = ctx.model.distance(ctx.basepoint, q)
    return at_q - s <= at_p <= at_q + s


@dataclass
class DeltaEstimate:
    radius: int
    delta: float
    witness: tuple | None
    mode: str = "exhaustive"
    per_radius: list = field(default_factory=list)
    seed: int | None = None
    count: int | None = None

    def to_json(self, model: GroupModel, group: str) -> dict:
        fmt = model.format
        w = None
        if self.witness is not None:
            w = dict(zip("xyzw", (fmt(v) for v in self.witness)))
        out = {"schema": SCHEMA, "group": group, "radius": self.radius, "mode": self.mode,
               "delta": self.delta, "witness": w,
               "per_radius": [{"radius": r, "delta": v} for r, v in self.per_radius]}
        if self.mode == "sampled":
            out["seed"], out["count"] = self.seed, self.count
        return out


def triangle_thinness(model: GroupModel, x: Word, y: Word, z: Word, sides=None) -> tuple[int, tuple]:
    """Thinness over all three sides and the witness (x', y', z', w) with w on [x', y']."""
    if sides is None:
        sides = [geodesic(model, x, y).vertices, geodesic(model, y, z).vertices,
                 geodesic(model, z, x).vertices]
    corners = [(x, y, z), (y, z, x), (z, x, y)]
    best, wit = -1, None
    for i in range(3):
        other = sides[(i + 1) % 3] + sides[(i + 2) % 3]
        for w in sides[i]:
            d = min(model.distance(w, o) for o in other)
            if d > best:
                best, wit = d, corners[i] + (w,)
    return best, wit


def _scan(model, ball, ys, zs):
    """Thinness per (ys[t], zs[t]) computed on a hull, or None if walks escape."""
    def run(hull):
        yi = np.array([hull.index[ball.words[i]] for i in ys], dtype=np.int64)
        zi = np.array([hull.index[ball.words[i]] for i in zs], dtype=np.int64)
        out = np.zeros(len(ys), dtype=np.int64)
        if delta_pairs(hull.D, hull.step, 0, yi, zi, out) < 0:
            return None
        return out
    return with_hull(model, ball.radius, run)


def _profile(model, ball, ys, zs, vals, R):
    lens = ball.dist
    reach = np.maximum(lens[ys], lens[zs])
    per_radius = []
    for r in range(0, R + 1):
        m = reach <= r
        per_radius.append((r, int(vals[m].max()) if m.any() else 0))
    # first maximiser in shortlex order of (y, z)
    t = int(np.flatnonzero(vals == vals.max())[0]) if len(vals) else None
    return per_radius, t


def estimate_delta(model: GroupModel, R: int, mode: str = "exhaustive", seed: int = 0,
                   count: int = 10_000, budget: int = 50_000_000, strict_cap: int = 4) -> DeltaEstimate:
    """Thin-triangle delta over triangles (1, y, z) with y, z in B_R.

    Canonical geodesics are left-equivariant, so translating x to the identity
    loses nothing: every triangle of diameter <= R is scanned up to translation.
    """
    ball = build_ball(model, R)
    n = len(ball)
    if mode == "strict":
        return _strict(model, ball, R, strict_cap)
    if mode == "exhaustive":
        if n * n > budget:
            raise BudgetExceeded(f"{n * n} triangles exceed budget {budget}")
        ys, zs = np.divmod(np.arange(n * n, dtype=np.int64), n)
    elif mode == "sampled":
        if count > budget:
            raise BudgetExceeded(f"{count} samples exceed budget {budget}")
        rng = np.random.default_rng(seed)
        ys = rng.integers(0, n, count)
        zs = rng.integers(0, n, count)
        order = np.lexsort((zs, ys))
        ys, zs = ys[order], zs[order]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    vals = _scan(model, ball, ys, zs)
    per_radius, t = _profile(model, ball, ys, zs, vals, R)
    y, z = ball.words[ys[t]], ball.words[zs[t]]
    value, wit = triangle_thinness(model, (), y, z)
    assert value == vals[t]
    return DeltaEstimate(R, float(value), wit, mode, per_radius,
                         seed if mode == "sampled" else None, count if mode == "sampled" else None)


def _strict(model, ball, R, cap):
    """Every choice of geodesic on every side; small radii only."""
    if R > cap:
        raise BudgetExceeded(f"strict mode is capped at radius {cap}")
    paths = {}

    def sides(a, b):
        key = (a, b)
        if key not in paths:
            ps, _ = all_geodesics(model, a, b, cap=10_000)
            paths[key] = [p.vertices for p in ps]
        return paths[key]

    per = {}
    best, wit = -1, None
    for y in ball.words:
        for z in ball.words:
            r = max(len(y), len(z))
            for s1, s2, s3 in itertools.product(sides((), y), sides(y, z), sides(z, ())):
                v, w = triangle_thinness(model, (), y, z, [s1, s2, s3])
                per[r] = max(per.get(r, 0), v)
                if v > best:
                    best, wit = v, w
    per_radius, run = [], 0
    for r in range(R + 1):
        run = max(run, per.get(r, 0))
        per_radius.append((r, run))
    return DeltaEstimate(R, float(best), wit, "strict", per_radius)
