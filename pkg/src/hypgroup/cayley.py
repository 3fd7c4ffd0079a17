"""Finite Cayley balls, geodesics, Hausdorff distances and distance tables."""
from __future__ import annotations

import csv
import io
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .groups import (BudgetExceeded, GroupModel, OutOfBall, Word, invert_word,
                     shortlex_key)

DEFAULT_BUDGET = 5_000_000


@dataclass
class Ball:
    model: GroupModel
    radius: int
    words: list
    dist: np.ndarray
    index: dict = field(repr=False)

    def __len__(self):
        return len(self.words)

    def __contains__(self, w):
        return w in self.index

    def distance(self, x: Word, y: Word) -> int:
        if x not in self.index or y not in self.index:
            raise OutOfBall(f"{self.model.format(x)} or {self.model.format(y)} not in ball of radius {self.radius}")
        d = self.model.distance(x, y)
        if d > self.radius:
            raise OutOfBall(f"d = {d} exceeds ball radius {self.radius}")
        return d

    def sphere(self, r: int) -> list:
        return [w for w in self.words if len(w) == r]

    def upto(self, r: int) -> list:
        """Elements at distance <= r, shortlex order."""
        return self.words[: int(np.searchsorted(self.dist, r, side="right"))]

    def parents(self) -> np.ndarray:
        """Index of each element's one-letter-shorter prefix (-1 for the identity)."""
        out = np.full(len(self.words), -1, dtype=np.int64)
        for i, w in enumerate(self.words):
            if w:
                out[i] = self.index[w[:-1]]
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["canonical_word", "dist"])
        for w, d in zip(self.words, self.dist):
            wr.writerow([self.model.format(w), int(d)])
        return buf.getvalue()


def build_ball(model: GroupModel, radius: int, budget: int = DEFAULT_BUDGET) -> Ball:
    """Breadth-first ball around the identity; spheres are emitted in shortlex order."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    seen = {(): 0}
    words = [()]
    dists = [0]
    frontier = [()]
    for d in range(1, radius + 1):
        nxt = []
        for w in frontier:
            for l in model.letters:
                v = model._normal_form(w + (l,))
                if v not in seen:
                    seen[v] = d
                    nxt.append(v)
                    if len(seen) > budget:
                        raise BudgetExceeded(f"ball of radius {radius} exceeds {budget} elements")
        nxt.sort(key=shortlex_key)
        words.extend(nxt)
        dists.extend([d] * len(nxt))
        frontier = nxt
    index = {w: i for i, w in enumerate(words)}
    return Ball(model, radius, words, np.asarray(dists, dtype=np.int64), index)


@dataclass(frozen=True)
class Path:
    model: GroupModel
    start: Word
    steps: Word

    def __len__(self):
        return len(self.steps)

    @property
    def vertices(self) -> list:
        out = [self.start]
        v = self.start
        for l in self.steps:
            v = self.model._normal_form(v + (l,))
            out.append(v)
        return out

    @property
    def end(self) -> Word:
        return self.model._normal_form(self.start + self.steps)

    def is_geodesic(self) -> bool:
        return self.model.distance(self.start, self.end) == len(self.steps)

    def __add__(self, other: "Path") -> "Path":
        if other.start != self.end:
            raise ValueError("paths do not meet")
        return Path(self.model, self.start, self.steps + other.steps)


def geodesic(model: GroupModel, x: Word, y: Word) -> Path:
    """Canonical geodesic from x to y: its steps spell the normal form of x^-1 y."""
    return Path(model, x, model._normal_form(invert_word(x) + y))


def all_geodesics(model: GroupModel, x: Word, y: Word, cap: int = 10_000) -> tuple[list, bool]:
    """Every geodesic from x to y in shortlex order, truncated at ``cap`` paths.

    Paths are distinct as vertex sequences.

    Returns ``(paths, truncated)``.
    """
    d = model.distance(x, y)
    out: list = []
    truncated = False

    def walk(v, steps, remaining):
        nonlocal truncated
        if truncated:
            return
        if remaining == 0:
            if len(out) >= cap:
                truncated = True
                return
            out.append(Path(model, x, tuple(steps)))
            return
        seen = set()
        for l in model.letters:
            w = model._normal_form(v + (l,))
            # an involution and its formal inverse reach the same vertex; keep the smaller letter
            if w in seen:
                continue
            seen.add(w)
            if model.distance(w, y) == remaining - 1:
                steps.append(l)
                walk(w, steps, remaining - 1)
                steps.pop()

    walk(x, [], d)
    return out, truncated


def _metric(space):
    return space.distance


def set_distance(p: Word, T: Iterable[Word], space) -> int:
    dist = _metric(space)
    return min(dist(p, t) for t in T)


def in_neighbourhood(S: Iterable[Word], T: Sequence[Word], eps: int, space) -> tuple[bool, Word | None, int]:
    """Whether S lies in the closed eps-neighbourhood of T.

    ``space`` is a Ball (distances checked against its radius) or a model.
    Returns ``(holds, worst_point, worst_distance)``.
    """
    T = list(T)
    worst, worst_d = None, -1
    for s in S:
        d = set_distance(s, T, space)
        if d > worst_d:
            worst, worst_d = s, d
    return worst_d <= eps, worst, max(worst_d, 0)


def hausdorff_distance(S: Sequence[Word], T: Sequence[Word], space) -> int:
    S, T = list(S), list(T)
    return max(in_neighbourhood(S, T, 0, space)[2], in_neighbourhood(T, S, 0, space)[2])


class Hull:
    """Ball of radius ``radius`` with a full distance matrix and a step table.

    ``step[i, k]`` is the index of ``words[i] * letters[k]`` or -1 when that
    product leaves the hull.  Word order is shortlex, so index order is the
    tie-break order everywhere.
    """

    def __init__(self, model: GroupModel, radius: int, budget: int = 20_000):
        self.model = model
        self.radius = radius
        self.ball = build_ball(model, radius)
        n = len(self.ball)
        if n > budget:
            raise BudgetExceeded(f"hull of radius {radius} has {n} points (> {budget})")
        self.words = self.ball.words
        self.index = self.ball.index
        self.D = self._distances()
        letters = model.letters
        step = np.full((n, len(letters)), -1, dtype=np.int64)
        for i, w in enumerate(self.words):
            for k, l in enumerate(letters):
                step[i, k] = self.index.get(model._normal_form(w + (l,)), -1)
        self.step = step

    def _distances(self) -> np.ndarray:
        words, model = self.words, self.model
        n = len(words)
        if model.is_free():
            L = max(len(w) for w in words)
            M = np.zeros((n, max(L, 1)), dtype=np.int8)
            for i, w in enumerate(words):
                M[i, : len(w)] = w
            lens = np.array([len(w) for w in words], dtype=np.int16)
            D = np.empty((n, n), dtype=np.int16)
            for i in range(n):
                eq = (M == M[i]) & (M != 0)
                lcp = np.cumprod(eq, axis=1).sum(axis=1)
                D[i] = lens + lens[i] - 2 * lcp
            return D
        D = np.zeros((n, n), dtype=np.int16)
        for i in range(n):
            for j in range(i + 1, n):
                D[i, j] = D[j, i] = model.distance(words[i], words[j])
        return D

    def __len__(self):
        return len(self.words)

    def idx(self, w: Word) -> int:
        try:
            return self.index[w]
        except KeyError:
            raise OutOfBall(f"{self.model.format(w)} outside hull of radius {self.radius}") from None


@lru_cache(maxsize=6)
def get_hull(model: GroupModel, radius: int) -> Hull:
    return Hull(model, radius)


def with_hull(model: GroupModel, radius: int, fn):
    """Run ``fn(hull)`` on hulls of growing margin until it returns non-None.

    ``fn`` returns None when a canonical walk leaves the hull.
    """
    margin = 1
    while True:
        res = fn(get_hull(model, radius + margin))
        if res is not None:
            return res
        if margin > 2 * radius + 2:
            raise RuntimeError("canonical geodesics escaped every hull tried")
        margin *= 2
