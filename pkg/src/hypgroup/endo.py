"""Endomorphisms given by generator images, and the scans that probe them.

Pair scans that are invariant under left translation (Hausdorff and
neighbourhood deviations, quasi-isometry constants) range over pairs (1, g)
with g in B_r: canonical geodesics are left-equivariant and
d(x phi, y phi) = |(x^-1 y) phi|, so this covers every pair at distance <= r.
Gromov-product scans are basepointed at 1 and range over all pairs in B_r.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path as FilePath

import numpy as np

from .cayley import all_geodesics, build_ball, geodesic, Ball
from .frontier import FreeRoute, _encode, brute_frontiers
from .groups import BudgetExceeded, GroupModel, Word, invert_word, shortlex_key
from .kernels import free_haus
from .parallel import chunked_map, chunks

SCHEMA = "hypgroup.scan/1"
BRUTE_PAIR_BUDGET = 2_000_000


class InvalidEndomorphism(ValueError):
    pass


class RelationViolated(InvalidEndomorphism):
    def __init__(self, relation: Word, image: Word, text: str = ""):
        super().__init__(text or f"relation {relation} maps to {image}, not the identity")
        self.relation = relation
        self.image = image


@dataclass(frozen=True)
class Endomorphism:
    model: GroupModel
    images: tuple  # images[i] is the normal-form image of generator i+1
    name: str = "phi"
    validated: bool = False

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def to_dict(self) -> dict:
        names = self.model.alphabet.names
        return {"name": self.name,
                "images": {names[i]: self.model.format(w) for i, w in enumerate(self.images)}}


def _raw_image(images, w) -> list:
    out: list = []
    for l in w:
        im = images[abs(l) - 1]
        out.extend(im if l > 0 else invert_word(im))
    return out


def apply(phi: Endomorphism, w: Word) -> Word:
    if not phi.validated:
        raise InvalidEndomorphism(f"{phi.name} has not been validated")
    phi.model.check_word(w)
    return phi.model._normal_form(tuple(_raw_image(phi.images, w)))


def validate_endomorphism(model: GroupModel, images, name: str = "phi") -> Endomorphism:
    """``images`` maps generator names (or 1-based indices) to words or strings."""
    names = model.alphabet.names
    table = {}
    for k, v in images.items():
        i = names.index(k) + 1 if k in names else int(k) if not isinstance(k, str) else 0
        if not 1 <= i <= model.rank:
            raise InvalidEndomorphism(f"unknown generator {k!r}")
        w = model.parse(v) if isinstance(v, str) else tuple(v)
        table[i] = model.normal_form(w)
    missing = [names[i - 1] for i in range(1, model.rank + 1) if i not in table]
    if missing:
        raise InvalidEndomorphism(f"no image for generators {missing}")
    imgs = tuple(table[i] for i in range(1, model.rank + 1))
    for rel in model.relations:
        im = model._normal_form(tuple(_raw_image(imgs, rel)))
        if im:
            raise RelationViolated(rel, im, f"relation {model.format(rel)} maps to "
                                            f"{model.format(im)}, not the identity")
    return Endomorphism(model, imgs, name, True)


def load_endomorphism(model: GroupModel, group: str, spec: str) -> Endomorphism:
    """Shipped endomorphism name for ``group``, or a path to an endomorphism JSON file."""
    from .presets import endo_doc
    p = FilePath(spec)
    doc = json.loads(p.read_text()) if p.suffix == ".json" or p.exists() else endo_doc(group, spec)
    return validate_endomorphism(model, doc["images"], doc.get("name", spec))


def b_phi(phi: Endomorphism) -> int:
    return max((len(w) for w in phi.images), default=0)


# --------------------------------------------------------------------------- profiles

def verdict(values: list) -> str:
    """plateau: last three equal; growth: last three nondecreasing with a net rise."""
    if len(values) < 3:
        return "inconclusive"
    a, b, c = values[-3:]
    if a == b == c:
        return "plateau"
    if a <= b <= c and c > a:
        return "growth"
    return "inconclusive"


def _fmt(model, obj):
    if isinstance(obj, tuple) and all(isinstance(l, (int, np.integer)) for l in obj):
        return model.format(obj)
    if isinstance(obj, dict):
        return {k: _fmt(model, v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_fmt(model, v) for v in obj]
    if isinstance(obj, Fraction):
        return float(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


@dataclass
class ScanProfile:
    quantity: str
    per_radius: list  # (r, value, witness dict)
    params: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def values(self) -> list:
        return [v for _, v, _ in self.per_radius]

    @property
    def verdict(self) -> str:
        return verdict(self.values)

    @property
    def radius(self) -> int:
        return self.per_radius[-1][0] if self.per_radius else 0

    def to_json(self, model: GroupModel) -> dict:
        return {"schema": SCHEMA, "quantity": self.quantity, "params": _fmt(model, self.params),
                "verdict": self.verdict, "notes": list(self.notes),
                "per_radius": [{"radius": r, "value": _fmt(model, v), "witness": _fmt(model, w)}
                               for r, v, w in self.per_radius]}


# --------------------------------------------------------------------------- image tables

@dataclass
class ImageTable:
    phi: Endomorphism
    ball: Ball
    images: list

    @property
    def img_len(self) -> np.ndarray:
        return np.array([len(w) for w in self.images], dtype=np.int64)


@lru_cache(maxsize=8)
def image_table(phi: Endomorphism, R: int) -> ImageTable:
    """Images of every element of B_R, built along the prefix tree of canonical words."""
    model = phi.model
    ball = build_ball(model, R)
    gens = {l: tuple(_raw_image(phi.images, (l,))) for l in model.letters}
    imgs = [()] * len(ball)
    for i, w in enumerate(ball.words):
        if w:
            imgs[i] = model._normal_form(imgs[ball.index[w[:-1]]] + gens[w[-1]])
    return ImageTable(phi, ball, imgs)


@lru_cache(maxsize=8)
def frontiers(phi: Endomorphism, R: int) -> dict:
    """r -> Frontier for r = 0..R, by the free-group route when available."""
    tab = image_table(phi, R)
    model = phi.model
    if model.is_free():
        route = FreeRoute(tab.ball, tab.images)
        return {r: route.frontier(r) for r in range(R + 1)}
    n = len(tab.ball)
    if n * n > 2 * BRUTE_PAIR_BUDGET:
        raise BudgetExceeded(f"{n * n // 2} pairs exceed the brute-force budget")
    return brute_frontiers(model, tab.ball, tab.images, R)


def _half(v2: int):
    return v2 // 2 if v2 % 2 == 0 else v2 / 2


# --------------------------------------------------------------------------- scans

def kernel_scan(phi: Endomorphism, R: int, cap: int = 10) -> ScanProfile:
    tab = image_table(phi, R)
    per, count, wit = [], 0, []
    words = tab.ball.words
    for r in range(1, R + 1):
        sphere = [i for i in range(len(words)) if len(words[i]) == r and not tab.images[i]]
        count += len(sphere)
        wit = (wit + [words[i] for i in sphere])[:cap]
        per.append((r, count, {"kernel": list(wit)}))
    return ScanProfile("kernel_count", per, {"endo": phi.name})


def brp_scan_gromov(phi: Endomorphism, R: int, p=0) -> ScanProfile:
    """Per radius r: max (u phi|v phi) over u, v in B_r with (u|v) <= p."""
    fr = frontiers(phi, R)
    a2 = int(2 * Fraction(p))
    per = []
    for r in range(1, R + 1):
        e = fr[r].upper_at(a2)
        per.append((r, _half(e.value2), {"u": e.pair[0], "v": e.pair[1]}))
    return ScanProfile("brp_q", per, {"endo": phi.name, "p": Fraction(p)})


def _haus_generic(phi, tab, lo, hi):
    model = phi.model
    d = model.distance
    out = []
    for i in range(lo, hi):
        g = tab.ball.words[i]
        P = [tab.images[tab.ball.index[g[:k]]] for k in range(len(g) + 1)]
        Q = geodesic(model, (), tab.images[i]).vertices
        nb = max(min(d(p, q) for q in Q) for p in P)
        back = max(min(d(q, p) for p in P) for q in Q)
        out.append((max(nb, back), nb))
    return out


def _haus_free(codes, img_len, parent, lo, hi):
    h = np.zeros(hi - lo, np.int64)
    nb = np.zeros(hi - lo, np.int64)
    free_haus(codes, img_len, parent, lo, hi, h, nb)
    return list(zip(h.tolist(), nb.tolist()))


def _haus_strict(phi, tab, g):
    model = phi.model
    d = model.distance
    alphas, _ = all_geodesics(model, (), g, cap=1000)
    xis, _ = all_geodesics(model, (), tab.images[tab.ball.index[g]], cap=1000)
    h = nb = 0
    for a in alphas:
        P = [phi(v) for v in a.vertices]
        for xi in xis:
            Q = xi.vertices
            one = max(min(d(p, q) for q in Q) for p in P)
            back = max(min(d(q, p) for p in P) for q in Q)
            h, nb = max(h, one, back), max(nb, one)
    return h, nb


def _deviation_values(phi, R, strict=False, workers=1, strict_cap=4):
    tab = image_table(phi, R)
    n = len(tab.ball)
    if strict:
        if R > strict_cap:
            raise BudgetExceeded(f"strict mode is capped at radius {strict_cap}")
        return [_haus_strict(phi, tab, g) for g in tab.ball.words]
    if phi.model.is_free():
        codes = _encode(tab.images, int(tab.img_len.max(initial=0)) + 1)
        parent = tab.ball.parents()
        args = [(codes, tab.img_len, parent, lo, hi) for lo, hi in chunks(n, max(workers, 1))]
        parts = chunked_map(_haus_free, args, workers)
    else:
        args = [(phi, tab, lo, hi) for lo, hi in chunks(n, max(workers, 1))]
        parts = chunked_map(_haus_generic, args, workers)
    return [v for part in parts for v in part]


def _profile_from(quantity, ball, vals, R, params):
    """Running max over spheres; the witness is the shortlex-first maximiser."""
    vals = np.asarray(vals)
    lens = np.asarray(ball.dist)
    per, best, wit = [], int(vals[0]), ()
    for r in range(1, R + 1):
        idx = np.flatnonzero(lens == r)
        if len(idx):
            t = int(idx[np.argmax(vals[idx])])
            if vals[t] > best:
                best, wit = int(vals[t]), ball.words[t]
        per.append((r, best, {"x": (), "y": wit}))
    return ScanProfile(quantity, per, params)


@lru_cache(maxsize=8)
def _deviations(phi, R, strict, workers):
    return _deviation_values(phi, R, strict, workers)


def brp_scan_hausdorff(phi: Endomorphism, R: int, strict: bool = False, workers: int = 1) -> ScanProfile:
    """Per radius: max Haus(phi([x, y]), [x phi, y phi]) over pairs at distance <= r."""
    vals = [h for h, _ in _deviations(phi, R, strict, workers)]
    prof = _profile_from("brp_haus", image_table(phi, R).ball, vals, R,
                         {"endo": phi.name, "strict": strict})
    if strict:
        prof.notes.append("all geodesics on both sides")
    return prof


def brp_scan_neighbourhood(phi: Endomorphism, R: int, strict: bool = False, workers: int = 1) -> ScanProfile:
    """Per radius: max over pairs of max_{w in [x,y]} d(w phi, [x phi, y phi])."""
    vals = [nb for _, nb in _deviations(phi, R, strict, workers)]
    return _profile_from("brp_nbhd", image_table(phi, R).ball, vals, R,
                         {"endo": phi.name, "strict": strict})


@dataclass
class QIEFit:
    lam: Fraction | None
    K: int | None
    feasible: bool
    violation_witness: tuple | None = None
    per_radius: list = field(default_factory=list)  # (r, lam, K)
    kernel_witness: Word | None = None

    def to_json(self, model: GroupModel) -> dict:
        return {"schema": SCHEMA, "quantity": "qie", "lambda": _fmt(model, self.lam),
                "K": self.K, "feasible": self.feasible,
                "violation_witness": _fmt(model, self.violation_witness),
                "kernel_witness": _fmt(model, self.kernel_witness),
                "per_radius": [{"radius": r, "lambda": _fmt(model, l), "K": k}
                               for r, l, k in self.per_radius]}


def rational_grid(max_den: int, lo, hi) -> list:
    vals = {Fraction(n, d) for d in range(1, max_den + 1)
            for n in range(int(lo * d), int(hi * d) + 1)}
    return sorted(v for v in vals if lo <= v <= hi and v > 0)


def stable(winners: list) -> bool:
    """Constants equal (and found) over the last three radii."""
    tail = winners[-3:]
    return len(tail) == 3 and tail[0] is not None and tail.count(tail[0]) == 3


def qie_fit(phi: Endomorphism, R: int) -> QIEFit:
    """Minimal K in 0..2R, then minimal lambda (denominators <= 4, at most 8), per radius.

    Feasible when the winners agree over the last three radii and no nontrivial
    kernel element sits on the sphere of radius R.
    """
    tab = image_table(phi, R)
    lens, ilen = np.asarray(tab.ball.dist), tab.img_len
    grid = rational_grid(4, 1, 8)
    per, winners = [], []
    for r in range(1, R + 1):
        rows = []
        for l in range(1, r + 1):
            m = lens == l
            rows.append((l, int(ilen[m].min()), int(ilen[m].max())))
        win = None
        for K in range(0, 2 * R + 1):
            for lam in grid:
                if all(Fraction(l) / lam - K <= lo and hi <= lam * l + K for l, lo, hi in rows):
                    win = (lam, K)
                    break
            if win:
                break
        winners.append(win)
        per.append((r,) + (win if win else (None, None)))
    kernel = [w for i, w in enumerate(tab.ball.words) if len(w) == R and not tab.images[i]]
    feasible = stable(winners) and not kernel
    lam, K = winners[-1] if winners[-1] else (None, None)
    wit = None
    if not feasible:
        # pair (1, g) breaking the final winner, or the kernel element
        if kernel:
            wit = ((), kernel[0])
        elif winners[-1] is None:
            i = int(np.argmax(lens - ilen))
            wit = ((), tab.ball.words[i])
        else:
            prev = winners[-2] or winners[-1]
            pl, pk = prev
            for i, w in enumerate(tab.ball.words):
                l, il = len(w), int(ilen[i])
                if not (Fraction(l) / pl - pk <= il <= pl * l + pk):
                    wit = ((), w)
                    break
    return QIEFit(lam, K, feasible, wit, per, kernel[0] if kernel else None)


def _set_distance(model, x, S: set, cap: int) -> int:
    """Exact d(x, S) by BFS around x (S contains 1, so depth |x| always suffices)."""
    if x in S:
        return 0
    seen = {x}
    frontier = [x]
    for depth in range(1, cap + 1):
        nxt = []
        for w in frontier:
            for l in model.letters:
                v = model._normal_form(w + (l,))
                if v in S:
                    return depth
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    raise BudgetExceeded("set distance search exceeded its cap")


def quasiconvexity_scan(phi: Endomorphism, R: int) -> ScanProfile:
    """Per radius: max over h in phi(B_r) of max_{x in [1, h]} d(x, phi(B_r)).

    The image set is the image of the ball, not the image subgroup cut to a
    ball; geodesics run from 1 (which is always in the image) to image points.
    """
    tab = image_table(phi, R)
    model = phi.model
    per = []
    for r in range(1, R + 1):
        S = {tab.images[i] for i in range(len(tab.ball)) if tab.ball.dist[i] <= r}
        best, wit = 0, {"h": (), "x": ()}
        seen = set()
        for h in sorted(S, key=shortlex_key):
            # the canonical geodesic [1, h] runs through the prefixes of h
            for k in range(len(h) + 1):
                x = h[:k]
                if x in seen:
                    continue
                seen.add(x)
                d = _set_distance(model, x, S, len(x))
                if d > best:
                    best, wit = d, {"h": h, "x": x}
        per.append((r, best, wit))
    prof = ScanProfile("qconv", per, {"endo": phi.name})
    prof.notes.append("image set is phi(B_r); geodesics [1, h] for h in it")
    return prof
