"""Quasi-geodesic checks, bent concatenations and the fellow-traveller scan."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cayley import Path, build_ball, geodesic
from .groups import GroupModel, Word, invert_word
from .hyperbolicity import GromovContext

SCHEMA = "hypgroup.ftp/1"


@dataclass(frozen=True)
class QGReport:
    lam: Fraction
    K: Fraction
    holds: bool
    worst_pair: tuple | None  # (i, j, d(v_i, v_j)) of the largest violation
    defect: int  # max over i <= j of (j - i) - d(v_i, v_j)


def check_quasigeodesic(path: Path, lam, K, space=None) -> QGReport:
    """Exact check of (j-i)/lam - K <= d(v_i, v_j) <= lam (j-i) + K over all index pairs."""
    lam, K = Fraction(lam), Fraction(K)
    dist = (space or path.model).distance
    verts = path.vertices
    worst, worst_v, defect = None, Fraction(0), 0
    for i in range(len(verts)):
        for j in range(i, len(verts)):
            d = dist(verts[i], verts[j])
            defect = max(defect, (j - i) - d)
            v = max((j - i) / lam - K - d, d - lam * (j - i) - K)
            if v > worst_v:
                worst, worst_v = (i, j, d), v
    return QGReport(lam, K, worst is None, worst, defect)


def concat_two_geodesics(model: GroupModel, u: Word, v: Word) -> Path:
    """[1, u^-1] followed by [u^-1, u^-1 v], both canonical."""
    return Path(model, (), model._normal_form(invert_word(u)) + model._normal_form(v))


def concat_defect(model: GroupModel, u: Word, v: Word) -> int:
    """Max (j - i) - d(v_i, v_j) along concat_two_geodesics(u, v), exactly.

    Both halves are geodesics, so only pairs straddling the corner can have a
    positive defect, and d(v_i, v_j) is the length of the normal form of the
    subword between them.
    """
    first = model._normal_form(invert_word(u))
    steps = first + model._normal_form(v)
    k, L = len(first), len(steps)
    worst = 0
    free = model.is_free()
    for i in range(k):
        if free:
            stack = list(steps[i:k])
            for j in range(k, L):
                l = steps[j]
                if stack and stack[-1] == -l:
                    stack.pop()
                else:
                    stack.append(l)
                worst = max(worst, (j + 1 - i) - len(stack))
        else:
            for j in range(k + 1, L + 1):
                worst = max(worst, (j - i) - len(model._normal_form(steps[i:j])))
    return worst


@dataclass(frozen=True)
class ConsistencyVerdict:
    u: Word
    v: Word
    gromov: float
    defect: int
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def lemma_gromov_concat_check(model: GroupModel, u: Word, v: Word, space=None) -> ConsistencyVerdict:
    """Both directions of: (u|v) <= p  iff  the concatenation is a (1, 2p)-quasi-geodesic, p integer."""
    g = GromovContext(model).product(u, v)
    if space is None:
        defect = concat_defect(model, u, v)
    else:
        defect = check_quasigeodesic(concat_two_geodesics(model, u, v), 1, 0, space).defect
    bad = []
    p_forward = math.ceil(g)
    if defect > 2 * p_forward:
        bad.append(("forward", p_forward))
    p_back = math.ceil(defect / 2)
    if g > p_back:
        bad.append(("backward", p_back))
    return ConsistencyVerdict(u, v, g, defect, tuple(bad))


@dataclass
class FTProfile:
    k: int
    radius: int
    measured_N: int
    witness: tuple | None  # (path A, path B, n)
    family: str = "geodesics"
    tol: int = 1
    per_radius: list = field(default_factory=list)

    def to_json(self, model: GroupModel, group: str, delta_hat: float | None = None) -> dict:
        fmt = model.format
        w = None
        if self.witness is not None:
            a, b, n = self.witness
            w = {"path_a": fmt(a.steps), "path_b": fmt(b.steps), "end_a": fmt(a.end),
                 "end_b": fmt(b.end), "n": n}
        out = {"schema": SCHEMA, "group": group, "k": self.k, "family": self.family,
               "radius": self.radius, "tol": self.tol, "measured_N": self.measured_N,
               "witness": w,
               "per_radius": [{"radius": r, "measured_N": v} for r, v in self.per_radius]}
        if delta_hat is not None:
            bound = 3 * self.k + 2 * delta_hat + 4
            out["heuristic_bound"] = {"delta_hat": delta_hat, "bound": bound,
                                      "holds": self.measured_N <= bound,
                                      "note": "delta' replaced by the measured thin-triangle delta"}
        return out


def parse_family(family: str) -> tuple[str, int]:
    """'geodesics' -> ('geodesics', 0); 'bent(2)' or 'bent:2' -> ('bent', 2)."""
    f = family.strip()
    if f == "geodesics":
        return "geodesics", 0
    for open_, close in (("bent(", ")"), ("bent:", "")):
        if f.startswith(open_) and f.endswith(close):
            return "bent", int(f[len(open_): len(f) - len(close)])
    raise ValueError(f"unknown path family {family!r}")


def _orbit_rep(word: Word) -> bool:
    """First occurrences of generators appear as +1, +2, ... in order."""
    seen = 0
    for l in word:
        g = abs(l)
        if g > seen:
            if g != seen + 1 or l < 0:
                return False
            seen = g
    return True


class _Family:
    """Paths of one family ending at each endpoint, bucketed by length."""

    def __init__(self, model, R, kind, p, ball):
        self.model, self.R, self.kind, self.p = model, R, kind, p
        self.ball = ball
        self.cache = {}

    def paths(self, e: Word) -> dict:
        """length -> list of (x, vertex list); x is the bend point."""
        if e in self.cache:
            return self.cache[e]
        model, R = self.model, self.R
        out: dict = {}
        if self.kind == "geodesics":
            out[len(e)] = [((), geodesic(model, (), e).vertices)]
        else:
            limit = min(R, len(e) + 2 * self.p)
            for x in self._bends(e, limit):
                L = len(x) + model.distance(x, e)
                if L <= limit:
                    verts = geodesic(model, (), x).vertices + geodesic(model, x, e).vertices[1:]
                    out.setdefault(L, []).append((x, verts))
        self.cache[e] = out
        return out

    def _bends(self, e, limit):
        model = self.model
        if not model.is_free():
            return [x for x in self.ball.words if len(x) <= limit]
        # in a tree |x| + d(x, e) - |e| = 2 d(x, [1, e]), so bends hug the geodesic
        out = set()
        for c in geodesic(model, (), e).vertices:
            stack = [(c, 0)]
            while stack:
                w, k = stack.pop()
                if w in out:
                    continue
                out.add(w)
                if k < self.p:
                    for l in model.letters:
                        nw = model._normal_form(w + (l,))
                        if len(nw) <= limit:
                            stack.append((nw, k + 1))
        return sorted(out, key=lambda w: (len(w), w))


def _vertex_sets(paths_by_len: dict) -> dict:
    """length -> list over n of the set of vertices at time n (n up to the length)."""
    out = {}
    for L, items in paths_by_len.items():
        sets = [dict() for _ in range(L + 1)]
        for x, verts in items:
            for n, v in enumerate(verts):
                sets[n].setdefault(v, x)
        out[L] = sets
    return out


def ftp_scan(model: GroupModel, R: int, family: str = "geodesics", tol: int = 1,
             symmetry: bool = True) -> FTProfile:
    """Same-index prefix deviation for family paths from 1 whose endpoints are within ``tol``.

    Per radius r the scan covers path pairs of length <= r.  On free groups the
    first endpoint ranges over representatives of the signed letter
    permutations (isometries fixing 1 that preserve unique geodesics).
    """
    kind, p = parse_family(family)
    k = 2 * p
    ball = build_ball(model, R)
    fam = _Family(model, R, kind, p, ball)
    dist = model.distance
    offsets = [w for w in build_ball(model, tol).words]
    firsts = ball.words
    if symmetry and model.is_free():
        firsts = [e for e in ball.words if _orbit_rep(e)]
    best = {}  # radius of the pair -> (value, witness key)
    vsets = {}

    def sets_of(e):
        if e not in vsets:
            vsets[e] = _vertex_sets(fam.paths(e))
        return vsets[e]

    for e in firsts:
        A = sets_of(e)
        if not A:
            continue
        for off in offsets:
            f = model._normal_form(e + off)
            if f not in ball.index:
                continue
            B = sets_of(f)
            for La, sa in A.items():
                for Lb, sb in B.items():
                    r = max(La, Lb)
                    for n in range(max(La, Lb) + 1):
                        va = sa[min(n, La)]
                        vb = sb[min(n, Lb)]
                        for a, xa in va.items():
                            for b, xb in vb.items():
                                d = dist(a, b)
                                cur = best.get(r)
                                if cur is None or d > cur[0]:
                                    best[r] = (d, (e, xa, f, xb, n))
    per_radius, run, wit = [], 0, None
    for r in range(R + 1):
        if r in best and (wit is None or best[r][0] > run):
            run, wit = best[r]
        per_radius.append((r, run))
    witness = None
    if wit is not None:
        e, xa, f, xb, n = wit
        witness = (_bent_path(model, xa, e), _bent_path(model, xb, f), n)
    return FTProfile(k, R, run, witness, family if kind == "geodesics" else f"bent({p})", tol, per_radius)


def _bent_path(model, x, e) -> Path:
    return Path(model, (), model._normal_form(x) + model._normal_form(invert_word(x) + e))
