"""Visual-metric values and the fits comparing Gromov products before and after an endomorphism.

All fits read the frontier curves of ``endo.frontiers``: for each level a of
(u|v) the extreme image products over pairs on either side of a.  Since the
comparison functions are monotone in a, checking against these curves is the
same as checking every pair.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .endo import SCHEMA, Endomorphism, _fmt, frontiers, image_table, rational_grid, stable
from .frontier import brute_frontiers
from .groups import GroupModel, Word
from .hyperbolicity import GromovContext

R_GRID = tuple(Fraction(*t) for t in ((1, 4), (1, 3), (1, 2), (2, 3), (1, 1), (3, 2), (2, 1)))


def sig9(x) -> float | None:
    """Decimal with 9 significant digits, as stored in reports."""
    return None if x is None else float(f"{float(x):.9g}")


@dataclass(frozen=True)
class VisualParams:
    basepoint: Word = ()
    gamma: float = 1.0
    T: float = 1.0

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")
        if not self.T >= 1:
            raise ValueError("T must be at least 1")


def rho(params: VisualParams, g: Word, h: Word, model: GroupModel) -> float:
    """exp(-gamma (g|h)_p) for g != h, else 0."""
    g, h = model.normal_form(g), model.normal_form(h)
    if g == h:
        return 0.0
    return math.exp(-params.gamma * GromovContext(model, params.basepoint).product(g, h))


def _frontiers(phi: Endomorphism, R: int, basepoint: Word) -> dict:
    if not basepoint:
        return frontiers(phi, R)
    tab = image_table(phi, R)
    return brute_frontiers(phi.model, tab.ball, tab.images, R, phi.model.normal_form(basepoint))


def _fraction(v2: int) -> Fraction:
    return Fraction(v2, 2)


# --------------------------------------------------------------------------- Hoelder


@dataclass
class HolderFit:
    K: int | None
    r: Fraction | None
    feasible: bool
    violation_witness: tuple | None = None
    per_radius: list = field(default_factory=list)  # (radius, K, r)
    gamma: float = 1.0

    def to_json(self, model: GroupModel) -> dict:
        return {"schema": SCHEMA, "quantity": "holder", "K": self.K,
                "r": sig9(self.r), "feasible": self.feasible, "gamma": sig9(self.gamma),
                "grid": {"r": [sig9(r) for r in R_GRID], "K": "integers 1..2R"},
                "violation_witness": _fmt(model, self.violation_witness),
                "per_radius": [{"radius": rr, "K": k, "r": sig9(r)} for rr, k, r in self.per_radius],
                "note": "fit against rho itself; the T^(1+r) factor of a comparable visual metric folds into K"}


def _holder_excess(fr, r: Fraction):
    """max over levels of r a - min{(u phi|v phi) : (u|v) >= a, u phi != v phi}, with its pair."""
    best, pair = None, None
    for a2, ext in fr.lower_h.items():
        v = r * _fraction(a2) - _fraction(ext.value2)
        if best is None or v > best:
            best, pair = v, ext.pair
    return best, pair


def _holder_ok(excess, K: int, gamma: float) -> bool:
    if excess is None or excess <= 0:
        return True
    return gamma * float(excess) <= math.log(K) + 1e-12


def holder_fit(phi: Endomorphism, R: int, params: VisualParams = VisualParams(),
               grid=R_GRID) -> HolderFit:
    """rho(u phi, v phi) <= K rho(u, v)^r on all distinct pairs of B_r.

    Per radius: minimal integer K in 1..2R, then the largest r of the grid.
    Feasible when the winners agree over the last three radii.
    """
    fr_all = _frontiers(phi, R, params.basepoint)
    grid = sorted(grid)
    per, winners = [], []
    for rad in range(1, R + 1):
        ex = {r: _holder_excess(fr_all[rad], r)[0] for r in grid}
        win = None
        for K in range(1, 2 * R + 1):
            ok = [r for r in grid if _holder_ok(ex[r], K, params.gamma)]
            if ok:
                win = (K, max(ok))
                break
        winners.append(win)
        per.append((rad,) + (win if win else (None, None)))
    feasible = stable(winners)
    K, r = winners[-1] if winners[-1] else (None, None)
    wit = None
    if not feasible:
        prev = winners[-2] if R > 1 and winners[-2] else (2 * R, grid[0])
        _, wit = _holder_excess(fr_all[R], prev[1])
    return HolderFit(K, r, feasible, wit, per, params.gamma)


# --------------------------------------------------------------------------- domination


@dataclass
class DominationFit:
    P: Fraction | None
    Q: int | None
    feasible: bool
    witness: tuple | None = None
    per_radius: list = field(default_factory=list)  # (radius, P, Q)

    def to_json(self, model: GroupModel) -> dict:
        return {"schema": SCHEMA, "quantity": "domination", "P": _fmt(model, self.P),
                "Q": self.Q, "feasible": self.feasible,
                "grid": {"P": "denominators <= 4 in [1/4, 8]", "Q": "integers 0..2R"},
                "witness": _fmt(model, self.witness),
                "per_radius": [{"radius": r, "P": _fmt(model, p), "Q": q} for r, p, q in self.per_radius]}


def _domination_need(fr, P: Fraction):
    """Least Q with P (u phi|v phi) + Q >= (u|v) on every pair, and the pair forcing it."""
    best, pair = Fraction(0), None
    for a2, ext in fr.lower.items():
        v = _fraction(a2) - P * _fraction(ext.value2)
        if v > best:
            best, pair = v, ext.pair
    return best, pair


def gromov_domination_fit(phi: Endomorphism, R: int, basepoint: Word = ()) -> DominationFit:
    """P (u phi|v phi) + Q >= (u|v) over all pairs of B_r (u = v included).

    Per radius: minimal integer Q in 0..2R, then minimal P.
    """
    fr_all = _frontiers(phi, R, basepoint)
    grid = rational_grid(4, Fraction(1, 4), 8)
    per, winners = [], []
    for rad in range(1, R + 1):
        need = {P: _domination_need(fr_all[rad], P)[0] for P in grid}
        win = None
        for Q in range(0, 2 * R + 1):
            ok = [P for P in grid if need[P] <= Q]
            if ok:
                win = (min(ok), Q)
                break
        winners.append(win)
        per.append((rad,) + (win if win else (None, None)))
    feasible = stable(winners)
    P, Q = winners[-1] if winners[-1] else (None, None)
    wit = None
    if not feasible:
        prev = winners[-2] if R > 1 and winners[-2] else (grid[-1], 2 * R)
        _, wit = _domination_need(fr_all[R], prev[0])
    return DominationFit(P, Q, feasible, wit, per)


# --------------------------------------------------------------------------- QIE bound


@dataclass
class QIEBoundCheck:
    holds: bool
    worst: tuple | None  # (side, pair, excess)
    lam: Fraction
    A: Fraction


def _qie_excess(fr, lam: Fraction):
    """Largest violation of a/lam <= (u phi|v phi) <= lam a with A = 0, per side."""
    out = []
    for a2, ext in fr.upper.items():
        out.append((_fraction(ext.value2) - lam * _fraction(a2), "upper", ext.pair))
    for a2, ext in fr.lower.items():
        out.append((_fraction(a2) / lam - _fraction(ext.value2), "lower", ext.pair))
    return max(out, key=lambda t: t[0]) if out else (Fraction(0), None, None)


def qie_gromov_bound_check(phi: Endomorphism, lam, A, R: int) -> QIEBoundCheck:
    """(u|v)/lam - A <= (u phi|v phi) <= lam (u|v) + A on every pair of B_R."""
    lam, A = Fraction(lam), Fraction(A)
    ex, side, pair = _qie_excess(frontiers(phi, R)[R], lam)
    holds = ex <= A
    return QIEBoundCheck(holds, None if holds else (side, pair, ex - A), lam, A)


def minimal_A(phi: Endomorphism, lam, R: int) -> Fraction:
    ex, _, _ = _qie_excess(frontiers(phi, R)[R], Fraction(lam))
    return max(Fraction(0), ex)
