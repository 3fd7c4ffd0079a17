"""Recompute the brute-force reference values that the tests keep frozen.

Run from the repository root:  python3 scripts/freeze_oracles.py
Slow on purpose; nothing here uses the package.
"""
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

import oracles as O  # noqa: E402

F2_DOUBLING = {1: (1, 1), 2: (2, 2)}
F2_AB_BA = {1: (1, 2), 2: (2, 1)}
F3_COLLAPSE = {1: (1,), 2: (2,), 3: ()}
ZX2_COLLAPSE = {1: (), 2: (2,)}


def show(label, fn):
    t = time.time()
    val = fn()
    print(f"{label}: {val!r}  ({time.time() - t:.1f}s)", flush=True)


def main():
    G = O.all_groups()
    show("ball sizes r<=3", lambda: {n: [len(g.ball(r)) for r in range(4)] for n, g in G.items()})
    show("Zx2 B2", lambda: sorted(G["Zx2"].ball(2)))
    show("delta Zx2 R=1..8", lambda: [O.delta(G["Zx2"], r) for r in range(1, 9)])
    show("delta Dinf R=1..6", lambda: [O.delta(G["Dinf"], r) for r in range(1, 7)])
    show("delta Z2 R=1..6", lambda: [O.delta(G["Z2"], r) for r in range(1, 7)])
    show("ftp F2 R=6", lambda: O.ftp_geodesics(G["F2"], 6))
    show("ftp Zx2 R=1..6", lambda: [O.ftp_geodesics(G["Zx2"], r) for r in range(1, 7)])
    show("ftp Z2 R=1..6", lambda: [O.ftp_geodesics(G["Z2"], r) for r in range(1, 7)])
    Z = G["Zx2"]
    show("Zx2 centre (0,0),(2,0),(1,1)",
         lambda: O.minimax_center(Z, (0, 0), (2, 0), (1, 1), Z.ball(3)))
    show("Zx2 axioms R=3", lambda: O.median_axioms(Z, 3))
    show("F2 axioms R=3 (C2)", lambda: O.median_axioms(G["F2"], 3, free=True)[0])
    show("kernel Zx2 collapse R=1..8", lambda: [O.kernel_count(Z, ZX2_COLLAPSE, r) for r in range(1, 9)])
    show("brp q0 F3 collapse R=5", lambda: O.brp_gromov(G["F3"], F3_COLLAPSE, 5))
    show("brp q0 Zx2 collapse R=6", lambda: O.brp_gromov(Z, ZX2_COLLAPSE, 6))
    show("brp q1 F2 doubling R=5", lambda: O.brp_gromov(G["F2"], F2_DOUBLING, 5, 1))
    show("cmp F2 doubling R=3", lambda: O.cmp_values(G["F2"], F2_DOUBLING, 3, free=True))
    show("cmp F3 collapse R=3", lambda: O.cmp_values(G["F3"], F3_COLLAPSE, 3, free=True))
    show("cmp Zx2 collapse R=3", lambda: O.cmp_values(Z, ZX2_COLLAPSE, 3))
    show("min A lam=2 F2 doubling R=4", lambda: O.qie_gromov_min_A(G["F2"], F2_DOUBLING, 4, 2))
    show("min A lam=2 F2 ab_ba R=4", lambda: O.qie_gromov_min_A(G["F2"], F2_AB_BA, 4, 2))
    show("min gap F2 doubling R=4", lambda: O.min_image_product_gap(G["F2"], F2_DOUBLING, 4))


if __name__ == "__main__":
    main()
