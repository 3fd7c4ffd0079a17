"""Command-line driver: ball dumps, single scans and combined endomorphism reports.

Exit codes:
  0  verdict plateau / fit feasible (or matches --expect)
  2  verdict growth / infeasible / inconclusive, expectation mismatch, or report incoherence
  3  budget exceeded
  4  invalid input (unknown group, bad endomorphism, relation not preserved)
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .cayley import build_ball
from .endo import (InvalidEndomorphism, brp_scan_gromov, brp_scan_hausdorff,
                   brp_scan_neighbourhood, kernel_scan, load_endomorphism, qie_fit,
                   quasiconvexity_scan, verdict)
from .groups import BudgetExceeded, ForeignLetter
from .hyperbolicity import estimate_delta
from .median import cmp_scan
from .presets import load_group
from .quasigeodesic import ftp_scan
from .visual import gromov_domination_fit, holder_fit

EXIT_OK, EXIT_VERDICT, EXIT_BUDGET, EXIT_INVALID = 0, 2, 3, 4
REPORT_SCHEMA = "hypgroup.report/1"
ENDO_QUANTITIES = ("brp-gromov", "brp-haus", "brp-nbhd", "cmp", "qconv", "kernel",
                   "qie", "holder", "domination")
QUANTITIES = ("delta", "ftp") + ENDO_QUANTITIES
FAULT_ENV = "HYPGROUP_INJECT_FAULT"
DEFAULT_BUDGET = 1_000_000  # ball points; F3 at radius 8 has 585937


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    group: str
    radius: int
    endo: str | None = None
    strict: bool = False
    sample: tuple[int, int] | None = None
    out: Path | None = None
    workers: int = 1
    budget: int = DEFAULT_BUDGET
    svg: bool = False
    family: str = "geodesics"
    p: int = 0
    expect: str | None = None

    def __post_init__(self):
        if self.radius < 1:
            raise UsageError("radius must be at least 1")
        if self.workers < 1:
            raise UsageError("workers must be at least 1")


def parse_sample(text: str) -> tuple[int, int]:
    try:
        seed, count = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected SEED,COUNT") from None
    return seed, count


# --------------------------------------------------------------------------- output


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def svg_profiles(series: dict, title: str) -> str:
    """One polyline per quantity (value against radius), no plotting library."""
    W, H, pad = 480, 300, 40
    xs = [r for pts in series.values() for r, _ in pts] or [0, 1]
    ys = [v for pts in series.values() for _, v in pts] or [0, 1]
    x0, x1 = min(xs), max(max(xs), min(xs) + 1)
    y1 = max(max(ys), 1)
    sx = lambda r: pad + (W - 2 * pad) * (r - x0) / (x1 - x0)
    sy = lambda v: H - pad - (H - 2 * pad) * v / y1
    colours = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
               "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
           f'<text x="{pad}" y="20" font-size="12">{title}</text>',
           f'<line x1="{pad}" y1="{H - pad}" x2="{W - pad}" y2="{H - pad}" stroke="black"/>',
           f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{H - pad}" stroke="black"/>']
    for r in range(x0, x1 + 1):
        out.append(f'<text x="{sx(r):.2f}" y="{H - pad + 14}" font-size="10" text-anchor="middle">{r}</text>')
    for k in range(5):
        v = y1 * k / 4
        out.append(f'<text x="{pad - 4}" y="{sy(v) + 3:.2f}" font-size="10" text-anchor="end">{v:g}</text>')
    for i, (name, pts) in enumerate(sorted(series.items())):
        c = colours[i % len(colours)]
        coords = " ".join(f"{sx(r):.2f},{sy(v):.2f}" for r, v in pts)
        out.append(f'<polyline fill="none" stroke="{c}" points="{coords}"><title>{name}</title></polyline>')
        out.append(f'<text x="{W - pad + 2}" y="{pad + 12 * i}" font-size="10" fill="{c}">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit(cfg: RunConfig, stem: str, doc: dict, series: dict | None = None) -> None:
    text = dumps(doc)
    if cfg.out is None:
        sys.stdout.write(text)
        return
    cfg.out.mkdir(parents=True, exist_ok=True)
    (cfg.out / f"{stem}.json").write_text(text)
    if cfg.svg and series:
        (cfg.out / f"{stem}.svg").write_text(svg_profiles(series, stem))


# --------------------------------------------------------------------------- commands


def _group(cfg: RunConfig):
    try:
        return load_group(cfg.group)
    except (KeyError, FileNotFoundError, json.JSONDecodeError, ValueError) as e:
        raise UsageError(f"cannot load group {cfg.group!r}: {e}") from None


def _endo(cfg: RunConfig, preset):
    if cfg.endo is None:
        raise UsageError("this scan needs --endo")
    try:
        return load_endomorphism(preset.model, preset.name, cfg.endo)
    except (KeyError, InvalidEndomorphism, ForeignLetter, json.JSONDecodeError, ValueError) as e:
        raise UsageError(f"cannot load endomorphism {cfg.endo!r}: {e}") from None


def cmd_ball(cfg: RunConfig) -> int:
    preset = _group(cfg)
    ball = build_ball(preset.model, cfg.radius, budget=cfg.budget)
    text = ball.to_csv()
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        cfg.out.mkdir(parents=True, exist_ok=True)
        (cfg.out / f"ball_{preset.name}_{cfg.radius}.csv").write_text(text)
    return EXIT_OK


def _profile_series(doc: dict, key: str = "value") -> list:
    return [(row["radius"], row[key]) for row in doc.get("per_radius", []) if row.get(key) is not None]


def run_quantity(quantity: str, cfg: RunConfig, preset, phi=None) -> tuple[dict, str]:
    """JSON document and outcome (plateau, growth, inconclusive, pass, fail)."""
    model, R = preset.model, cfg.radius
    if quantity == "delta":
        # --budget bounds the ball (checked before dispatch); triangles keep their own cap
        if cfg.sample:
            est = estimate_delta(model, R, "sampled", seed=cfg.sample[0], count=cfg.sample[1])
        else:
            est = estimate_delta(model, R, "strict" if cfg.strict else "exhaustive")
        doc = est.to_json(model, preset.name)
        return doc, verdict([v for _, v in est.per_radius])
    if quantity == "ftp":
        prof = ftp_scan(model, R, cfg.family)
        delta = estimate_delta(model, R).delta if preset.hyperbolic else None
        doc = prof.to_json(model, preset.name, delta)
        return doc, verdict([v for _, v in prof.per_radius])
    if quantity in ("qie", "holder", "domination"):
        fit = {"qie": qie_fit, "holder": holder_fit, "domination": gromov_domination_fit}[quantity](phi, R)
        doc = fit.to_json(model)
        return doc, "pass" if fit.feasible else "fail"
    if quantity == "brp-gromov":
        prof = brp_scan_gromov(phi, R, cfg.p)
    elif quantity == "brp-haus":
        prof = brp_scan_hausdorff(phi, R, strict=cfg.strict, workers=cfg.workers)
    elif quantity == "brp-nbhd":
        prof = brp_scan_neighbourhood(phi, R, strict=cfg.strict, workers=cfg.workers)
    elif quantity == "cmp":
        seed, count = cfg.sample or (0, 20_000)
        prof = cmp_scan(phi, R, seed=seed, count=count)
    elif quantity == "qconv":
        prof = quasiconvexity_scan(phi, R)
    elif quantity == "kernel":
        prof = kernel_scan(phi, R)
    else:
        raise UsageError(f"unknown quantity {quantity!r}")
    return prof.to_json(model), prof.verdict


def _good(outcome: str) -> bool:
    return outcome in ("plateau", "pass")


def exit_for(outcome: str, expect: str | None) -> int:
    if outcome == "inconclusive":
        return EXIT_VERDICT
    if expect is None:
        return EXIT_OK if _good(outcome) else EXIT_VERDICT
    return EXIT_OK if _good(outcome) == _good(expect) else EXIT_VERDICT


def _check_budget(cfg: RunConfig, preset) -> None:
    build_ball(preset.model, cfg.radius, budget=cfg.budget)


def cmd_scan(cfg: RunConfig, quantity: str) -> int:
    preset = _group(cfg)
    phi = _endo(cfg, preset) if quantity in ENDO_QUANTITIES else None
    _check_budget(cfg, preset)
    doc, outcome = run_quantity(quantity, cfg, preset, phi)
    doc["outcome"] = outcome
    key = "delta" if quantity == "delta" else "measured_N" if quantity == "ftp" else "value"
    emit(cfg, f"{quantity}_{preset.name}" + (f"_{phi.name}" if phi else ""), doc,
         {quantity: _profile_series(doc, key)})
    return exit_for(outcome, cfg.expect)


def build_report(cfg: RunConfig, fault: str | None = None) -> dict:
    """All scans for one endomorphism plus the coherence checks."""
    preset = _group(cfg)
    phi = _endo(cfg, preset)
    _check_budget(cfg, preset)
    profiles, fits = {}, {}
    for name, q, p in (("brp-gromov-p0", "brp-gromov", 0), ("brp-gromov-p1", "brp-gromov", 1),
                       ("brp-haus", "brp-haus", 0), ("brp-nbhd", "brp-nbhd", 0), ("cmp", "cmp", 0),
                       ("qconv", "qconv", 0), ("kernel", "kernel", 0)):
        cfg.p = p
        profiles[name], _ = run_quantity(q, cfg, preset, phi)
    for q in ("qie", "holder", "domination"):
        fits[q], _ = run_quantity(q, cfg, preset, phi)
    if fault in profiles:
        # deliberately corrupt one profile to exercise the coherence check
        rows = profiles[fault]["per_radius"]
        flat = all(r["value"] == rows[0]["value"] for r in rows)
        for i, r in enumerate(rows):
            r["value"] = i if flat else 0
        profiles[fault]["verdict"] = verdict([r["value"] for r in rows])
    equiv = ["brp-gromov-p0", "brp-gromov-p1", "brp-haus", "brp-nbhd", "cmp"]
    vs = {k: profiles[k]["verdict"] for k in equiv}
    brp_agree = len(set(vs.values())) == 1 and next(iter(vs.values())) in ("plateau", "growth")
    p0_p1 = not (vs["brp-gromov-p0"] == "plateau" and vs["brp-gromov-p1"] != "plateau")
    feas = {k: fits[k]["feasible"] for k in fits}
    fits_agree = len(set(feas.values())) == 1
    coherence = {"brp_cmp_verdicts": vs, "brp_cmp_agree": brp_agree,
                 "p0_plateau_implies_p1_plateau": p0_p1,
                 "fit_feasibility": feas, "fits_agree": fits_agree,
                 "pass": brp_agree and p0_p1 and fits_agree}
    return {"schema": REPORT_SCHEMA, "group": preset.name, "endo": phi.to_dict(),
            "radius": cfg.radius, "profiles": profiles, "fits": fits, "coherence": coherence}


def cmd_report(cfg: RunConfig, fault: str | None = None) -> int:
    doc = build_report(cfg, fault)
    series = {k: _profile_series(v) for k, v in doc["profiles"].items()}
    emit(cfg, f"report_{doc['group']}_{doc['endo']['name']}", doc, series)
    return EXIT_OK if doc["coherence"]["pass"] else EXIT_VERDICT


# --------------------------------------------------------------------------- argparse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", required=True, help="preset name (F2, F3, Zx2, Dinf, Z2) or group JSON file")
    common.add_argument("--radius", type=int, required=True)
    common.add_argument("--out", type=Path, help="output directory (default: stdout)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum ball size")
    common.add_argument("--workers", type=int, default=1)
    scans = argparse.ArgumentParser(add_help=False)
    scans.add_argument("--endo", help="shipped endomorphism name or endomorphism JSON file")
    scans.add_argument("--strict", action="store_true", help="all geodesics instead of canonical ones")
    scans.add_argument("--sample", type=parse_sample, metavar="SEED,COUNT")
    scans.add_argument("--svg", action="store_true", help="also write SVG profile plots (needs --out)")
    ap = argparse.ArgumentParser(prog="hypgroup", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("ball", parents=[common], help="dump the ball as CSV")
    sc = sub.add_parser("scan", parents=[common, scans], help="run one scan")
    sc.add_argument("quantity", choices=QUANTITIES)
    sc.add_argument("--expect", choices=("plateau", "growth", "pass"))
    sc.add_argument("--family", default="geodesics", help="ftp path family: geodesics or bent(p)")
    sc.add_argument("--p", type=int, default=0, help="Gromov-product bound for brp-gromov")
    sub.add_parser("report", parents=[common, scans], help="all scans for one endomorphism")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(group=args.group, radius=args.radius, endo=getattr(args, "endo", None),
                        strict=getattr(args, "strict", False), sample=getattr(args, "sample", None),
                        out=args.out, workers=args.workers, budget=args.budget,
                        svg=getattr(args, "svg", False), family=getattr(args, "family", "geodesics"),
                        p=getattr(args, "p", 0), expect=getattr(args, "expect", None))
        if args.command == "ball":
            return cmd_ball(cfg)
        if args.command == "scan":
            return cmd_scan(cfg, args.quantity)
        return cmd_report(cfg, os.environ.get(FAULT_ENV))
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
