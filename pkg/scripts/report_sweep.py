"""Build the coherence report for every shipped endomorphism and tabulate it.

    python3 scripts/report_sweep.py [--radius 8] [--out reports/]
"""
import argparse
from pathlib import Path

from hypgroup.cli import RunConfig, build_report, dumps
from hypgroup.presets import ENDO_DOCS


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--radius", type=int, default=6)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()
    print(f"{'endomorphism':22} {'brp/cmp':10} {'fits':11} {'qie':>10} {'holder':>10} {'domination':>12} pass")
    for d in ENDO_DOCS:
        doc = build_report(RunConfig(group=d["group"], radius=args.radius, endo=d["name"]))
        coh, fits = doc["coherence"], doc["fits"]
        verdicts = "/".join(sorted(set(coh["brp_cmp_verdicts"].values())))
        feas = {True: "feasible", False: "infeasible"}.get(fits["qie"]["feasible"]) if coh["fits_agree"] else "mixed"
        qie = f"({fits['qie']['lambda']}, {fits['qie']['K']})"
        hol = f"({fits['holder']['K']}, {fits['holder']['r']})"
        dom = f"({fits['domination']['P']}, {fits['domination']['Q']})"
        print(f"{d['group'] + '/' + d['name']:22} {verdicts:10} {feas:11} {qie:>10} {hol:>10} {dom:>12} {coh['pass']}")
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / f"report_{d['group']}_{d['name']}.json").write_text(dumps(doc))


if __name__ == "__main__":
    main()
