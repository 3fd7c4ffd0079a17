"""Per-radius thin-triangle and fellow-traveller profiles for every preset.

    python3 scripts/delta_profiles.py [--radius 5]
"""
import argparse

from hypgroup.hyperbolicity import estimate_delta
from hypgroup.presets import PRESETS
from hypgroup.quasigeodesic import ftp_scan


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--radius", type=int, default=5)
    args = ap.parse_args()
    for name, preset in PRESETS.items():
        m = preset.model
        d = estimate_delta(m, args.radius)
        geo = ftp_scan(m, args.radius)
        bent = ftp_scan(m, args.radius, "bent(1)")
        print(f"{name:5} delta {[v for _, v in d.per_radius]}")
        print(f"{'':5} ftp geodesics {[v for _, v in geo.per_radius]}")
        print(f"{'':5} ftp bent(1)   {[v for _, v in bent.per_radius]}")


if __name__ == "__main__":
    main()
