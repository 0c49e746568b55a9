#!/usr/bin/env python3
"""Maurer-Cartan residual of truncated series frames against the sample radius."""
import argparse

import numpy as np

from paraholo.liegroup import bch_lambda_series, mc_check, probe_points, sl2_structure, validate_structure


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--orders", type=int, nargs="+", default=[2, 3, 4, 5, 6, 7])
    ap.add_argument("--radii", type=float, nargs="+", default=[3e-1, 1e-1, 3e-2, 1e-2, 1e-3])
    args = ap.parse_args()

    A = validate_structure(sl2_structure())
    print("order  " + "  ".join(f"{r:>9.0e}" for r in args.radii) + "   slope(first two)   slope(all)")
    for N in args.orders:
        fr = bch_lambda_series(A, N)
        res = [mc_check(A, fr, probe_points(3, r), 1.0).violation for r in args.radii]
        logs = np.log10(args.radii), np.log10(np.maximum(res, 1e-300))
        first = (logs[1][0] - logs[1][1]) / (logs[0][0] - logs[0][1])
        fit = np.polyfit(*logs, 1)[0]
        print(f"{N:>5}  " + "  ".join(f"{v:9.2e}" for v in res) + f"   {first:16.2f}   {fit:10.2f}")


if __name__ == "__main__":
    main()
