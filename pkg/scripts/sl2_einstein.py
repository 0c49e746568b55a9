#!/usr/bin/env python3
"""Ricci, scalar curvature and Einstein constant of the sl(2) invariant metric near the identity."""
import argparse

from paraholo.core import ParaComplex
from paraholo.einstein import scalar_curvatures
from paraholo.liegroup import (
    bch_lambda_series,
    invariant_metric,
    lie_ricci_and_einstein,
    probe_points,
    sl2_structure,
    validate_structure,
)
from paraholo.metric import twin_metric


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", type=int, default=6)
    ap.add_argument("--radius", type=float, default=1e-2)
    args = ap.parse_args()

    A = validate_structure(sl2_structure())
    frame = bch_lambda_series(A, args.order)
    origin = tuple(ParaComplex() for _ in range(3))
    print("Killing form:\n", A.killing.re)
    rep = lie_ricci_and_einstein(A, frame, origin)
    print("Ric at identity:\n", rep.ricci.re)
    print(f"scalar = {rep.scalar}, einstein constant = {rep.einstein_constant}")
    for p in probe_points(3, args.radius):
        r = lie_ricci_and_einstein(A, frame, p)
        print(f"  |Ric + g/4| at {[str(z) for z in p]}: {r.residual:.2e}")
    g = invariant_metric(A, frame)
    for label, M in (("metric", g), ("twin", twin_metric(g))):
        K, Ks, Kh = scalar_curvatures(M, origin)
        print(f"{label}: K = {K:.6g}, K* = {Ks:.6g}, K_hat = {Kh}")


if __name__ == "__main__":
    main()
