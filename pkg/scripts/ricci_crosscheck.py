#!/usr/bin/env python3
"""Compare the para-complex Ricci tensor with the real Levi-Civita Ricci tensor of the realized metric."""
import argparse

import numpy as np

from paraholo.connection import characteristic_connection
from paraholo.core import PCArray, ParaComplex
from paraholo.curvature import curvature_components
from paraholo.metric import build_metric, realize_metric
from paraholo.realgeom import real_geometry

METRICS = {
    "quad1": (1, [["1 + z1*z1"]]),
    "exp1": (1, [["2*exp(z1)"]]),
    "warped2": (2, [["1", "0"], [None, "1 + z1*z1"]]),
    "mixed2": (2, [["2 + z2", "z1"], [None, "3 + z1*z2"]]),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    for name, (n, G) in METRICS.items():
        M = build_metric(n, G)
        g, L = realize_metric(M), characteristic_connection(M)
        worst = 0.0
        for _ in range(args.points):
            p = tuple(ParaComplex(*rng.uniform(-0.3, 0.3, 2)) for _ in range(n))
            rr = real_geometry(g, p).ricci
            pred = PCArray(0.5 * rr[:n, :n], 0.5 * rr[:n, n:])
            worst = max(worst, (curvature_components(L, p).ricci_hol - pred).abs_max())
        print(f"{name:<10} max deviation {worst:.2e}")


if __name__ == "__main__":
    main()
