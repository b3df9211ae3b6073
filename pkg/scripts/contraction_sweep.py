"""Residual tables for both contractions to e(2).

su(2): the [P+,P-] bracket residual against the e(2) table as eps -> 0.
su(1,1): sup |op_r f - op_inf f| as r grows, with the fitted decay exponent.
"""

import argparse

import numpy as np

from harmreps import contract as K
from harmreps import sampling as S


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--npoints", type=int, default=100)
    ap.add_argument("--eps", default="0.4,0.2,0.1,0.05,0.025,0.0125")
    ap.add_argument("--r", default="2,4,8,16,32,64,128")
    a = ap.parse_args()
    rng = np.random.default_rng(a.seed)

    eps = [float(t) for t in a.eps.split(",")]
    x = S.random_points("s3", a.npoints, rng)
    fs = [S.band_limited("s3", rng) for _ in range(5)]
    res = [K.e2_table_residuals(e, fs, x)[("P+", "P-")] for e in eps]
    print("eps        [P+,P-] residual")
    for e, v in zip(eps, res):
        print(f"{e:<10g} {v:.3e}")
    print(f"fitted power: {K.fit_power(eps, res):.4f}\n")

    rs = [float(t) for t in a.r.split(",")]
    ang = np.array([rng.uniform(0, 2 * np.pi, a.npoints), rng.uniform(0, 2 * np.pi, a.npoints)])
    f = S.band_limited("h22r", rng)
    curves = {g: K.contraction_residual_curve(g, f, ang, rs) for g in ("iJ+", "iJ-", "J0")}
    print("r          " + "  ".join(f"{g:>10s}" for g in curves))
    for i, r in enumerate(rs):
        print(f"{r:<10g} " + "  ".join(f"{c.residuals[i]:10.3e}" for c in curves.values()))
    print("decay exponents: " + ", ".join(f"{g}={c.exponent}" for g, c in curves.items()))


if __name__ == "__main__":
    main()
