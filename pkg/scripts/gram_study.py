"""Gram-matrix error against quadrature resolution for SU(2) and SU(1,1) discrete families."""

import argparse

import numpy as np

from harmreps import quad as Q


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--lmax", type=float, default=3)
    ap.add_argument("--nodes", default="8,16,32,64")
    a = ap.parse_args()

    su2 = Q.su2_family(a.lmax)
    su11 = Q.su11_disc_family((1, 1.5, 2), 3)
    print("nodes   SU(2) |G-I|   SU(1,1) |G-I|")
    for n in (int(t) for t in a.nodes.split(",")):
        spec = Q.QuadratureSpec(n_angle=n, n_theta=n)
        e1 = np.max(np.abs(Q.gram_matrix(su2, "s3", spec) - np.eye(len(su2))))
        e2 = np.max(np.abs(Q.gram_matrix(su11, "h22", spec) - np.eye(len(su11))))
        print(f"{n:<7d} {e1:.3e}     {e2:.3e}")


if __name__ == "__main__":
    main()
