"""Experiment: for invertible alpha, do the classes of (phi, 0) and (phi_psi, psi) span the cohomology?

Both families are subspaces of cocycles.  The script compares the rank of
their span together with the coboundaries to the rank of all cocycles, per
degree.  It reports; it proves nothing.

Usage: python3 scripts/cocycle_splitting.py [--max-degree K]
"""

import argparse
import json

from homhoch import fixtures as F
from homhoch.complex import CochainPair, Complex, cochain_dim_parts, phi_from_psi
from homhoch.linalg import SparseMatrix, rank, rational_kernel
from homhoch.multimap import from_vector


def split_report(A, n):
    C = Complex(A)
    d = A.dim
    size = sum(cochain_dim_parts(d, n))
    n_phi, n_psi = cochain_dim_parts(d, n)
    Z = [z.to_vector() for z in C.cocycle_basis(n)]
    B = C.differential(n - 1).matrix.cols if n >= 2 else []
    # pure phi cocycles: kernel of the differential restricted to the phi block
    D = C.differential(n).matrix
    Dphi = SparseMatrix(D.nrows, n_phi, D.cols[:n_phi])
    pure = rational_kernel(Dphi).basis
    # psi with (phi_psi, psi) closed: kernel of psi -> d(phi_psi, psi)
    psi_cols, lifts = [], []
    for j in range(n_psi):
        psi = from_vector({j: 1}, d, n - 1, 1)
        c = CochainPair(n, phi_from_psi(A, psi), psi)
        lifts.append(c.to_vector())
        psi_cols.append(D.matvec(lifts[-1]))
    K = rational_kernel(SparseMatrix(D.nrows, n_psi, psi_cols)).basis
    lifted = []
    for k in K:
        v = {}
        for j, x in k.items():
            for r, y in lifts[j].items():
                v[r] = v.get(r, 0) + x * y
        lifted.append({r: y for r, y in v.items() if y})
    rb = rank(SparseMatrix(size, len(B), list(B)))
    span = rank(SparseMatrix(size, len(B) + len(pure) + len(lifted), list(B) + pure + lifted))
    total = rank(SparseMatrix(size, len(Z), Z))
    return {"degree": n, "cohomology": total - rb, "split_part": span - rb, "splits": span == total}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=3)
    a = ap.parse_args()
    out = {}
    for v in ("id", "2id", "jordan", "diag23", "diag24"):
        out[f"T6 {v}"] = [split_report(F.t6(v), n) for n in range(2, a.max_degree + 1)]
    print(json.dumps(out, indent=2, sort_keys=True))
