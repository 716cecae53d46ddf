"""Write the built-in fixtures as JSON input files for the command line (default: data/)."""

import argparse
import os

from homhoch import fixtures as F
from homhoch import io
from homhoch.gs import group_algebra_z2, group_algebra_z2_twisted

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data")
    a = ap.parse_args()
    os.makedirs(a.out, exist_ok=True)
    algebras = {"e2": F.e2(), "e2_printed": F.e2_printed(), "x3": F.truncated_polynomial(3)}
    for v in ("id", "2id", "jordan", "diag23", "diag24"):
        algebras[f"t6_{v}"] = F.t6(v)
    for name, A in algebras.items():
        io.write_json(os.path.join(a.out, f"{name}.json"), io.algebra_to_data(A))
    io.write_json(os.path.join(a.out, "z2.json"), io.bialgebra_to_data(group_algebra_z2()))
    io.write_json(os.path.join(a.out, "z2_twisted.json"), io.bialgebra_to_data(group_algebra_z2_twisted()))
    io.write_json(os.path.join(a.out, "x3_family.json"), io.deformation_to_data(F.yau_family_x3(2)))
    io.write_json(os.path.join(a.out, "x3_square.json"), {"schema": 1, "dim": 3,
                                                          "map": [[0, 0, "1"], [1, 1, "2"], [2, 2, "4"]]})
