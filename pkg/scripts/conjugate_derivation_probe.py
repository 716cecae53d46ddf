"""Experiment: is alpha_1 (or a variant) a conjugate alpha_0-derivation for deformations with invertible alpha_0?

Runs the probe on Yau twists of known deformations and prints the verdicts.
Nothing is asserted.

Usage: python3 scripts/conjugate_derivation_probe.py
"""

import json

from homhoch import fixtures as F
from homhoch.deformation import check_deformation, conjugate_derivation_probe
from homhoch.multimap import MultiMap


def diagonal(values):
    return MultiMap(len(values), 1, 1, {((i,), (i,)): c for i, c in enumerate(values)})


if __name__ == "__main__":
    base = F.dual_numbers_2()
    cases = {
        "exp twist, alpha_0 = id": F.exp_twisted_star(base, 2),
        "exp twist then diag(1,2,3,6)": F.yau_twist_deformation(F.exp_twisted_star(base, 2), [diagonal((1, 2, 3, 6))]),
        "exp twist (2,1) then diag(1,3,2,6)": F.yau_twist_deformation(F.exp_twisted_star(base, 2, weights=(2, 1)),
                                                                       [diagonal((1, 3, 2, 6))]),
        "x^3 family then x -> 2x": F.yau_twist_deformation(F.yau_family_x3(2), [diagonal((1, 2, 4))]),
    }
    out = {}
    for name, D in cases.items():
        assert not check_deformation(D)
        out[name] = conjugate_derivation_probe(D)
    print(json.dumps(out, indent=2, sort_keys=True))
