"""The explicit low-degree brackets on the alpha-type complex.

Elements are graded with the shift ``deg HC^n = n - 2``: binary multiplications
and linear maps (``mu``, ``alpha``) sit in degree 0, ternary ``phi`` and binary
``psi`` in degree 1.  Each bracket has a ``mu``-valued and an ``alpha``-valued
part.  Only the printed shapes are implemented; every other shape evaluates to
zero and is reported through :mod:`warnings`.

Normalization: the raw ``mu``-valued brackets produce ``-(mu-part of d)``, so
:func:`l_exp` negates them; the ``alpha``-valued ones are used as they are.  With
that, the Maurer-Cartan ``mu``-part is ``alpha(x)(yz) - (xy)alpha(z)`` and
``d(phi, psi) = l(e^{(mu, alpha)} (phi + (-1)^n psi))`` in degrees 2 and 3.
"""

from __future__ import annotations

import itertools
import warnings
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import HomAlgebra, StructuralError
from .complex import CochainPair
from .multimap import MultiMap, compose, precompose


@dataclass(frozen=True)
class GradedCochain:
    """One component of a cochain: ``component`` is ``"mu"`` (phi-type) or ``"alpha"`` (psi-type)."""

    component: str
    map: MultiMap

    def __post_init__(self):
        if self.component not in ("mu", "alpha"):
            raise ValueError("component must be 'mu' or 'alpha'")

    @property
    def cochain_degree(self) -> int:
        return self.map.arity_in if self.component == "mu" else self.map.arity_in + 1

    @property
    def degree(self) -> int:
        return self.cochain_degree - 2

    @property
    def kind(self) -> str:
        return {("mu", 0): "mu", ("alpha", 0): "alpha", ("mu", 1): "phi", ("alpha", 1): "psi"}.get(
            (self.component, self.degree), "other")


class UnlistedBracket(UserWarning):
    """A bracket shape outside the printed list; evaluated as zero."""


def _shape(args: Sequence[GradedCochain]) -> Tuple[Tuple[str, int], ...]:
    return tuple(sorted(Counter(a.kind for a in args).items()))


def _bracket_mu(by: Dict[str, List[MultiMap]], shape) -> Optional[MultiMap]:
    if shape == (("alpha", 1), ("mu", 2)):
        (al,) = by["alpha"]
        m1, m2 = by["mu"]
        return (precompose(m1, [m2, al]) - precompose(m1, [al, m2])
                + precompose(m2, [m1, al]) - precompose(m2, [al, m1]))
    if shape == (("alpha", 2), ("mu", 1), ("phi", 1)):
        (ph,), (mu,) = by["phi"], by["mu"]
        a1, a2 = by["alpha"]
        out = MultiMap.zero(mu.dim, 4)
        for x, y in ((a1, a2), (a2, a1)):
            out = (out + precompose(ph, [mu, x, y]) - precompose(ph, [x, mu, y]) + precompose(ph, [x, y, mu])
                   - precompose(mu, [compose(x, y), ph]) - precompose(mu, [ph, compose(x, y)]))
        return out
    if shape == (("alpha", 2), ("mu", 2), ("psi", 1)):
        (ps,) = by["psi"]
        mus, als = by["mu"], by["alpha"]
        out = MultiMap.zero(ps.dim, 4)
        for s in itertools.permutations(range(2)):
            for t in itertools.permutations(range(2)):
                inner = precompose(mus[s[1]], [als[t[0]], als[t[1]]])
                out = out + precompose(mus[s[0]], [ps, inner]) - precompose(mus[s[0]], [inner, ps])
        return out
    return None


def _bracket_alpha(by: Dict[str, List[MultiMap]], shape) -> Optional[MultiMap]:
    if shape == (("alpha", 1), ("mu", 1)):
        return compose(by["alpha"][0], by["mu"][0])
    if shape == (("alpha", 2), ("mu", 1)):
        (mu,) = by["mu"]
        a1, a2 = by["alpha"]
        return -(precompose(mu, [a1, a2]) + precompose(mu, [a2, a1]))
    if shape == (("alpha", 1), ("phi", 1)):
        return compose(by["alpha"][0], by["phi"][0])
    if shape == (("alpha", 3), ("phi", 1)):
        (ph,) = by["phi"]
        out = MultiMap.zero(ph.dim, 3)
        for p in itertools.permutations(by["alpha"]):
            out = out - precompose(ph, list(p))
        return out
    if shape == (("alpha", 1), ("mu", 1), ("psi", 1)):
        (ps,), (mu,), (al,) = by["psi"], by["mu"], by["alpha"]
        return precompose(ps, [al, mu]) - precompose(ps, [mu, al])
    if shape == (("alpha", 2), ("mu", 1), ("psi", 1)):
        (ps,), (mu,) = by["psi"], by["mu"]
        a1, a2 = by["alpha"]
        out = MultiMap.zero(ps.dim, 3)
        for x, y in ((a1, a2), (a2, a1)):
            out = out + precompose(mu, [compose(x, y), ps]) - precompose(mu, [ps, compose(x, y)])
        return out
    return None


MU_SHAPES = ((("alpha", 1), ("mu", 2)), (("alpha", 2), ("mu", 1), ("phi", 1)), (("alpha", 2), ("mu", 2), ("psi", 1)))
ALPHA_SHAPES = ((("alpha", 1), ("mu", 1)), (("alpha", 2), ("mu", 1)), (("alpha", 1), ("phi", 1)),
                (("alpha", 3), ("phi", 1)), (("alpha", 1), ("mu", 1), ("psi", 1)), (("alpha", 2), ("mu", 1), ("psi", 1)))


def bracket(args: Sequence[GradedCochain], target: str) -> MultiMap:
    """The printed bracket of ``args`` with values in the ``target`` (``"mu"`` or ``"alpha"``) part.

    The raw printed expressions are returned (no normalization sign).
    """
    if target not in ("mu", "alpha"):
        raise ValueError("target must be 'mu' or 'alpha'")
    if not args:
        raise ValueError("empty bracket")
    d = args[0].map.dim
    shape = _shape(args)
    by: Dict[str, List[MultiMap]] = {}
    for a in args:
        by.setdefault(a.kind, []).append(a.map)
    res = _bracket_mu(by, shape) if target == "mu" else _bracket_alpha(by, shape)
    if res is None:
        warnings.warn(f"bracket shape {shape} with {target} values is not listed; using zero", UnlistedBracket)
        deg = sum(a.degree for a in args) + 1
        n = deg + 2
        return MultiMap.zero(d, n if target == "mu" else n - 1)
    return res


def _coefficient(counts: Dict[str, int]) -> Fraction:
    c = Fraction(1)
    for k in ("mu", "alpha"):
        c /= factorial(counts.get(k, 0))
    return c


def l_exp(mu: MultiMap, alpha: MultiMap, extra: Sequence[GradedCochain] = ()) -> Tuple[MultiMap, MultiMap]:
    """``l(e^{(mu, alpha)} . extra)`` restricted to the listed shapes, with the normalization of the module.

    ``extra`` holds at most one argument (the cochain the exponential acts on).
    """
    if len(extra) > 1:
        raise ValueError("at most one extra argument")
    d = mu.dim
    base_deg = sum(a.degree for a in extra) + 1
    out_mu = MultiMap.zero(d, base_deg + 2)
    out_al = MultiMap.zero(d, base_deg + 1)
    ex_kinds = Counter(a.kind for a in extra)
    for target, shapes in (("mu", MU_SHAPES), ("alpha", ALPHA_SHAPES)):
        for shape in shapes:
            counts = dict(shape)
            rest = dict(counts)
            ok = True
            for k, c in ex_kinds.items():
                rest[k] = rest.get(k, 0) - c
                if rest[k] < 0:
                    ok = False
            if not ok or any(k not in ("mu", "alpha") and v for k, v in rest.items()):
                continue
            args = list(extra) + [GradedCochain("mu", mu)] * rest.get("mu", 0) + \
                [GradedCochain("alpha", alpha)] * rest.get("alpha", 0)
            val = bracket(args, target).scale(_coefficient(rest))
            if target == "mu":
                out_mu = out_mu - val
            else:
                out_al = out_al + val
    return out_mu, out_al


def mc_residual(mu: MultiMap, alpha: MultiMap) -> Tuple[MultiMap, MultiMap]:
    """``(alpha(x)(yz) - (xy)alpha(z), alpha mu - mu(alpha, alpha))`` assembled from the degree-1 brackets."""
    return l_exp(mu, alpha)


def differential_via_brackets(A: HomAlgebra, c: CochainPair) -> CochainPair:
    """``d(phi, psi)`` in degrees 2 and 3 from the brackets, ``psi`` entering with sign ``(-1)^n``."""
    n = c.degree
    if n not in (2, 3):
        raise ValueError("brackets are only available for degrees 2 and 3")
    if c.dim != A.dim:
        raise StructuralError("cochain and algebra dimensions differ")
    m1, a1 = l_exp(A.mu, A.alpha, [GradedCochain("mu", c.phi)])
    m2, a2 = l_exp(A.mu, A.alpha, [GradedCochain("alpha", c.psi)])
    if n % 2:
        m2, a2 = -m2, -a2
    return CochainPair(n + 1, m1 + m2, a1 + a2)
