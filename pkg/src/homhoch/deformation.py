"""Truncated formal deformations ``(mu_t, alpha_t)`` of a Hom-associative algebra.

A deformation is stored as the lists ``mu_0..mu_N`` and ``alpha_0..alpha_N``.
At order ``n`` the deformation equations read ``d(mu_n, alpha_n) = (R1_n, R2_n)``
where ``d`` is the total differential of :mod:`homhoch.complex` and

* ``R1_n(a,b,c) = sum mu_i(mu_k(a,b), alpha_j(c)) - mu_i(alpha_j(a), mu_k(b,c))``
* ``R2_n(a,b) = sum mu_i(alpha_j(a), alpha_k(b)) - sum alpha_i(mu_j(a,b))``

with all indices below ``n`` and summing to ``n``.  These are the lower-order
parts of the Hom-associativity and multiplicativity defects moved to the right
hand side, so the identity holds with exactly these signs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (HomAlgebra, ValidationReport, alpha_inverse, is_conjugate_alpha_derivation,
                      is_derivation, is_valid, unit_vec)
from .complex import CochainPair, Complex, cohomology_dim
from .multimap import MultiMap, compose, precompose


class DeformationError(ValueError):
    """A precondition of a deformation-theoretic operation fails."""


@dataclass(frozen=True)
class TruncatedDeformation:
    base: HomAlgebra
    mus: Tuple[MultiMap, ...]
    alphas: Tuple[MultiMap, ...]

    def __post_init__(self):
        mus, alphas = tuple(self.mus), tuple(self.alphas)
        object.__setattr__(self, "mus", mus)
        object.__setattr__(self, "alphas", alphas)
        if len(mus) != len(alphas) or not mus:
            raise DeformationError("need equally many (at least one) mu and alpha terms")
        d = self.base.dim
        for m in mus:
            if m.shape != (d, 2, 1):
                raise DeformationError("every mu_i must be a bilinear map on the base")
        for a in alphas:
            if a.shape != (d, 1, 1):
                raise DeformationError("every alpha_i must be a linear map on the base")
        if mus[0] != self.base.mu or alphas[0] != self.base.alpha:
            raise DeformationError("mu_0 and alpha_0 must be the base structure")

    @property
    def order(self) -> int:
        return len(self.mus) - 1

    @classmethod
    def undeformed(cls, A: HomAlgebra, order: int = 1) -> "TruncatedDeformation":
        zm, za = MultiMap.zero(A.dim, 2), MultiMap.zero(A.dim, 1)
        return cls(A, (A.mu,) + (zm,) * order, (A.alpha,) + (za,) * order)

    @classmethod
    def first_order(cls, A: HomAlgebra, mu1: MultiMap, alpha1: MultiMap) -> "TruncatedDeformation":
        return cls(A, (A.mu, mu1), (A.alpha, alpha1))

    def mu(self, i: int) -> MultiMap:
        return self.mus[i] if i <= self.order else MultiMap.zero(self.base.dim, 2)

    def alpha(self, i: int) -> MultiMap:
        return self.alphas[i] if i <= self.order else MultiMap.zero(self.base.dim, 1)

    def term(self, n: int) -> CochainPair:
        return CochainPair(2, self.mu(n), self.alpha(n))

    def truncate(self, order: int) -> "TruncatedDeformation":
        return TruncatedDeformation(self.base, self.mus[:order + 1], self.alphas[:order + 1])

    def extended(self, mu_next: MultiMap, alpha_next: MultiMap) -> "TruncatedDeformation":
        return TruncatedDeformation(self.base, self.mus + (mu_next,), self.alphas + (alpha_next,))

    def leading_order(self) -> Optional[int]:
        for k in range(1, self.order + 1):
            if not (self.mus[k].is_zero() and self.alphas[k].is_zero()):
                return k
        return None


# -- residuals ---------------------------------------------------------------------


def _triples(n: int):
    for i, j in itertools.product(range(n), repeat=2):
        k = n - i - j
        if 0 <= k < n:
            yield i, j, k


def residual_assoc(D: TruncatedDeformation, n: int) -> MultiMap:
    """``R1_n``; for ``n = 0`` the (zero, for valid bases) associator of the base."""
    if n > D.order + 1:
        raise DeformationError(f"residual of order {n} needs terms up to order {n - 1}")
    d = D.base.dim
    out = MultiMap.zero(d, 3)
    if n == 0:
        return precompose(D.mu(0), [D.mu(0), D.alpha(0)]) - precompose(D.mu(0), [D.alpha(0), D.mu(0)])
    for i, j, k in _triples(n):
        mi, aj, mk = D.mu(i), D.alpha(j), D.mu(k)
        if mi.is_zero() or aj.is_zero() or mk.is_zero():
            continue
        out = out + precompose(mi, [mk, aj]) - precompose(mi, [aj, mk])
    return out


def residual_mult(D: TruncatedDeformation, n: int) -> MultiMap:
    """``R2_n``; for ``n = 0`` the multiplicativity defect ``mu(alpha, alpha) - alpha mu`` of the base."""
    if n > D.order + 1:
        raise DeformationError(f"residual of order {n} needs terms up to order {n - 1}")
    d = D.base.dim
    if n == 0:
        return precompose(D.mu(0), [D.alpha(0), D.alpha(0)]) - compose(D.alpha(0), D.mu(0))
    out = MultiMap.zero(d, 2)
    for i, j, k in _triples(n):
        if not (D.mu(i).is_zero() or D.alpha(j).is_zero() or D.alpha(k).is_zero()):
            out = out + precompose(D.mu(i), [D.alpha(j), D.alpha(k)])
    for i in range(n):
        j = n - i
        if j < n and not (D.alpha(i).is_zero() or D.mu(j).is_zero()):
            out = out - compose(D.alpha(i), D.mu(j))
    return out


def residual(D: TruncatedDeformation, n: int) -> CochainPair:
    return CochainPair(3, residual_assoc(D, n), residual_mult(D, n))


def _complex(A: HomAlgebra) -> Complex:
    return Complex(A, force=True)


def check_deformation(D: TruncatedDeformation) -> List[int]:
    """Orders ``n <= N`` at which ``d(mu_n, alpha_n) != (R1_n, R2_n)``."""
    C = _complex(D.base)
    bad = []
    for n in range(1, D.order + 1):
        if C.apply(D.term(n)) != residual(D, n):
            bad.append(n)
    return bad


def is_deformation(D: TruncatedDeformation) -> bool:
    return is_valid(D.base) and not check_deformation(D)


@dataclass
class InfinitesimalClass:
    is_cocycle: bool
    coboundary_witness: Optional[MultiMap]

    @property
    def is_coboundary(self) -> bool:
        return self.coboundary_witness is not None


def infinitesimal_class(D: TruncatedDeformation) -> InfinitesimalClass:
    """Whether ``(mu_1, alpha_1)`` is a 2-cocycle, and a map ``S`` with ``d(S, 0) = (mu_1, alpha_1)`` if one exists."""
    if D.order < 1:
        raise DeformationError("need a first-order term")
    C = _complex(D.base)
    c = D.term(1)
    if not C.is_cocycle(c):
        return InfinitesimalClass(False, None)
    pre = C.coboundary_preimage(c)
    return InfinitesimalClass(True, None if pre is None else pre.phi)


@dataclass
class Obstruction:
    order: int
    cochain: CochainPair
    verified_cocycle: bool
    coboundary: Optional[CochainPair] = None

    @property
    def vanishes(self) -> bool:
        return self.coboundary is not None


def obstruction(D: TruncatedDeformation) -> Obstruction:
    """The degree-3 class ``(R1_{N+1}, R2_{N+1})`` of a deformation up to order ``N``."""
    if not is_valid(D.base):
        raise DeformationError("base is not a Hom-associative algebra")
    bad = check_deformation(D)
    if bad:
        raise DeformationError(f"not a deformation up to order {D.order}: fails at orders {bad}")
    C = _complex(D.base)
    R = residual(D, D.order + 1)
    ok = C.is_cocycle(R)
    pre = C.coboundary_preimage(R) if ok else None
    return Obstruction(D.order + 1, R, ok, pre)


def extend_one_order(D: TruncatedDeformation) -> Optional[TruncatedDeformation]:
    """Solve ``d(mu_{N+1}, alpha_{N+1}) = R_{N+1}``; ``None`` when the obstruction class is nonzero."""
    obs = obstruction(D)
    if obs.coboundary is None:
        return None
    nxt = D.extended(obs.coboundary.phi, obs.coboundary.psi)
    if check_deformation(nxt):
        raise ArithmeticError("extension failed to satisfy the deformation equation")
    return nxt


def extend_to_order(D: TruncatedDeformation, order: int) -> Optional[TruncatedDeformation]:
    while D.order < order:
        nxt = extend_one_order(D)
        if nxt is None:
            return None
        D = nxt
    return D


# -- equivalences -------------------------------------------------------------------


Series = List[MultiMap]


def _series_inverse(T: Series, order: int) -> Series:
    """Inverse of ``id + T_1 t + ..`` up to ``t^order``."""
    d = T[0].dim
    U = [MultiMap.identity(d)]
    for m in range(1, order + 1):
        acc = MultiMap.zero(d, 1)
        for i in range(1, m + 1):
            if i < len(T) and not T[i].is_zero():
                acc = acc - compose(T[i], U[m - i])
        U.append(acc)
    return U


def conjugate_deformation(D: TruncatedDeformation, S: Sequence[MultiMap]) -> TruncatedDeformation:
    """``a *' b = T^{-1}(T(a) * T(b))``, ``alpha' = T^{-1} alpha_t T`` with ``T = id + sum S_i t^i``.

    ``S[0]`` is ignored (taken to be the identity); the result is truncated at the order of ``D``.
    """
    N = D.order
    d = D.base.dim
    T = [MultiMap.identity(d)] + [S[i] if i < len(S) else MultiMap.zero(d, 1) for i in range(1, N + 1)]
    U = _series_inverse(T, N)
    mus, alphas = [], []
    for n in range(N + 1):
        m = MultiMap.zero(d, 2)
        a = MultiMap.zero(d, 1)
        for p, b, q in itertools.product(range(n + 1), repeat=3):
            r = n - p - b - q
            if r < 0:
                continue
            if not (U[p].is_zero() or D.mu(b).is_zero() or T[q].is_zero() or T[r].is_zero()):
                m = m + compose(U[p], precompose(D.mu(b), [T[q], T[r]]))
        for p, b in itertools.product(range(n + 1), repeat=2):
            q = n - p - b
            if q >= 0 and not (U[p].is_zero() or D.alpha(b).is_zero() or T[q].is_zero()):
                a = a + compose(U[p], compose(D.alpha(b), T[q]))
        mus.append(m)
        alphas.append(a)
    return TruncatedDeformation(D.base, tuple(mus), tuple(alphas))


def equivalence_step(D: TruncatedDeformation, D2: TruncatedDeformation, n: int) -> Optional[MultiMap]:
    """A map ``S_n`` with ``d(S_n, 0) = (mu_n - mu'_n, alpha_n - alpha'_n)``, or ``None``.

    ``D`` is then the conjugate of ``D2`` by ``id + S_n t^n`` up to order ``n``.
    Requires that the two agree below order ``n``; the difference at order ``n`` is
    checked to be a cocycle.
    """
    if D.base != D2.base:
        raise DeformationError("deformations of different algebras")
    if n < 1 or n > min(D.order, D2.order):
        raise DeformationError(f"order {n} outside the truncations")
    for i in range(1, n):
        if D.mu(i) != D2.mu(i) or D.alpha(i) != D2.alpha(i):
            raise DeformationError(f"deformations differ at order {i} < {n}")
    diff = CochainPair(2, D.mu(n) - D2.mu(n), D.alpha(n) - D2.alpha(n))
    C = _complex(D.base)
    if not C.is_cocycle(diff):
        raise DeformationError(f"difference at order {n} is not a cocycle")
    pre = C.coboundary_preimage(diff)
    return None if pre is None else pre.phi


@dataclass
class NormalizationResult:
    deformation: TruncatedDeformation
    leading_order: Optional[int]
    steps: List[Tuple[int, MultiMap]] = field(default_factory=list)
    trivial: bool = False
    message: str = ""


def normalize_leading_term(D: TruncatedDeformation) -> NormalizationResult:
    """Conjugate away coboundary leading terms order by order within the truncation."""
    bad = check_deformation(D)
    if bad:
        raise DeformationError(f"not a deformation: fails at orders {bad}")
    C = _complex(D.base)
    steps = []
    cur = D
    while True:
        k = cur.leading_order()
        if k is None:
            trivial_h2 = C.cohomology_dim(2) == 0
            msg = "all terms vanish within the truncation"
            if trivial_h2:
                msg = "equivalent to the undeformed algebra"
            return NormalizationResult(cur, None, steps, True, msg)
        pre = C.coboundary_preimage(cur.term(k))
        if pre is None:
            return NormalizationResult(cur, k, steps, False,
                                       f"leading term at order {k} is a cocycle that is not a coboundary")
        S = pre.phi
        series = [MultiMap.identity(D.base.dim)] + [MultiMap.zero(D.base.dim, 1)] * (k - 1) + [-S]
        cur = conjugate_deformation(cur, series)
        steps.append((k, -S))
        if not cur.term(k).is_zero():
            raise ArithmeticError("conjugation did not remove the leading coboundary")


# -- Hom-Poisson structures -------------------------------------------------------------


@dataclass(frozen=True)
class HomPoisson:
    base: HomAlgebra
    bracket: MultiMap


def check_hom_poisson(P: HomPoisson) -> ValidationReport:
    """Commutativity, skewsymmetry, Hom-Jacobi, Hom-Leibniz and multiplicativity on all basis tuples."""
    A, br = P.base, P.bracket
    d = A.dim
    rep = ValidationReport()
    e = [unit_vec(i) for i in range(d)]

    def b(u, v):
        out = br.apply(u, v)
        return {k[0]: c for k, c in out.items() if c}

    def diff(x, y):
        z = dict(x)
        for k, c in y.items():
            z[k] = z.get(k, 0) - c
        return z

    def add(x, y):
        z = dict(x)
        for k, c in y.items():
            z[k] = z.get(k, 0) + c
        return z

    al = [A.act(e[i]) for i in range(d)]
    for i, j in itertools.product(range(d), repeat=2):
        rep.add("commutativity", (i, j), diff(A.mul(e[i], e[j]), A.mul(e[j], e[i])))
        rep.add("skewsymmetry", (i, j), add(b(e[i], e[j]), b(e[j], e[i])))
        rep.add("multiplicativity", (i, j), diff(A.act(b(e[i], e[j])), b(al[i], al[j])))
    for i, j, k in itertools.product(range(d), repeat=3):
        lhs = b(al[i], b(e[j], e[k]))
        rhs = add(b(b(e[i], e[j]), al[k]), b(al[j], b(e[i], e[k])))
        rep.add("hom-jacobi", (i, j, k), diff(lhs, rhs))
        lhs = b(al[i], A.mul(e[j], e[k]))
        rhs = add(A.mul(al[j], b(e[i], e[k])), A.mul(b(e[i], e[j]), al[k]))
        rep.add("hom-leibniz", (i, j, k), diff(lhs, rhs))
    return rep


def antisymmetrize(f: MultiMap) -> MultiMap:
    swapped = MultiMap(f.dim, 2, 1, {((j, i), o): c for ((i, j), o), c in f.items()})
    return (f - swapped).scale(Fraction(1, 2))


def poisson_from_deformation(D: TruncatedDeformation) -> HomPoisson:
    """``{a, b} = (mu_1(a, b) - mu_1(b, a)) / 2`` for a deformation (up to order >= 2) of a commutative base."""
    if not D.base.is_commutative():
        raise DeformationError("base algebra is not commutative")
    if D.order < 2:
        raise DeformationError("Hom-Jacobi needs a deformation up to order at least 2")
    bad = check_deformation(D)
    if bad:
        raise DeformationError(f"not a deformation: fails at orders {bad}")
    return HomPoisson(D.base, antisymmetrize(D.mu(1)))


def is_poisson_derivation(P: HomPoisson, f: MultiMap) -> bool:
    """``f`` is a derivation of the product and of the bracket."""
    if not is_derivation(P.base, f):
        return False
    br = P.bracket
    lhs = compose(f, br)
    ident = MultiMap.identity(P.base.dim)
    rhs = precompose(br, [f, ident]) + precompose(br, [ident, f])
    return lhs == rhs


def conjugate_derivation_probe(D: TruncatedDeformation) -> Dict[str, bool]:
    """Experimental: which natural first-order maps are conjugate alpha_0-derivations.

    This only reports; nothing here is claimed to hold in general.
    """
    A = D.base
    ainv = alpha_inverse(A)
    a1 = D.alpha(1)
    cands = {
        "alpha_1": a1,
        "alpha_0^-1 alpha_1": compose(ainv, a1),
        "alpha_1 alpha_0^-1": compose(a1, ainv),
    }
    return {k: is_conjugate_alpha_derivation(A, f) for k, f in cands.items()}
