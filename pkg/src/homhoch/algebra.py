"""Hom-associative algebras, their validation, Yau twists, derivations and bimodules.

Conventions: ``alpha`` acts column-wise, ``alpha(e_j) = sum_k M[k][j] e_k``, and
``mu`` holds the structure constants ``e_i e_j = sum_k c_ij^k e_k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .multimap import (ArityError, MultiMap, compose, inverse, is_invertible, power,
                       precompose, tensor, tensor_power)

Vec = Dict[int, Fraction]


class StructuralError(ValueError):
    """Tensors of the wrong shape or dimension; distinct from an axiom violation."""


class NotInvertibleError(ZeroDivisionError):
    """A structure map that must be invertible is singular."""


class NotAMorphismError(ValueError):
    def __init__(self, message: str, witness: Tuple[int, ...]):
        super().__init__(message)
        self.witness = witness


# -- sparse vector helpers ----------------------------------------------------


def vec_add(acc: Dict, v: Mapping, c=1) -> None:
    for k, x in v.items():
        acc[k] = acc.get(k, 0) + c * x


def vec_clean(v: Mapping) -> Dict:
    return {k: Fraction(x) for k, x in sorted(v.items()) if x}


def lin_apply(f: MultiMap, v: Mapping[int, Fraction]) -> Vec:
    """Apply a 1->1 map to a sparse vector."""
    out: Dict[int, Fraction] = {}
    img = f.by_input()
    for i, x in v.items():
        for (k,), c in img.get((i,), ()):
            out[k] = out.get(k, 0) + c * x
    return vec_clean(out)


def bil_apply(f: MultiMap, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vec:
    out = f.apply(u, v)
    return vec_clean({k[0]: c for k, c in out.items()})


def unit_vec(i: int) -> Vec:
    return {i: Fraction(1)}


# -- validation reports --------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: Tuple[int, ...]
    defect: Tuple[Tuple[object, str], ...] = ()

    def describe(self, labels: Optional[Sequence[str]] = None) -> str:
        names = [labels[i] if labels else f"e{i + 1}" for i in self.witness]
        return f"{self.axiom} fails at ({', '.join(names)})"


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def axioms(self) -> List[str]:
        return sorted({v.axiom for v in self.violations})

    def add(self, axiom: str, witness: Tuple[int, ...], defect: Mapping) -> None:
        d = tuple((k, str(c)) for k, c in sorted(defect.items()) if c)
        if d:
            self.violations.append(Violation(axiom, tuple(witness), d))

    def extend(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)


# -- Hom-algebras ---------------------------------------------------------------


@dataclass(frozen=True)
class HomAlgebra:
    dim: int
    mu: MultiMap
    alpha: MultiMap
    basis: Tuple[str, ...] = ()
    unit: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"e{i + 1}" for i in range(self.dim)))
        if self.unit is not None:
            object.__setattr__(self, "unit", tuple(Fraction(c) for c in self.unit))
        check_structure(self)

    @classmethod
    def associative(cls, mu: MultiMap, basis: Sequence[str] = (), unit=None) -> "HomAlgebra":
        return cls(mu.dim, mu, MultiMap.identity(mu.dim), tuple(basis), unit)

    def mul(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vec:
        return bil_apply(self.mu, u, v)

    def act(self, v: Mapping[int, Fraction]) -> Vec:
        return lin_apply(self.alpha, v)

    @property
    def is_associative_type(self) -> bool:
        return self.alpha == MultiMap.identity(self.dim)

    def unit_vector(self) -> Optional[Vec]:
        if self.unit is None:
            return None
        return vec_clean(dict(enumerate(self.unit)))

    def is_commutative(self) -> bool:
        return all(self.mu[((i, j), (k,))] == self.mu[((j, i), (k,))]
                   for i in range(self.dim) for j in range(self.dim) for k in range(self.dim))


def check_structure(A: HomAlgebra) -> None:
    d = A.dim
    if A.mu.shape != (d, 2, 1):
        raise StructuralError(f"mu has shape {A.mu.shape}, expected {(d, 2, 1)}")
    if A.alpha.shape != (d, 1, 1):
        raise StructuralError(f"alpha has shape {A.alpha.shape}, expected {(d, 1, 1)}")
    if len(A.basis) != d:
        raise StructuralError(f"{len(A.basis)} basis labels for dimension {d}")
    if A.unit is not None and len(A.unit) != d:
        raise StructuralError(f"unit vector has length {len(A.unit)}, expected {d}")


def validate_hom_algebra(A: HomAlgebra) -> ValidationReport:
    """Check Hom-associativity, multiplicativity and the unit laws on all basis tuples.

    Every failing tuple is reported, together with the defect vector.
    """
    check_structure(A)
    rep = ValidationReport()
    d = A.dim
    e = [unit_vec(i) for i in range(d)]
    al = [A.act(e[i]) for i in range(d)]
    prod = {(i, j): A.mul(e[i], e[j]) for i in range(d) for j in range(d)}
    for x, y, z in itertools.product(range(d), repeat=3):
        lhs = A.mul(al[x], prod[(y, z)])
        rhs = A.mul(prod[(x, y)], al[z])
        diff = dict(lhs)
        vec_add(diff, rhs, -1)
        rep.add("hom-associativity", (x, y, z), diff)
    for x, y in itertools.product(range(d), repeat=2):
        diff = dict(A.act(prod[(x, y)]))
        vec_add(diff, A.mul(al[x], al[y]), -1)
        rep.add("multiplicativity", (x, y), diff)
    one = A.unit_vector()
    if one is not None:
        for x in range(d):
            left = dict(A.mul(one, e[x]))
            vec_add(left, al[x], -1)
            rep.add("left unit", (x,), left)
            right = dict(A.mul(e[x], one))
            vec_add(right, al[x], -1)
            rep.add("right unit", (x,), right)
        fixed = dict(A.act(one))
        vec_add(fixed, one, -1)
        rep.add("alpha fixes unit", (), fixed)
    return rep


def is_valid(A: HomAlgebra) -> bool:
    return validate_hom_algebra(A).ok


def morphism_defects(A: HomAlgebra, gamma: MultiMap) -> List[Tuple[str, Tuple[int, ...]]]:
    """Basis witnesses where ``gamma`` fails to be a morphism commuting with ``alpha``."""
    d = A.dim
    if gamma.shape != (d, 1, 1):
        raise StructuralError(f"gamma has shape {gamma.shape}, expected {(d, 1, 1)}")
    out = []
    lhs = precompose(A.mu, [gamma, gamma])
    rhs = compose(gamma, A.mu)
    for x, y in itertools.product(range(d), repeat=2):
        if lhs.apply_basis((x, y)) != rhs.apply_basis((x, y)):
            out.append(("morphism", (x, y)))
    ga, ag = compose(gamma, A.alpha), compose(A.alpha, gamma)
    for x in range(d):
        if ga.apply_basis((x,)) != ag.apply_basis((x,)):
            out.append(("commutes with alpha", (x,)))
    return out


def yau_twist(A: HomAlgebra, gamma: MultiMap, check: bool = True) -> HomAlgebra:
    """The Hom-algebra ``(A, gamma o mu, gamma o alpha)``.

    ``gamma`` must be an algebra morphism of ``A`` commuting with ``alpha``;
    otherwise :class:`NotAMorphismError` is raised with the first witness.  The
    unit survives when ``gamma`` fixes it.
    """
    if check:
        bad = morphism_defects(A, gamma)
        if bad:
            kind, wit = bad[0]
            raise NotAMorphismError(f"gamma fails '{kind}' at basis tuple {wit}", wit)
    unit = A.unit
    if unit is not None:
        one = A.unit_vector()
        if lin_apply(gamma, one) != one:
            unit = None
    return HomAlgebra(A.dim, compose(gamma, A.mu), compose(gamma, A.alpha), A.basis, unit)


# -- derivations ----------------------------------------------------------------


def _check_endo(A: HomAlgebra, f: MultiMap) -> None:
    if f.shape != (A.dim, 1, 1):
        raise ArityError(f"expected a linear endomorphism of a {A.dim}-dimensional space")


def _rule_holds(A: HomAlgebra, f: MultiMap, left: MultiMap, right: MultiMap) -> bool:
    # f(xy) == f(x) right(y) + left(x) f(y)
    lhs = compose(f, A.mu)
    rhs = precompose(A.mu, [f, right]) + precompose(A.mu, [left, f])
    return lhs == rhs


def is_derivation(A: HomAlgebra, f: MultiMap) -> bool:
    """``f(xy) = f(x) y + x f(y)``."""
    _check_endo(A, f)
    ident = MultiMap.identity(A.dim)
    return _rule_holds(A, f, ident, ident)


def is_alpha_derivation(A: HomAlgebra, f: MultiMap) -> bool:
    """``f(xy) = f(x) alpha(y) + alpha(x) f(y)``."""
    _check_endo(A, f)
    return _rule_holds(A, f, A.alpha, A.alpha)


def alpha_inverse(A: HomAlgebra) -> MultiMap:
    try:
        return inverse(A.alpha)
    except ZeroDivisionError:
        raise NotInvertibleError("alpha not invertible") from None


def is_conjugate_alpha_derivation(A: HomAlgebra, f: MultiMap) -> bool:
    """``f(xy) = alpha(x) g(y) + g(x) alpha(y)`` with ``g = alpha^-1 f alpha``."""
    _check_endo(A, f)
    ainv = alpha_inverse(A)
    g = compose(ainv, compose(f, A.alpha))
    lhs = compose(f, A.mu)
    rhs = precompose(A.mu, [A.alpha, g]) + precompose(A.mu, [g, A.alpha])
    return lhs == rhs


# -- iterated maps ----------------------------------------------------------------


def iterated_mu_alpha(A: HomAlgebra, n: int) -> MultiMap:
    """Left-bracketed twisted product: ``mu^1 = id``, ``mu^{k+1} = mu o (mu^k (x) alpha^{k-1})``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    m = MultiMap.identity(A.dim)
    for k in range(1, n):
        m = precompose(A.mu, [m, power(A.alpha, k - 1)])
    return m


def iterated_mu_alpha_dual(A: HomAlgebra, n: int) -> MultiMap:
    """The same map via the transposed recursion ``mu^{k+1} = mu^k o (mu (x) alpha^{(x)(k-1)})``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    m = MultiMap.identity(A.dim)
    for k in range(1, n):
        inner = [A.mu] if k == 1 else [A.mu, tensor_power(A.alpha, k - 1)]
        m = precompose(m, inner)
    return m


def iterated_delta_beta(delta: MultiMap, beta: MultiMap, n: int) -> MultiMap:
    """``Delta^1 = id``, ``Delta^{k+1} = (Delta (x) beta^{(x)(k-1)}) o Delta^k``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    from .multimap import postcompose
    m = MultiMap.identity(delta.dim)
    for k in range(1, n):
        outer = [delta] if k == 1 else [delta, tensor_power(beta, k - 1)]
        m = postcompose(outer, m)
    return m


# -- bimodules -------------------------------------------------------------------


Action = Dict[Tuple[int, int], Dict[int, Fraction]]


@dataclass(frozen=True)
class Bimodule:
    """A Hom-bimodule ``M`` over ``A``.

    ``left[(a, m)]`` is ``e_a . f_m`` and ``right[(m, a)]`` is ``f_m . e_a``, both
    sparse vectors of ``M``; ``beta[m]`` is the image of ``f_m``.
    """

    algebra: HomAlgebra
    dim: int
    beta: Dict[int, Dict[int, Fraction]]
    left: Action
    right: Action

    @classmethod
    def regular(cls, A: HomAlgebra) -> "Bimodule":
        prod: Action = {}
        for (ins, (k,)), c in A.mu.items():
            prod.setdefault(ins, {})[k] = c
        beta: Dict[int, Dict[int, Fraction]] = {}
        for ((j,), (k,)), c in A.alpha.items():
            beta.setdefault(j, {})[k] = c
        return cls(A, A.dim, beta, prod, prod)

    def beta_apply(self, v: Mapping[int, Fraction]) -> Vec:
        out: Dict[int, Fraction] = {}
        for m, x in v.items():
            vec_add(out, self.beta.get(m, {}), x)
        return vec_clean(out)

    def lact(self, a: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vec:
        out: Dict[int, Fraction] = {}
        for i, x in a.items():
            for m, y in v.items():
                vec_add(out, self.left.get((i, m), {}), x * y)
        return vec_clean(out)

    def ract(self, v: Mapping[int, Fraction], a: Mapping[int, Fraction]) -> Vec:
        out: Dict[int, Fraction] = {}
        for m, y in v.items():
            for i, x in a.items():
                vec_add(out, self.right.get((m, i), {}), x * y)
        return vec_clean(out)


def validate_bimodule(M: Bimodule) -> ValidationReport:
    A = M.algebra
    rep = ValidationReport()
    ea = [unit_vec(i) for i in range(A.dim)]
    em = [unit_vec(i) for i in range(M.dim)]
    for a, b, m in itertools.product(range(A.dim), range(A.dim), range(M.dim)):
        ab = A.mul(ea[a], ea[b])
        diff = dict(M.lact(ab, M.beta_apply(em[m])))
        vec_add(diff, M.lact(A.act(ea[a]), M.lact(ea[b], em[m])), -1)
        rep.add("left module", (a, b, m), diff)
        diff = dict(M.ract(M.beta_apply(em[m]), ab))
        vec_add(diff, M.ract(M.ract(em[m], ea[a]), A.act(ea[b])), -1)
        rep.add("right module", (m, a, b), diff)
        # bimodule law alpha(a).(m.b) = (a.m).alpha(b), witness (a, m, b)
        diff = dict(M.lact(A.act(ea[a]), M.ract(em[m], ea[b])))
        vec_add(diff, M.ract(M.lact(ea[a], em[m]), A.act(ea[b])), -1)
        rep.add("bimodule", (a, m, b), diff)
    for a, m in itertools.product(range(A.dim), range(M.dim)):
        diff = dict(M.beta_apply(M.lact(ea[a], em[m])))
        vec_add(diff, M.lact(A.act(ea[a]), M.beta_apply(em[m])), -1)
        rep.add("left multiplicativity", (a, m), diff)
        diff = dict(M.beta_apply(M.ract(em[m], ea[a])))
        vec_add(diff, M.ract(M.beta_apply(em[m]), A.act(ea[a])), -1)
        rep.add("right multiplicativity", (m, a), diff)
    return rep
