"""Worked examples and random generators of valid Hom-algebras.

The random generators only produce data that is valid by construction (Yau
twists of associative algebras by endomorphisms, conjugated by a random change
of basis, plus the degenerate ``mu = 0`` and ``alpha = 0`` families).
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .algebra import HomAlgebra, lin_apply, unit_vec, yau_twist
from .multimap import MultiMap, compose, inverse, is_invertible, precompose

Monomial = Tuple[int, ...]


# -- monomial algebras ------------------------------------------------------------


def monomial_algebra(monomials: Sequence[Monomial], names: Sequence[str] = ()) -> HomAlgebra:
    """Commutative algebra spanned by a division-closed set of monomials; products outside vanish."""
    mons = [tuple(m) for m in monomials]
    index = {m: i for i, m in enumerate(mons)}
    table = {}
    for i, a in enumerate(mons):
        for j, b in enumerate(mons):
            c = tuple(x + y for x, y in zip(a, b))
            if c in index:
                table[(i, j)] = {index[c]: 1}
    d = len(mons)
    labels = tuple(names) if names else tuple(_mono_label(m) for m in mons)
    zero = tuple(0 for _ in mons[0])
    unit = tuple(int(m == zero) for m in mons) if zero in index else None
    return HomAlgebra.associative(MultiMap.from_products(d, table), labels, unit)


def _mono_label(m: Monomial) -> str:
    vars_ = "xyzw"
    parts = []
    for v, e in zip(vars_, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "".join(parts) or "1"


def truncated_polynomial(k: int) -> HomAlgebra:
    """``K[x]/(x^k)`` with basis ``1, x, .., x^{k-1}``."""
    return monomial_algebra([(i,) for i in range(k)])


def t6_base() -> HomAlgebra:
    """``K[x, y]/(x, y)^3`` with basis ``1, x, y, x^2, xy, y^2``."""
    return monomial_algebra([(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)])


def multiplicative_extension(A: HomAlgebra, images: Dict[int, Dict[int, object]],
                             generators: Sequence[int]) -> MultiMap:
    """The algebra endomorphism of a monomial algebra fixing ``1`` with given generator images.

    Each basis monomial is written as a product of generators (via the labels)
    and its image is the product of the images.
    """
    d = A.dim
    one = A.unit_vector()
    cols: Dict[int, Dict[int, Fraction]] = {}
    # decompose basis elements by repeated multiplication of generators
    reachable: Dict[int, Dict[int, Fraction]] = {}
    if one is not None:
        (u,) = [i for i, c in one.items()]
        reachable[u] = dict(one)
    for g in generators:
        reachable[g] = {k: Fraction(c) for k, c in images[g].items() if c}
    changed = True
    while changed:
        changed = False
        for a, b in itertools.product(list(reachable), list(generators)):
            prod = A.mul(unit_vec(a), unit_vec(b))
            if len(prod) == 1:
                (k, c), = prod.items()
                if k not in reachable:
                    img = A.mul(reachable[a], reachable[b])
                    reachable[k] = {i: x / c for i, x in img.items()}
                    changed = True
    if len(reachable) != d:
        raise ValueError("generators do not reach every basis monomial")
    for j, v in reachable.items():
        cols[j] = v
    return MultiMap(d, 1, 1, {((j,), (k,)): c for j, v in cols.items() for k, c in v.items()})


T6_VARIANTS = ("id", "2id", "jordan", "diag23", "diag24")
T6_TARGETS = {
    "id": (10, 25, 41),
    "2id": (4, 7, 3),
    "jordan": (2, 3, 1),
    "diag23": (2, 3, 1),
    "diag24": (3, 6),
}


def t6_linear_part(variant: str) -> Dict[int, Dict[int, object]]:
    """Images of ``x`` (index 1) and ``y`` (index 2)."""
    if variant == "id":
        return {1: {1: 1}, 2: {2: 1}}
    if variant == "2id":
        return {1: {1: 2}, 2: {2: 2}}
    if variant == "jordan":
        return {1: {1: 2}, 2: {1: 1, 2: 2}}
    if variant == "diag23":
        return {1: {1: 2}, 2: {2: 3}}
    if variant == "diag24":
        return {1: {1: 2}, 2: {2: 4}}
    raise KeyError(f"unknown T6 variant {variant!r}")


def t6(variant: str = "id") -> HomAlgebra:
    """``K[x, y]/(x, y)^3`` Yau-twisted by the multiplicative extension of a map on ``span(x, y)``."""
    A = t6_base()
    gamma = multiplicative_extension(A, t6_linear_part(variant), [1, 2])
    return yau_twist(A, gamma)


def e2() -> HomAlgebra:
    """Two-dimensional example: ``alpha(e1) = e1 - e2``, ``alpha(e2) = 0``, ``e1 e1 = e1``, other products ``e2``."""
    mu = MultiMap.from_products(2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {1: 1}})
    alpha = MultiMap.from_matrix([[1, 0], [-1, 0]])
    return HomAlgebra(2, mu, alpha, ("e1", "e2"))


def e2_printed() -> HomAlgebra:
    """The same data with ``alpha(e1) = e1 + e2``; this fails multiplicativity."""
    A = e2()
    return HomAlgebra(2, A.mu, MultiMap.from_matrix([[1, 0], [1, 0]]), A.basis)


def nonassociative_example() -> HomAlgebra:
    mu = MultiMap.from_products(2, {(0, 0): {1: 1}, (1, 0): {0: 1}})
    return HomAlgebra(2, mu, MultiMap.identity(2))


# -- small associative algebras ------------------------------------------------------


def field_k() -> HomAlgebra:
    return HomAlgebra.associative(MultiMap.from_products(1, {(0, 0): {0: 1}}), ("1",), (1,))


def product_k(r: int) -> HomAlgebra:
    """``K x .. x K`` with orthogonal idempotents."""
    mu = MultiMap.from_products(r, {(i, i): {i: 1} for i in range(r)})
    return HomAlgebra.associative(mu, tuple(f"p{i + 1}" for i in range(r)), (1,) * r)


def upper_triangular() -> HomAlgebra:
    """Upper triangular 2x2 matrices, basis ``E11, E12, E22``."""
    table = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}}
    return HomAlgebra.associative(MultiMap.from_products(3, table), ("E11", "E12", "E22"), (1, 0, 1))


def matrix_algebra() -> HomAlgebra:
    """All 2x2 matrices, basis ``E11, E12, E21, E22``."""
    units = [(0, 0), (0, 1), (1, 0), (1, 1)]
    table = {}
    for a, (i, j) in enumerate(units):
        for b, (k, l) in enumerate(units):
            if j == k:
                table[(a, b)] = {units.index((i, l)): 1}
    return HomAlgebra.associative(MultiMap.from_products(4, table), ("E11", "E12", "E21", "E22"), (1, 0, 0, 1))


def zero_algebra(d: int, alpha: Optional[MultiMap] = None) -> HomAlgebra:
    return HomAlgebra(d, MultiMap.zero(d, 2), alpha if alpha is not None else MultiMap.zero(d, 1))


# -- random data -------------------------------------------------------------------


def _rand_frac(rng: random.Random, lo: int = -2, hi: int = 2) -> Fraction:
    return Fraction(rng.randint(lo, hi))


def random_matrix(rng: random.Random, d: int, lo: int = -2, hi: int = 2) -> MultiMap:
    return MultiMap.from_matrix([[_rand_frac(rng, lo, hi) for _ in range(d)] for _ in range(d)])


def random_invertible(rng: random.Random, d: int) -> MultiMap:
    while True:
        m = random_matrix(rng, d)
        if is_invertible(m):
            return m


def conjugate(A: HomAlgebra, P: MultiMap) -> HomAlgebra:
    """Transport the structure along ``P``: ``mu' = P mu (P^-1 (x) P^-1)``, ``alpha' = P alpha P^-1``."""
    Pi = inverse(P)
    mu = compose(P, precompose(A.mu, [Pi, Pi]))
    alpha = compose(P, compose(A.alpha, Pi))
    unit = None
    if A.unit is not None:
        u = lin_apply(P, A.unit_vector())
        unit = tuple(u.get(i, Fraction(0)) for i in range(A.dim))
    return HomAlgebra(A.dim, mu, alpha, A.basis, unit)


def _poly_endo(rng: random.Random, k: int) -> MultiMap:
    # x -> a x + b x^2 + ... on K[x]/(x^k); always an endomorphism fixing 1
    A = truncated_polynomial(k)
    img = {i: _rand_frac(rng) for i in range(1, k)}
    if k == 1:
        return MultiMap.identity(1)
    return multiplicative_extension(A, {1: img}, [1])


def _idempotent_endo(rng: random.Random, r: int) -> MultiMap:
    # each idempotent goes to a sum of a block of idempotents, blocks disjoint
    targets = list(range(r))
    rng.shuffle(targets)
    entries = {}
    for i in range(r):
        if rng.random() < 0.75:
            entries[((i,), (targets[i],))] = 1
    return MultiMap(r, 1, 1, entries)


def _triangular_endo(rng: random.Random) -> MultiMap:
    choice = rng.randrange(3)
    if choice == 0:
        return MultiMap.from_matrix([[1, 0, 0], [0, 0, 0], [0, 0, 1]])
    if choice == 1:
        # inner automorphism by [[1, t], [0, s]]
        t, s = _rand_frac(rng), Fraction(rng.choice([1, 2, -1]))
        # conjugation g X g^-1 on E11, E12, E22
        return MultiMap.from_matrix([[1, 0, 0], [-t / s, 1 / s, t / s], [0, 0, 1]])
    return MultiMap.identity(3)


def _matrix_endo(rng: random.Random) -> MultiMap:
    units = [(0, 0), (0, 1), (1, 0), (1, 1)]
    while True:
        g = [[_rand_frac(rng) for _ in range(2)] for _ in range(2)]
        det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
        if det:
            break
    gi = [[g[1][1] / det, -g[0][1] / det], [-g[1][0] / det, g[0][0] / det]]
    cols = {}
    for a, (i, j) in enumerate(units):
        # g E_ij g^-1 = sum_{k,l} g[k][i] gi[j][l] E_kl
        for b, (k, l) in enumerate(units):
            c = g[k][i] * gi[j][l]
            if c:
                cols[((a,), (b,))] = c
    return MultiMap(4, 1, 1, cols)


def associative_catalog(max_dim: int = 3) -> List[Tuple[str, Callable[[], HomAlgebra], Callable[[random.Random], MultiMap]]]:
    cat = [
        ("K", field_k, lambda rng: MultiMap.from_matrix([[rng.choice([0, 1])]])),
        ("K[x]/x^2", lambda: truncated_polynomial(2), lambda rng: _poly_endo(rng, 2)),
        ("K[x]/x^3", lambda: truncated_polynomial(3), lambda rng: _poly_endo(rng, 3)),
        ("KxK", lambda: product_k(2), lambda rng: _idempotent_endo(rng, 2)),
        ("UT2", upper_triangular, _triangular_endo),
        ("KxKxK", lambda: product_k(3), lambda rng: _idempotent_endo(rng, 3)),
        ("M2", matrix_algebra, _matrix_endo),
    ]
    return [c for c in cat if c[1]().dim <= max_dim]


def random_associative_with_endo(rng: random.Random, max_dim: int = 3,
                                 conjugated: bool = True) -> Tuple[HomAlgebra, MultiMap]:
    name, make, endo = rng.choice(associative_catalog(max_dim))
    A = make()
    g = endo(rng)
    if conjugated and A.dim > 1 and rng.random() < 0.7:
        P = random_invertible(rng, A.dim)
        A = conjugate(A, P)
        g = compose(P, compose(g, inverse(P)))
    return A, g


def random_hom_algebra(rng: random.Random, max_dim: int = 3) -> HomAlgebra:
    """A random valid multiplicative Hom-associative algebra of dimension at most ``max_dim``."""
    kind = rng.random()
    if kind < 0.7:
        A, g = random_associative_with_endo(rng, max_dim)
        return yau_twist(A, g)
    d = rng.randint(1, max_dim)
    if kind < 0.8:
        return zero_algebra(d, random_matrix(rng, d))
    if kind < 0.9:
        mu = MultiMap(d, 2, 1, {((i, j), (k,)): _rand_frac(rng) for i in range(d) for j in range(d)
                                for k in range(d) if rng.random() < 0.5})
        return zero_algebra(d).__class__(d, mu, MultiMap.zero(d, 1))
    return e2()


def random_pair(rng: random.Random, d: int) -> Tuple[MultiMap, MultiMap]:
    """Random ``(mu, alpha)``; about half are valid by construction, the rest are perturbed."""
    if rng.random() < 0.5:
        A = random_hom_algebra(rng, d)
        return A.mu, A.alpha
    A = random_hom_algebra(rng, d)
    dd = A.dim
    key = ((rng.randrange(dd), rng.randrange(dd)), (rng.randrange(dd),))
    bump = MultiMap(dd, 2, 1, {key: rng.choice([1, -1, 2])})
    return A.mu + bump, A.alpha


# -- deformations ---------------------------------------------------------------------


def _monomials_of(A: HomAlgebra) -> List[Monomial]:
    # recover exponent vectors from labels written by monomial_algebra
    out = []
    for lab in A.basis:
        exps = [0] * 4
        if lab != "1":
            for v, e in __import__("re").findall(r"([xyzw])(?:\^(\d+))?", lab):
                exps["xyzw".index(v)] = int(e) if e else 1
        out.append(tuple(exps))
    return out


def euler_derivation(A: HomAlgebra, weights: Sequence[int]) -> MultiMap:
    """The diagonal derivation multiplying a monomial by its weighted degree."""
    mons = _monomials_of(A)
    return MultiMap(A.dim, 1, 1, {((i,), (i,)): sum(w * e for w, e in zip(weights, m))
                                  for i, m in enumerate(mons)})


def _exp_series(E: MultiMap, order: int) -> List[MultiMap]:
    from .multimap import power
    out = []
    fact = 1
    for k in range(order + 1):
        if k:
            fact *= k
        out.append(power(E, k).scale(Fraction(1, fact)))
    return out


def abelian_twist_deformation(A: HomAlgebra, D1: MultiMap, D2: MultiMap, order: int):
    """``a * b = mu(exp(t D1 (x) D2)(a (x) b))`` for commuting derivations ``D1``, ``D2`` of associative ``A``.

    ``mu_k = mu o (D1^k (x) D2^k) / k!`` and ``alpha_t = alpha``.
    """
    from .deformation import TruncatedDeformation
    from .multimap import power
    mus = [A.mu]
    fact = 1
    for k in range(1, order + 1):
        fact *= k
        mus.append(precompose(A.mu, [power(D1, k), power(D2, k)]).scale(Fraction(1, fact)))
    alphas = [A.alpha] + [MultiMap.zero(A.dim, 1)] * order
    return TruncatedDeformation(A, tuple(mus), tuple(alphas))


def yau_twist_deformation(D, phi: Sequence[MultiMap]):
    """Yau twist of a deformation by a series ``phi = sum phi_i t^i`` of morphisms of the deformed product.

    Returns the truncated deformation ``(phi * , phi alpha_t)`` of ``(phi_0 mu, phi_0 alpha)``.
    """
    from .deformation import TruncatedDeformation
    N = D.order
    d = D.base.dim
    ph = [phi[i] if i < len(phi) else MultiMap.zero(d, 1) for i in range(N + 1)]
    mus, alphas = [], []
    for n in range(N + 1):
        m = MultiMap.zero(d, 2)
        a = MultiMap.zero(d, 1)
        for p in range(n + 1):
            m = m + compose(ph[p], D.mu(n - p))
            a = a + compose(ph[p], D.alpha(n - p))
        mus.append(m)
        alphas.append(a)
    base = HomAlgebra(d, mus[0], alphas[0], D.base.basis, None)
    return TruncatedDeformation(base, tuple(mus), tuple(alphas))


def yau_family_x3(order: int = 2):
    """``K[x]/(x^3)`` twisted by the morphisms ``gamma_t(x) = x + t x^2``: ``mu_1 = S mu``, ``alpha_1 = S``."""
    from .deformation import TruncatedDeformation
    A = truncated_polynomial(3)
    S = MultiMap(3, 1, 1, {((1,), (2,)): 1})
    D = TruncatedDeformation.undeformed(A, order)
    return yau_twist_deformation(D, [MultiMap.identity(3), S])


def exp_twisted_star(A: HomAlgebra, order: int = 2, weights=(1, 1)):
    """Abelian twist by ``x d/dx (x) y d/dy`` followed by the Yau twist with ``exp(t E)``, ``E`` Euler-type.

    A deformation of the associative base with ``alpha_1 = E``.
    """
    D1 = euler_derivation(A, (1, 0))
    D2 = euler_derivation(A, (0, 1))
    D = abelian_twist_deformation(A, D1, D2, order)
    E = euler_derivation(A, weights)
    return yau_twist_deformation(D, _exp_series(E, order))


def dual_numbers_2() -> HomAlgebra:
    """``K[x, y]/(x^2, y^2)`` with basis ``1, x, y, xy``."""
    return monomial_algebra([(0, 0), (1, 0), (0, 1), (1, 1)])
