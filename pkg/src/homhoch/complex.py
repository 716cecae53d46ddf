"""The alpha-type Hochschild complex: differentials, cohomology and the Yau-twist machinery.

Cochains of degree ``n`` with values in a bimodule ``M`` are pairs
``(phi, psi)`` with ``phi: A^{(x)n} -> M`` and ``psi: A^{(x)(n-1)} -> M``
(``psi`` absent for ``n = 1``).  A map ``A^{(x)k} -> M`` is flattened to the
coordinate ``flat(inputs) * dim M + output``; a pair is flattened as the
``phi`` block followed by the ``psi`` block.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import (Bimodule, HomAlgebra, NotAMorphismError, NotInvertibleError,
                      StructuralError, alpha_inverse, is_valid, lin_apply, morphism_defects,
                      unit_vec, vec_add, vec_clean, yau_twist, validate_hom_algebra)
from .linalg import SparseMatrix, block, rational_kernel, solve, zeros
from .multimap import (MultiMap, compose, flat_index, from_vector, inverse, is_invertible,
                       plug, power, precompose, tensor_power, to_vector)


class InvalidAlgebraError(ValueError):
    """Cohomology requested for data that is not a Hom-associative algebra."""


# -- cochains -------------------------------------------------------------------


@dataclass(frozen=True)
class CochainPair:
    degree: int
    phi: MultiMap
    psi: Optional[MultiMap] = None

    def __post_init__(self):
        n = self.degree
        if n < 1:
            raise ValueError("degree must be at least 1")
        if self.phi.arity_in != n or self.phi.arity_out != 1:
            raise StructuralError(f"phi must have arity {n}->1")
        if n == 1:
            if self.psi is not None and not self.psi.is_zero():
                raise StructuralError("degree-1 cochains have no psi component")
            object.__setattr__(self, "psi", None)
        else:
            if self.psi is None:
                object.__setattr__(self, "psi", MultiMap.zero(self.phi.dim, n - 1))
            elif self.psi.arity_in != n - 1 or self.psi.arity_out != 1 or self.psi.dim != self.phi.dim:
                raise StructuralError(f"psi must have arity {n - 1}->1")

    @property
    def dim(self) -> int:
        return self.phi.dim

    @classmethod
    def zero(cls, dim: int, n: int) -> "CochainPair":
        return cls(n, MultiMap.zero(dim, n), None if n == 1 else MultiMap.zero(dim, n - 1))

    def is_zero(self) -> bool:
        return self.phi.is_zero() and (self.psi is None or self.psi.is_zero())

    def __add__(self, other: "CochainPair") -> "CochainPair":
        psi = None if self.degree == 1 else self.psi + other.psi
        return CochainPair(self.degree, self.phi + other.phi, psi)

    def __neg__(self) -> "CochainPair":
        return CochainPair(self.degree, -self.phi, None if self.psi is None else -self.psi)

    def __sub__(self, other: "CochainPair") -> "CochainPair":
        return self + (-other)

    def scale(self, c) -> "CochainPair":
        return CochainPair(self.degree, self.phi.scale(c), None if self.psi is None else self.psi.scale(c))

    def to_vector(self) -> Dict[int, Fraction]:
        v = to_vector(self.phi)
        if self.psi is not None:
            off = cochain_dim_parts(self.dim, self.degree)[0]
            v.update({off + k: c for k, c in to_vector(self.psi).items()})
        return dict(sorted(v.items()))

    @classmethod
    def from_vector(cls, vec: Mapping[int, object], dim: int, n: int) -> "CochainPair":
        off = dim ** (n + 1)
        phi = from_vector({k: c for k, c in vec.items() if k < off}, dim, n, 1)
        if n == 1:
            if any(k >= off for k in vec):
                raise StructuralError("vector too long for degree 1")
            return cls(1, phi)
        psi = from_vector({k - off: c for k, c in vec.items() if k >= off}, dim, n - 1, 1)
        return cls(n, phi, psi)


def cochain_dim_parts(d: int, n: int, dm: Optional[int] = None) -> Tuple[int, int]:
    dm = d if dm is None else dm
    return d ** n * dm, (0 if n == 1 else d ** (n - 1) * dm)


def cochain_dim(d: int, n: int, dm: Optional[int] = None) -> int:
    return sum(cochain_dim_parts(d, n, dm))


# -- assembly context -------------------------------------------------------------


class _Context:
    """Cached products, powers of alpha and multiplication operators for one bimodule."""

    def __init__(self, M: Bimodule):
        self.M = M
        self.A = M.algebra
        d = self.A.dim
        self.d = d
        self.dm = M.dim
        e = [unit_vec(i) for i in range(d)]
        self.prod = {(a, b): self.A.mul(e[a], e[b]) for a in range(d) for b in range(d)}
        self.alpha1 = [self.A.act(e[a]) for a in range(d)]
        self._pow: Dict[int, List[Dict[int, Fraction]]] = {0: e}
        self._lop: Dict[Tuple[int, object], Dict[int, Dict[int, Fraction]]] = {}
        self._rop: Dict[Tuple[int, object], Dict[int, Dict[int, Fraction]]] = {}

    def alpha_pow(self, p: int) -> List[Dict[int, Fraction]]:
        if p not in self._pow:
            prev = self.alpha_pow(p - 1)
            self._pow[p] = [self.A.act(v) for v in prev]
        return self._pow[p]

    def _op(self, vec: Mapping[int, Fraction], side: str) -> Dict[int, Dict[int, Fraction]]:
        # column j -> image of f_j under left (a . f_j) or right (f_j . a) multiplication
        M = self.M
        out: Dict[int, Dict[int, Fraction]] = {}
        for j in range(self.dm):
            fj = {j: Fraction(1)}
            img = M.lact(vec, fj) if side == "l" else M.ract(fj, vec)
            if img:
                out[j] = img
        return out

    def left_op(self, vec: Mapping[int, Fraction]) -> Dict[int, Dict[int, Fraction]]:
        key = ("l", tuple(sorted(vec.items())))
        if key not in self._lop:
            self._lop[key] = self._op(vec, "l")
        return self._lop[key]

    def right_op(self, vec: Mapping[int, Fraction]) -> Dict[int, Dict[int, Fraction]]:
        key = ("r", tuple(sorted(vec.items())))
        if key not in self._rop:
            self._rop[key] = self._op(vec, "r")
        return self._rop[key]

    def beta_op(self) -> Dict[int, Dict[int, Fraction]]:
        return {j: v for j, v in ((j, self.M.beta_apply({j: Fraction(1)})) for j in range(self.dm)) if v}


def _expand(factors: Sequence[Mapping[int, Fraction]]) -> Dict[Tuple[int, ...], Fraction]:
    """Expand a tensor product of sparse vectors into basis tuples."""
    acc: Dict[Tuple[int, ...], Fraction] = {(): Fraction(1)}
    for f in factors:
        nxt: Dict[Tuple[int, ...], Fraction] = {}
        for t, c in acc.items():
            for i, x in f.items():
                key = t + (i,)
                nxt[key] = nxt.get(key, 0) + c * x
        acc = {k: v for k, v in nxt.items() if v}
        if not acc:
            break
    return acc


class _Builder:
    """Accumulates matrix entries column-wise."""

    def __init__(self, nrows: int, ncols: int):
        self.nrows = nrows
        self.cols: List[Dict[int, Fraction]] = [{} for _ in range(ncols)]

    def add(self, row: int, col: int, c) -> None:
        colv = self.cols[col]
        v = colv.get(row, 0) + c
        if v:
            colv[row] = v
        else:
            colv.pop(row, None)

    def add_op(self, row_base: int, col_base: int, op: Mapping[int, Mapping[int, Fraction]], c=1) -> None:
        # block entry: output coordinate row_base + k, input coordinate col_base + j
        for j, img in op.items():
            for k, x in img.items():
                self.add(row_base + k, col_base + j, c * x)

    def add_diag(self, row_base: int, col_base: int, size: int, c) -> None:
        for j in range(size):
            self.add(row_base + j, col_base + j, c)

    def matrix(self) -> SparseMatrix:
        return SparseMatrix(self.nrows, len(self.cols), self.cols)


def _ctx(A_or_M) -> _Context:
    M = A_or_M if isinstance(A_or_M, Bimodule) else Bimodule.regular(A_or_M)
    return _Context(M)


def _hochschild_like(cx: _Context, k: int, p: int) -> SparseMatrix:
    """``Hom(A^k, M) -> Hom(A^{k+1}, M)``:

    ``f -> alpha^p(x_1) f(x_2..) + sum_i (-1)^i f(alpha x_1, .., x_i x_{i+1}, .., alpha x_{k+1})
    + (-1)^{k+1} f(x_1..x_k) alpha^p(x_{k+1})``.
    """
    d, dm = cx.d, cx.dm
    bld = _Builder(d ** (k + 1) * dm, d ** k * dm)
    ap = cx.alpha_pow(p)
    al = cx.alpha1
    for X in itertools.product(range(d), repeat=k + 1):
        rb = flat_index(X, d) * dm
        bld.add_op(rb, flat_index(X[1:], d) * dm, cx.left_op(ap[X[0]]))
        for i in range(1, k + 1):
            factors = [al[x] for x in X[:i - 1]] + [cx.prod[(X[i - 1], X[i])]] + [al[x] for x in X[i + 1:]]
            sign = -1 if i % 2 else 1
            for Y, c in _expand(factors).items():
                bld.add_diag(rb, flat_index(Y, d) * dm, dm, sign * c)
        sign = -1 if (k + 1) % 2 else 1
        bld.add_op(rb, flat_index(X[:k], d) * dm, cx.right_op(ap[X[k]]), sign)
    return bld.matrix()


def _del_mumu(cx: _Context, n: int) -> SparseMatrix:
    return _hochschild_like(cx, n, n - 1)


def _del_alal(cx: _Context, n: int) -> SparseMatrix:
    return _hochschild_like(cx, n - 1, n - 1)


def _del_mual(cx: _Context, n: int) -> SparseMatrix:
    """``phi -> beta o phi - phi o alpha^{(x)n}`` on ``Hom(A^n, M)``."""
    d, dm = cx.d, cx.dm
    size = d ** n * dm
    bld = _Builder(size, size)
    bop = cx.beta_op()
    al = cx.alpha1
    for X in itertools.product(range(d), repeat=n):
        rb = flat_index(X, d) * dm
        bld.add_op(rb, rb, bop)
        for Y, c in _expand([al[x] for x in X]).items():
            bld.add_diag(rb, flat_index(Y, d) * dm, dm, -c)
    return bld.matrix()


def _del_almu(cx: _Context, n: int) -> SparseMatrix:
    """``psi -> alpha^{n-2}(x_1 x_2) psi(x_3..) - psi(x_1..x_{n-1}) alpha^{n-2}(x_n x_{n+1})``."""
    d, dm = cx.d, cx.dm
    bld = _Builder(d ** (n + 1) * dm, d ** (n - 1) * dm)
    A = cx.A
    pw = {}
    for a, b in itertools.product(range(d), repeat=2):
        v = cx.prod[(a, b)]
        for _ in range(n - 2):
            v = A.act(v)
        pw[(a, b)] = v
    for X in itertools.product(range(d), repeat=n + 1):
        rb = flat_index(X, d) * dm
        bld.add_op(rb, flat_index(X[2:], d) * dm, cx.left_op(pw[(X[0], X[1])]))
        bld.add_op(rb, flat_index(X[:n - 1], d) * dm, cx.right_op(pw[(X[n - 1], X[n])]), -1)
    return bld.matrix()


def build_del_mumu(A, n: int) -> SparseMatrix:
    if n < 1:
        raise ValueError("n must be at least 1")
    return _del_mumu(_ctx(A), n)


def build_del_alal(A, n: int) -> SparseMatrix:
    if n < 2:
        raise ValueError("n must be at least 2")
    return _del_alal(_ctx(A), n)


def build_del_mual(A, n: int) -> SparseMatrix:
    if n < 1:
        raise ValueError("n must be at least 1")
    return _del_mual(_ctx(A), n)


def build_del_almu(A, n: int) -> SparseMatrix:
    if n < 2:
        raise ValueError("n must be at least 2")
    return _del_almu(_ctx(A), n)


@dataclass
class DifferentialMatrix:
    degree: int
    matrix: SparseMatrix
    mumu: SparseMatrix
    mual: SparseMatrix
    almu: Optional[SparseMatrix] = None
    alal: Optional[SparseMatrix] = None

    @property
    def shape(self) -> Tuple[int, int]:
        return self.matrix.nrows, self.matrix.ncols


def _total(cx: _Context, n: int) -> DifferentialMatrix:
    d, dm = cx.d, cx.dm
    mm, ma = _del_mumu(cx, n), _del_mual(cx, n)
    rows = [d ** (n + 1) * dm, d ** n * dm]
    if n == 1:
        mat = block([[mm], [ma]], rows, [d * dm])
        return DifferentialMatrix(1, mat, mm, ma)
    am, aa = _del_almu(cx, n), _del_alal(cx, n)
    mat = block([[mm, -am], [ma, -aa]], rows, [d ** n * dm, d ** (n - 1) * dm])
    return DifferentialMatrix(n, mat, mm, ma, am, aa)


def build_total_differential(A, n: int) -> DifferentialMatrix:
    """``d(phi, psi) = (del_mumu phi - del_almu psi, del_mual phi - del_alal psi)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return _total(_ctx(A), n)


class Complex:
    """The alpha-type Hochschild complex of ``A`` (or with values in a bimodule).

    Differential matrices and their kernels are cached per degree.
    """

    def __init__(self, A, force: bool = False):
        self.cx = _ctx(A)
        self.algebra = self.cx.A
        if not force and not is_valid(self.algebra):
            raise InvalidAlgebraError("not a multiplicative Hom-associative algebra; cohomology refused")
        self._diff: Dict[int, DifferentialMatrix] = {}
        self._ker: Dict[int, object] = {}

    @property
    def dim(self) -> int:
        return self.cx.d

    def cochain_dim(self, n: int) -> int:
        return cochain_dim(self.cx.d, n, self.cx.dm)

    def differential(self, n: int) -> DifferentialMatrix:
        if n not in self._diff:
            self._diff[n] = _total(self.cx, n)
        return self._diff[n]

    def kernel(self, n: int):
        if n not in self._ker:
            self._ker[n] = rational_kernel(self.differential(n).matrix)
        return self._ker[n]

    def rank(self, n: int) -> int:
        return 0 if n < 1 else self.kernel(n).rank

    def cohomology_dim(self, n: int) -> int:
        return self.cochain_dim(n) - self.rank(n) - self.rank(n - 1)

    def dims(self, max_degree: int) -> List[int]:
        return [self.cohomology_dim(n) for n in range(1, max_degree + 1)]

    def apply(self, c: CochainPair) -> CochainPair:
        vec = self.differential(c.degree).matrix.matvec(c.to_vector())
        return CochainPair.from_vector(vec, self.dim, c.degree + 1)

    def is_cocycle(self, c: CochainPair) -> bool:
        return not self.differential(c.degree).matrix.matvec(c.to_vector())

    def coboundary_preimage(self, c: CochainPair) -> Optional[CochainPair]:
        n = c.degree
        if n == 1:
            return None
        x = solve(self.differential(n - 1).matrix, c.to_vector())
        if x is None:
            return None
        return CochainPair.from_vector(x, self.dim, n - 1)

    def cocycle_basis(self, n: int) -> List[CochainPair]:
        return [CochainPair.from_vector(v, self.dim, n) for v in self.kernel(n).basis]

    def cohomology_basis(self, n: int) -> List[CochainPair]:
        """Cocycles whose classes form a basis of the cohomology (greedy over the kernel basis)."""
        chosen: List[Dict[int, Fraction]] = []
        span = [dict(c) for c in (self.differential(n - 1).matrix.cols if n > 1 else [])]
        out = []
        base_rank = rational_kernel(SparseMatrix(self.cochain_dim(n), len(span), span)).rank if span else 0
        for v in self.kernel(n).basis:
            trial = span + chosen + [v]
            r = rational_kernel(SparseMatrix(self.cochain_dim(n), len(trial), trial)).rank
            if r > base_rank + len(chosen):
                chosen.append(v)
                out.append(CochainPair.from_vector(v, self.dim, n))
        return out


def _require_valid(A: HomAlgebra, force: bool) -> None:
    if not force and not is_valid(A):
        raise InvalidAlgebraError("not a multiplicative Hom-associative algebra; cohomology refused")


def cohomology_dim(A: HomAlgebra, n: int, force: bool = False) -> int:
    """``dim ker d^n - rank d^{n-1}``."""
    return Complex(A, force).cohomology_dim(n)


def cohomology_dims(A: HomAlgebra, max_degree: int, force: bool = False) -> List[int]:
    return Complex(A, force).dims(max_degree)


def cocycle_basis(A: HomAlgebra, n: int, force: bool = False) -> List[CochainPair]:
    return Complex(A, force).cocycle_basis(n)


def is_cocycle(A: HomAlgebra, c: CochainPair) -> bool:
    return Complex(A, force=True).is_cocycle(c)


def is_coboundary(A: HomAlgebra, c: CochainPair) -> Optional[CochainPair]:
    """A preimage ``b`` with ``d b = c`` or ``None``; degree-1 cochains are coboundaries only when zero."""
    if c.degree == 1:
        return None
    return Complex(A, force=True).coboundary_preimage(c)


def apply_differential(A: HomAlgebra, c: CochainPair) -> CochainPair:
    return Complex(A, force=True).apply(c)


# -- classical subcomplex -------------------------------------------------------------


def commuting_subspace(A: HomAlgebra, n: int):
    """Kernel basis of ``del_mual`` in degree ``n``: the maps commuting with alpha."""
    return rational_kernel(build_del_mual(A, n))


def classical_subcomplex_dim(A: HomAlgebra, n: int) -> int:
    """Cohomology of the alpha-commuting cochains under ``del_mumu`` alone."""
    d = A.dim

    def restricted_rank(k: int) -> int:
        if k < 1:
            return 0
        basis = commuting_subspace(A, k).basis
        if not basis:
            return 0
        mm = build_del_mumu(A, k)
        img = [mm.matvec(v) for v in basis]
        return rational_kernel(SparseMatrix(d ** (k + 2), len(img), img)).rank

    dim_n = commuting_subspace(A, n).nullity
    return dim_n - restricted_rank(n) - restricted_rank(n - 1)


def classical_hochschild_dim(A: HomAlgebra, n: int) -> int:
    """Hochschild cohomology of the full complex ``Hom(A^n, A)`` under ``del_mumu``."""
    d = A.dim
    cx = _ctx(A)
    r = lambda k: 0 if k < 1 else rational_kernel(_del_mumu(cx, k)).rank
    return d ** (n + 1) - r(n) - r(n - 1)


# -- cocycles from psi ----------------------------------------------------------------


def phi_from_psi(A: HomAlgebra, psi: MultiMap) -> MultiMap:
    """``phi(x_1..x_n) = alpha^{n-2}(x_1) a(psi(x_2..)) + (-1)^n a(psi(x_1..x_{n-1})) alpha^{n-2}(x_n)``, ``a = alpha^-1``."""
    ainv = alpha_inverse(A)
    n = psi.arity_in + 1
    if n < 2:
        raise ValueError("psi must have arity at least 1")
    g = compose(ainv, psi)
    ap = power(A.alpha, n - 2)
    t1 = precompose(A.mu, [ap, g])
    t2 = precompose(A.mu, [g, ap])
    return t1 + t2.scale((-1) ** n)


@dataclass
class PsiCocycleResult:
    cochain: Optional[CochainPair]
    defect: MultiMap

    @property
    def ok(self) -> bool:
        return self.cochain is not None


def cocycle_from_psi(A: HomAlgebra, psi: MultiMap) -> PsiCocycleResult:
    """``(phi_psi, psi)`` when ``del_alal psi = del_mual phi_psi``; otherwise the defect."""
    n = psi.arity_in + 1
    phi = phi_from_psi(A, psi)
    cx = _ctx(A)
    lhs = _del_alal(cx, n).matvec(to_vector(psi))
    rhs = _del_mual(cx, n).matvec(to_vector(phi))
    diff = dict(lhs)
    vec_add(diff, rhs, -1)
    defect = from_vector(vec_clean(diff), A.dim, n, 1)
    if defect.is_zero():
        return PsiCocycleResult(CochainPair(n, phi, psi), defect)
    return PsiCocycleResult(None, defect)


# -- morphism complex C(A, gamma) -------------------------------------------------------


def twisted_bimodule(A: HomAlgebra, gamma: MultiMap) -> Bimodule:
    """``A`` with actions ``a . b = gamma(a) b`` and ``b . a = b gamma(a)``, structure map ``id``."""
    d = A.dim
    left: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    right: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for a in range(d):
        ga = lin_apply(gamma, unit_vec(a))
        for b in range(d):
            l = A.mul(ga, unit_vec(b))
            r = A.mul(unit_vec(b), ga)
            if l:
                left[(a, b)] = l
            if r:
                right[(b, a)] = r
    beta = {j: {j: Fraction(1)} for j in range(d)}
    return Bimodule(A, d, beta, left, right)


class MorphismComplex:
    """``C^n(A, gamma) = Hom(A^n, A) + Hom(A^{n-1}, A~)`` for associative ``A``.

    ``d(phi, psi) = (d_mu phi, -d_mu~ psi + d_gamma phi)`` where ``d_mu`` is the
    Hochschild differential, ``A~`` carries the gamma-twisted actions and
    ``d_gamma phi = gamma phi - phi gamma^{(x)n}``.  In degree 1 the second
    summand is zero.
    """

    def __init__(self, A: HomAlgebra, gamma: MultiMap):
        if not A.is_associative_type:
            raise StructuralError("morphism complex needs an associative algebra (alpha = id)")
        if not is_valid(A):
            raise InvalidAlgebraError("algebra is not associative")
        if morphism_defects(A, gamma):
            raise NotAMorphismError("gamma is not an algebra endomorphism", morphism_defects(A, gamma)[0][1])
        self.A = A
        self.gamma = gamma
        self.d = A.dim
        self._plain = _ctx(A)
        self._twisted = _Context(twisted_bimodule(A, gamma))
        self._diff: Dict[int, SparseMatrix] = {}
        self._rank: Dict[int, int] = {}

    def build_del_mu(self, n: int, twisted: bool = False) -> SparseMatrix:
        return _hochschild_like(self._twisted if twisted else self._plain, n, 0)

    def build_del_gamma(self, n: int) -> SparseMatrix:
        gA = HomAlgebra(self.d, self.A.mu, self.gamma, self.A.basis)
        return _del_mual(_ctx(_loose(gA)), n)

    def cochain_dim(self, n: int) -> int:
        return cochain_dim(self.d, n)

    def differential(self, n: int) -> SparseMatrix:
        if n not in self._diff:
            d = self.d
            dm = self.build_del_mu(n)
            dg = self.build_del_gamma(n)
            rows = [d ** (n + 2), d ** (n + 1)]
            if n == 1:
                self._diff[n] = block([[dm], [dg]], rows, [d * d])
            else:
                dt = self.build_del_mu(n - 1, twisted=True)
                self._diff[n] = block([[dm, None], [dg, -dt]], rows, [d ** (n + 1), d ** n])
        return self._diff[n]

    def rank(self, n: int) -> int:
        if n < 1:
            return 0
        if n not in self._rank:
            self._rank[n] = rational_kernel(self.differential(n)).rank
        return self._rank[n]

    def cohomology_dim(self, n: int) -> int:
        return self.cochain_dim(n) - self.rank(n) - self.rank(n - 1)

    def dims(self, max_degree: int) -> List[int]:
        return [self.cohomology_dim(n) for n in range(1, max_degree + 1)]

    def two_stage_dim(self, n: int) -> int:
        """``H(H(C, d_mu), d_gamma)`` in degree ``n``, computed on explicit cohomology bases."""
        # E_1: H^n(A) + H^{n-1}(A~) (twisted-coefficient Hochschild cohomology, degree 0 column dropped)
        # the induced map is d_gamma: H^k(A) -> H^k(A~)
        return _two_stage(self, n)


def _loose(A: HomAlgebra) -> Bimodule:
    return Bimodule.regular(A)


def _hh_quotient(mats: Tuple[Optional[SparseMatrix], SparseMatrix], size: int):
    """Kernel of ``mats[1]`` modulo the image of ``mats[0]``: (kernel basis, image columns)."""
    prev, cur = mats
    ker = rational_kernel(cur).basis
    img = [c for c in (prev.cols if prev is not None else []) if c]
    return ker, img


def _two_stage(mc: MorphismComplex, n: int) -> int:
    d = mc.d

    def induced_dims(k: int) -> Tuple[int, int, int]:
        # H^k(A) -> H^k(A~) under d_gamma: returns (dim H^k(A), dim H^k(A~), rank of induced map)
        if k < 1:
            return 0, 0, 0
        size = d ** (k + 1)
        kerA, imgA = _hh_quotient((mc.build_del_mu(k - 1) if k > 1 else None, mc.build_del_mu(k)), size)
        kerT, imgT = _hh_quotient((mc.build_del_mu(k - 1, True) if k > 1 else None, mc.build_del_mu(k, True)), size)
        rA = rational_kernel(SparseMatrix(size, len(imgA), imgA)).rank if imgA else 0
        rT = rational_kernel(SparseMatrix(size, len(imgT), imgT)).rank if imgT else 0
        hA = len(kerA) - rA
        hT = len(kerT) - rT
        dg = mc.build_del_gamma(k)
        img = imgT + [dg.matvec(v) for v in kerA]
        r_total = rational_kernel(SparseMatrix(size, len(img), img)).rank if img else 0
        return hA, hT, r_total - rT

    hA, _, r_n = induced_dims(n)
    _, hT_prev, r_prev = induced_dims(n - 1)
    # degree n of the E_2 page: ker(H^n(A) -> H^n(A~)) + coker(H^{n-1}(A) -> H^{n-1}(A~))
    return (hA - r_n) + (hT_prev - r_prev if n >= 2 else 0)


# -- the chain map Phi ------------------------------------------------------------------


def _gamma_pow(gamma: MultiMap, k: int) -> MultiMap:
    if k >= 0:
        return power(gamma, k)
    return power(inverse(gamma), -k)


def chain_map_phi(A: HomAlgebra, gamma: MultiMap, c: CochainPair) -> CochainPair:
    """``(phi, psi) -> (g^{n-1} phi - sum_i (-1)^i g^{n-2} (psi o_i mu), g^{n-2} psi)``.

    The sign of the sum is the one that makes this a chain map for
    ``d_gamma phi = g phi - phi g^{(x)n}`` and the total differential used here;
    already in degree 1 the opposite sign leaves ``2 (phi g - g phi) o mu``.
    """
    n = c.degree
    phi = compose(power(gamma, n - 1), c.phi)
    if n == 1:
        return CochainPair(1, phi)
    gp = power(gamma, n - 2)
    for i in range(1, n):
        term = compose(gp, plug(c.psi, A.mu, i))
        phi = phi - term.scale((-1) ** i)
    return CochainPair(n, phi, compose(gp, c.psi))


def inverse_phi(A: HomAlgebra, gamma: MultiMap, c: CochainPair) -> CochainPair:
    """Inverse of :func:`chain_map_phi` for invertible ``gamma``."""
    if not is_invertible(gamma):
        raise NotInvertibleError("gamma not invertible")
    n = c.degree
    if n == 1:
        return CochainPair(1, compose(_gamma_pow(gamma, 0), c.phi))
    psi0 = compose(_gamma_pow(gamma, -(n - 2)), c.psi)
    inv_top = _gamma_pow(gamma, -(n - 1))
    phi = compose(inv_top, c.phi)
    for i in range(1, n):
        term = compose(inv_top, plug(compose(power(gamma, n - 2), psi0), A.mu, i))
        phi = phi + term.scale((-1) ** i)
    return CochainPair(n, phi, psi0)


def chain_map_matrix(A: HomAlgebra, gamma: MultiMap, n: int, inverse_map: bool = False) -> SparseMatrix:
    """Matrix of Phi (or its inverse) on the flattened degree-``n`` cochains."""
    d = A.dim
    size = cochain_dim(d, n)
    cols = []
    f = inverse_phi if inverse_map else chain_map_phi
    for j in range(size):
        c = CochainPair.from_vector({j: 1}, d, n)
        cols.append(f(A, gamma, c).to_vector())
    return SparseMatrix(size, size, cols)


# -- Yau transfer of cocycles -------------------------------------------------------------


def yau_cocycle_transfer(A: HomAlgebra, gamma: MultiMap, c: CochainPair) -> CochainPair:
    """``(phi, psi) -> (g^{n-1} phi, g^{n-1} psi)`` for a cocycle commuting with ``g``."""
    n = c.degree
    gn = tensor_power(gamma, n)
    if compose(gamma, c.phi) != compose(c.phi, gn):
        raise NotAMorphismError("phi does not commute with gamma", _commute_witness(gamma, c.phi))
    if c.psi is not None and compose(gamma, c.psi) != compose(c.psi, tensor_power(gamma, n - 1)):
        raise NotAMorphismError("psi does not commute with gamma", _commute_witness(gamma, c.psi))
    cx = Complex(A, force=True)
    if not cx.is_cocycle(c):
        raise ValueError("input is not a cocycle")
    g = power(gamma, n - 1)
    out = CochainPair(n, compose(g, c.phi), None if c.psi is None else compose(g, c.psi))
    twisted = yau_twist(A, gamma)
    if not Complex(twisted, force=True).is_cocycle(out):
        raise ArithmeticError("transferred cochain failed the cocycle check")
    return out


def _commute_witness(gamma: MultiMap, f: MultiMap) -> Tuple[int, ...]:
    lhs = compose(gamma, f)
    rhs = compose(f, tensor_power(gamma, f.arity_in))
    for ins in itertools.product(range(f.dim), repeat=f.arity_in):
        if lhs.apply_basis(ins) != rhs.apply_basis(ins):
            return ins
    return ()
