"""Hom-bialgebras and the alpha-type Gerstenhaber-Schack bicomplex.

``C^{n,m} = H^{n,m} + H^{n-1,m} + H^{n,m-1} + H^{n-1,m-1}`` with components
``(phi, psi, chi, xi)`` and ``H^{i,j} = Hom(A^{(x)i}, A^{(x)j})``, zero when
``i <= 0`` or ``j <= 0``.  A map in ``H^{i,j}`` has coordinate
``flat(inputs) * d^j + flat(outputs)``.

The horizontal (algebra) differential is the alpha-type Hochschild
differential with coefficients in ``A^{(x)m}`` (for ``phi, psi``) and in
``A^{(x)(m-1)}`` with the action ``beta(x) . y`` (for ``chi, xi``).  The
vertical differential is its mirror image: transpose every cochain to the dual
Hom-bialgebra ``(Delta^T, beta^T, mu^T, alpha^T)``, apply the horizontal
differential there (the roles of ``psi`` and ``chi`` swap) and transpose back.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (Bimodule, HomAlgebra, StructuralError, ValidationReport, iterated_delta_beta,
                      unit_vec, validate_hom_algebra, vec_add, vec_clean)
from .complex import _Context, _total
from .linalg import SparseMatrix, block
from .multimap import (MultiMap, compose, flat_index, postcompose, precompose, tensor, tensor_power,
                       unflat_index)


@dataclass(frozen=True)
class HomBialgebra:
    dim: int
    mu: MultiMap
    alpha: MultiMap
    delta: MultiMap
    beta: MultiMap
    unit: Tuple[Fraction, ...]
    counit: Tuple[Fraction, ...]
    basis: Tuple[str, ...] = ()

    def __post_init__(self):
        d = self.dim
        object.__setattr__(self, "unit", tuple(Fraction(c) for c in self.unit))
        object.__setattr__(self, "counit", tuple(Fraction(c) for c in self.counit))
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"e{i + 1}" for i in range(d)))
        shapes = {"mu": (self.mu, (d, 2, 1)), "alpha": (self.alpha, (d, 1, 1)),
                  "delta": (self.delta, (d, 1, 2)), "beta": (self.beta, (d, 1, 1))}
        for name, (m, shp) in shapes.items():
            if m.shape != shp:
                raise StructuralError(f"{name} has shape {m.shape}, expected {shp}")
        if len(self.unit) != d or len(self.counit) != d:
            raise StructuralError("unit and counit must have length dim")

    @property
    def algebra(self) -> HomAlgebra:
        return HomAlgebra(self.dim, self.mu, self.alpha, self.basis, self.unit)

    def dual(self) -> "HomBialgebra":
        """The transposed structure on the dual space (dual basis)."""
        return HomBialgebra(self.dim, self.delta.transpose(), self.beta.transpose(), self.mu.transpose(),
                            self.alpha.transpose(), self.counit, self.unit,
                            tuple(f"{b}*" for b in self.basis))


# -- validation -------------------------------------------------------------------


def _tensor_product_algebra(B: HomBialgebra) -> MultiMap:
    # (a (x) b)(c (x) d) = ac (x) bd as a map A^4 -> A^2 with inputs (a, b, c, d)
    d = B.dim
    swap = MultiMap(d, 4, 4, {((a, b, c, e), (a, c, b, e)): 1
                              for a, b, c, e in itertools.product(range(d), repeat=4)})
    return compose(tensor(B.mu, B.mu), swap)


def _compare(rep: ValidationReport, axiom: str, f: MultiMap, g: MultiMap) -> None:
    for ins in itertools.product(range(f.dim), repeat=f.arity_in):
        a, b = f.apply_basis(ins), g.apply_basis(ins)
        diff = dict(a)
        vec_add(diff, b, -1)
        rep.add(axiom, ins, {k: v for k, v in diff.items() if v})


def validate_hom_bialgebra(B: HomBialgebra) -> ValidationReport:
    """All Hom-(co)algebra and compatibility axioms on basis elements."""
    d = B.dim
    rep = validate_hom_algebra(B.algebra)
    ident = MultiMap.identity(d)
    # coalgebra side
    _compare(rep, "hom-coassociativity", postcompose([B.delta, B.beta], B.delta), postcompose([B.beta, B.delta], B.delta))
    _compare(rep, "comultiplicativity", compose(B.delta, B.beta), postcompose([B.beta, B.beta], B.delta))
    eps = MultiMap(d, 1, 0, {((i,), ()): c for i, c in enumerate(B.counit)})
    _compare(rep, "left counit", postcompose([eps, ident], B.delta), B.beta)
    _compare(rep, "right counit", postcompose([ident, eps], B.delta), B.beta)
    # compatibility
    _compare(rep, "delta multiplicative", compose(B.delta, B.mu),
             precompose(_tensor_product_algebra(B), [B.delta, B.delta]))
    _compare(rep, "alpha beta commute", compose(B.alpha, B.beta), compose(B.beta, B.alpha))
    _compare(rep, "delta alpha", compose(B.delta, B.alpha), postcompose([B.alpha, B.alpha], B.delta))
    _compare(rep, "beta mu", compose(B.beta, B.mu), precompose(B.mu, [B.beta, B.beta]))
    _compare(rep, "counit multiplicative", compose(eps, B.mu), tensor(eps, eps))
    _compare(rep, "counit alpha", compose(eps, B.alpha), eps)
    _compare(rep, "counit beta", compose(eps, B.beta), eps)
    one = {i: c for i, c in enumerate(B.unit) if c}
    img: Dict[Tuple[int, ...], Fraction] = {}
    for i, c in one.items():
        for outs, x in B.delta.apply_basis((i,)).items():
            img[outs] = img.get(outs, 0) + c * x
    for i, c in one.items():
        for j, y in one.items():
            img[(i, j)] = img.get((i, j), 0) - c * y
    rep.add("delta of unit", (), {k: v for k, v in img.items() if v})
    bu: Dict[int, Fraction] = {}
    for i, c in one.items():
        for (k,), x in B.beta.apply_basis((i,)).items():
            bu[k] = bu.get(k, 0) + c * x
    vec_add(bu, one, -1)
    rep.add("beta fixes unit", (), bu)
    eu = sum(B.counit[i] * c for i, c in one.items())
    if eu != 1:
        rep.add("counit of unit", (), {0: eu - 1})
    return rep


def yau_twist_bialgebra(B: HomBialgebra, gamma: MultiMap) -> HomBialgebra:
    """``(gamma mu, Delta gamma, gamma alpha, gamma beta)`` with the same unit and counit."""
    return HomBialgebra(B.dim, compose(gamma, B.mu), compose(gamma, B.alpha), compose(B.delta, gamma),
                        compose(gamma, B.beta), B.unit, B.counit, B.basis)


def group_algebra_z2() -> HomBialgebra:
    """``K[Z/2]`` with basis ``1, g``: ``g g = 1``, ``Delta g = g (x) g``, ``eps = 1``, ``alpha = beta = id``."""
    mu = MultiMap.from_products(2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1}})
    delta = MultiMap(2, 1, 2, {((0,), (0, 0)): 1, ((1,), (1, 1)): 1})
    ident = MultiMap.identity(2)
    return HomBialgebra(2, mu, ident, delta, ident, (1, 0), (1, 1), ("1", "g"))


def group_algebra_z2_twisted() -> HomBialgebra:
    """Yau twist of ``K[Z/2]`` by the bialgebra map ``g -> 1``."""
    gamma = MultiMap(2, 1, 1, {((0,), (0,)): 1, ((1,), (0,)): 1})
    return yau_twist_bialgebra(group_algebra_z2(), gamma)


# -- module structures on tensor powers ----------------------------------------------


def _tensor_vectors(vs: Sequence[Dict[int, Fraction]], d: int) -> Dict[int, Fraction]:
    acc: Dict[Tuple[int, ...], Fraction] = {(): Fraction(1)}
    for v in vs:
        nxt = {}
        for t, c in acc.items():
            for i, x in v.items():
                nxt[t + (i,)] = nxt.get(t + (i,), 0) + c * x
        acc = nxt
    return vec_clean({flat_index(t, d): c for t, c in acc.items()})


def tensor_module(B: HomBialgebra, m: int, twist: bool = False) -> Bimodule:
    """``A^{(x)m}`` as a bimodule: ``x . (v_1..v_m) = x^(1) v_1 (x) .. (x) x^(m) v_m`` via ``Delta^m_beta``.

    With ``twist`` the acting element is first replaced by ``beta(x)``.  The
    structure map is ``alpha^{(x)m}``.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    d = B.dim
    A = HomAlgebra(d, B.mu, B.alpha, B.basis)
    dm = iterated_delta_beta(B.delta, B.beta, m)
    if twist:
        dm = compose(dm, B.beta)
    split = dm.by_input()
    e = [unit_vec(i) for i in range(d)]
    left: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    right: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for a in range(d):
        for v in range(d ** m):
            vt = unflat_index(v, d, m)
            lacc: Dict[int, Fraction] = {}
            racc: Dict[int, Fraction] = {}
            for parts, c in split.get((a,), ()):
                lv = _tensor_vectors([A.mul(e[p], e[q]) for p, q in zip(parts, vt)], d)
                rv = _tensor_vectors([A.mul(e[q], e[p]) for p, q in zip(parts, vt)], d)
                vec_add(lacc, lv, c)
                vec_add(racc, rv, c)
            lacc, racc = vec_clean(lacc), vec_clean(racc)
            if lacc:
                left[(a, v)] = lacc
            if racc:
                right[(v, a)] = racc
    am = tensor_power(B.alpha, m)
    beta = {}
    for (ins, outs), c in am.items():
        beta.setdefault(flat_index(ins, d), {})[flat_index(outs, d)] = c
    return Bimodule(A, d ** m, beta, left, right)


@dataclass
class TwistedActions:
    """The (co)module structures used by the bicomplex in row ``m``."""

    action: Bimodule
    beta_action: Optional[Bimodule]
    coaction: MultiMap
    alpha_coaction: Optional[MultiMap]


def left_coaction(B: HomBialgebra, m: int, twist: bool = False) -> MultiMap:
    """``A^{(x)m} -> A (x) A^{(x)m}``, dual to the left action of the dual bialgebra."""
    D = B.dual()
    M = tensor_module(D, m, twist)
    d = B.dim
    entries = {}
    for (a, v), img in M.left.items():
        # dual action a* (x) v* -> w*: transposed, w -> a (x) v
        for w, c in img.items():
            entries[(unflat_index(w, d, m), (a,) + unflat_index(v, d, m))] = c
    return MultiMap(d, m, m + 1, entries)


def twisted_actions(B: HomBialgebra, m: int) -> TwistedActions:
    return TwistedActions(
        tensor_module(B, m),
        tensor_module(B, m - 1, twist=True) if m >= 2 else None,
        left_coaction(B, m),
        left_coaction(B, m - 1, twist=True) if m >= 2 else None,
    )


# -- the bicomplex --------------------------------------------------------------------


def h_dim(d: int, i: int, j: int) -> int:
    return d ** (i + j) if i >= 1 and j >= 1 else 0


def cell_sizes(d: int, n: int, m: int) -> Tuple[int, int, int, int]:
    return h_dim(d, n, m), h_dim(d, n - 1, m), h_dim(d, n, m - 1), h_dim(d, n - 1, m - 1)


def cell_dim(d: int, n: int, m: int) -> int:
    return sum(cell_sizes(d, n, m))


@dataclass(frozen=True)
class GSCell:
    n: int
    m: int
    phi: MultiMap
    psi: Optional[MultiMap] = None
    chi: Optional[MultiMap] = None
    xi: Optional[MultiMap] = None

    def to_vector(self) -> Dict[int, Fraction]:
        d = self.phi.dim
        sizes = cell_sizes(d, self.n, self.m)
        out: Dict[int, Fraction] = {}
        off = 0
        for comp, size in zip((self.phi, self.psi, self.chi, self.xi), sizes):
            if comp is not None and size:
                for (ins, outs), c in comp.items():
                    out[off + flat_index(ins, d) * d ** comp.arity_out + flat_index(outs, d)] = c
            off += size
        return out


def gs_horizontal_differential(B: HomBialgebra, n: int, m: int) -> SparseMatrix:
    """``C^{n,m} -> C^{n+1,m}``: the alpha-type differential on ``(phi, psi)`` and on ``(chi, xi)``."""
    if n < 1 or m < 1:
        raise ValueError("n, m must be at least 1")
    d = B.dim
    src = cell_sizes(d, n, m)
    dst = cell_sizes(d, n + 1, m)
    top = _total(_Context(tensor_module(B, m)), n).matrix
    blocks: List[List[Optional[SparseMatrix]]] = [[None] * 4 for _ in range(4)]
    # top block maps (phi, psi) -> (phi', psi')
    blocks_top = _split(top, [dst[0], dst[1]], [src[0], src[1]])
    for i in range(2):
        for j in range(2):
            blocks[i][j] = blocks_top[i][j]
    if m >= 2:
        bot = _total(_Context(tensor_module(B, m - 1, twist=True)), n).matrix
        blocks_bot = _split(bot, [dst[2], dst[3]], [src[2], src[3]])
        for i in range(2):
            for j in range(2):
                blocks[2 + i][2 + j] = blocks_bot[i][j]
    return block(blocks, dst, src)


def _split(M: SparseMatrix, rows: Sequence[int], cols: Sequence[int]) -> List[List[Optional[SparseMatrix]]]:
    out: List[List[Optional[SparseMatrix]]] = []
    r0 = 0
    for r in rows:
        line = []
        c0 = 0
        for c in cols:
            if r == 0 or c == 0:
                line.append(None)
            else:
                sub = [{i - r0: x for i, x in M.cols[j].items() if r0 <= i < r0 + r} for j in range(c0, c0 + c)]
                line.append(SparseMatrix(r, c, sub))
            c0 += c
        out.append(line)
        r0 += r
    return out


def _transpose_perm(d: int, n: int, m: int) -> List[int]:
    """Index map ``C^{n,m}(B) -> C^{m,n}(B*)``: coordinate ``k`` goes to ``perm[k]``."""
    src = cell_sizes(d, n, m)
    dst = cell_sizes(d, m, n)
    src_off = [0, src[0], src[0] + src[1], src[0] + src[1] + src[2]]
    dst_off = [0, dst[0], dst[0] + dst[1], dst[0] + dst[1] + dst[2]]
    # components (phi, psi, chi, xi) of bidegree (n,m) -> (phi, chi, psi, xi) slots of (m,n)
    comps = [((n, m), 0, 0), ((n - 1, m), 1, 2), ((n, m - 1), 2, 1), ((n - 1, m - 1), 3, 3)]
    perm = [0] * sum(src)
    for (i, j), s, t in comps:
        if i < 1 or j < 1:
            continue
        for ins in itertools.product(range(d), repeat=i):
            for outs in itertools.product(range(d), repeat=j):
                a = src_off[s] + flat_index(ins, d) * d ** j + flat_index(outs, d)
                b = dst_off[t] + flat_index(outs, d) * d ** i + flat_index(ins, d)
                perm[a] = b
    return perm


def gs_vertical_differential(B: HomBialgebra, n: int, m: int) -> SparseMatrix:
    """``C^{n,m} -> C^{n,m+1}``, the horizontal differential of the dual transported back."""
    if n < 1 or m < 1:
        raise ValueError("n, m must be at least 1")
    d = B.dim
    H = gs_horizontal_differential(B.dual(), m, n)
    p_src = _transpose_perm(d, n, m)
    p_dst = _transpose_perm(d, n, m + 1)
    inv_dst = {b: a for a, b in enumerate(p_dst)}
    cols = []
    for a in range(cell_dim(d, n, m)):
        col = H.cols[p_src[a]]
        cols.append({inv_dst[r]: x for r, x in col.items()})
    return SparseMatrix(cell_dim(d, n, m + 1), cell_dim(d, n, m), cols)


@dataclass
class BicomplexReport:
    checked: List[Tuple[int, int]] = field(default_factory=list)
    failures: List[Tuple[str, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def bicomplex_check(B: HomBialgebra, n_max: int, m_max: int, total_max: Optional[int] = None) -> BicomplexReport:
    """``d_h^2 = 0``, ``d_v^2 = 0`` and ``d_h d_v = d_v d_h`` starting from every ``(n, m)`` in range."""
    rep = BicomplexReport()
    cache_h: Dict[Tuple[int, int], SparseMatrix] = {}
    cache_v: Dict[Tuple[int, int], SparseMatrix] = {}

    def h(n, m):
        if (n, m) not in cache_h:
            cache_h[(n, m)] = gs_horizontal_differential(B, n, m)
        return cache_h[(n, m)]

    def v(n, m):
        if (n, m) not in cache_v:
            cache_v[(n, m)] = gs_vertical_differential(B, n, m)
        return cache_v[(n, m)]

    for n in range(1, n_max + 1):
        for m in range(1, m_max + 1):
            if total_max is not None and n + m > total_max:
                continue
            rep.checked.append((n, m))
            if not (h(n + 1, m) @ h(n, m)).is_zero():
                rep.failures.append(("d_h^2", n, m))
            if not (v(n, m + 1) @ v(n, m)).is_zero():
                rep.failures.append(("d_v^2", n, m))
            if h(n, m + 1) @ v(n, m) != v(n + 1, m) @ h(n, m):
                rep.failures.append(("d_h d_v - d_v d_h", n, m))
    return rep


def total_space(d: int, k: int) -> List[Tuple[int, int]]:
    """Bidegrees ``(n, m)`` of total degree ``k = n + m - 1``."""
    return [(n, k + 1 - n) for n in range(1, k + 1)]


def total_differential(B: HomBialgebra, k: int) -> SparseMatrix:
    """``d = d_h + (-1)^n d_v`` from total degree ``k`` to ``k + 1``."""
    d = B.dim
    src = total_space(d, k)
    dst = total_space(d, k + 1)
    src_sizes = [cell_dim(d, n, m) for n, m in src]
    dst_sizes = [cell_dim(d, n, m) for n, m in dst]
    blocks: List[List[Optional[SparseMatrix]]] = [[None] * len(src) for _ in dst]
    for j, (n, m) in enumerate(src):
        blocks[dst.index((n + 1, m))][j] = gs_horizontal_differential(B, n, m)
        v = gs_vertical_differential(B, n, m)
        blocks[dst.index((n, m + 1))][j] = v if n % 2 == 0 else -v
    return block(blocks, dst_sizes, src_sizes)


# -- the alpha = beta subcomplex ----------------------------------------------------------


def reduced_components(k: int) -> Tuple[List[Tuple[int, int]], List[Tuple[int, int]]]:
    """Bidegrees of the ``phi`` summands and of the identified ``psi``/``chi`` summands in degree ``k``."""
    phis = [(n, k + 1 - n) for n in range(1, k + 1) if k + 1 - n >= 1]
    pairs = [(p, k - p) for p in range(1, k) if k - p >= 1]
    return phis, pairs


def reduced_dim(d: int, k: int) -> int:
    phis, pairs = reduced_components(k)
    return sum(d ** (n + m) for n, m in phis) + sum(d ** (p + q) for p, q in pairs)


def _embedding(d: int, k: int) -> SparseMatrix:
    """Reduced degree-``k`` cochains into the total complex.

    ``eta`` in ``H^{p,q}`` becomes ``chi`` of bidegree ``(p, q+1)`` and
    ``(-1)^(p+1) eta`` as ``psi`` of bidegree ``(p+1, q)``; ``xi = 0``.  The sign
    compensates the dual differential ``d_Delta_beta = -d_mu_alpha`` on ``H^{p,q}``.
    """
    cells = total_space(d, k)
    offsets = {}
    off = 0
    for n, m in cells:
        s = cell_sizes(d, n, m)
        offsets[(n, m)] = (off, off + s[0], off + s[0] + s[1], off + s[0] + s[1] + s[2])
        off += sum(s)
    phis, pairs = reduced_components(k)
    cols = []
    for n, m in phis:
        base = offsets[(n, m)][0]
        for j in range(d ** (n + m)):
            cols.append({base + j: Fraction(1)})
    for p, q in pairs:
        chi_base = offsets[(p, q + 1)][2]
        psi_base = offsets[(p + 1, q)][1]
        sign = Fraction(-1) ** (p + 1)
        for j in range(d ** (p + q)):
            cols.append({chi_base + j: Fraction(1), psi_base + j: sign})
    return SparseMatrix(off, len(cols), cols)


@dataclass
class ReducedComplex:
    degree: int
    dim: int
    differential: SparseMatrix
    preserved: bool


def alpha_equals_beta_subcomplex(B: HomBialgebra, k: int) -> ReducedComplex:
    """The reduced complex in degree ``k`` for ``alpha = beta``, with its differential.

    ``preserved`` records whether the total differential maps the embedded
    subspace into the embedded subspace of degree ``k + 1``.
    """
    if B.alpha != B.beta:
        raise StructuralError("alpha and beta differ")
    d = B.dim
    E = _embedding(d, k)
    E1 = _embedding(d, k + 1)
    D = total_differential(B, k)
    img = D @ E
    # reduced coordinates are read off at the phi entry, or at the chi entry of a pair;
    # chi lives in the cell with smaller n, which comes first in the cell list
    piv = [min(col) for col in E1.cols]
    index = {r: i for i, r in enumerate(piv)}
    cols = []
    preserved = True
    for col in img.cols:
        red = {index[r]: x for r, x in col.items() if r in index}
        if E1.matvec(red) != col:
            preserved = False
        cols.append(red)
    R = SparseMatrix(E1.ncols, E.ncols, cols)
    return ReducedComplex(k, reduced_dim(d, k), R, preserved)
