"""Exact sparse linear algebra over the rationals.

Matrices are stored column-wise as ``{row: Fraction}`` dicts.  Two elimination
routes are provided:

* :func:`rref_exact` -- Gaussian elimination over :class:`~fractions.Fraction`
  on sparse rows, rows taken in input order and pivoting on the first nonzero
  column.
* :func:`rational_kernel` -- the same elimination carried out modulo large
  primes, followed by rational reconstruction of the kernel basis and an *exact*
  check ``M k = 0`` over Q.  A prime can only lower the rank, so the modular rank
  is a lower bound; a verified kernel of the complementary dimension is an upper
  bound.  When both agree the answer is exact; otherwise more primes are tried
  and finally the Fraction route is used.

The kernel basis returned is the reduced-row-echelon one (1 in its own free
column, 0 in the other free columns), which is unique, so both routes return
identical bases.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

log = logging.getLogger(__name__)

Vector = Dict[int, Fraction]

# primes just below 2**62
PRIMES = (
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387733,
    4611686018427387709,
)


def _integer_columns(cols: Sequence[Vector]) -> Tuple[int, List[Dict[int, int]]]:
    """A common denominator ``L`` and the integer columns ``L * c``."""
    L = 1
    for c in cols:
        for x in c.values():
            q = Fraction(x).denominator
            if L % q:
                L = L * q // gcd(L, q)
    out = []
    for c in cols:
        out.append({i: int(Fraction(x) * L) for i, x in c.items()})
    return L, out


@dataclass
class SparseMatrix:
    nrows: int
    ncols: int
    cols: List[Vector] = field(default_factory=list)

    def __post_init__(self):
        if not self.cols:
            self.cols = [{} for _ in range(self.ncols)]
        if len(self.cols) != self.ncols:
            raise ValueError("column count mismatch")

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for j, x in enumerate(row):
                x = Fraction(x)
                if x:
                    cols[j][i] = x
        return cls(nrows, ncols, cols)

    @classmethod
    def from_columns(cls, nrows: int, cols: Sequence[Mapping[int, object]]) -> "SparseMatrix":
        clean = [{r: Fraction(v) for r, v in c.items() if v} for c in cols]
        return cls(nrows, len(clean), clean or [])

    def dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def rows(self) -> List[Vector]:
        rows: List[Vector] = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                rows[i][j] = x
        return rows

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def matvec(self, v: Mapping[int, object]) -> Vector:
        out: Dict[int, Fraction] = {}
        for j, x in v.items():
            if not x:
                continue
            for i, a in self.cols[j].items():
                out[i] = out.get(i, 0) + a * x
        return {i: x for i, x in out.items() if x}

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        # exact product through integer scaling: Fraction arithmetic is the bottleneck otherwise
        la, ia = _integer_columns(self.cols)
        lb, ib = _integer_columns(other.cols)
        scale = Fraction(1, la * lb)
        cols = []
        for c in ib:
            out: Dict[int, int] = {}
            for j, x in c.items():
                for i, a in ia[j].items():
                    out[i] = out.get(i, 0) + a * x
            cols.append({i: scale * x for i, x in out.items() if x})
        return SparseMatrix(self.nrows, other.ncols, cols)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, x in b.items():
                c[i] = c.get(i, 0) + x
            cols.append({i: x for i, x in c.items() if x})
        return SparseMatrix(self.nrows, self.ncols, cols)

    def __neg__(self) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, [{i: -x for i, x in c.items()} for c in self.cols])

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.cols == other.cols

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.ncols, self.nrows, self.rows())


def zeros(nrows: int, ncols: int) -> SparseMatrix:
    return SparseMatrix(nrows, ncols)


def block(blocks: Sequence[Sequence[Optional[SparseMatrix]]], row_sizes: Sequence[int],
          col_sizes: Sequence[int]) -> SparseMatrix:
    """Assemble a block matrix; ``None`` blocks are zero."""
    nrows, ncols = sum(row_sizes), sum(col_sizes)
    cols: List[Vector] = [{} for _ in range(ncols)]
    r0 = 0
    for bi, brow in enumerate(blocks):
        c0 = 0
        for bj, blk in enumerate(brow):
            if blk is not None:
                if (blk.nrows, blk.ncols) != (row_sizes[bi], col_sizes[bj]):
                    raise ValueError(f"block ({bi},{bj}) has shape {blk.nrows}x{blk.ncols}, "
                                     f"expected {row_sizes[bi]}x{col_sizes[bj]}")
                for j, col in enumerate(blk.cols):
                    tgt = cols[c0 + j]
                    for i, x in col.items():
                        tgt[r0 + i] = tgt.get(r0 + i, 0) + x
            c0 += col_sizes[bj]
        r0 += row_sizes[bi]
    return SparseMatrix(nrows, ncols, [{i: x for i, x in c.items() if x} for c in cols])


# -- exact route ------------------------------------------------------------


def _eliminate(rows: Iterable[Dict[int, object]], sub, normalize, ) -> Dict[int, Dict[int, object]]:
    """Echelon form by row insertion; returns ``{pivot column: row}`` with unit leading entries."""
    pivots: Dict[int, Dict[int, object]] = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                pivots[c] = normalize(row, c)
                break
            sub(row, prow, row[c])
    return pivots


def _back_substitute(pivots: Dict[int, Dict[int, object]], sub) -> None:
    for c in sorted(pivots, reverse=True):
        prow = pivots[c]
        for c2 in sorted(pivots):
            if c2 >= c:
                break
            r = pivots[c2]
            x = r.get(c)
            if x:
                sub(r, prow, x)


def _q_sub(row: Dict[int, Fraction], prow: Dict[int, Fraction], fac: Fraction) -> None:
    for j, y in prow.items():
        v = row.get(j, 0) - fac * y
        if v:
            row[j] = v
        else:
            row.pop(j, None)


def _q_normalize(row: Dict[int, Fraction], c: int) -> Dict[int, Fraction]:
    lead = row[c]
    if lead == 1:
        return row
    return {j: x / lead for j, x in row.items()}


def rref_exact(M: SparseMatrix) -> Dict[int, Vector]:
    """Reduced row echelon form as ``{pivot column: row}`` over Fraction."""
    pivots = _eliminate(M.rows(), _q_sub, _q_normalize)
    _back_substitute(pivots, _q_sub)
    return pivots


def _kernel_from_rref(pivots: Mapping[int, Mapping[int, object]], ncols: int) -> List[Vector]:
    free = [j for j in range(ncols) if j not in pivots]
    free_set = set(free)
    basis: Dict[int, Vector] = {f: {f: Fraction(1)} for f in free}
    for p, row in pivots.items():
        for j, x in row.items():
            if j in free_set:
                basis[j][p] = -x
    return [dict(sorted(basis[f].items())) for f in free]


def kernel_exact(M: SparseMatrix) -> Tuple[int, List[Vector]]:
    piv = rref_exact(M)
    return len(piv), _kernel_from_rref(piv, M.ncols)


# -- modular route ----------------------------------------------------------


def _mod_rows(M: SparseMatrix, p: int) -> Optional[List[Dict[int, int]]]:
    rows: List[Dict[int, int]] = [{} for _ in range(M.nrows)]
    for j, col in enumerate(M.cols):
        for i, x in col.items():
            den = x.denominator
            if den % p == 0:
                return None
            v = x.numerator % p if den == 1 else x.numerator * pow(den, -1, p) % p
            if v:
                rows[i][j] = v
    return rows


def rref_mod(M: SparseMatrix, p: int) -> Optional[Dict[int, Dict[int, int]]]:
    rows = _mod_rows(M, p)
    if rows is None:
        return None

    def sub(row, prow, fac):
        for j, y in prow.items():
            v = (row.get(j, 0) - fac * y) % p
            if v:
                row[j] = v
            else:
                row.pop(j, None)

    def normalize(row, c):
        inv = pow(row[c], -1, p)
        return {j: x * inv % p for j, x in row.items()}

    pivots = _eliminate(rows, sub, normalize)
    _back_substitute(pivots, sub)
    return pivots


def rank_mod(M: SparseMatrix, p: int = PRIMES[0]) -> int:
    """Rank modulo ``p``; a lower bound for the rank over Q."""
    rows = _mod_rows(M, p)
    if rows is None:
        raise ZeroDivisionError("prime divides a denominator")

    def sub(row, prow, fac):
        for j, y in prow.items():
            v = (row.get(j, 0) - fac * y) % p
            if v:
                row[j] = v
            else:
                row.pop(j, None)

    def normalize(row, c):
        inv = pow(row[c], -1, p)
        return {j: x * inv % p for j, x in row.items()}

    return len(_eliminate(rows, sub, normalize))


def rational_reconstruction(a: int, m: int) -> Optional[Fraction]:
    """Find ``r/s`` with ``r = a s (mod m)`` and ``|r|, s <= sqrt(m/2)``."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _crt(a1: int, m1: int, a2: int, m2: int) -> Tuple[int, int]:
    t = (a2 - a1) * pow(m1, -1, m2) % m2
    return a1 + m1 * t, m1 * m2


def _verify_kernel(M: SparseMatrix, vecs: Sequence[Vector]) -> bool:
    return all(not M.matvec(v) for v in vecs)


@dataclass
class KernelResult:
    rank: int
    basis: List[Vector]
    method: str = "modular"

    @property
    def nullity(self) -> int:
        return len(self.basis)


def rational_kernel(M: SparseMatrix, method: str = "auto") -> KernelResult:
    """Exact rank and RREF kernel basis of ``M``.

    ``method`` is ``"auto"`` (modular with exact certification, Fraction
    fallback), ``"modular"`` or ``"exact"``.
    """
    if method == "exact" or M.ncols == 0 or M.nrows == 0:
        r, basis = kernel_exact(M)
        return KernelResult(r, basis, "exact")
    residues: Optional[Dict[int, Dict[int, int]]] = None
    modulus = 1
    structure = None
    for p in PRIMES:
        piv = rref_mod(M, p)
        if piv is None:
            continue
        shape = (tuple(sorted(piv)),)
        if structure is None or shape != structure:
            # a different pivot pattern means an unlucky prime somewhere; restart with this one
            # if it has larger rank, otherwise skip it
            if structure is not None and len(shape[0]) <= len(structure[0]):
                continue
            structure = shape
            residues, modulus = {}, 1
            kmod = _kernel_from_rref(piv, M.ncols)
            for idx, v in enumerate(kmod):
                residues[idx] = {j: int(x) % p for j, x in v.items()}
            modulus = p
        else:
            kmod = _kernel_from_rref(piv, M.ncols)
            for idx, v in enumerate(kmod):
                old = residues[idx]
                merged = {}
                for j in set(old) | set(v):
                    merged[j], _ = _crt(old.get(j, 0), modulus, int(v.get(j, 0)) % p, p)
                residues[idx] = merged
            modulus *= p
        rank = len(structure[0])
        lifted: List[Vector] = []
        ok = True
        for idx in range(len(residues)):
            vec = {}
            for j, a in residues[idx].items():
                q = rational_reconstruction(a, modulus)
                if q is None:
                    ok = False
                    break
                if q:
                    vec[j] = q
            if not ok:
                break
            lifted.append(dict(sorted(vec.items())))
        if ok and _verify_kernel(M, lifted):
            return KernelResult(rank, lifted, "modular")
        log.debug("modular kernel not certified with modulus of %d bits", modulus.bit_length())
    if method == "modular":
        raise ArithmeticError("modular kernel could not be certified")
    r, basis = kernel_exact(M)
    return KernelResult(r, basis, "exact")


def rank(M: SparseMatrix, method: str = "auto") -> int:
    return rational_kernel(M, method).rank


def solve(M: SparseMatrix, b: Mapping[int, object], method: str = "auto") -> Optional[Vector]:
    """A solution ``x`` of ``M x = b`` or ``None``.

    The solution returned has all free variables set to zero (the canonical
    particular solution of the RREF), which is deterministic.
    """
    aug = SparseMatrix(M.nrows, M.ncols + 1, [dict(c) for c in M.cols] + [{i: Fraction(x) for i, x in b.items() if x}])
    res = rational_kernel(aug, method)
    last = M.ncols
    for v in res.basis:
        if v.get(last) == 1 and all(j == last or j < last for j in v):
            # this is the kernel vector of the free column b; its other free entries are zero
            x = {j: -c for j, c in v.items() if j != last}
            if M.matvec(x) != {i: Fraction(y) for i, y in b.items() if y}:
                raise ArithmeticError("solution failed verification")
            return x
    return None


def in_column_space(M: SparseMatrix, b: Mapping[int, object]) -> bool:
    return solve(M, b) is not None
