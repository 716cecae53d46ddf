"""Sparse structure-constant tensors for multilinear maps A^{(x)k} -> A^{(x)l}.

A :class:`MultiMap` of arity ``k -> l`` over a ``dim``-dimensional space stores
``f(e_{i_1} (x) ... (x) e_{i_k}) = sum_c c * e_{j_1} (x) ... (x) e_{j_l}`` as a
map ``((i_1..i_k), (j_1..j_l)) -> c``.  Coefficients are exact
:class:`fractions.Fraction` values, zeros are never stored and keys are kept in
sorted order so that iteration (and everything derived from it) is
deterministic.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

Key = Tuple[Tuple[int, ...], Tuple[int, ...]]


class ArityError(ValueError):
    """Raised when maps of incompatible shapes are combined."""


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(c)


class MultiMap:
    __slots__ = ("dim", "arity_in", "arity_out", "_coeffs", "_hash")

    def __init__(self, dim: int, arity_in: int, arity_out: int,
                 coeffs: Mapping[Key, object] | Iterable[Tuple[Key, object]] = ()):
        if dim < 0 or arity_in < 0 or arity_out < 0:
            raise ValueError("dimension and arities must be non-negative")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: Dict[Key, Fraction] = {}
        for (ins, outs), c in items:
            ins, outs = tuple(ins), tuple(outs)
            if len(ins) != arity_in or len(outs) != arity_out:
                raise ArityError(f"key {(ins, outs)} does not match arity {arity_in}->{arity_out}")
            for i in itertools.chain(ins, outs):
                if not 0 <= i < dim:
                    raise IndexError(f"basis index {i} out of range for dim {dim}")
            c = _frac(c)
            if c:
                key = (ins, outs)
                acc[key] = acc.get(key, 0) + c
        self.dim = dim
        self.arity_in = arity_in
        self.arity_out = arity_out
        self._coeffs = MappingProxyType({k: v for k, v in sorted(acc.items()) if v})
        self._hash = None

    @classmethod
    def _raw(cls, dim: int, arity_in: int, arity_out: int, acc: Dict[Key, Fraction]) -> "MultiMap":
        # trusted fast path: keys already validated
        self = object.__new__(cls)
        self.dim = dim
        self.arity_in = arity_in
        self.arity_out = arity_out
        self._coeffs = MappingProxyType({k: v for k, v in sorted(acc.items()) if v})
        self._hash = None
        return self

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, dim: int, arity_in: int, arity_out: int = 1) -> "MultiMap":
        return cls._raw(dim, arity_in, arity_out, {})

    @classmethod
    def identity(cls, dim: int) -> "MultiMap":
        return cls._raw(dim, 1, 1, {((i,), (i,)): Fraction(1) for i in range(dim)})

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[object]]) -> "MultiMap":
        """Linear map from a square matrix, column convention ``f(e_j) = sum_k M[k][j] e_k``."""
        d = len(rows)
        return cls(d, 1, 1, {((j,), (k,)): rows[k][j] for k in range(d) for j in range(d)})

    @classmethod
    def from_products(cls, dim: int, table: Mapping[Tuple[int, int], Mapping[int, object]]) -> "MultiMap":
        """Bilinear map from ``{(i, j): {k: c}}`` meaning ``e_i e_j = sum c e_k``."""
        return cls(dim, 2, 1, {((i, j), (k,)): c for (i, j), row in table.items() for k, c in row.items()})

    @classmethod
    def basis_element(cls, dim: int, ins: Tuple[int, ...], outs: Tuple[int, ...]) -> "MultiMap":
        return cls(dim, len(ins), len(outs), {(ins, outs): 1})

    # -- container protocol -------------------------------------------------

    @property
    def coeffs(self) -> Mapping[Key, Fraction]:
        return self._coeffs

    def items(self):
        return self._coeffs.items()

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __getitem__(self, key: Key) -> Fraction:
        return self._coeffs.get(key, Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiMap):
            return NotImplemented
        return (self.dim, self.arity_in, self.arity_out) == (other.dim, other.arity_in, other.arity_out) \
            and dict(self._coeffs) == dict(other._coeffs)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, self.arity_in, self.arity_out, tuple(self._coeffs.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{ins}->{outs}: {c}" for (ins, outs), c in list(self._coeffs.items())[:8])
        more = "" if len(self) <= 8 else f", ... ({len(self)} terms)"
        return f"MultiMap(dim={self.dim}, {self.arity_in}->{self.arity_out}, {{{body}{more}}})"

    @property
    def shape(self) -> Tuple[int, int, int]:
        return (self.dim, self.arity_in, self.arity_out)

    def _check_same_shape(self, other: "MultiMap") -> None:
        if self.shape != other.shape:
            raise ArityError(f"shape mismatch {self.shape} vs {other.shape}")

    # -- vector space structure ---------------------------------------------

    def __add__(self, other: "MultiMap") -> "MultiMap":
        self._check_same_shape(other)
        acc = dict(self._coeffs)
        for k, c in other._coeffs.items():
            acc[k] = acc.get(k, 0) + c
        return MultiMap._raw(self.dim, self.arity_in, self.arity_out, acc)

    def __neg__(self) -> "MultiMap":
        return MultiMap._raw(self.dim, self.arity_in, self.arity_out, {k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other: "MultiMap") -> "MultiMap":
        return self + (-other)

    def scale(self, c) -> "MultiMap":
        c = _frac(c)
        if not c:
            return MultiMap.zero(self.dim, self.arity_in, self.arity_out)
        return MultiMap._raw(self.dim, self.arity_in, self.arity_out, {k: c * v for k, v in self._coeffs.items()})

    def __rmul__(self, c) -> "MultiMap":
        return self.scale(c)

    # -- evaluation ---------------------------------------------------------

    def apply_basis(self, ins: Tuple[int, ...]) -> Dict[Tuple[int, ...], Fraction]:
        """Image of ``e_{ins[0]} (x) ... `` as ``{outs: coeff}``."""
        ins = tuple(ins)
        return {outs: c for (i, outs), c in self._coeffs.items() if i == ins}

    def apply(self, *vectors: Mapping[int, object]) -> Dict[Tuple[int, ...], Fraction]:
        """Evaluate on elements given as sparse coefficient dicts ``{basis index: coeff}``."""
        if len(vectors) != self.arity_in:
            raise ArityError(f"expected {self.arity_in} arguments, got {len(vectors)}")
        out: Dict[Tuple[int, ...], Fraction] = defaultdict(Fraction)
        vecs = [{i: _frac(c) for i, c in v.items() if c} for v in vectors]
        for (ins, outs), c in self._coeffs.items():
            w = c
            for pos, i in enumerate(ins):
                x = vecs[pos].get(i)
                if x is None:
                    break
                w *= x
            else:
                out[outs] += w
        return {k: v for k, v in out.items() if v}

    # -- index helpers ------------------------------------------------------

    def by_output(self) -> Dict[Tuple[int, ...], List[Tuple[Tuple[int, ...], Fraction]]]:
        """Preimage lists ``outs -> [(ins, coeff)]``."""
        pre: Dict[Tuple[int, ...], List[Tuple[Tuple[int, ...], Fraction]]] = defaultdict(list)
        for (ins, outs), c in self._coeffs.items():
            pre[outs].append((ins, c))
        return pre

    def by_input(self) -> Dict[Tuple[int, ...], List[Tuple[Tuple[int, ...], Fraction]]]:
        img: Dict[Tuple[int, ...], List[Tuple[Tuple[int, ...], Fraction]]] = defaultdict(list)
        for (ins, outs), c in self._coeffs.items():
            img[ins].append((outs, c))
        return img

    def transpose(self) -> "MultiMap":
        """The dual map on the dual basis: swaps inputs and outputs."""
        return MultiMap._raw(self.dim, self.arity_out, self.arity_in,
                             {(outs, ins): c for (ins, outs), c in self._coeffs.items()})

    def is_linear_endo(self) -> bool:
        return self.arity_in == 1 and self.arity_out == 1

    def matrix(self) -> List[List[Fraction]]:
        """Dense matrix of a linear map in the column convention."""
        if not self.is_linear_endo():
            raise ArityError("matrix() needs a 1->1 map")
        m = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for ((j,), (k,)), c in self._coeffs.items():
            m[k][j] = c
        return m


# -- algebra of multilinear maps --------------------------------------------


def _check_dims(maps: Sequence[MultiMap]) -> int:
    dims = {m.dim for m in maps}
    if len(dims) != 1:
        raise ArityError(f"maps over different dimensions {sorted(dims)}")
    return dims.pop()


def tensor(*maps: MultiMap) -> MultiMap:
    """Tensor product ``f_1 (x) ... (x) f_r``."""
    if not maps:
        raise ArityError("tensor of nothing")
    d = _check_dims(maps)
    acc: Dict[Key, Fraction] = {((), ()): Fraction(1)}
    for m in maps:
        nxt: Dict[Key, Fraction] = {}
        for (i0, o0), c0 in acc.items():
            for (i1, o1), c1 in m._coeffs.items():
                nxt[(i0 + i1, o0 + o1)] = c0 * c1
        acc = nxt
    return MultiMap._raw(d, sum(m.arity_in for m in maps), sum(m.arity_out for m in maps), acc)


def compose(f: MultiMap, g: MultiMap) -> MultiMap:
    """``f o g``; requires ``g.arity_out == f.arity_in``."""
    if g.arity_out != f.arity_in:
        raise ArityError(f"cannot compose {f.arity_in}->{f.arity_out} after {g.arity_in}->{g.arity_out}")
    _check_dims([f, g])
    f_in = f.by_input()
    acc: Dict[Key, Fraction] = defaultdict(Fraction)
    for (ins, mid), c in g._coeffs.items():
        for outs, c2 in f_in.get(mid, ()):
            acc[(ins, outs)] += c * c2
    return MultiMap._raw(f.dim, g.arity_in, f.arity_out, acc)


def precompose(f: MultiMap, gs: Sequence[MultiMap]) -> MultiMap:
    """``f o (g_1 (x) ... (x) g_r)`` computed by pulling back each term of ``f``.

    The output arities of the ``g_i`` must add up to ``f.arity_in``.  Cost is
    proportional to the number of terms of ``f`` times the product of preimage
    sizes, which is what keeps differential assembly cheap for sparse data.
    """
    if sum(g.arity_out for g in gs) != f.arity_in:
        raise ArityError("output arities of inner maps do not match outer arity")
    _check_dims([f, *gs])
    pres = [g.by_output() for g in gs]
    cuts = []
    pos = 0
    for g in gs:
        cuts.append((pos, pos + g.arity_out))
        pos += g.arity_out
    acc: Dict[Key, Fraction] = defaultdict(Fraction)
    for (ins, outs), c in f._coeffs.items():
        lists = []
        for (a, b), pre in zip(cuts, pres):
            lst = pre.get(ins[a:b])
            if not lst:
                break
            lists.append(lst)
        else:
            for combo in itertools.product(*lists):
                w = c
                new_in: Tuple[int, ...] = ()
                for piece, cc in combo:
                    new_in += piece
                    w *= cc
                acc[(new_in, outs)] += w
    return MultiMap._raw(f.dim, sum(g.arity_in for g in gs), f.arity_out, acc)


def postcompose(hs: Sequence[MultiMap], f: MultiMap) -> MultiMap:
    """``(h_1 (x) ... (x) h_r) o f``; input arities of the ``h_i`` add up to ``f.arity_out``."""
    if sum(h.arity_in for h in hs) != f.arity_out:
        raise ArityError("input arities of outer maps do not match inner output arity")
    _check_dims([f, *hs])
    imgs = [h.by_input() for h in hs]
    cuts = []
    pos = 0
    for h in hs:
        cuts.append((pos, pos + h.arity_in))
        pos += h.arity_in
    acc: Dict[Key, Fraction] = defaultdict(Fraction)
    for (ins, outs), c in f._coeffs.items():
        lists = []
        for (a, b), img in zip(cuts, imgs):
            lst = img.get(outs[a:b])
            if not lst:
                break
            lists.append(lst)
        else:
            for combo in itertools.product(*lists):
                w = c
                new_out: Tuple[int, ...] = ()
                for piece, cc in combo:
                    new_out += piece
                    w *= cc
                acc[(ins, new_out)] += w
    return MultiMap._raw(f.dim, f.arity_in, sum(h.arity_out for h in hs), acc)


def plug(f: MultiMap, g: MultiMap, slot: int) -> MultiMap:
    """Partial composition ``f o_slot g = f o (id^{slot-1} (x) g (x) id^{...})``, slots 1-based.

    ``g`` may have several outputs; it then feeds inputs ``slot .. slot+l-1``.
    """
    if not 1 <= slot <= f.arity_in - g.arity_out + 1:
        raise ArityError(f"slot {slot} out of range for arity {f.arity_in} and inner output arity {g.arity_out}")
    ident = MultiMap.identity(f.dim)
    before = [ident] * (slot - 1)
    after = [ident] * (f.arity_in - g.arity_out - slot + 1)
    return precompose(f, before + [g] + after)


def power(f: MultiMap, k: int) -> MultiMap:
    """``f^k`` for a linear endomorphism (``f^0 = id``)."""
    if not f.is_linear_endo():
        raise ArityError("power() needs a 1->1 map")
    if k < 0:
        raise ValueError("negative powers need inverse()")
    result = MultiMap.identity(f.dim)
    base = f
    while k:
        if k & 1:
            result = compose(base, result)
        base = compose(base, base)
        k >>= 1
    return result


def tensor_power(f: MultiMap, k: int) -> MultiMap:
    """``f^{(x)k}``; ``k = 0`` gives the 0->0 map with value 1."""
    if k == 0:
        return MultiMap._raw(f.dim, 0, 0, {((), ()): Fraction(1)})
    return tensor(*([f] * k))


def inverse(f: MultiMap) -> MultiMap:
    """Inverse of an invertible linear endomorphism (exact Gauss-Jordan)."""
    if not f.is_linear_endo():
        raise ArityError("inverse() needs a 1->1 map")
    d = f.dim
    m = f.matrix()
    aug = [row[:] + [Fraction(int(i == j)) for j in range(d)] for i, row in enumerate(m)]
    for col in range(d):
        piv = next((r for r in range(col, d) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("linear map is not invertible")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(d):
            if r != col and aug[r][col]:
                fac = aug[r][col]
                aug[r] = [x - fac * y for x, y in zip(aug[r], aug[col])]
    return MultiMap.from_matrix([row[d:] for row in aug])


def is_invertible(f: MultiMap) -> bool:
    try:
        inverse(f)
    except ZeroDivisionError:
        return False
    return True


# -- flattening -------------------------------------------------------------


def flat_index(idx: Sequence[int], dim: int) -> int:
    """Lexicographic (big-endian) index of a multi-index."""
    n = 0
    for i in idx:
        n = n * dim + i
    return n


def unflat_index(n: int, dim: int, length: int) -> Tuple[int, ...]:
    out = [0] * length
    for pos in range(length - 1, -1, -1):
        n, out[pos] = divmod(n, dim)
    return tuple(out)


def coordinate(key: Key, dim: int) -> int:
    """Flat coordinate of a basis map: input multi-index first, output index second."""
    ins, outs = key
    return flat_index(ins, dim) * dim ** len(outs) + flat_index(outs, dim)


def space_dim(dim: int, arity_in: int, arity_out: int) -> int:
    return dim ** (arity_in + arity_out)


def to_vector(f: MultiMap) -> Dict[int, Fraction]:
    return {coordinate(k, f.dim): c for k, c in f.items()}


def from_vector(vec: Mapping[int, object], dim: int, arity_in: int, arity_out: int) -> MultiMap:
    acc = {}
    block = dim ** arity_out
    for n, c in vec.items():
        a, b = divmod(n, block)
        acc[(unflat_index(a, dim, arity_in), unflat_index(b, dim, arity_out))] = c
    return MultiMap(dim, arity_in, arity_out, acc)


def basis_maps(dim: int, arity_in: int, arity_out: int) -> Iterator[MultiMap]:
    """All elementary maps in flattening order."""
    for ins in itertools.product(range(dim), repeat=arity_in):
        for outs in itertools.product(range(dim), repeat=arity_out):
            yield MultiMap._raw(dim, arity_in, arity_out, {(ins, outs): Fraction(1)})
