"""JSON files for algebras, bialgebras, linear maps and truncated deformations.

Indices are 0-based.  Coefficients are exact rationals written as strings
(``"3/2"``) or integers; floats are refused.  Entries:

* ``mu``: ``[i, j, k, c]`` means ``e_i e_j`` has coefficient ``c`` on ``e_k``;
* ``alpha``, ``beta``, maps: ``[k, j, c]`` means the image of ``e_k`` has
  coefficient ``c`` on ``e_j``;
* ``delta``: ``[i, j, k, c]`` means ``Delta e_i`` has coefficient ``c`` on ``e_j (x) e_k``.

Repeated entries for the same index tuple are an input error, as are repeated
JSON keys.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import HomAlgebra
from .deformation import TruncatedDeformation
from .gs import HomBialgebra
from .multimap import MultiMap

SCHEMA = 1


class InputError(ValueError):
    """Malformed input file; the command line maps it to exit code 2."""


def parse_rational(x: Any) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"coefficient {x!r} must be an integer or a rational string")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational literal {x!r}") from exc
    raise InputError(f"coefficient {x!r} has unsupported type {type(x).__name__}")


def format_rational(c: Fraction) -> str:
    return str(Fraction(c))


def _no_duplicates(pairs: List[Tuple[str, Any]]) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    for k, v in pairs:
        if k in out:
            raise InputError(f"duplicate key {k!r}")
        out[k] = v
    return out


def loads(text: str) -> Dict[str, Any]:
    try:
        data = json.loads(text, object_pairs_hook=_no_duplicates, parse_float=_refuse_float)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("top level must be a JSON object")
    return data


def _refuse_float(s: str):
    raise InputError(f"float literal {s} is not allowed; write rationals as strings")


def read_file(path: str) -> Tuple[Dict[str, Any], bytes]:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"{path} is not UTF-8") from exc
    return loads(text), raw


def inputs_hash(blobs: Iterable[bytes]) -> str:
    h = hashlib.sha256()
    for b in blobs:
        h.update(hashlib.sha256(b).digest())
    return h.hexdigest()


# -- tensors ------------------------------------------------------------------------------


def _index(x: Any, d: int) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < d:
        raise InputError(f"index {x!r} out of range 0..{d - 1}")
    return x


def parse_entries(entries: Any, d: int, n_in: int, n_out: int, name: str) -> MultiMap:
    if not isinstance(entries, list):
        raise InputError(f"{name} must be a list of entries")
    coeffs: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction] = {}
    width = n_in + n_out + 1
    for e in entries:
        if not isinstance(e, list) or len(e) != width:
            raise InputError(f"{name} entry {e!r} must have {width} items")
        idx = [_index(x, d) for x in e[:-1]]
        key = (tuple(idx[:n_in]), tuple(idx[n_in:]))
        if key in coeffs:
            raise InputError(f"{name} entry for {idx} given twice")
        coeffs[key] = parse_rational(e[-1])
    return MultiMap(d, n_in, n_out, coeffs)


def dump_entries(f: MultiMap) -> List[List[Any]]:
    return [list(ins) + list(outs) + [format_rational(c)] for (ins, outs), c in sorted(f.items())]


def _dim(data: Dict[str, Any]) -> int:
    d = data.get("dim")
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise InputError("dim must be a positive integer")
    return d


def _check_schema(data: Dict[str, Any]) -> None:
    s = data.get("schema", SCHEMA)
    if s != SCHEMA:
        raise InputError(f"unsupported schema version {s!r}")


def _vector(v: Any, d: int, name: str) -> Tuple[Fraction, ...]:
    if not isinstance(v, list) or len(v) != d:
        raise InputError(f"{name} must be a list of {d} coefficients")
    return tuple(parse_rational(x) for x in v)


def _basis(data: Dict[str, Any], d: int) -> Tuple[str, ...]:
    b = data.get("basis", [])
    if b and (not isinstance(b, list) or len(b) != d or not all(isinstance(x, str) for x in b)):
        raise InputError(f"basis must be a list of {d} labels")
    return tuple(b)


def algebra_from_data(data: Dict[str, Any]) -> HomAlgebra:
    _check_schema(data)
    d = _dim(data)
    mu = parse_entries(data.get("mu", []), d, 2, 1, "mu")
    if "alpha" not in data:
        raise InputError("alpha is required")
    alpha = parse_entries(data["alpha"], d, 1, 1, "alpha")
    unit = _vector(data["unit"], d, "unit") if data.get("unit") is not None else None
    return HomAlgebra(d, mu, alpha, _basis(data, d), unit)


def is_bialgebra_data(data: Dict[str, Any]) -> bool:
    return "delta" in data


def bialgebra_from_data(data: Dict[str, Any]) -> HomBialgebra:
    A = algebra_from_data(data)
    d = A.dim
    for key in ("delta", "beta", "unit", "counit"):
        if data.get(key) is None:
            raise InputError(f"{key} is required for a bialgebra")
    delta = parse_entries(data["delta"], d, 1, 2, "delta")
    beta = parse_entries(data["beta"], d, 1, 1, "beta")
    return HomBialgebra(d, A.mu, A.alpha, delta, beta, A.unit, _vector(data["counit"], d, "counit"), A.basis)


def algebra_to_data(A: HomAlgebra) -> Dict[str, Any]:
    out: Dict[str, Any] = {"schema": SCHEMA, "dim": A.dim, "basis": list(A.basis),
                           "mu": dump_entries(A.mu), "alpha": dump_entries(A.alpha)}
    if A.unit is not None:
        out["unit"] = [format_rational(c) for c in A.unit]
    return out


def bialgebra_to_data(B: HomBialgebra) -> Dict[str, Any]:
    out = algebra_to_data(B.algebra)
    out.update({"delta": dump_entries(B.delta), "beta": dump_entries(B.beta),
                "counit": [format_rational(c) for c in B.counit]})
    return out


def map_from_data(data: Dict[str, Any], d: Optional[int] = None) -> MultiMap:
    _check_schema(data)
    dd = _dim(data)
    if d is not None and dd != d:
        raise InputError(f"map has dim {dd}, expected {d}")
    return parse_entries(data.get("map", []), dd, 1, 1, "map")


def deformation_from_data(A: HomAlgebra, data: Dict[str, Any]) -> TruncatedDeformation:
    """``{"terms": [{"mu": [...], "alpha": [...]}, ...]}`` lists the orders ``1..N``."""
    _check_schema(data)
    terms = data.get("terms")
    if not isinstance(terms, list) or not terms:
        raise InputError("terms must be a non-empty list")
    mus, alphas = [A.mu], [A.alpha]
    for i, t in enumerate(terms, start=1):
        if not isinstance(t, dict):
            raise InputError(f"term {i} must be an object")
        mus.append(parse_entries(t.get("mu", []), A.dim, 2, 1, f"terms[{i}].mu"))
        alphas.append(parse_entries(t.get("alpha", []), A.dim, 1, 1, f"terms[{i}].alpha"))
    return TruncatedDeformation(A, tuple(mus), tuple(alphas))


def deformation_to_data(D: TruncatedDeformation) -> Dict[str, Any]:
    return {"schema": SCHEMA, "terms": [{"mu": dump_entries(D.mu(i)), "alpha": dump_entries(D.alpha(i))}
                                        for i in range(1, D.order + 1)]}


def dumps(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(path: str, data: Dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(data))


def map_pairs(f: MultiMap) -> List[List[Any]]:
    """A map in entry form, for reports."""
    return dump_entries(f)


def cochain_to_data(c) -> Dict[str, Any]:
    return {"degree": c.degree, "phi": dump_entries(c.phi), "psi": dump_entries(c.psi) if c.psi is not None else []}
