"""JSON encodings of the library's objects.

Every ``*_to_json`` produces plain dicts/lists/strings/ints, and the matching
``*_from_json`` re-parses them to an equal object.  Rationals are written as
``"p/q"`` strings; floats are rejected on input.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping

from .cantor import CantorPoint, ClopenSet
from .errors import ParseError
from .finalg.algebra import Automorphism, MeasuredAlgebra
from .odometer import KRPartition, PiecewiseMap
from .valueset import IrrationalSymbol, Ring, Value, ValueGroup, format_fraction


def parse_fraction(s: Any) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise ParseError(f"expected a 'p/q' string, got {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ParseError(f"expected a 'p/q' string, got {s!r}")
    if any(ch in s for ch in ".eE"):
        raise ParseError(f"decimal notation not allowed: {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {s!r}") from exc


def _need(obj: Mapping, key: str, kind=None):
    if not isinstance(obj, Mapping) or key not in obj:
        raise ParseError(f"missing field {key!r}")
    v = obj[key]
    if kind is not None and (not isinstance(v, kind) or isinstance(v, bool) and kind is int):
        raise ParseError(f"field {key!r} has the wrong type")
    return v


# ----- valueset


def value_to_json(v: Value) -> dict:
    return {
        "rational": format_fraction(v.rational),
        "symbols": {n: format_fraction(c) for n, c in v.symbols},
    }


def value_from_json(obj) -> Value:
    if isinstance(obj, str):
        return Value(parse_fraction(obj))
    syms = obj.get("symbols", {}) if isinstance(obj, Mapping) else None
    if not isinstance(syms, Mapping):
        raise ParseError("value symbols must be an object")
    return Value(
        parse_fraction(_need(obj, "rational")),
        tuple((str(n), parse_fraction(c)) for n, c in syms.items()),
    )


def value_group_to_json(V: ValueGroup) -> dict:
    out = {
        "ring": V.ring.value,
        "generators": [value_to_json(g) for g in V.generators],
        "symbols": [
            {"name": s.name, "lo": format_fraction(s.lo), "hi": format_fraction(s.hi)} for s in V.symbols
        ],
        "declared_ring": V.declared_ring,
    }
    if V.m is not None:
        out["m"] = V.m
    return out


def value_group_from_json(obj) -> ValueGroup:
    ring_s = _need(obj, "ring", str)
    ring_s = "Z[1/m]" if ring_s.startswith("Z[1/") else ring_s
    try:
        ring = Ring(ring_s)
    except ValueError as exc:
        raise ParseError(f"unknown ring {ring_s!r}") from exc
    symbols = []
    for s in obj.get("symbols", []):
        if s.get("name") == "inv_pi" and "lo" not in s:
            symbols.append(IrrationalSymbol.inverse_pi())
        else:
            symbols.append(
                IrrationalSymbol(_need(s, "name", str), parse_fraction(_need(s, "lo")), parse_fraction(_need(s, "hi")))
            )
    m = obj.get("m")
    if m is not None and (not isinstance(m, int) or isinstance(m, bool)):
        raise ParseError("m must be an integer")
    return ValueGroup(
        ring,
        tuple(value_from_json(g) for g in obj.get("generators", [])),
        tuple(symbols),
        bool(obj.get("declared_ring", False)),
        m,
    )


# ----- cantor


def clopen_to_json(a: ClopenSet) -> dict:
    return {"depth": a.depth, "leaves": a.words()}


def clopen_from_json(obj) -> ClopenSet:
    depth = _need(obj, "depth", int)
    leaves = _need(obj, "leaves", list)
    for w in leaves:
        if not isinstance(w, str) or len(w) != depth or set(w) - {"0", "1"}:
            raise ParseError(f"leaf {w!r} is not a binary word of length {depth}")
    return ClopenSet.from_leaves(depth, leaves)


def point_to_json(x: CantorPoint) -> dict:
    return {"head": x.head, "tail": x.tail}


def point_from_json(obj) -> CantorPoint:
    head = _need(obj, "head", str)
    tail = obj.get("tail", 0)
    if set(head) - {"0", "1"} or tail not in (0, 1):
        raise ParseError("point head must be binary and tail 0 or 1")
    return CantorPoint.from_head(head, tail)


# ----- odometer


def map_to_json(g: PiecewiseMap) -> dict:
    return {"pieces": [{"domain": clopen_to_json(d), "power": k} for k, d in g.pieces]}


def map_from_json(obj, check: bool = True) -> PiecewiseMap:
    pieces = []
    for p in _need(obj, "pieces", list):
        pieces.append((clopen_from_json(_need(p, "domain")), _need(p, "power", int)))
    return PiecewiseMap(pieces, check=check)


def kr_to_json(kr: KRPartition) -> dict:
    return {
        "depth": kr.base_depth,
        "height": kr.height,
        "base": clopen_to_json(kr.base),
        "top": clopen_to_json(kr.top),
        "levels": [clopen_to_json(level) for level in kr.levels],
    }


# ----- finite algebras


def algebra_to_json(A: MeasuredAlgebra) -> dict:
    return {
        "V": value_group_to_json(A.V),
        "atoms": [{"label": a, "measure": value_to_json(m)} for a, m in A.atoms],
    }


def algebra_from_json(obj) -> MeasuredAlgebra:
    V = value_group_from_json(_need(obj, "V"))
    atoms = tuple(
        (str(_need(a, "label")), value_from_json(_need(a, "measure"))) for a in _need(obj, "atoms", list)
    )
    return MeasuredAlgebra(V, atoms)


def automorphism_to_json(g: Automorphism) -> dict:
    return {"perm": dict(g.perm)}


def automorphism_from_json(obj, algebra: MeasuredAlgebra) -> Automorphism:
    return Automorphism(algebra, _need(obj, "perm", Mapping))


def embedding_to_json(emb: Mapping[str, Any]) -> dict:
    return {str(a): list(bs) for a, bs in emb.items()}


def embedding_from_json(obj) -> dict[str, list[str]]:
    if not isinstance(obj, Mapping):
        raise ParseError("embedding must be an object")
    out = {}
    for a, bs in obj.items():
        if not isinstance(bs, list):
            raise ParseError(f"image of {a} must be a list")
        out[str(a)] = [str(b) for b in bs]
    return out


def marginals_to_json(data) -> list[dict]:
    return [{"a": value_to_json(v), "n": k} for v, k in data]


def marginals_from_json(data) -> list[tuple[Value, int]]:
    if not isinstance(data, list):
        raise ParseError("marginals must be a list")
    return [(value_from_json(_need(r, "a")), _need(r, "n", int)) for r in data]


def instance_to_json(V: ValueGroup | None, rows, cols) -> dict:
    out = {"rows": marginals_to_json(rows), "cols": marginals_to_json(cols)}
    if V is not None:
        out["V"] = value_group_to_json(V)
    return out


def instance_from_json(obj, default_V: ValueGroup | None = None):
    """``(V, rows, cols)``; ``V`` falls back to ``default_V`` when absent."""
    V = value_group_from_json(obj["V"]) if "V" in obj else default_V
    if V is None:
        raise ParseError("instance has no value group")
    return V, marginals_from_json(_need(obj, "rows")), marginals_from_json(_need(obj, "cols"))


def matrix_to_json(c) -> list[list[dict]]:
    return [[value_to_json(x) for x in row] for row in c]
