"""Algebraic description of a manifold M: compactly supported Betti data and cup products.

Documents are JSON objects::

    {"name": "S^2", "dim": 2, "open": false, "orientable": true,
     "hc": {"0": 1, "2": 1},
     "betti": {"0": 1, "2": 1},
     "cup": [{"p": 0, "a": 0, "q": 2, "b": 0, "value": [[0, "1/1"]]}, ...]}

``cup`` entries give the product of basis element ``a`` of H_c^p(M; Q^w) with
basis element ``b`` of H_c^q(M; Q^w) as a sparse vector over the basis of
H_c^{p+q}(M; Q).  Absent entries are zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

import jsonschema

from .errors import ManifoldError

CupKey = Tuple[int, int, int, int]

_RATIONAL = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
_RANKS = {
    "type": "object",
    "patternProperties": {r"^[0-9]+$": {"type": "integer", "minimum": 0}},
    "additionalProperties": False,
}
DOCUMENT_SCHEMA = {
    "type": "object",
    "required": ["name", "dim", "open", "orientable", "hc"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "dim": {"type": "integer", "minimum": 1},
        "open": {"type": "boolean"},
        "orientable": {"type": "boolean"},
        "hc": _RANKS,
        "hc_twisted": _RANKS,
        "betti": _RANKS,
        "cup": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["p", "a", "q", "b", "value"],
                "additionalProperties": False,
                "properties": {
                    "p": {"type": "integer", "minimum": 0},
                    "a": {"type": "integer", "minimum": 0},
                    "q": {"type": "integer", "minimum": 0},
                    "b": {"type": "integer", "minimum": 0},
                    "value": {
                        "type": "array",
                        "items": {
                            "type": "array",
                            "prefixItems": [{"type": "integer", "minimum": 0}, _RATIONAL],
                            "minItems": 2,
                            "maxItems": 2,
                        },
                    },
                },
            },
        },
    },
}


@dataclass(frozen=True)
class ManifoldData:
    name: str
    d: int
    open: bool
    orientable: bool
    hc_untwisted: Dict[int, int]
    hc_twisted: Dict[int, int]
    cup: Dict[CupKey, Dict[int, Fraction]] = field(default_factory=dict)
    ordinary_betti: Optional[Dict[int, int]] = None

    def rank(self, p: int, twisted: bool = False) -> int:
        table = self.hc_twisted if twisted else self.hc_untwisted
        return table.get(p, 0)

    def cup_product(self, p: int, a: int, q: int, b: int) -> Dict[int, Fraction]:
        return self.cup.get((p, a, q, b), {})

    @property
    def closed(self) -> bool:
        return not self.open

    def has_even_cohomology(self) -> Optional[bool]:
        """True/False for orientable M; None when it cannot be read off the data."""
        if not self.orientable:
            return None
        # d even: H_c^p(M) is dual to H^{d-p}(M), so parities agree
        if self.d % 2:
            if self.ordinary_betti is None:
                return None
            return all(r == 0 for i, r in self.ordinary_betti.items() if i % 2)
        return all(r == 0 for p, r in self.hc_untwisted.items() if p % 2)


def _ranks_ok(name, ranks, d, out):
    for p, r in ranks.items():
        if r < 0:
            out.append(f"{name}[{p}]: negative rank {r}")
        if not 0 <= p <= d and r != 0:
            out.append(f"{name}[{p}]: rank outside 0..d (d={d})")


def validate_manifold(m: ManifoldData) -> list:
    """Return the list of invariant violations (empty when ``m`` is valid)."""
    v = []
    d = m.d
    if d < 1:
        v.append(f"dim: must be >= 1, got {d}")
        return v
    _ranks_ok("hc", m.hc_untwisted, d, v)
    _ranks_ok("hc_twisted", m.hc_twisted, d, v)
    if m.ordinary_betti is not None:
        _ranks_ok("betti", m.ordinary_betti, d, v)

    if m.orientable and _nonzero(m.hc_twisted) != _nonzero(m.hc_untwisted):
        v.append("hc_twisted: must equal hc for orientable M")
    # connectedness: H_c^d(M; Q^w) is dual to H_0(M)
    if m.rank(d, twisted=True) != 1:
        v.append(f"hc_twisted[{d}]: connected M needs rank 1, got {m.rank(d, twisted=True)}")
    if m.open and m.rank(0) != 0:
        v.append("hc[0]: must be 0 for open connected M")
    if m.open and m.rank(0, twisted=True) != 0:
        v.append("hc_twisted[0]: must be 0 for open connected M")
    if m.closed and m.orientable:
        if m.rank(0) != 1:
            v.append(f"hc[0]: closed connected M needs rank 1, got {m.rank(0)}")
        if m.rank(d) != 1:
            v.append(f"hc[{d}]: closed orientable M needs rank 1, got {m.rank(d)}")
    if m.orientable and m.ordinary_betti is not None:
        for i in range(d + 1):
            if m.ordinary_betti.get(i, 0) != m.rank(d - i, twisted=True):
                v.append(f"betti[{i}]: Poincare duality requires hc_twisted[{d - i}]")

    for (p, a, q, b), vec in m.cup.items():
        tag = f"cup(p={p},a={a},q={q},b={b})"
        if a >= m.rank(p, twisted=True) or b >= m.rank(q, twisted=True):
            v.append(f"{tag}: basis index out of range")
            continue
        if any(c != 0 for c in vec.values()):
            if p + q > d:
                v.append(f"{tag}: product lands above degree d")
                continue
            for idx in vec:
                if idx >= m.rank(p + q):
                    v.append(f"{tag}: value index {idx} outside H_c^{p + q}")
        sign = -1 if (p * q) % 2 else 1
        other = m.cup.get((q, b, p, a), {})
        if _clean(vec) != {i: sign * c for i, c in _clean(other).items()}:
            v.append(f"{tag}: graded commutativity fails")

    if m.closed and m.orientable and m.rank(0) == 1:
        # basis element 0 of H^0 is the unit
        for p in range(d + 1):
            for x in range(m.rank(p, twisted=True)):
                if _clean(m.cup.get((0, 0, p, x), {})) != {x: 1}:
                    v.append(f"cup(p=0,a=0,q={p},b={x}): unit must act as identity")
    return v


def _nonzero(ranks):
    return {p: r for p, r in ranks.items() if r}


def _clean(vec):
    return {i: Fraction(c) for i, c in vec.items() if c != 0}


def make_manifold(
    name, d, open, orientable, hc, hc_twisted=None, cup=None, betti=None, validate=True
) -> ManifoldData:
    if hc_twisted is None:
        if not orientable:
            raise ManifoldError("hc_twisted: required for non-orientable M")
        hc_twisted = dict(hc)
    m = ManifoldData(
        name=name,
        d=d,
        open=open,
        orientable=orientable,
        hc_untwisted=_nonzero(hc),
        hc_twisted=_nonzero(hc_twisted),
        cup={k: _clean(v) for k, v in (cup or {}).items() if _clean(v)},
        ordinary_betti=None if betti is None else _nonzero(betti),
    )
    if validate:
        problems = validate_manifold(m)
        if problems:
            raise ManifoldError(f"{name}: " + "; ".join(problems), problems)
    return m


def _ranks_from_json(obj):
    return {int(p): r for p, r in obj.items()}


def manifold_from_dict(doc: dict) -> ManifoldData:
    try:
        jsonschema.validate(doc, DOCUMENT_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path) or "<document>"
        raise ManifoldError(f"schema violation at {where}: {exc.message}") from None
    cup = {}
    for entry in doc.get("cup", []):
        key = (entry["p"], entry["a"], entry["q"], entry["b"])
        if key in cup:
            raise ManifoldError(f"cup(p={key[0]},a={key[1]},q={key[2]},b={key[3]}): duplicate entry")
        vec = {}
        for idx, val in entry["value"]:
            try:
                vec[idx] = vec.get(idx, 0) + Fraction(val)
            except ZeroDivisionError:
                raise ManifoldError(f"cup value {val!r}: zero denominator") from None
        cup[key] = vec
    return make_manifold(
        name=doc["name"],
        d=doc["dim"],
        open=doc["open"],
        orientable=doc["orientable"],
        hc=_ranks_from_json(doc["hc"]),
        hc_twisted=_ranks_from_json(doc["hc_twisted"]) if "hc_twisted" in doc else None,
        cup=cup,
        betti=_ranks_from_json(doc["betti"]) if "betti" in doc else None,
    )


def load_manifold(document: str) -> ManifoldData:
    """Parse and validate a manifold JSON document."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ManifoldError(f"parse error: {exc}") from None
    return manifold_from_dict(doc)


def load_manifold_file(path) -> ManifoldData:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ManifoldError(f"cannot read {path}: {exc.strerror}") from None
    return load_manifold(text)


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def manifold_to_dict(m: ManifoldData) -> dict:
    doc = {
        "name": m.name,
        "dim": m.d,
        "open": m.open,
        "orientable": m.orientable,
        "hc": {str(p): r for p, r in sorted(m.hc_untwisted.items())},
    }
    if not m.orientable:
        doc["hc_twisted"] = {str(p): r for p, r in sorted(m.hc_twisted.items())}
    if m.ordinary_betti is not None:
        doc["betti"] = {str(i): r for i, r in sorted(m.ordinary_betti.items())}
    doc["cup"] = [
        {"p": p, "a": a, "q": q, "b": b, "value": [[i, _fmt(c)] for i, c in sorted(vec.items())]}
        for (p, a, q, b), vec in sorted(m.cup.items())
    ]
    return doc


def dump_manifold(m: ManifoldData) -> str:
    return json.dumps(manifold_to_dict(m), indent=2)


# ---------------------------------------------------------------- catalog

def _unit_cups(ranks):
    """1 * x = x * 1 = x on a closed orientable manifold."""
    cup = {}
    for p, r in ranks.items():
        for x in range(r):
            cup[(0, 0, p, x)] = {x: Fraction(1)}
            cup[(p, x, 0, 0)] = {x: Fraction(1)}
    return cup


def _euclidean(d):
    return make_manifold(f"R^{d}", d, True, True, {d: 1}, betti={0: 1})


def _sphere(d):
    hc = {0: 1, d: 1}
    return make_manifold(f"S^{d}", d, False, True, hc, cup=_unit_cups(hc), betti={0: 1, d: 1})


def _cp2():
    hc = {0: 1, 2: 1, 4: 1}
    cup = _unit_cups(hc)
    cup[(2, 0, 2, 0)] = {0: Fraction(1)}
    return make_manifold("CP^2", 4, False, True, hc, cup=cup, betti={0: 1, 2: 1, 4: 1})


def _times_plane(name, betti, n):
    # H_c(X x R^n) = H(X) shifted up by n; products vanish since H_c(R^n)^2 = 0
    d = max(betti) + n
    hc = {i + n: r for i, r in betti.items()}
    return make_manifold(name, d, True, True, hc, betti=betti)


_BUILDERS = {}
for _d in (2, 4, 6, 8):
    _BUILDERS[f"R^{_d}"] = lambda _d=_d: _euclidean(_d)
for _d in range(2, 8):
    _BUILDERS[f"S^{_d}"] = lambda _d=_d: _sphere(_d)
_BUILDERS["CP^2"] = _cp2
_BUILDERS["CP2xR2"] = lambda: _times_plane("CP2xR2", {0: 1, 2: 1, 4: 1}, 2)
_BUILDERS["S2xR4"] = lambda: _times_plane("S2xR4", {0: 1, 2: 1}, 4)
_BUILDERS["CP2#CP2xR2"] = lambda: _times_plane("CP2#CP2xR2", {0: 1, 2: 2, 4: 1}, 2)


def catalog_names() -> list:
    return list(_BUILDERS)


def builtin_catalog(name: str) -> ManifoldData:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ManifoldError(f"unknown catalog manifold {name!r}") from None
    return builder()
