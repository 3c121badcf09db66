"""JSON documents for every data type; scalars are literal strings or integers.

Formats (keys not listed are rejected):

* group:      {"group": "<catalog expr>"} or {"table": [[int]], "names": [str]}
* cocycle:    {"group": ..., "values": [[scalar]]} or {"group": ..., "exponents": [[int]], "order": n}
* character:  {"group": ..., "psi": [[scalar]]}, or with
              "crossed_module": {"base", "fiber", "boundary", "action"?} and "holonomy": [[scalar]]
* projrep:    {"group": ..., "dim": d, "matrices": [matrix], "cocycle"?: [[scalar]]}
              (a missing cocycle is read off the matrices)
* frobenius:  {"group_algebra": "<catalog expr>"} or {"dim", "mult", "unit", "counit"}
* boundary:   {"dim": d, "pairing"?: matrix, "v": [scalar], "phi": [scalar]}
* theory:     {"model": {...}, "lines", "psi": [[a, b, scalar]], "diffeo_action"?, "spaces"?, "maps"?}
* modular:    {"S": matrix, "T": matrix, "label"?: str}
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from . import linalg
from .anomaly.model import CobordismModel
from .anomaly.modular import ModularData
from .anomaly.theory import AnomalousTheory, SemitrivializedAnomaly
from .character2 import Cocycle, TwoCharacter
from .cobordism.evaluate import BoundaryData
from .errors import ParseError
from .frobenius import FrobeniusAlgebra, make_group_algebra
from .group import CrossedModule, FiniteGroup, group_from_spec
from .projrep import ProjRep, cocycle_from_matrices
from .scalar import Scalar


def load_json(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc.msg}", exc.pos) from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    return doc


def _keys(doc: dict, allowed: set[str], what: str) -> None:
    extra = sorted(set(doc) - allowed)
    if extra:
        raise ParseError(f"unknown key(s) in {what}: {', '.join(extra)}")


def _need(doc: dict, key: str, what: str) -> Any:
    if key not in doc:
        raise ParseError(f"{what} needs key {key!r}")
    return doc[key]


def scalar(x) -> Scalar:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"expected a scalar literal or integer, got {x!r}")
    return Scalar(x)


def scalar_to_json(s: Scalar):
    s = Scalar.coerce(s)
    if s.is_rational() and s.den == 1:
        return s.num[0]
    return str(s)


def matrix(rows) -> linalg.Matrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("expected a matrix (list of rows)")
    return tuple(tuple(scalar(x) for x in r) for r in rows)


def matrix_to_json(m) -> list:
    return [[scalar_to_json(x) for x in r] for r in m]


def _table(rows, n: int, what: str):
    m = matrix(rows)
    if len(m) != n or any(len(r) != n for r in m):
        raise ParseError(f"{what} must be {n}x{n}")
    return m


# ---------------------------------------------------------------------------


def group(doc) -> FiniteGroup:
    if isinstance(doc, str):
        return group_from_spec(doc)
    if isinstance(doc, dict) and "table" in doc:
        table = doc["table"]
        if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
            raise ParseError("group table must be a list of rows")
        return FiniteGroup(table, doc.get("names"), doc.get("label", ""))
    if isinstance(doc, dict) and "group" in doc:
        return group(doc["group"])
    raise ParseError("group must be a catalog expression or {'table': ...}")


def group_to_json(g: FiniteGroup) -> dict:
    return {"table": [list(r) for r in g.table], "names": list(g.names), "label": g.label}


def crossed_module(doc: dict) -> CrossedModule:
    _keys(doc, {"base", "fiber", "boundary", "action"}, "crossed module")
    return CrossedModule(
        group(_need(doc, "base", "crossed module")),
        group(_need(doc, "fiber", "crossed module")),
        _need(doc, "boundary", "crossed module"),
        doc.get("action"),
    )


def cocycle(doc: dict) -> Cocycle:
    _keys(doc, {"group", "values", "exponents", "order"}, "cocycle")
    g = group(_need(doc, "group", "cocycle"))
    if "exponents" in doc:
        return Cocycle.from_exponents(g, doc["exponents"], int(_need(doc, "order", "cocycle")))
    return Cocycle(g, _table(_need(doc, "values", "cocycle"), g.order, "cocycle values"))


def cocycle_to_json(a: Cocycle) -> dict:
    return {"group": group_to_json(a.group), "values": matrix_to_json(a.values)}


def character(doc: dict) -> TwoCharacter:
    _keys(doc, {"group", "crossed_module", "psi", "holonomy", "lines"}, "character")
    if "crossed_module" in doc:
        X = crossed_module(doc["crossed_module"])
        psi = _table(_need(doc, "psi", "character"), X.base.order, "psi")
        hol = matrix(doc["holonomy"]) if "holonomy" in doc else None
        return TwoCharacter(X, psi, hol, doc.get("lines"))
    g = group(_need(doc, "group", "character"))
    return TwoCharacter(g, _table(_need(doc, "psi", "character"), g.order, "psi"), None, doc.get("lines"))


def projrep(doc: dict) -> ProjRep:
    _keys(doc, {"group", "dim", "matrices", "cocycle"}, "projrep")
    g = group(_need(doc, "group", "projrep"))
    mats = [matrix(m) for m in _need(doc, "matrices", "projrep")]
    dim = int(_need(doc, "dim", "projrep"))
    if "cocycle" in doc:
        alpha = Cocycle(g, _table(doc["cocycle"], g.order, "cocycle"))
    else:
        alpha = cocycle_from_matrices(g, mats)
    return ProjRep(g, alpha, dim, mats)


def projrep_to_json(r: ProjRep) -> dict:
    return {
        "group": group_to_json(r.group),
        "dim": r.dim,
        "cocycle": matrix_to_json(r.cocycle.values),
        "matrices": [matrix_to_json(m) for m in r.mats],
    }


def frobenius(doc: dict) -> FrobeniusAlgebra:
    _keys(doc, {"group_algebra", "counit", "dim", "mult", "unit", "label"}, "Frobenius algebra")
    if "group_algebra" in doc:
        counit = [scalar(x) for x in doc["counit"]] if "counit" in doc else None
        return make_group_algebra(group(doc["group_algebra"]), counit)
    d = int(_need(doc, "dim", "Frobenius algebra"))
    mult = [[[scalar(x) for x in v] for v in row] for row in _need(doc, "mult", "Frobenius algebra")]
    unit = [scalar(x) for x in _need(doc, "unit", "Frobenius algebra")]
    counit = [scalar(x) for x in _need(doc, "counit", "Frobenius algebra")]
    return FrobeniusAlgebra(d, mult, unit, counit, doc.get("label", ""))


def frobenius_to_json(a: FrobeniusAlgebra) -> dict:
    return {
        "dim": a.dim,
        "mult": [[[scalar_to_json(x) for x in v] for v in row] for row in a.mult],
        "unit": [scalar_to_json(x) for x in a.unit],
        "counit": [scalar_to_json(x) for x in a.counit],
        "label": a.label,
    }


def boundary(doc: dict) -> BoundaryData:
    _keys(doc, {"dim", "pairing", "copairing", "v", "phi"}, "boundary data")
    d = int(_need(doc, "dim", "boundary data"))
    v = [scalar(x) for x in _need(doc, "v", "boundary data")]
    phi = [scalar(x) for x in _need(doc, "phi", "boundary data")]
    if "pairing" not in doc:
        return BoundaryData.standard(d, v, phi)
    P = matrix(doc["pairing"])
    if "copairing" in doc:
        return BoundaryData(d, P, matrix(doc["copairing"]), tuple(v), tuple(phi))
    return BoundaryData.with_pairing(P, v, phi)


def boundary_to_json(b: BoundaryData) -> dict:
    return {
        "dim": b.dim,
        "pairing": matrix_to_json(b.pairing),
        "copairing": matrix_to_json(b.copairing),
        "v": [scalar_to_json(x) for x in b.v],
        "phi": [scalar_to_json(x) for x in b.phi],
    }


def model(doc: dict) -> CobordismModel:
    _keys(doc, {"objects", "morphisms", "identities", "composition", "diffeos"}, "model")
    return CobordismModel(
        objects=tuple(str(x) for x in _need(doc, "objects", "model")),
        morphisms=tuple((str(n), int(s), int(t)) for n, s, t in _need(doc, "morphisms", "model")),
        identities=tuple(int(x) for x in _need(doc, "identities", "model")),
        composition=tuple((int(a), int(b), int(c)) for a, b, c in _need(doc, "composition", "model")),
        diffeos=tuple((str(lb), int(x), int(y)) for lb, x, y in doc.get("diffeos", [])),
    )


def model_to_json(m: CobordismModel) -> dict:
    return {
        "objects": list(m.objects),
        "morphisms": [list(x) for x in m.morphisms],
        "identities": list(m.identities),
        "composition": [list(x) for x in m.composition],
        "diffeos": [list(x) for x in m.diffeos],
    }


def anomaly(doc: dict) -> SemitrivializedAnomaly:
    m = model(_need(doc, "model", "anomaly"))
    psi = {(int(a), int(b)): scalar(x) for a, b, x in _need(doc, "psi", "anomaly")}
    action = {str(k): scalar(v) for k, v in doc.get("diffeo_action", {}).items()}
    return SemitrivializedAnomaly(m, doc.get("lines", ["1"] * len(m)), psi, action)


def theory(doc: dict) -> AnomalousTheory:
    _keys(doc, {"model", "lines", "psi", "diffeo_action", "spaces", "maps"}, "theory")
    w = anomaly(doc)
    return AnomalousTheory(w, _need(doc, "spaces", "theory"), [matrix(x) for x in _need(doc, "maps", "theory")])


def theory_to_json(z: AnomalousTheory) -> dict:
    w = z.anomaly
    return {
        "model": model_to_json(z.model),
        "lines": list(w.lines),
        "psi": [[a, b, scalar_to_json(w.psi[(a, b)])] for a, b, _ in z.model.composition],
        "diffeo_action": {k: scalar_to_json(v) for k, v in sorted(w.diffeo_action.items())},
        "spaces": list(z.spaces),
        "maps": [matrix_to_json(m) for m in z.maps],
    }


def modular(doc: dict) -> ModularData:
    _keys(doc, {"S", "T", "label"}, "modular data")
    return ModularData(matrix(_need(doc, "S", "modular data")), matrix(_need(doc, "T", "modular data")), doc.get("label", ""))


def modular_to_json(m: ModularData) -> dict:
    return {"S": matrix_to_json(m.S), "T": matrix_to_json(m.T), "label": m.label}
