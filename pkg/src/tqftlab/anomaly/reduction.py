"""From a 1d boundary condition of the Euler theory to a 1d anomalous theory.

Crossing a 1d cobordism M with the constrained interval gives a surface
piece.  The Euler theory E_lam assigns lam^w(M) to it, where

    w(M) = chi(M) - (number of straight strands)

and chi(M) counts arcs (circles contribute 0).  Subtracting the straight
strands makes identities weightless, so psi = lam^(w(M) + w(M') - w(M'M))
is unit-normalized; it is the coboundary of w and hence associative.  This
is our convention for corners, checked exhaustively by the verifiers.
"""

from __future__ import annotations

from functools import lru_cache

from ..character2 import TwoCharacter
from ..cobordism.cob1 import Cob1, canonical_word
from ..cobordism.dsl import CobWord, generators_of, make_word
from ..cobordism.evaluate import BoundaryData, eval_1d_data
from ..errors import WordTypeError
from ..group import FiniteGroup
from .. import linalg
from ..scalar import ONE, Scalar
from .model import CobordismModel, build_1d_model
from .theory import AnomalousTheory, SemitrivializedAnomaly

# surface piece produced by each 1d generator
CYLINDER_PIECES = {
    "id": "constrained strip",
    "swap": "crossed constrained strips",
    "ev": "bent strip (cap)",
    "coev": "bent strip (cup)",
    "lbnd": "constrained half-disk (left)",
    "rbnd": "constrained half-disk (right)",
}


def cylinderize(w: CobWord) -> CobWord:
    """Generator-wise product with the constrained interval."""
    if w.dimension != 1:
        raise WordTypeError(f"cylinderize needs a 1d word, got dimension {w.dimension}")
    return make_word(w.ast, "2c", w.source)


def pieces(w: CobWord) -> list[str]:
    """Surface pieces of a cylinderized word, left to right."""
    return [CYLINDER_PIECES[g.name] for g in generators_of(w.ast)]


@lru_cache(maxsize=4096)
def cylinder_word(m: Cob1) -> CobWord:
    """Cylinderized canonical word of a normal form (cached per normal form)."""
    return cylinderize(canonical_word(m))


def euler_weight(m: Cob1) -> int:
    return m.weight()


def _power(lam: Scalar, k: int) -> Scalar:
    return lam**k if k >= 0 else lam.inverse() ** (-k)


def _line_label(k: int) -> str:
    return "1" if k == 0 else ("lam" if k == 1 else f"lam^{k}")


def euler_anomaly(model: CobordismModel, lam) -> SemitrivializedAnomaly:
    """Lines lam^w(M) with psi the coboundary of w."""
    lam = Scalar.coerce(lam)
    if not lam:
        raise ValueError("lam must be nonzero")
    weights = [euler_weight(c) for c in model.payload]
    cache: dict[int, Scalar] = {}

    def pw(k: int) -> Scalar:
        if k not in cache:
            cache[k] = _power(lam, k)
        return cache[k]

    psi = {(a, b): pw(weights[a] + weights[b] - weights[c]) for a, b, c in model.composition}
    return SemitrivializedAnomaly(model, [_line_label(k) for k in weights], psi)


def reduce_boundary(lam, bc: BoundaryData, model: CobordismModel | None = None) -> AnomalousTheory:
    """Evaluate bc on the cylinder of every model morphism, weighted by lam^w."""
    bc.check()
    model = model if model is not None else build_1d_model()
    if len(model.payload) != len(model.morphisms):
        raise ValueError("reduce_boundary needs a model built from 1d normal forms")
    anomaly = euler_anomaly(model, lam)
    lam = Scalar.coerce(lam)
    objs = [model.payload[i].source for i in model.identities]
    spaces = [bc.dim ** len(o) for o in objs]
    maps = []
    for c in model.payload:
        t = eval_1d_data(cylinder_word(c), bc)
        k = euler_weight(c)
        maps.append(t if k == 0 else linalg.scale(_power(lam, k), t))
    return AnomalousTheory(anomaly, spaces, maps)


def restrict_to_object(w: SemitrivializedAnomaly, obj: int) -> TwoCharacter:
    """The 2-character on mapping cylinders of sign-preserving permutations of one object.

    Group law: g h is the cylinder of ``h`` followed by that of ``g``, so
    psi(g, h) is read from the pair (h, g).
    """
    m = w.model
    cyl = [
        k
        for k, c in enumerate(m.payload)
        if m.source(k) == obj and m.target(k) == obj and c.circles == 0 and c.through() == len(c.arcs) == len(c.source)
    ]
    ident = m.identities[obj]
    cyl.sort(key=lambda k: (k != ident, k))
    pos = {k: i for i, k in enumerate(cyl)}
    n = len(cyl)
    table = [[0] * n for _ in range(n)]
    psi = [[ONE] * n for _ in range(n)]
    for i, g in enumerate(cyl):
        for j, h in enumerate(cyl):
            c = m.composite(h, g)
            if c is None or c not in pos:
                raise ValueError(f"model lacks the composite of {m.name(h)} then {m.name(g)}")
            table[i][j] = pos[c]
            psi[i][j] = w.psi[(h, g)]
    group = FiniteGroup(table, [m.name(k) for k in cyl], f"cylinders of {m.objects[obj]}")
    return TwoCharacter(group, psi, line_labels=[w.lines[k] for k in cyl])
