"""Semitrivialized anomalies and anomalous theories on a finite model.

With every line W_M identified with K, the data are scalars:

* ``psi[(M, M')]`` for each listed composite, the map W_M' (x) W_M -> W_{M'M};
* ``diffeo_action[label]`` for each declared diffeomorphism f: M -> M';
* ``maps[M]``, a matrix V_source -> V_target standing for W_M (x) V -> V'.

The two diagrams checked for a theory are

    anom1:  phi_M = f_* phi_M'                        (declared f: M -> M')
    anom2:  phi_M' phi_M = psi(M, M') phi_{M'M}       (listed pairs)
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence

from .. import batch, linalg
from ..errors import ConductorOverflow
from ..linalg import Matrix
from ..scalar import ONE, Scalar
from ..verdict import Verdict
from .model import CobordismModel, verify_model


class SemitrivializedAnomaly:
    def __init__(self, model: CobordismModel, lines: Sequence[str], psi, diffeo_action=None):
        self.model = model
        self.lines = tuple(lines)
        if len(self.lines) != len(model.morphisms):
            raise ValueError("one line label per morphism")
        self.psi: dict[tuple[int, int], Scalar] = {k: Scalar.coerce(v) for k, v in dict(psi).items()}
        action = dict(diffeo_action or {})
        self.diffeo_action: dict[str, Scalar] = {
            label: Scalar.coerce(action.get(label, ONE)) for label, _, _ in model.diffeos
        }

    @staticmethod
    def trivial(model: CobordismModel) -> "SemitrivializedAnomaly":
        return SemitrivializedAnomaly(model, ["1"] * len(model), {(a, b): ONE for a, b, _ in model.composition})

    def __repr__(self):
        return f"SemitrivializedAnomaly({len(self.model)} morphisms)"


def _first_failure(items: Sequence, check: Callable, workers: int) -> tuple[int, object] | None:
    """Index and item of the first failing check, in list order."""
    if workers <= 1 or len(items) < 64:
        for k, x in enumerate(items):
            if not check(x):
                return k, x
        return None
    size = -(-len(items) // workers)
    chunks = [range(i, min(i + size, len(items))) for i in range(0, len(items), size)]

    def scan(r: range):
        for k in r:
            if not check(items[k]):
                return k
        return None

    with ThreadPoolExecutor(workers) as pool:
        found = [k for k in pool.map(scan, chunks) if k is not None]
    if not found:
        return None
    k = min(found)
    return k, items[k]


def _fast_or_slow(fast: Callable, items: Sequence, check: Callable, workers: int):
    """Batched exact check when the numbers fit int64, Scalar loop otherwise."""
    try:
        k = fast()
    except (OverflowError, ConductorOverflow):
        return _first_failure(items, check, workers)
    return None if k is None else (k, items[k])


def verify_anomaly(w: SemitrivializedAnomaly, workers: int = 1) -> Verdict:
    m = w.model
    wf = verify_model(m)
    if not wf:
        return wf
    for a, b, _ in m.composition:
        if (a, b) not in w.psi:
            return Verdict.failed(f"psi missing for ({m.name(a)}, {m.name(b)})", (a, b))
        if not w.psi[(a, b)]:
            return Verdict.failed(f"psi({m.name(a)}, {m.name(b)}) is zero", (a, b))
    for label, x in w.diffeo_action.items():
        if not x:
            return Verdict.failed(f"diffeomorphism {label} acts by zero", (label,))
    ids = m.identity_morphisms()
    for a, b, _ in m.composition:
        if (a in ids or b in ids) and w.psi[(a, b)] != 1:
            return Verdict.failed(
                f"unit condition fails: psi({m.name(a)}, {m.name(b)}) = {w.psi[(a, b)]} against an identity", (a, b)
            )
    triples = m.triples
    psi, table = w.psi, m.table

    def ok(t) -> bool:
        a, b, c = t
        return psi[(table[(a, b)], c)] * psi[(a, b)] == psi[(a, table[(b, c)])] * psi[(b, c)]

    psi_list = [psi[(a, b)] for a, b, _ in m.composition]
    bad = _fast_or_slow(lambda: batch.first_bad_triple(psi_list, m.triple_positions), triples, ok, workers)
    if bad is not None:
        k, (a, b, c) = bad
        return Verdict.failed(
            f"psi associativity fails at ({m.name(a)}, {m.name(b)}, {m.name(c)})", (a, b, c), k + 1, len(triples)
        )
    return Verdict.passed(f"psi associativity holds ({len(triples)}/{len(triples)} triples)", len(triples))


class AnomalousTheory:
    def __init__(self, anomaly: SemitrivializedAnomaly, spaces: Sequence[int], maps: Iterable):
        self.anomaly = anomaly
        self.spaces = tuple(int(x) for x in spaces)
        self.maps: tuple[Matrix, ...] = tuple(linalg.as_matrix(x) for x in maps)
        model = anomaly.model
        if len(self.spaces) != len(model.objects):
            raise ValueError("one space dimension per object")
        if len(self.maps) != len(model.morphisms):
            raise ValueError("one matrix per morphism")

    @property
    def model(self) -> CobordismModel:
        return self.anomaly.model

    def __repr__(self):
        return f"AnomalousTheory(spaces={self.spaces})"


def verify_anomalous_theory(z: AnomalousTheory, workers: int = 1) -> Verdict:
    m, w = z.model, z.anomaly
    empty = [k for k, o in enumerate(m.objects) if o in ("", "()", "[]")]
    for k in empty:
        if z.spaces[k] != 1:
            return Verdict.failed("the empty object must carry the ground field (dimension 1)", (k,))
    for k, (nm, s, t) in enumerate(m.morphisms):
        if linalg.shape(z.maps[k], z.spaces[s]) != (z.spaces[t], z.spaces[s]):
            return Verdict.failed(f"map of {nm} has the wrong shape", (k,))
    for o, i in enumerate(m.identities):
        if not linalg.is_identity(z.maps[i]):
            return Verdict.failed(f"identity on {m.objects[o]} is not sent to the identity", (i,))
    n1 = 0
    for label, x, y in m.diffeos:
        n1 += 1
        if z.maps[x] != linalg.scale(w.diffeo_action[label], z.maps[y]):
            return Verdict.failed(
                f"anom1 fails for {label}: {m.name(x)} -> {m.name(y)}", (label, x, y), n1, len(m.diffeos), diagram="anom1"
            )
    pairs = list(m.composition)

    def ok(t) -> bool:
        a, b, c = t
        return linalg.matmul(z.maps[b], z.maps[a]) == linalg.scale(w.psi[(a, b)], z.maps[c])

    psi_list = [w.psi[(a, b)] for a, b, _ in pairs]
    bad = _fast_or_slow(lambda: batch.first_bad_pair(z.maps, psi_list, pairs), pairs, ok, workers)
    if bad is not None:
        k, (a, b, _) = bad
        return Verdict.failed(
            f"anom2 fails at ({m.name(a)}, {m.name(b)}): phi_M' phi_M != psi phi_(M'M)",
            (a, b),
            k + 1,
            len(pairs),
            diagram="anom2",
        )
    n2 = len(pairs)
    return Verdict.passed(
        f"anom1 holds ({n1}/{n1} diffeomorphisms); anom2 holds ({n2}/{n2} pairs)", n1 + n2, anom1=n1, anom2=n2
    )
