"""Finite presented cobordism models.

A model lists objects, morphisms with source/target, the identity on each
object, a partial composition table and declared diffeomorphisms between
parallel morphisms.  Coherence checks run over exactly what is listed.

Composition entries are (first, second, composite): ``composite`` is
``second o first``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..cobordism.cob1 import Cob1, compose, homs, identity, sign_strings
from ..cobordism.dsl import format_object
from ..verdict import Verdict


@dataclass(frozen=True)
class CobordismModel:
    objects: tuple[str, ...]
    morphisms: tuple[tuple[str, int, int], ...]  # (name, source, target)
    identities: tuple[int, ...]
    composition: tuple[tuple[int, int, int], ...]
    diffeos: tuple[tuple[str, int, int], ...] = ()  # (label, M, M')
    payload: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_table", {(a, b): c for a, b, c in self.composition})

    @property
    def table(self) -> dict[tuple[int, int], int]:
        return self._table  # type: ignore[attr-defined]

    def name(self, m: int) -> str:
        return self.morphisms[m][0]

    def source(self, m: int) -> int:
        return self.morphisms[m][1]

    def target(self, m: int) -> int:
        return self.morphisms[m][2]

    def composite(self, first: int, second: int) -> int | None:
        return self.table.get((first, second))

    def identity_morphisms(self) -> set[int]:
        return set(self.identities)

    @cached_property
    def triples(self) -> tuple[tuple[int, int, int], ...]:
        """(M, M', M'') with every partial composite needed for associativity listed."""
        after: dict[int, list[tuple[int, int]]] = {}
        for a, b, c in self.composition:
            after.setdefault(a, []).append((b, c))
        out = []
        for a, b, ab in self.composition:
            for c, bc in after.get(b, ()):
                if (ab, c) in self.table and (a, bc) in self.table:
                    out.append((a, b, c))
        return tuple(out)

    @cached_property
    def triple_positions(self) -> np.ndarray:
        """Per triple, composition-table rows of (M'M, M''), (M, M'), (M, M''M'), (M', M'')."""
        row = {(a, b): k for k, (a, b, _) in enumerate(self.composition)}
        t = self.table
        out = [
            (row[(t[(a, b)], c)], row[(a, b)], row[(a, t[(b, c)])], row[(b, c)]) for a, b, c in self.triples
        ]
        return np.array(out, dtype=np.int64).reshape(len(out), 4)

    def __len__(self) -> int:
        return len(self.morphisms)


def verify_model(m: CobordismModel) -> Verdict:
    """Source/target bookkeeping, identities, and composite types."""
    n_obj, n_mor = len(m.objects), len(m.morphisms)
    for k, (nm, s, t) in enumerate(m.morphisms):
        if not (0 <= s < n_obj and 0 <= t < n_obj):
            return Verdict.failed(f"morphism {nm} has an unknown source or target", (k,))
    if len(m.identities) != n_obj:
        return Verdict.failed("every object needs exactly one identity morphism")
    for o, i in enumerate(m.identities):
        if not 0 <= i < n_mor or m.source(i) != o or m.target(i) != o:
            return Verdict.failed(f"identity of {m.objects[o]} is not an endomorphism of it", (o,))
    for a, b, c in m.composition:
        if not all(0 <= x < n_mor for x in (a, b, c)):
            return Verdict.failed("composition table mentions an unknown morphism", (a, b, c))
        if m.target(a) != m.source(b):
            return Verdict.failed(f"{m.name(a)} and {m.name(b)} are not composable", (a, b))
        if (m.source(c), m.target(c)) != (m.source(a), m.target(b)):
            return Verdict.failed(f"composite of {m.name(a)} and {m.name(b)} has the wrong type", (a, b, c))
    for a, b, c in m.composition:
        if a in m.identities and c != b or b in m.identities and c != a:
            return Verdict.failed(f"identity law fails for ({m.name(a)}, {m.name(b)})", (a, b))
    for label, x, y in m.diffeos:
        if (m.source(x), m.target(x)) != (m.source(y), m.target(y)):
            return Verdict.failed(f"diffeomorphism {label} joins non-parallel morphisms", (x, y))
    return Verdict.passed(f"model is well formed ({n_obj} objects, {n_mor} morphisms, {len(m.composition)} pairs)")


def _component_swaps(c: Cob1) -> list[str]:
    out = []
    if c.circles >= 2:
        out.append("swap circles")
    if c.intervals() >= 2:
        out.append("swap intervals")
    return out


def build_1d_model(max_points: int = 1, max_circles: int = 1, max_intervals: int = 1) -> CobordismModel:
    """Every 1d normal form between sign strings of at most max_points points.

    Composites are recorded whenever they stay inside the bounds.  Declared
    diffeomorphisms: the identity of each morphism, and the exchange of two
    circles or two constrained intervals where present.
    """
    if not 0 <= max_points <= 4:
        raise ValueError("the 1d model supports objects of at most 4 points")
    objs = sign_strings(max_points)
    obj_index = {o: k for k, o in enumerate(objs)}
    cobs: list[Cob1] = [h for a in objs for b in objs for h in homs(a, b, max_circles, max_intervals)]
    index = {c: k for k, c in enumerate(cobs)}
    by_source: dict[tuple, list[int]] = {}
    for k, c in enumerate(cobs):
        by_source.setdefault(c.source, []).append(k)
    composition = []
    for a, ca in enumerate(cobs):
        for b in by_source.get(ca.target, ()):
            k = index.get(compose(ca, cobs[b]))
            if k is not None:
                composition.append((a, b, k))
    diffeos = [("id", k, k) for k in range(len(cobs))]
    diffeos += [(label, k, k) for k, c in enumerate(cobs) for label in _component_swaps(c)]
    return CobordismModel(
        objects=tuple(format_object(1, o) for o in objs),
        morphisms=tuple((c.describe(), obj_index[c.source], obj_index[c.target]) for c in cobs),
        identities=tuple(index[identity(o)] for o in objs),
        composition=tuple(composition),
        diffeos=tuple(diffeos),
        payload=tuple(cobs),
    )
