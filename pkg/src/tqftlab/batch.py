"""Batched exact products over one cyclotomic field, on numpy integer arrays.

Every Scalar in a batch is lifted to Q(zeta_N) for the lcm conductor N and
scaled by a common denominator D, leaving int64 coefficient vectors of
length phi(N).  Products are convolutions folded back by x^k -> powers[k].
All bounds are checked up front; :class:`Lift` raises ``OverflowError`` when
int64 could wrap, and callers then fall back to Scalar arithmetic.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .scalar import Scalar, _check_cap, _field

_LIMIT = 2**62


class Lift:
    """A common field and denominator for a collection of Scalars."""

    def __init__(self, scalars: Iterable[Scalar]):
        n, den = 1, 1
        items = [Scalar.coerce(x) for x in scalars]
        for x in items:
            n = n * x.n // math.gcd(n, x.n)
            den = den * x.den // math.gcd(den, x.den)
        _check_cap(n)
        self.n, self.den = n, den
        F = _field(n)
        self.phi = F.phi
        fold = np.zeros((self.phi, self.phi, self.phi), dtype=np.int64)
        for p in range(self.phi):
            for q in range(self.phi):
                fold[p, q] = F.powers[(p + q) % n]
        self.fold = fold
        self.fold_norm = int(np.abs(fold).sum(axis=(0, 1)).max())
        self._cache: dict[Scalar, np.ndarray] = {}

    def vector(self, x: Scalar) -> np.ndarray:
        v = self._cache.get(x)
        if v is None:
            x = Scalar.coerce(x)
            scale = self.den // x.den
            coeffs = x._lifted(self.n)
            if any(abs(c * scale) >= _LIMIT for c in coeffs):
                raise OverflowError("coefficient does not fit in int64")
            v = np.array([c * scale for c in coeffs], dtype=np.int64)
            self._cache[x] = v
        return v

    def array(self, rows: Sequence[Sequence[Scalar]]) -> np.ndarray:
        r = len(rows)
        c = len(rows[0]) if r else 0
        out = np.zeros((r, c, self.phi), dtype=np.int64)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                if x:
                    out[i, j] = self.vector(x)
        return out

    def product_bound(self, a: int, b: int, inner: int) -> int:
        """Bound on coefficients of a product of arrays bounded by a and b."""
        return a * b * inner * self.fold_norm

    def mul_matrices(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Batched (n, i, k, phi) @ (n, k, j, phi) -> (n, i, j, phi)."""
        outer = np.einsum("nikp,nkjq->nijpq", x, y)
        return np.tensordot(outer, self.fold, axes=([3, 4], [0, 1]))

    def mul_scalars(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Batched (n, phi) * (n, phi) -> (n, phi)."""
        outer = np.einsum("np,nq->npq", x, y)
        return np.tensordot(outer, self.fold, axes=([1, 2], [0, 1]))

    def scale_matrices(self, s: np.ndarray, x: np.ndarray) -> np.ndarray:
        """Batched scalar (n, phi) times matrix (n, i, j, phi)."""
        outer = np.einsum("np,nijq->nijpq", s, x)
        return np.tensordot(outer, self.fold, axes=([3, 4], [0, 1]))


def _bound(a: np.ndarray) -> int:
    return int(np.abs(a).max()) if a.size else 0


def _stacks(lift: Lift, maps) -> tuple[dict, list[tuple]]:
    """Group lifted matrices by shape: stacks[shape] and (shape, slot) per map."""
    stacks: dict[tuple, list] = {}
    where = []
    for m in maps:
        a = lift.array(m)
        bucket = stacks.setdefault(a.shape, [])
        where.append((a.shape, len(bucket)))
        bucket.append(a)
    return {k: np.stack(v) for k, v in stacks.items()}, where


def first_bad_pair(maps, psi, pairs) -> int | None:
    """First k with maps[b] @ maps[a] != psi[k] * maps[c] for pairs[k] = (a, b, c)."""
    lift = Lift([x for m in maps for row in m for x in row if x] + [p for p in psi if p])
    stacks, where = _stacks(lift, maps)
    psi_v = np.array([lift.vector(p) for p in psi], dtype=np.int64).reshape(len(psi), lift.phi)
    groups: dict[tuple, list[int]] = {}
    for k, (a, b, _) in enumerate(pairs):
        groups.setdefault((where[a][0], where[b][0]), []).append(k)
    worst = None
    for (sa, sb), ks in groups.items():
        sc = (sb[0], sa[1], lift.phi)
        A = stacks[sa][[where[pairs[k][0]][1] for k in ks]]
        B = stacks[sb][[where[pairs[k][1]][1] for k in ks]]
        C = stacks[sc][[where[pairs[k][2]][1] for k in ks]]
        P = psi_v[ks]
        lhs_b = lift.product_bound(_bound(A), _bound(B), sa[0])
        rhs_b = lift.product_bound(_bound(P), _bound(C), 1)
        if max(lhs_b, rhs_b) >= _LIMIT:
            raise OverflowError("batch too large for int64")
        # both sides carry the common denominator squared
        lhs = lift.mul_matrices(B, A)
        rhs = lift.scale_matrices(P, C)
        bad = np.flatnonzero((lhs != rhs).reshape(len(ks), -1).any(axis=1))
        if bad.size:
            k = ks[int(bad[0])]
            worst = k if worst is None else min(worst, k)
    return worst


def first_bad_triple(psi: Sequence[Scalar], positions: np.ndarray) -> int | None:
    """First row k of positions = (i1, i2, i3, i4) with psi[i1] psi[i2] != psi[i3] psi[i4]."""
    if not len(positions):
        return None
    lift = Lift(psi)
    vecs = np.stack([lift.vector(x) for x in psi])
    bnd = _bound(vecs)
    if lift.product_bound(bnd, bnd, 1) >= _LIMIT:
        raise OverflowError("psi values too large for int64")
    lhs = lift.mul_scalars(vecs[positions[:, 0]], vecs[positions[:, 1]])
    rhs = lift.mul_scalars(vecs[positions[:, 2]], vecs[positions[:, 3]])
    bad = np.flatnonzero((lhs != rhs).any(axis=1))
    return int(bad[0]) if bad.size else None
