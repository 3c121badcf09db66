"""Projective representations and homotopy fixed points of 2-characters.

Conventions (both checked literally):

* ProjRep over alpha:        phi(gh) = alpha(g,h) phi(g) phi(h)
* fixed point over psi:      phi(gh) psi(g,h) = phi(g) phi(h)
                             phi(g) = phi(delta(a) g) hol(a,g)   (2-groups)

so a ProjRep over alpha is, with the same matrices, a fixed point of the
2-character T(alpha^-1).  For sign-valued cocycles (alpha = alpha^-1) the
two readings agree.
"""

from __future__ import annotations

from . import linalg
from .character2 import Cocycle, TwoCharacter, from_cocycle
from .errors import CharacterNotCocycleForm, NotScalarMultiple
from .group import FiniteGroup
from .linalg import Matrix
from .verdict import Verdict


def _mats(mats, dim: int, count: int) -> tuple[Matrix, ...]:
    out = tuple(linalg.as_matrix(m) for m in mats)
    if len(out) != count:
        raise ValueError(f"expected {count} matrices, got {len(out)}")
    for m in out:
        if len(m) != dim or any(len(r) != dim for r in m):
            raise ValueError(f"expected {dim}x{dim} matrices")
    return out


class ProjRep:
    def __init__(self, group: FiniteGroup, cocycle: Cocycle, dim: int, mats):
        if cocycle.group != group:
            raise ValueError("cocycle lives on a different group")
        self.group = group
        self.cocycle = cocycle
        self.dim = dim
        self.mats = _mats(mats, dim, group.order)

    def __eq__(self, other):
        return (
            isinstance(other, ProjRep)
            and self.group == other.group
            and self.cocycle == other.cocycle
            and self.dim == other.dim
            and self.mats == other.mats
        )

    def __repr__(self):
        return f"ProjRep(dim={self.dim}, {self.group!r})"


class HomotopyFixedPoint:
    def __init__(self, character: TwoCharacter, dim: int, maps):
        self.character = character
        self.dim = dim
        self.maps = _mats(maps, dim, character.base.order)

    def __eq__(self, other):
        return (
            isinstance(other, HomotopyFixedPoint)
            and self.character == other.character
            and self.dim == other.dim
            and self.maps == other.maps
        )

    def __repr__(self):
        return f"HomotopyFixedPoint(dim={self.dim}, {self.character!r})"


def verify_projrep(r: ProjRep) -> Verdict:
    G, n = r.group, r.group.order
    if r.dim and not linalg.is_identity(r.mats[G.identity]):
        return Verdict.failed("phi(e) is not the identity", (G.identity,))
    checked = 0
    for g in range(n):
        for h in range(n):
            checked += 1
            lhs = r.mats[G.mul(g, h)]
            rhs = linalg.scale(r.cocycle(g, h), linalg.matmul(r.mats[g], r.mats[h]))
            if lhs != rhs:
                return Verdict.failed(
                    f"projective relation fails at ({G.names[g]}, {G.names[h]}): phi(gh) != alpha(g,h) phi(g) phi(h)",
                    (g, h),
                    checked,
                    n * n,
                )
    return Verdict.passed(f"projective relation holds ({n * n}/{n * n} pairs)", n * n)


def verify_fixed_point(p: HomotopyFixedPoint) -> Verdict:
    c = p.character
    G, n = c.base, c.base.order
    if p.dim and not linalg.is_identity(p.maps[G.identity]):
        return Verdict.failed("phi(e) is not the identity", (G.identity,))
    checked = 0
    for g in range(n):
        for h in range(n):
            checked += 1
            lhs = linalg.scale(c.psi[g][h], p.maps[G.mul(g, h)])
            rhs = linalg.matmul(p.maps[g], p.maps[h])
            if lhs != rhs:
                return Verdict.failed(
                    f"fixed-point relation fails at ({G.names[g]}, {G.names[h]}): phi(gh) psi(g,h) != phi(g) phi(h)",
                    (g, h),
                    checked,
                )
    if c.holonomy is not None:
        X = c.group
        for a in range(X.fiber.order):
            for g in range(n):
                checked += 1
                if p.maps[g] != linalg.scale(c.holonomy[a][g], p.maps[X.target(a, g)]):
                    return Verdict.failed(
                        f"holonomy square fails at (a={X.fiber.names[a]}, g={G.names[g]}): phi(g) != phi(delta(a)g) hol(a,g)",
                        (a, g),
                        checked,
                    )
    return Verdict.passed(f"fixed-point relations hold ({checked}/{checked})", checked)


def to_fixed_point(r: ProjRep) -> HomotopyFixedPoint:
    """Same matrices, viewed as a fixed point of T(alpha^-1)."""
    return HomotopyFixedPoint(from_cocycle(r.cocycle.inverse()), r.dim, r.mats)


def from_fixed_point(p: HomotopyFixedPoint) -> ProjRep:
    """Inverse of :func:`to_fixed_point` on characters of cocycle form."""
    c = p.character
    if c.is_two_group:
        raise CharacterNotCocycleForm("character lives on a crossed module, not a discrete group")
    G = c.base
    e = G.identity
    if any(c.psi[e][g] != 1 or c.psi[g][e] != 1 for g in G.elements) or any(not x for row in c.psi for x in row):
        raise CharacterNotCocycleForm("character is not a normalized nonzero scalar table")
    alpha = Cocycle(G, c.psi).inverse()
    return ProjRep(G, alpha, p.dim, p.maps)


def extract_holonomy(p: HomotopyFixedPoint, a: int, g: int):
    """The scalar lambda with phi(delta(a) g)^-1 phi(g) = lambda * I."""
    c = p.character
    if not c.is_two_group:
        raise CharacterNotCocycleForm("holonomy needs a character over a crossed module")
    if p.dim == 0:
        raise ValueError("holonomy of a zero-dimensional fixed point is undefined")
    X = c.group
    try:
        m = linalg.matmul(linalg.inverse(p.maps[X.target(a, g)]), p.maps[g])
    except ZeroDivisionError:
        raise NotScalarMultiple("phi(delta(a) g) is not invertible") from None
    lam = linalg.scalar_multiple_of_identity(m)
    if lam is None:
        raise NotScalarMultiple(f"phi(delta(a)g)^-1 phi(g) is not scalar at (a={a}, g={g})")
    return lam


def twisted_regular_rep(alpha: Cocycle) -> ProjRep:
    """phi(g) e_h = alpha(g,h)^-1 e_gh on K[G].

    The inverse is forced: phi(gh) = alpha(g,h) phi(g) phi(h) unwinds to
    c(gh,j) = alpha(g,h) c(h,j) c(g,hj), which the cocycle identity
    solves with c = alpha^-1.
    """
    from .scalar import ZERO

    G, n = alpha.group, alpha.group.order
    mats = []
    for g in range(n):
        rows = [[ZERO] * n for _ in range(n)]
        for h in range(n):
            rows[G.mul(g, h)][h] = alpha(g, h).inverse()
        mats.append(rows)
    return ProjRep(G, alpha, n, mats)


def cocycle_from_matrices(group: FiniteGroup, mats) -> Cocycle:
    """Read alpha off phi(gh) = alpha(g,h) phi(g) phi(h)."""
    mats = [linalg.as_matrix(m) for m in mats]
    rows = []
    for g in group.elements:
        row = []
        for h in group.elements:
            prod = linalg.matmul(mats[g], mats[h])
            m = linalg.matmul(mats[group.mul(g, h)], linalg.inverse(prod))
            lam = linalg.scalar_multiple_of_identity(m)
            if lam is None:
                raise NotScalarMultiple(f"phi(gh) is not a multiple of phi(g)phi(h) at ({g}, {h})")
            row.append(lam)
        rows.append(row)
    return Cocycle(group, rows)


PAULI_X = ((0, 1), (1, 0))
PAULI_Z = ((1, 0), (0, -1))


def pauli_projrep() -> ProjRep:
    """Klein four-group: (1,0) -> X, (0,1) -> Z, (1,1) -> XZ."""
    from .group import cyclic, product

    K = product(cyclic(2), cyclic(2))
    X, Z = linalg.as_matrix(PAULI_X), linalg.as_matrix(PAULI_Z)
    mats = [linalg.identity(2), Z, X, linalg.matmul(X, Z)]
    return ProjRep(K, cocycle_from_matrices(K, mats), 2, mats)


def direct_sum(r1: ProjRep, r2: ProjRep) -> ProjRep:
    if r1.cocycle != r2.cocycle:
        raise ValueError("direct sum needs equal cocycles")
    from .scalar import ZERO

    d1, d2 = r1.dim, r2.dim
    mats = []
    for m1, m2 in zip(r1.mats, r2.mats):
        rows = [list(row) + [ZERO] * d2 for row in m1] + [[ZERO] * d1 + list(row) for row in m2]
        mats.append(rows)
    return ProjRep(r1.group, r1.cocycle, d1 + d2, mats)


def conjugate_rep(r: ProjRep, P: Matrix) -> ProjRep:
    """P phi(g) P^-1; same cocycle."""
    Pi = linalg.inverse(P)
    return ProjRep(r.group, r.cocycle, r.dim, [linalg.matmul(linalg.matmul(P, m), Pi) for m in r.mats])


def rescale_rep(r: ProjRep, beta) -> ProjRep:
    """beta(g) phi(g): a ProjRep over alpha * (d beta)^-1."""
    from .character2 import coboundary
    from .scalar import Scalar

    b = [Scalar.coerce(x) for x in beta]
    alpha = r.cocycle * coboundary(r.group, b).inverse()
    return ProjRep(r.group, alpha, r.dim, [linalg.scale(x, m) for x, m in zip(b, r.mats)])
