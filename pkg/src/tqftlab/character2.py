"""Group 2-cocycles and 2-characters with every line trivialized.

A 2-character on G assigns a line W_g to each g and isomorphisms
psi_{g,h}: W_g (x) W_h -> W_gh.  Once each W_g carries a basis, psi is a
table of nonzero scalars and the associativity condition reads

    psi(g,h) psi(gh,j) = psi(h,j) psi(g,hj),

the 2-cocycle identity.  W_e is trivialized through the unit isomorphism,
so psi(e,g) = psi(g,e) = 1 as well.

Over a strict 2-group (crossed module delta: A -> G) a character also has
holonomies hol(a,g): W_g -> W_{delta(a) g} satisfying

    hol(a'a, g)  = hol(a', delta(a) g) hol(a, g)
    psi(delta(a)g, delta(b)h) hol(a,g) hol(b,h) = hol(a (g.b), gh) psi(g,h).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import GroupMismatch, NotCommuting, NotTwoGroup
from .group import CrossedModule, FiniteGroup
from .scalar import ONE, Scalar, root_of_unity
from .verdict import Verdict

Table = tuple  # tuple[tuple[Scalar, ...], ...]


def _as_table(values, n: int) -> Table:
    rows = tuple(tuple(Scalar.coerce(x) for x in row) for row in values)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"expected an {n}x{n} table")
    return rows


@lru_cache(maxsize=65536)
def _product(a: Scalar, b: Scalar) -> Scalar:
    return a * b


class _Interner:
    """Assigns small integer ids to distinct Scalars so checks can be vectorized."""

    def __init__(self):
        self.index: dict[Scalar, int] = {}
        self.values: list[Scalar] = []
        self._by_id: dict[int, int] = {}

    def __call__(self, s: Scalar) -> int:
        key = id(s)
        got = self._by_id.get(key)
        if got is not None and self.values[got] is s:
            return got
        i = self.index.get(s)
        if i is None:
            i = len(self.values)
            self.index[s] = i
            self.values.append(s)
        self._by_id[key] = i
        return i

    def table(self, rows) -> np.ndarray:
        return np.array([[self(x) for x in row] for row in rows], dtype=np.int64)

    def products(self, k: int) -> np.ndarray:
        """ids of values[i]*values[j] for i, j < k."""
        out = np.empty((k, k), dtype=np.int64)
        vals = self.values[:k]
        for i in range(k):
            for j in range(i, k):
                p = self(_product(vals[i], vals[j]))
                out[i, j] = out[j, i] = p
        return out


def _first_true(mask: np.ndarray) -> tuple[int, ...] | None:
    if not mask.any():
        return None
    return tuple(int(x) for x in np.argwhere(mask)[0])


def cocycle_violation(group: FiniteGroup, values: Table) -> tuple[int, int, int] | None:
    """First (g,h,j) in lexicographic order where the 2-cocycle identity fails."""
    n = group.order
    interner = _Interner()
    A = interner.table(values)
    k = len(interner.values)
    t = group.np_table()
    if k * k <= 4 * n**3:
        prod = interner.products(k)
        left = prod[A[:, :, None], A[t]]
        right = prod[A[None, :, :], A[np.arange(n)[:, None, None], t[None, :, :]]]
        return _first_true(left != right)  # type: ignore[return-value]
    tb = group.table
    for g in range(n):
        for h in range(n):
            gh = tb[g][h]
            for j in range(n):
                if values[g][h] * values[gh][j] != values[h][j] * values[g][tb[h][j]]:
                    return (g, h, j)
    return None


def _unit_violation(group: FiniteGroup, values: Table) -> tuple[int, int] | None:
    e = group.identity
    for g in range(group.order):
        if values[e][g] != 1:
            return (e, g)
        if values[g][e] != 1:
            return (g, e)
    return None


def _zero_entry(values: Table) -> tuple[int, int] | None:
    for i, row in enumerate(values):
        for j, x in enumerate(row):
            if not x:
                return (i, j)
    return None


# ---------------------------------------------------------------------------


class Cocycle:
    """A table alpha(g,h) of nonzero Scalars on a finite group."""

    def __init__(self, group: FiniteGroup, values):
        self.group = group
        self.values: Table = _as_table(values, group.order)

    def __call__(self, g: int, h: int) -> Scalar:
        return self.values[g][h]

    @classmethod
    def trivial(cls, group: FiniteGroup) -> "Cocycle":
        return cls(group, [[ONE] * group.order for _ in range(group.order)])

    @classmethod
    def from_function(cls, group: FiniteGroup, f: Callable[[int, int], Scalar]) -> "Cocycle":
        return cls(group, [[f(g, h) for h in group.elements] for g in group.elements])

    @classmethod
    def from_exponents(cls, group: FiniteGroup, exps, order: int) -> "Cocycle":
        """alpha(g,h) = zeta_order ** exps[g][h]."""
        roots = [root_of_unity(order, k) for k in range(order)]
        return cls(group, [[roots[int(e) % order] for e in row] for row in exps])

    def __mul__(self, other: "Cocycle") -> "Cocycle":
        if other.group != self.group:
            raise GroupMismatch("cocycles live on different groups")
        return Cocycle(self.group, [[a * b for a, b in zip(r1, r2)] for r1, r2 in zip(self.values, other.values)])

    def inverse(self) -> "Cocycle":
        return Cocycle(self.group, [[a.inverse() for a in row] for row in self.values])

    def __eq__(self, other):
        return isinstance(other, Cocycle) and self.group == other.group and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"Cocycle({self.group!r})"


def verify_cocycle(alpha: Cocycle) -> Verdict:
    n = alpha.group.order
    z = _zero_entry(alpha.values)
    if z:
        return Verdict.failed("cocycle has a zero entry", z)
    u = _unit_violation(alpha.group, alpha.values)
    if u:
        return Verdict.failed("cocycle is not normalized: alpha(e,g) = alpha(g,e) = 1 fails", u)
    bad = cocycle_violation(alpha.group, alpha.values)
    if bad:
        return Verdict.failed("2-cocycle identity fails: alpha(g,h) alpha(gh,j) != alpha(h,j) alpha(g,hj)", bad, total=n**3)
    return Verdict.passed(f"2-cocycle identity holds ({n**3}/{n**3} triples)", n**3)


def coboundary(group: FiniteGroup, beta: Sequence) -> Cocycle:
    """(d beta)(g,h) = beta(g) beta(h) / beta(gh); beta(e) should be 1."""
    b = [Scalar.coerce(x) for x in beta]
    inv = [x.inverse() for x in b]
    return Cocycle.from_function(group, lambda g, h: b[g] * b[h] * inv[group.mul(g, h)])


def commutator_pairing(alpha: Cocycle, g: int, h: int) -> Scalar:
    """alpha(g,h) / alpha(h,g) for commuting g, h: a coboundary invariant."""
    G = alpha.group
    if G.mul(g, h) != G.mul(h, g):
        raise NotCommuting(f"{G.names[g]} and {G.names[h]} do not commute")
    return alpha(g, h) / alpha(h, g)


def klein_cocycle() -> Cocycle:
    """alpha((a1,a2),(b1,b2)) = (-1)^(a2 b1) on Z2 x Z2."""
    from .group import cyclic, product

    K = product(cyclic(2), cyclic(2))
    pairs = [(a, b) for a in range(2) for b in range(2)]
    return Cocycle.from_function(K, lambda x, y: Scalar(-1) if pairs[x][1] * pairs[y][0] else ONE)


# ---------------------------------------------------------------------------


class TwoCharacter:
    """psi table over G, plus holonomies hol[a][g] when G is a crossed module."""

    def __init__(self, group, psi, holonomy=None, line_labels: Sequence[str] | None = None):
        self.group = group
        base = self.base
        self.psi: Table = _as_table(psi, base.order)
        if isinstance(group, CrossedModule):
            A = group.fiber
            if holonomy is None:
                holonomy = [[ONE] * base.order for _ in range(A.order)]
            rows = tuple(tuple(Scalar.coerce(x) for x in row) for row in holonomy)
            if len(rows) != A.order or any(len(r) != base.order for r in rows):
                raise ValueError("holonomy table must be |A| x |G|")
            self.holonomy: Table | None = rows
        else:
            if holonomy is not None:
                raise NotTwoGroup("holonomy data needs a crossed module")
            self.holonomy = None
        self.line_labels = tuple(line_labels) if line_labels else tuple(f"W[{nm}]" for nm in base.names)

    @property
    def base(self) -> FiniteGroup:
        return self.group.base if isinstance(self.group, CrossedModule) else self.group

    @property
    def is_two_group(self) -> bool:
        return isinstance(self.group, CrossedModule)

    def __eq__(self, other):
        return (
            isinstance(other, TwoCharacter)
            and self.base == other.base
            and self.psi == other.psi
            and self.holonomy == other.holonomy
        )

    def __repr__(self):
        return f"TwoCharacter({self.group!r})"


def _same_group(a, b) -> bool:
    if isinstance(a, CrossedModule) != isinstance(b, CrossedModule):
        return False
    if isinstance(a, CrossedModule):
        return (a.base, a.fiber, a.boundary, a.action) == (b.base, b.fiber, b.boundary, b.action)
    return a == b


def verify_two_character(c: TwoCharacter) -> Verdict:
    G = c.base
    n = G.order
    z = _zero_entry(c.psi)
    if z:
        return Verdict.failed("psi has a zero entry", z)
    u = _unit_violation(G, c.psi)
    if u:
        return Verdict.failed("unit condition fails: psi(e,g) = psi(g,e) = 1", u)
    bad = cocycle_violation(G, c.psi)
    if bad:
        return Verdict.failed("associativity fails: psi(g,h) psi(gh,j) != psi(h,j) psi(g,hj)", bad, total=n**3)
    total = n**3
    if c.holonomy is not None:
        X: CrossedModule = c.group
        A = X.fiber
        hol = c.holonomy
        z = _zero_entry(hol)
        if z:
            return Verdict.failed("holonomy has a zero entry", z)
        for a2 in range(A.order):
            for a1 in range(A.order):
                for g in range(n):
                    total += 1
                    if hol[A.mul(a2, a1)][g] != hol[a2][X.target(a1, g)] * hol[a1][g]:
                        return Verdict.failed(
                            "holonomy composition fails: hol(a'a,g) != hol(a',delta(a)g) hol(a,g)", (a2, a1, g), total
                        )
        for a in range(A.order):
            for g in range(n):
                for b in range(A.order):
                    for h in range(n):
                        total += 1
                        lhs = c.psi[X.target(a, g)][X.target(b, h)] * hol[a][g] * hol[b][h]
                        rhs = hol[A.mul(a, X.act(g, b))][G.mul(g, h)] * c.psi[g][h]
                        if lhs != rhs:
                            return Verdict.failed("interchange with psi fails", (a, g, b, h), total)
    return Verdict.passed(f"2-character coherence holds ({total}/{total} instances)", total)


def from_cocycle(alpha: Cocycle) -> TwoCharacter:
    """T(alpha): every line is K and psi is the alpha table."""
    return TwoCharacter(alpha.group, alpha.values)


def lift_to_crossed_module(c: TwoCharacter, X: CrossedModule) -> TwoCharacter:
    """Regard a character on X.base as one on X with identity holonomy."""
    if c.base != X.base:
        raise GroupMismatch("character and crossed module have different base groups")
    return TwoCharacter(X, c.psi, None, c.line_labels)


def holonomy_table(c: TwoCharacter) -> tuple[Table, bool]:
    """The hol(a,g) table and whether it is identically 1 in this trivialization."""
    if c.holonomy is None:
        raise NotTwoGroup("holonomy is only defined for characters over a crossed module")
    flag = all(x == 1 for row in c.holonomy for x in row)
    return c.holonomy, flag


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharacterMorphism:
    source: TwoCharacter
    target: TwoCharacter
    xi: tuple

    def __post_init__(self):
        object.__setattr__(self, "xi", tuple(Scalar.coerce(x) for x in self.xi))


def verify_character_morphism(m: CharacterMorphism) -> Verdict:
    s, t = m.source, m.target
    if not _same_group(s.group, t.group):
        raise GroupMismatch("source and target characters live on different groups")
    G = s.base
    n = G.order
    if len(m.xi) != n:
        return Verdict.failed("xi has the wrong length")
    z = next((g for g, x in enumerate(m.xi) if not x), None)
    if z is not None:
        return Verdict.failed("xi has a zero entry", (z,))
    checked = 0
    for g in range(n):
        for h in range(n):
            checked += 1
            if m.xi[G.mul(g, h)] * s.psi[g][h] != t.psi[g][h] * m.xi[g] * m.xi[h]:
                return Verdict.failed("xi(gh) psi(g,h) != psi'(g,h) xi(g) xi(h)", (g, h), checked, n * n)
    if s.holonomy is not None:
        X = s.group
        for a in range(X.fiber.order):
            for g in range(n):
                checked += 1
                if m.xi[X.target(a, g)] * s.holonomy[a][g] != t.holonomy[a][g] * m.xi[g]:
                    return Verdict.failed("xi is not compatible with holonomy", (a, g), checked)
    return Verdict.passed(f"morphism condition holds ({checked}/{checked})", checked)


def _generators(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    reached = {G.identity}
    for x in range(G.order):
        if x in reached:
            continue
        gens.append(x)
        frontier = list(reached)
        reached = set(frontier)
        while frontier:
            y = frontier.pop()
            for s in gens:
                z = G.mul(y, s)
                if z not in reached:
                    reached.add(z)
                    frontier.append(z)
    return gens


def find_morphism(source: TwoCharacter, target: TwoCharacter, bound: int = 24) -> CharacterMorphism | None:
    """Search for xi with values in mu_bound on a generating set.

    xi is determined by its values on generators; for a generator s of
    order k, xi(s)^k is forced, so only roots of that value are tried.
    """
    if not _same_group(source.group, target.group):
        raise GroupMismatch("source and target characters live on different groups")
    G = source.base
    ratio = [[target.psi[g][h] / source.psi[g][h] for h in G.elements] for g in G.elements]
    e = G.identity
    xi_e = ONE / ratio[e][e]
    roots = [root_of_unity(bound, k) for k in range(bound)]
    gens = _generators(G)
    cands: list[list[Scalar]] = []
    for s in gens:
        # walking e -> s -> s^2 -> ... -> s^k = e multiplies by t * ratio(s^i, s)
        k = _order(G, s)
        P = ONE
        x = e
        for _ in range(k):
            P = P * ratio[x][s]
            x = G.mul(x, s)
        need = P.inverse()
        cands.append([r for r in roots if r**k == need])
    for choice in itertools.product(*cands):
        xi = _propagate(G, ratio, gens, choice, xi_e)
        m = CharacterMorphism(source, target, xi)
        if verify_character_morphism(m):
            return m
    return None


def _order(G: FiniteGroup, s: int) -> int:
    k, x = 1, s
    while x != G.identity:
        x = G.mul(x, s)
        k += 1
    return k


def _propagate(G: FiniteGroup, ratio, gens, values, xi_e) -> list[Scalar]:
    xi: list[Scalar | None] = [None] * G.order
    xi[G.identity] = xi_e
    frontier = [G.identity]
    while frontier:
        y = frontier.pop(0)
        for s, t in zip(gens, values):
            z = G.mul(y, s)
            val = xi[y] * t * ratio[y][s]
            if xi[z] is None:
                xi[z] = val
                frontier.append(z)
    return xi  # type: ignore[return-value]


def is_coboundary(alpha: Cocycle, bound: int = 24) -> bool:
    """Whether alpha = d beta with beta valued in mu_bound (bounded search)."""
    triv = from_cocycle(Cocycle.trivial(alpha.group))
    return find_morphism(triv, from_cocycle(alpha), bound) is not None
