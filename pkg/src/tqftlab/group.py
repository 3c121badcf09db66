"""Finite groups by multiplication table, homomorphisms, and crossed modules.

Element ordering is part of the interface: every catalog group lists its
elements in lexicographic order of a canonical word, and all reports walk
elements in that order.

* ``cyclic(n)``: residues 0..n-1.
* ``dihedral(n)`` (order 2n): s^a r^b ordered by (a, b), with s r s = r^-1.
* ``symmetric(n)``: permutations of 0..n-1 in lexicographic one-line
  notation; (p*q)(i) = p(q(i)).
* ``product(G, H)``: pairs ordered lexicographically.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ParseError, UnsupportedParams
from .verdict import Verdict

MAX_ORDER = 120


class FiniteGroup:
    """A group given by its Cayley table (element 0..n-1).

    Construction is lenient so that corrupt tables can still be handed to
    :func:`verify_group`; ``identity`` is -1 when no two-sided identity exists.
    """

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None, label: str = ""):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(self.order))
        self.label = label
        n = self.order
        self.identity = -1
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                self.identity = e
                break
        inv = []
        for x in range(n):
            inv.append(next((y for y in range(n) if self.table[x][y] == self.identity), -1))
        self.inverses = tuple(inv)
        self._np = None

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def prod(self, *xs: int) -> int:
        acc = self.identity
        for x in xs:
            acc = self.table[acc][x]
        return acc

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        acc = self.identity
        for _ in range(k):
            acc = self.table[acc][a]
        return acc

    def np_table(self) -> np.ndarray:
        if self._np is None:
            self._np = np.array(self.table, dtype=np.int64).reshape(self.order, self.order)
        return self._np

    def is_abelian(self) -> bool:
        t = self.np_table()
        return bool((t == t.T).all())

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no element named {name!r}") from None

    def element(self, ref) -> int:
        """Accept an index or an element name."""
        if isinstance(ref, (int, np.integer)) and not isinstance(ref, bool):
            if not 0 <= ref < self.order:
                raise KeyError(f"element index {ref} out of range")
            return int(ref)
        return self.index(str(ref))

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.label or 'order ' + str(self.order)})"


# ---------------------------------------------------------------------------
# catalog


def cyclic(n: int) -> FiniteGroup:
    if not 1 <= n <= MAX_ORDER:
        raise UnsupportedParams(f"cyclic({n}): order must be in 1..{MAX_ORDER}")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, [str(a) for a in range(n)], f"cyclic({n})")


def dihedral(n: int) -> FiniteGroup:
    if not 1 <= n or 2 * n > MAX_ORDER:
        raise UnsupportedParams(f"dihedral({n}): need n >= 1 and order 2n <= {MAX_ORDER}")
    elems = [(a, b) for a in range(2) for b in range(n)]
    pos = {e: i for i, e in enumerate(elems)}

    def mul(x, y):
        (a, b), (c, d) = x, y
        return ((a + c) % 2, ((-b if c else b) + d) % n)

    def name(a, b):
        r = "" if b == 0 else ("r" if b == 1 else f"r^{b}")
        if a == 0:
            return r or "e"
        return "s" + r

    table = [[pos[mul(x, y)] for y in elems] for x in elems]
    return FiniteGroup(table, [name(*e) for e in elems], f"dihedral({n})")


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise UnsupportedParams(f"symmetric({n}): only n <= 5 is supported")
    perms = list(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    table = [[pos[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return FiniteGroup(table, ["".join(map(str, p)) for p in perms], f"symmetric({n})")


def product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    if g.order * h.order > MAX_ORDER:
        raise UnsupportedParams(f"product order {g.order * h.order} exceeds {MAX_ORDER}")
    m = h.order
    table = [
        [g.table[a1][b1] * m + h.table[a2][b2] for b1 in range(g.order) for b2 in range(m)]
        for a1 in range(g.order)
        for a2 in range(m)
    ]
    names = [f"({x},{y})" for x in g.names for y in h.names]
    return FiniteGroup(table, names, f"product({g.label},{h.label})")


_BUILDERS = {"cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric}


def build_catalog_group(name: str, *params) -> FiniteGroup:
    """Catalog constructor; ``product`` takes two groups or catalog strings."""
    if name == "product":
        if len(params) != 2:
            raise UnsupportedParams("product takes exactly two factors")
        factors = [p if isinstance(p, FiniteGroup) else group_from_spec(str(p)) for p in params]
        return product(*factors)
    if name not in _BUILDERS:
        raise UnsupportedParams(f"unknown catalog family {name!r}")
    if len(params) != 1 or not isinstance(params[0], int):
        raise UnsupportedParams(f"{name} takes one integer parameter")
    return _BUILDERS[name](params[0])


_SPEC_TOKEN = re.compile(r"\s*(?:(\w+)|(\()|(\))|(,))")


def group_from_spec(text: str) -> FiniteGroup:
    """Parse catalog expressions such as ``product(cyclic(2),cyclic(2))``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _SPEC_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"bad group expression {text!r}")
        tokens.append(m.group(1) or m.group(2) or m.group(3) or m.group(4))
        pos = m.end()
    it = itertools.chain(tokens, itertools.repeat(None))
    cur = [next(it)]

    def take():
        tok = cur[0]
        cur[0] = next(it)
        return tok

    def expr():
        head = take()
        if head is None or not head.isidentifier():
            raise ParseError(f"bad group expression {text!r}")
        if take() != "(":
            raise ParseError(f"bad group expression {text!r}")
        args = []
        while True:
            if cur[0] is not None and cur[0].isdigit():
                args.append(int(take()))
            else:
                args.append(expr())
            sep = take()
            if sep == ")":
                break
            if sep != ",":
                raise ParseError(f"bad group expression {text!r}")
        return build_catalog_group(head, *args)

    g = expr()
    if cur[0] is not None:
        raise ParseError(f"trailing input in group expression {text!r}")
    return g


def catalog(max_order: int = 8) -> list[FiniteGroup]:
    """Every distinct catalog construction of order <= max_order (small sizes)."""
    out: list[FiniteGroup] = []
    for n in range(1, max_order + 1):
        out.append(cyclic(n))
    for n in range(2, max_order // 2 + 1):
        out.append(dihedral(n))
    for n in range(3, 6):
        if _factorial(n) <= max_order:
            out.append(symmetric(n))
    small = [cyclic(k) for k in range(2, max_order + 1)]
    for i, a in enumerate(small):
        for b in small[i:]:
            if a.order * b.order <= max_order:
                out.append(product(a, b))
    return out


def _factorial(n: int) -> int:
    r = 1
    for k in range(2, n + 1):
        r *= k
    return r


# ---------------------------------------------------------------------------
# verification and structure


def verify_group(g: FiniteGroup) -> Verdict:
    n = g.order
    if n == 0:
        return Verdict.failed("empty table")
    if any(len(row) != n for row in g.table):
        return Verdict.failed("table is not square")
    bad = next(((a, b) for a in range(n) for b in range(n) if not 0 <= g.table[a][b] < n), None)
    if bad:
        return Verdict.failed("table entry out of range", bad)
    if g.identity < 0:
        return Verdict.failed("no two-sided identity element")
    missing = next((a for a in range(n) if g.inverses[a] < 0 or g.table[g.inverses[a]][a] != g.identity), None)
    if missing is not None:
        return Verdict.failed("element without two-sided inverse", (missing,))
    t = g.np_table()
    left = t[t]  # left[a,b,c] = (ab)c
    right = t[np.arange(n)[:, None, None], t[None, :, :]]  # a(bc)
    diff = left != right
    if diff.any():
        a, b, c = (int(x) for x in np.argwhere(diff)[0])
        return Verdict.failed("associativity fails", (a, b, c), total=n**3)
    return Verdict.passed(f"group axioms hold ({n**3}/{n**3} triples)", n**3)


def conjugacy_classes(g: FiniteGroup) -> list[list[int]]:
    seen: set[int] = set()
    classes = []
    for x in range(g.order):
        if x in seen:
            continue
        cls = sorted({g.prod(y, x, g.inv(y)) for y in range(g.order)})
        seen.update(cls)
        classes.append(cls)
    return classes


def center_elements(g: FiniteGroup) -> list[int]:
    t = g.np_table()
    return [int(x) for x in range(g.order) if (t[x] == t[:, x]).all()]


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    def verify(self) -> Verdict:
        s, t = self.source, self.target
        if len(self.images) != s.order:
            return Verdict.failed("image list has the wrong length")
        for a in range(s.order):
            for b in range(s.order):
                if self.images[s.table[a][b]] != t.table[self.images[a]][self.images[b]]:
                    return Verdict.failed("map is not multiplicative", (a, b))
        return Verdict.passed(f"homomorphism ({s.order**2}/{s.order**2} pairs)", s.order**2)

    def kernel(self) -> list[int]:
        return [x for x in range(self.source.order) if self.images[x] == self.target.identity]

    def image(self) -> list[int]:
        return sorted(set(self.images))


def quotient(g: FiniteGroup, normal: Sequence[int]) -> tuple[FiniteGroup, tuple[int, ...]]:
    """G/N with cosets ordered by their smallest element; returns (group, projection)."""
    nset = set(normal)
    proj = [-1] * g.order
    reps: list[int] = []
    for x in range(g.order):
        if proj[x] >= 0:
            continue
        k = len(reps)
        reps.append(x)
        for m in nset:
            proj[g.mul(x, m)] = k
    table = [[proj[g.mul(a, b)] for b in reps] for a in reps]
    names = [g.names[r] + ("" if len(nset) == 1 else "N") for r in reps]
    return FiniteGroup(table, names, f"{g.label}/N"), tuple(proj)


class CrossedModule:
    """Strict 2-group: delta: A -> G and a left action G x A -> A.

    Objects are elements g of G; a morphism labelled (a, g) goes
    g -> delta(a) g.  ``action[g][a]`` is g acting on a.
    """

    def __init__(self, base: FiniteGroup, fiber: FiniteGroup, boundary: Sequence[int], action: Sequence[Sequence[int]] | None = None):
        self.base = base
        self.fiber = fiber
        self.boundary = tuple(int(x) for x in boundary)
        if action is None:
            action = [list(range(fiber.order)) for _ in range(base.order)]
        self.action = tuple(tuple(int(x) for x in row) for row in action)

    def delta(self, a: int) -> int:
        return self.boundary[a]

    def act(self, g: int, a: int) -> int:
        return self.action[g][a]

    def target(self, a: int, g: int) -> int:
        return self.base.mul(self.boundary[a], g)

    def image(self) -> list[int]:
        return sorted(set(self.boundary))

    def kernel(self) -> list[int]:
        return [a for a in range(self.fiber.order) if self.boundary[a] == self.base.identity]

    def pi0(self) -> tuple[FiniteGroup, tuple[int, ...]]:
        return quotient(self.base, self.image())

    def components(self) -> list[list[int]]:
        """Connected components of the object set (cosets of im delta)."""
        _, proj = self.pi0()
        comps: dict[int, list[int]] = {}
        for g, c in enumerate(proj):
            comps.setdefault(c, []).append(g)
        return [comps[c] for c in sorted(comps)]

    def __repr__(self):
        return f"CrossedModule({self.fiber!r} -> {self.base!r})"


def verify_crossed_module(x: CrossedModule) -> Verdict:
    G, A = x.base, x.fiber
    for sub, name in ((G, "base"), (A, "fiber")):
        v = verify_group(sub)
        if not v:
            return Verdict.failed(f"{name} is not a group: {v.message}", v.witness)
    if len(x.boundary) != A.order or any(not 0 <= d < G.order for d in x.boundary):
        return Verdict.failed("boundary map has the wrong shape")
    hv = GroupHom(A, G, x.boundary).verify()
    if not hv:
        return Verdict.failed("boundary is not a homomorphism", hv.witness)
    if len(x.action) != G.order or any(len(r) != A.order for r in x.action):
        return Verdict.failed("action table has the wrong shape")
    checks = 0
    for g in range(G.order):
        for a in range(A.order):
            checks += 1
            if x.boundary[x.action[g][a]] != G.prod(g, x.boundary[a], G.inv(g)):
                return Verdict.failed("equivariance fails: delta(g.a) != g delta(a) g^-1", (g, a), checks)
    for a in range(A.order):
        for b in range(A.order):
            checks += 1
            if x.action[x.boundary[a]][b] != A.prod(a, b, A.inv(a)):
                return Verdict.failed("Peiffer identity fails: delta(a).b != a b a^-1", (a, b), checks)
    for g in range(G.order):
        row = x.action[g]
        if sorted(row) != list(range(A.order)):
            return Verdict.failed("action of g is not a bijection", (g,))
        for a in range(A.order):
            for b in range(A.order):
                if row[A.mul(a, b)] != A.mul(row[a], row[b]):
                    return Verdict.failed("action of g is not an automorphism", (g, a, b))
    for g in range(G.order):
        for h in range(G.order):
            gh = G.mul(g, h)
            for a in range(A.order):
                if x.action[gh][a] != x.action[g][x.action[h][a]]:
                    return Verdict.failed("action is not a left action", (g, h, a))
    if any(x.action[G.identity][a] != a for a in range(A.order)):
        return Verdict.failed("identity does not act trivially")
    return Verdict.passed(f"crossed module identities hold ({checks}/{checks})", checks)
