"""Seeded generators for property sweeps and the CLI.

Every function takes a ``random.Random``; nothing here touches global
random state, so a seed fixes the whole sweep.
"""

from __future__ import annotations

import random
import re
from typing import Sequence

from . import linalg
from .character2 import Cocycle, TwoCharacter
from .cobordism.dsl import Gen, Node, par, seq
from .cobordism.evaluate import BoundaryData
from .frobenius import (
    FrobeniusAlgebra,
    change_basis,
    make_group_algebra,
    product_of_fields,
    truncated_polynomial,
)
from .group import CrossedModule, FiniteGroup, cyclic, product
from .linalg import Matrix
from .projrep import HomotopyFixedPoint, ProjRep, conjugate_rep, direct_sum, pauli_projrep, rescale_rep, twisted_regular_rep
from .scalar import ONE, ZERO, Scalar, root_of_unity

# ---------------------------------------------------------------------------
# cocycles as exponent tables: alpha(g,h) = zeta_order ** e[g][h]

_PRODUCT_OF_CYCLICS = re.compile(r"product\(cyclic\((\d+)\),cyclic\((\d+)\)\)")


def cyclic_factors(g: FiniteGroup) -> tuple[int, int] | None:
    """(m, n) when g is the catalog product of cyclic(m) and cyclic(n)."""
    mt = _PRODUCT_OF_CYCLICS.fullmatch(g.label)
    return (int(mt.group(1)), int(mt.group(2))) if mt else None


def cyclic_order(g: FiniteGroup) -> int | None:
    mt = re.fullmatch(r"cyclic\((\d+)\)", g.label)
    return int(mt.group(1)) if mt else None


def random_mu_table(g: FiniteGroup, rnd: random.Random, order: int = 4) -> list[list[int]]:
    """Normalized exponent table with independent entries (rarely a cocycle)."""
    n, e = g.order, g.identity
    return [[0 if e in (a, b) else rnd.randrange(order) for b in range(n)] for a in range(n)]


def random_cocycle_exponents(g: FiniteGroup, rnd: random.Random, order: int = 4) -> list[list[int]]:
    """A genuine normalized cocycle: a coboundary times carry or bilinear factors."""
    n, e = g.order, g.identity
    beta = [0 if x == e else rnd.randrange(order) for x in range(n)]
    exps = [[(beta[a] + beta[b] - beta[g.mul(a, b)]) % order for b in range(n)] for a in range(n)]
    m = cyclic_order(g)
    if m:
        k = rnd.randrange(order)
        for a in range(n):
            for b in range(n):
                exps[a][b] = (exps[a][b] + k * ((a + b) >= m)) % order
    f = cyclic_factors(g)
    if f:
        p, q = f
        # (x1, y1), (x2, y2) -> t * y1 * x2 is well defined mod order when order | t*p and order | t*q
        t = _lcm(order // _gcd(order, p), order // _gcd(order, q))
        s = t * rnd.randrange(order)
        for a in range(n):
            for b in range(n):
                y1, x2 = a % q, b // q
                exps[a][b] = (exps[a][b] + s * y1 * x2) % order
    return exps


def sample_tables(g: FiniteGroup, count: int, rnd: random.Random, order: int = 4) -> list[list[list[int]]]:
    """Half genuine cocycles, half unconstrained normalized tables, interleaved."""
    out = []
    for k in range(count):
        out.append(random_cocycle_exponents(g, rnd, order) if k % 2 == 0 else random_mu_table(g, rnd, order))
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _lcm(a: int, b: int) -> int:
    return a * b // _gcd(a, b)


# ---------------------------------------------------------------------------
# projective representations


def random_unimodular(d: int, rnd: random.Random, steps: int = 3) -> Matrix:
    """Product of elementary integer matrices (determinant 1)."""
    m = [list(r) for r in linalg.identity(d)]
    for _ in range(steps if d > 1 else 0):
        i, j = rnd.sample(range(d), 2)
        c = rnd.choice([-2, -1, 1, 2])
        for k in range(d):
            m[i][k] = m[i][k] + c * m[j][k]
    return linalg.as_matrix(m)


def _beta(g: FiniteGroup, rnd: random.Random, order: int = 4) -> list[Scalar]:
    return [ONE if x == g.identity else root_of_unity(order, rnd.randrange(order)) for x in g.elements]


def _character_rep(g: FiniteGroup, values: Sequence[Scalar]) -> ProjRep:
    return ProjRep(g, Cocycle.trivial(g), 1, [[[v]] for v in values])


def _cyclic_characters(n: int) -> list[list[Scalar]]:
    return [[root_of_unity(n, (k * a) % n) for a in range(n)] for k in range(n)]


def random_projrep(g: FiniteGroup, rnd: random.Random) -> ProjRep:
    """Random ProjRep on cyclic(4) or the Klein four-group, built from verified pieces."""
    if cyclic_order(g) == 4:
        chars = _cyclic_characters(4)
        base = _character_rep(g, rnd.choice(chars))
        if rnd.random() < 0.5:
            base = direct_sum(base, _character_rep(g, rnd.choice(chars)))
        if rnd.random() < 0.2:
            base = twisted_regular_rep(Cocycle.trivial(g))
    elif cyclic_factors(g) == (2, 2):
        base = pauli_projrep()
        if rnd.random() < 0.3:
            base = direct_sum(base, pauli_projrep())
        elif rnd.random() < 0.2:
            base = twisted_regular_rep(base.cocycle)
    else:
        raise ValueError("random_projrep covers cyclic(4) and the Klein four-group")
    r = rescale_rep(base, _beta(g, rnd))
    if r.dim > 1:
        r = conjugate_rep(r, random_unimodular(r.dim, rnd))
    return r


# ---------------------------------------------------------------------------
# crossed modules and 2-group characters


def small_crossed_modules() -> list[CrossedModule]:
    """Crossed modules with |A|, |G| <= 4."""
    z1, z2, z3, z4 = cyclic(1), cyclic(2), cyclic(3), cyclic(4)
    klein = product(z2, z2)
    return [
        CrossedModule(z2, z2, [0, 1]),  # identity
        CrossedModule(z2, z2, [0, 0]),  # trivial boundary
        CrossedModule(z4, z2, [0, 2]),  # Z2 -> Z4
        CrossedModule(z2, z4, [0, 1, 0, 1]),  # Z4 -> Z2, kernel {0, 2}
        CrossedModule(z2, z3, [0, 0, 0], [[0, 1, 2], [0, 2, 1]]),  # inversion action
        CrossedModule(klein, z2, [0, 2]),  # Z2 -> first factor
        CrossedModule(z1, z2, [0, 0]),
    ]


def _gauge(c: Sequence[Scalar], X: CrossedModule, psi, hol):
    """Rescale every line W_g by c(g)."""
    G = X.base
    n = G.order
    psi2 = [[psi[g][h] * c[g] * c[h] / c[G.mul(g, h)] for h in range(n)] for g in range(n)]
    hol2 = [[hol[a][g] * c[g] / c[X.target(a, g)] for g in range(n)] for a in range(X.fiber.order)]
    return psi2, hol2


def _pi0_rep(X: CrossedModule, rnd: random.Random) -> tuple[tuple[int, ...], list[Matrix], int]:
    """Projection to pi0 and an honest representation of it (pi0 is cyclic or Klein here)."""
    Q, proj = X.pi0()
    if Q.order == 4 and all(Q.mul(x, x) == Q.identity for x in Q.elements):
        # Klein quotient: a character is fixed by its signs on two generators
        gens = [x for x in Q.elements if x != Q.identity][:2]
        vals = {Q.identity: ONE}
        for x in gens:
            vals[x] = rnd.choice([ONE, Scalar(-1)])
        vals[Q.mul(gens[0], gens[1])] = vals[gens[0]] * vals[gens[1]]
        return proj, [[[vals[x]]] for x in Q.elements], 1
    # cyclic quotient: pick a generator and a root of unity of matching order
    order = Q.order
    gen = next((x for x in Q.elements if _elem_order(Q, x) == order), Q.identity)
    dim = rnd.choice([1, 2])
    blocks = []
    for _ in range(dim):
        k = rnd.randrange(order)
        val = {}
        cur = Q.identity
        for p in range(order):
            val[cur] = root_of_unity(order, (k * p) % order) if order > 1 else ONE
            cur = Q.mul(cur, gen)
        blocks.append(val)
    mats = [[[blocks[i][x] if i == j else ZERO for j in range(dim)] for i in range(dim)] for x in Q.elements]
    return proj, mats, dim


def _elem_order(G: FiniteGroup, x: int) -> int:
    k, cur = 1, x
    while cur != G.identity:
        cur, k = G.mul(cur, x), k + 1
    return k


def random_fixed_point(X: CrossedModule, rnd: random.Random) -> HomotopyFixedPoint:
    """A verified nonzero fixed point: pull back a rep of pi0, then gauge."""
    proj, qmats, dim = _pi0_rep(X, rnd)
    G = X.base
    c = _beta(G, rnd)
    P = random_unimodular(dim, rnd)
    Pi = linalg.inverse(P)
    maps = [linalg.scale(c[g], linalg.matmul(linalg.matmul(P, qmats[proj[g]]), Pi)) for g in G.elements]
    one_psi = [[ONE] * G.order for _ in G.elements]
    one_hol = [[ONE] * G.order for _ in range(X.fiber.order)]
    psi, hol = _gauge(c, X, one_psi, one_hol)
    return HomotopyFixedPoint(TwoCharacter(X, psi, hol), dim, maps)


def nonconstant_holonomy_characters(rnd: random.Random, count: int = 10) -> list[tuple[TwoCharacter, list[Scalar]]]:
    """Characters whose holonomy is nontrivial on ker(delta), with their gauge.

    hol(a, g) = chi(a) c(g)/c(delta(a) g) for a G-invariant character chi of A
    that is nontrivial on ker(delta); psi is the coboundary of c.
    """
    out = []
    # modules such as Z3 with the inversion action admit no such chi
    mods = [X for X in small_crossed_modules() if _invariant_characters(X)]
    while len(out) < count:
        X = mods[len(out) % len(mods)]
        A, G = X.fiber, X.base
        chi = [root_of_unity(A.order, v) for v in rnd.choice(_invariant_characters(X))]
        c = _beta(G, rnd)
        psi = [[ONE] * G.order for _ in G.elements]
        hol = [[chi[a]] * G.order for a in A.elements]
        psi, hol = _gauge(c, X, psi, hol)
        out.append((TwoCharacter(X, psi, hol), c))
    return out


def _invariant_characters(X: CrossedModule) -> list[list[int]]:
    """Exponents of characters A -> mu_|A| that are G-invariant and nontrivial on ker(delta)."""
    A = X.fiber
    n = A.order
    out = []
    for vals in _all_maps(n, n):
        if vals[A.identity] != 0:
            continue
        if any((vals[a] + vals[b] - vals[A.mul(a, b)]) % n for a in A.elements for b in A.elements):
            continue
        if any(vals[X.act(g, a)] != vals[a] for g in X.base.elements for a in A.elements):
            continue
        if any(vals[a] for a in X.kernel()):
            out.append(vals)
    return out


def _all_maps(size: int, order: int):
    if size == 0:
        yield []
        return
    for rest in _all_maps(size - 1, order):
        for v in range(order):
            yield rest + [v]


def fixed_point_candidates(c: TwoCharacter, gauge: Sequence[Scalar], rnd: random.Random, count: int) -> list[HomotopyFixedPoint]:
    """Candidates for the holonomy search.

    Half satisfy the psi relation exactly (gauged honest characters of G),
    so only the holonomy square can reject them; the rest are random
    integer matrices.
    """
    X = c.group
    G = X.base
    out = []
    reps = _honest_characters(G)
    for k in range(count):
        if k % 2 == 0:
            vals = rnd.choice(reps)
            dim = rnd.choice([1, 2])
            mats = []
            for g in G.elements:
                d = [[gauge[g] * vals[g] if i == j else ZERO for j in range(dim)] for i in range(dim)]
                mats.append(d)
            out.append(HomotopyFixedPoint(c, dim, mats))
        else:
            dim = rnd.choice([1, 2])
            mats = [linalg.identity(dim) if g == G.identity else _random_int_matrix(dim, rnd) for g in G.elements]
            out.append(HomotopyFixedPoint(c, dim, mats))
    return out


def _honest_characters(G: FiniteGroup) -> list[list[Scalar]]:
    """1d characters of an abelian G into mu_|G|."""
    n = G.order
    out = []
    for vals in _all_maps(n, n):
        if vals[G.identity] == 0 and all(
            (vals[a] + vals[b] - vals[G.mul(a, b)]) % n == 0 for a in G.elements for b in G.elements
        ):
            out.append([root_of_unity(n, v) for v in vals])
    return out


def _random_int_matrix(d: int, rnd: random.Random) -> Matrix:
    while True:
        m = linalg.as_matrix([[rnd.randint(-2, 2) for _ in range(d)] for _ in range(d)])
        if linalg.det(m):
            return m


# ---------------------------------------------------------------------------
# Frobenius algebras


def _nonzero(rnd: random.Random, lo: int = -3, hi: int = 3) -> Scalar:
    while True:
        x = rnd.randint(lo, hi)
        if x:
            return Scalar(x) / rnd.choice([1, 1, 2])


def random_commutative_frobenius(rnd: random.Random, max_dim: int = 3) -> FrobeniusAlgebra:
    kind = rnd.choice(["fields", "truncated", "group"])
    if kind == "fields":
        a = product_of_fields([_nonzero(rnd) for _ in range(rnd.randint(1, max_dim))])
    elif kind == "truncated":
        n = rnd.randint(1, max_dim)
        counit = [Scalar(rnd.randint(-2, 2)) for _ in range(n - 1)] + [_nonzero(rnd)]
        a = truncated_polynomial(n, counit)
    else:
        g = cyclic(rnd.randint(1, max_dim))
        counit = [_nonzero(rnd)] + [Scalar(0)] * (g.order - 1)
        a = make_group_algebra(g, counit)
    if a.dim > 1 and rnd.random() < 0.5:
        a = change_basis(a, random_unimodular(a.dim, rnd))
    return a


# ---------------------------------------------------------------------------
# cobordism words


def random_word_2d(rnd: random.Random, depth: int, n_in: int | None = None) -> tuple[Node, int, int]:
    """A well-typed 2d word; returns (ast, inputs, outputs)."""
    n_in = rnd.randint(0, 2) if n_in is None else n_in
    node, n_out = _word2(rnd, depth, n_in)
    return node, n_in, n_out


def _leaf2(rnd: random.Random, n_in: int) -> tuple[Node, int]:
    if n_in == 0:
        return (Gen("cup"), 1) if rnd.random() < 0.8 else (Gen("id", 0), 0)
    if n_in == 1:
        return rnd.choice([(Gen("comul"), 2), (Gen("cap"), 0), (Gen("id"), 1)])
    if n_in == 2:
        return rnd.choice([(Gen("mul"), 1), (Gen("swap"), 2), (Gen("id", 2), 2)])
    return Gen("id", n_in), n_in


def _word2(rnd: random.Random, depth: int, n_in: int) -> tuple[Node, int]:
    if depth <= 1 or n_in > 3:
        return _leaf2(rnd, n_in)
    if rnd.random() < 0.5:
        first, mid = _word2(rnd, depth - 1, n_in)
        second, out = _word2(rnd, depth - 1, mid)
        return seq(first, second), out
    if n_in < 1:
        left, a = _word2(rnd, depth - 1, 0)
        right, b = _word2(rnd, depth - 1, 0)
        return par(left, right), a + b
    k = rnd.randint(0, n_in)
    left, a = _word2(rnd, depth - 1, k)
    right, b = _word2(rnd, depth - 1, n_in - k)
    return par(left, right), a + b


def random_word_1d(rnd: random.Random, depth: int, source: tuple | None = None) -> tuple[Node, tuple, tuple]:
    """A well-typed 1d word; returns (ast, source signs, target signs)."""
    if source is None:
        source = tuple(rnd.choice("+-") for _ in range(rnd.randint(0, 2)))
    node, out = _word1(rnd, depth, tuple(source))
    return node, tuple(source), out


def _leaf1(rnd: random.Random, src: tuple) -> tuple[Node, tuple]:
    options: list[tuple[Node, tuple]] = []
    if not src:
        options += [(Gen("coev"), ("-", "+")), (Gen("lbnd"), ("+",))]
    if src == ("+",):
        options += [(Gen("rbnd"), ())]
    if src == ("+", "-"):
        options += [(Gen("ev"), ())]
    if len(src) == 2:
        options += [(Gen("swap"), (src[1], src[0]))]
    options += [(Gen("id", len(src)), src)] if src else []
    if not options:
        return Gen("id", 0), ()
    return rnd.choice(options)


def _word1(rnd: random.Random, depth: int, src: tuple) -> tuple[Node, tuple]:
    if depth <= 1 or len(src) > 3:
        return _leaf1(rnd, src)
    if rnd.random() < 0.5:
        first, mid = _word1(rnd, depth - 1, src)
        second, out = _word1(rnd, depth - 1, mid)
        return seq(first, second), out
    k = rnd.randint(0, len(src))
    left, a = _word1(rnd, depth - 1, src[:k])
    right, b = _word1(rnd, depth - 1, src[k:])
    return par(left, right), a + b


# ---------------------------------------------------------------------------
# boundary data and S3


def random_boundary_data(rnd: random.Random, dim: int | None = None) -> BoundaryData:
    """Random invertible pairing, copairing its inverse, random v and phi."""
    d = dim if dim is not None else rnd.choice([1, 2])
    while True:
        P = [[Scalar(rnd.randint(-2, 2)) for _ in range(d)] for _ in range(d)]
        if rnd.random() < 0.3:
            P = [list(r) for r in linalg.identity(d)]
        if linalg.det(P):
            break
    v = [Scalar(rnd.randint(-3, 3)) for _ in range(d)]
    phi = [Scalar(rnd.randint(-3, 3)) for _ in range(d)]
    return BoundaryData.with_pairing(P, v, phi)


def s3_standard_rep() -> ProjRep:
    """S3 on the sum-zero plane {x0 + x1 + x2 = 0}, basis e0 - e1, e1 - e2."""
    from .group import symmetric

    G = symmetric(3)
    basis = [(1, -1, 0), (0, 1, -1)]
    mats = []
    for name in G.names:
        p = [int(ch) for ch in name]
        cols = []
        for b in basis:
            moved = [0, 0, 0]
            for i in range(3):
                moved[p[i]] += b[i]
            # coordinates in the basis: moved = a (1,-1,0) + c (0,1,-1)
            a = moved[0]
            cc = -moved[2]
            cols.append((a, cc))
        mats.append([[Scalar(cols[j][i]) for j in range(2)] for i in range(2)])
    return ProjRep(G, Cocycle.trivial(G), 2, mats)
