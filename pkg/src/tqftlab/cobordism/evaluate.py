"""Evaluation functors for cobordism words.

Dimension 2 (closed): a commutative Frobenius algebra A; circles:n is A^(x)n.
Dimension 1: a vector space V of dimension d; '+' is V, '-' is V*, both
with the standard basis.  Boundary data fixes a pairing
ev: V (x) V* -> K, a copairing coev: K -> V* (x) V, a vector v for the
left constrained end and a covector phi for the right one.  The default
data uses the canonical pairing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .. import linalg
from ..errors import InconsistentBoundaryData, NotCommutative, TwistedInput, WordTypeError
from ..frobenius import FrobeniusAlgebra
from ..group import FiniteGroup, conjugacy_classes
from ..linalg import Matrix
from ..scalar import ONE, ZERO, Scalar
from .dsl import CobWord, Gen, Node, Par, Seq, parse_word


def swap_matrix(d: int) -> Matrix:
    n = d * d
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(d):
        for j in range(d):
            rows[j * d + i][i * d + j] = ONE
    return tuple(tuple(r) for r in rows)


def evaluate_ast(node: Node, leaf: Callable[[Gen], Matrix]) -> Matrix:
    """Fold a word: ';' composes (later @ earlier), '|' is the Kronecker product."""
    if isinstance(node, Gen):
        return leaf(node)
    mats = [evaluate_ast(x, leaf) for x in node.items]
    acc = mats[0]
    for m in mats[1:]:
        acc = linalg.kron(acc, m) if isinstance(node, Par) else linalg.matmul(m, acc)
    return acc


# ---------------------------------------------------------------------------
# dimension 2


def eval_closed_2d(w: CobWord, a: FrobeniusAlgebra) -> Matrix:
    if w.dimension != 2:
        raise WordTypeError("expected a 2d word")
    if not a.is_commutative():
        raise NotCommutative("closed 2d evaluation needs a commutative Frobenius algebra")
    d = a.dim
    cache: dict[str, Matrix] = {}

    def leaf(g: Gen) -> Matrix:
        key = g.text()
        if key not in cache:
            if g.name == "id":
                cache[key] = linalg.identity(d**g.n)
            elif g.name == "swap":
                cache[key] = swap_matrix(d)
            elif g.name == "cup":
                cache[key] = a.unit_matrix()
            elif g.name == "cap":
                cache[key] = a.counit_matrix()
            elif g.name == "mul":
                cache[key] = a.mult_matrix()
            else:
                cache[key] = a.comult_matrix()
        return cache[key]

    return evaluate_ast(w.ast, leaf)


def genus_word(g: int) -> CobWord:
    """Closed surface of genus g: cup, g handles (comul ; mul), cap."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return parse_word(" ; ".join(["cup"] + ["comul ; mul"] * g + ["cap"]), 2)


def closed_value(w: CobWord, a: FrobeniusAlgebra) -> Scalar:
    m = eval_closed_2d(w, a)
    if len(m) != 1 or len(m[0]) != 1:
        raise WordTypeError(f"word is not closed: {w.signature()}")
    return m[0][0]


# the two sides of each Frobenius-algebra relation, as 2d words
FROBENIUS_RELATIONS: list[tuple[str, str, str]] = [
    ("associativity", "(mul | id) ; mul", "(id | mul) ; mul"),
    ("coassociativity", "comul ; (comul | id)", "comul ; (id | comul)"),
    ("Frobenius law", "(comul | id) ; (id | mul)", "mul ; comul"),
    ("unit", "(cup | id) ; mul", "id"),
    ("counit", "comul ; (cap | id)", "id"),
    ("commutativity", "swap ; mul", "mul"),
    ("swap naturality", "(mul | id) ; swap", "(id | swap) ; (swap | id) ; (id | mul)"),
]


# ---------------------------------------------------------------------------
# dimension 1


@dataclass(frozen=True)
class BoundaryData:
    """Values of the 1d generators on V = K^dim.

    ``pairing[i][j]`` = ev(e_i (x) f_j); ``copairing[j][i]`` is the
    coefficient of f_j (x) e_i in coev(1).  The zigzag identities hold iff
    pairing @ copairing = 1.
    """

    dim: int
    pairing: Matrix
    copairing: Matrix
    v: tuple
    phi: tuple

    @staticmethod
    def standard(dim: int, v: Sequence | None = None, phi: Sequence | None = None) -> "BoundaryData":
        v = tuple(Scalar.coerce(x) for x in (v if v is not None else [ONE] + [ZERO] * (dim - 1)))
        phi = tuple(Scalar.coerce(x) for x in (phi if phi is not None else [ONE] + [ZERO] * (dim - 1)))
        if len(v) != dim or len(phi) != dim:
            raise ValueError("v and phi must have length dim")
        I = linalg.identity(dim)
        return BoundaryData(dim, I, I, v, phi)

    @staticmethod
    def with_pairing(pairing, v, phi) -> "BoundaryData":
        P = linalg.as_matrix(pairing)
        return BoundaryData(
            len(P), P, linalg.inverse(P), tuple(Scalar.coerce(x) for x in v), tuple(Scalar.coerce(x) for x in phi)
        )

    def check(self) -> None:
        d = self.dim
        for name, m in (("pairing", self.pairing), ("copairing", self.copairing)):
            if len(m) != d or any(len(r) != d for r in m):
                raise InconsistentBoundaryData(f"{name} must be {d}x{d}")
        if len(self.v) != d or len(self.phi) != d:
            raise InconsistentBoundaryData(f"v and phi must have length {d}")
        if not linalg.is_identity(linalg.matmul(self.pairing, self.copairing)):
            raise InconsistentBoundaryData(
                "zigzag identity (id | coev) ; (ev | id) = id fails: pairing and copairing are not inverse"
            )

    def generator_matrix(self, name: str, n: int = 1) -> Matrix:
        d = self.dim
        if name == "id":
            return linalg.identity(d**n)
        if name == "swap":
            return swap_matrix(d)
        if name == "ev":
            return (tuple(self.pairing[i][j] for i in range(d) for j in range(d)),)
        if name == "coev":
            return tuple((self.copairing[j][i],) for j in range(d) for i in range(d))
        if name == "lbnd":
            return tuple((x,) for x in self.v)
        if name == "rbnd":
            return (tuple(self.phi),)
        raise ValueError(f"{name} is not a 1d generator")


def eval_1d_data(w: CobWord, data: BoundaryData) -> Matrix:
    if w.dimension not in (1, "2c"):
        raise WordTypeError("expected a 1d word")
    cache: dict[str, Matrix] = {}

    def leaf(g: Gen) -> Matrix:
        key = g.text()
        if key not in cache:
            cache[key] = data.generator_matrix(g.name, g.n)
        return cache[key]

    return evaluate_ast(w.ast, leaf)


def eval_1d(w: CobWord, v_space_dim: int, bc: tuple | None = None) -> Matrix:
    """Evaluate with the canonical pairing; bc = (v, phi) for constrained ends."""
    v, phi = bc if bc is not None else (None, None)
    return eval_1d_data(w, BoundaryData.standard(v_space_dim, v, phi))


def eval_normal_form(m, data: BoundaryData) -> Matrix:
    """Matrix of a 1d normal form, read arc by arc without building a word.

    Each arc contributes one factor depending on the basis labels at its
    ends; circles contribute tr(copairing @ pairing) each.
    """
    from itertools import product as iproduct

    from .cob1 import L_END, R_END

    d = data.dim
    P, C, v, phi = data.pairing, data.copairing, data.v, data.phi
    nA, nB = len(m.source), len(m.target)
    v_in = [sum((v[a] * P[a][k] for a in range(d)), ZERO) for k in range(d)]
    phi_out = [sum((C[j][a] * phi[a] for a in range(d)), ZERO) for j in range(d)]
    closed = sum((phi[a] * v[a] for a in range(d)), ZERO)
    circle = linalg.trace(linalg.matmul(C, P))

    def factor(s, e, I, J) -> Scalar:
        if s == L_END and e == R_END:
            return closed
        if s == L_END:
            return v[J[e[1]]] if e[0] == "t" else v_in[I[e[1]]]
        if e == R_END:
            return phi[I[s[1]]] if s[0] == "s" else phi_out[J[s[1]]]
        if s[0] == "s" and e[0] == "s":
            return P[I[s[1]]][I[e[1]]]
        if s[0] == "t" and e[0] == "t":
            return C[J[s[1]]][J[e[1]]]
        a = I[s[1]] if s[0] == "s" else I[e[1]]
        b = J[e[1]] if e[0] == "t" else J[s[1]]
        return ONE if a == b else ZERO

    base = circle**m.circles if m.circles else ONE
    rows = [[ZERO] * d**nA for _ in range(d**nB)]
    for col, I in enumerate(iproduct(range(d), repeat=nA)):
        for row, J in enumerate(iproduct(range(d), repeat=nB)):
            x = base
            for s, e in m.arcs:
                x = x * factor(s, e, I, J)
                if not x:
                    break
            rows[row][col] = x
    return tuple(tuple(r) for r in rows)


def permutation_operator(d: int, perm: Sequence[int]) -> Matrix:
    """Tensor-factor permutation on (K^d)^(x)n sending factor k to slot perm[k]."""
    n = len(perm)
    size = d**n
    rows = [[ZERO] * size for _ in range(size)]
    for idx in range(size):
        digits = [(idx // d ** (n - 1 - k)) % d for k in range(n)]
        out = [0] * n
        for k, p in enumerate(perm):
            out[p] = digits[k]
        j = 0
        for x in out:
            j = j * d + x
        rows[j][idx] = ONE
    return tuple(tuple(r) for r in rows)


# ---------------------------------------------------------------------------
# defect cylinders


def transmission(g: FiniteGroup, rho) -> list[Scalar]:
    """Traces of an honest representation on conjugacy-class representatives."""
    if any(x != 1 for row in rho.cocycle.values for x in row):
        raise TwistedInput("transmission needs an untwisted representation (trivial cocycle)")
    if rho.group != g:
        raise ValueError("representation lives on a different group")
    return [linalg.trace(rho.mats[cls[0]]) for cls in conjugacy_classes(g)]
