"""S, T matrices and the scalar by which a relator fails to hold.

Relators are words in S and T with parentheses and integer exponents,
e.g. ``(S T)^3 S^-2``; letters multiply left to right as written.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .. import linalg
from ..errors import NotProjectivelyTrivial, ParseError
from ..linalg import Matrix
from ..scalar import ONE, ZERO, Scalar, root_of_unity
from ..verdict import Verdict


@dataclass(frozen=True)
class ModularData:
    S: Matrix
    T: Matrix
    label: str = ""

    def __post_init__(self):
        S, T = linalg.as_matrix(self.S), linalg.as_matrix(self.T)
        n = len(S)
        if n == 0 or any(len(r) != n for r in S) or len(T) != n or any(len(r) != n for r in T):
            raise ValueError("S and T must be square of the same positive size")
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "T", T)

    @property
    def dim(self) -> int:
        return len(self.S)


def verify_modular_data(m: ModularData) -> Verdict:
    if not linalg.det(m.S):
        return Verdict.failed("S is not invertible")
    for i in range(m.dim):
        for j in range(m.dim):
            if i != j and m.T[i][j]:
                return Verdict.failed(f"T is not diagonal: entry ({i}, {j}) is {m.T[i][j]}", (i, j))
    return Verdict.passed("S invertible, T diagonal")


def toric_code() -> ModularData:
    h = Scalar("1/2")
    signs = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]]
    S = [[h * x for x in row] for row in signs]
    T = [[ONE if i == j and i < 3 else (Scalar(-1) if i == j else ZERO) for j in range(4)] for i in range(4)]
    return ModularData(S, T, "toric code")


def semion() -> ModularData:
    r = (root_of_unity(8, 1) + root_of_unity(8, 7)) / 2  # 1/sqrt(2)
    S = [[r, r], [r, -r]]
    T = [[ONE, ZERO], [ZERO, root_of_unity(4, 1)]]
    return ModularData(S, T, "semion")


# ---------------------------------------------------------------------------
# relators

_TOKEN = re.compile(r"\s*(?:(?P<letter>[ST])|(?P<open>\()|(?P<close>\))|(?P<pow>\^\s*(?P<exp>-?\d+))|(?P<dot>[*.]))")


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        rest = text[pos:]
        if not rest.strip():
            break
        mt = _TOKEN.match(text, pos)
        if not mt:
            at = pos + len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {text[at]!r} in relator", at)
        kind = mt.lastgroup if mt.lastgroup != "exp" else "pow"
        start = mt.start(kind)
        if kind == "pow":
            out.append(("pow", mt.group("exp"), start))
        elif kind != "dot":
            out.append((kind, mt.group(kind), start))
        pos = mt.end()
    return out


def parse_relator(text: str) -> list:
    """Nested list form: items are 'S', 'T' or (sublist, exponent)."""
    toks = _tokens(text)
    k = 0

    def seq(depth: int) -> list:
        nonlocal k
        items: list = []
        while k < len(toks):
            kind, val, pos = toks[k]
            if kind == "close":
                if depth == 0:
                    raise ParseError("unbalanced ')'", pos)
                return items
            k += 1
            if kind == "letter":
                item = [val]
            elif kind == "open":
                item = seq(depth + 1)
                if k >= len(toks) or toks[k][0] != "close":
                    raise ParseError("missing ')'", len(text))
                k += 1
            else:
                raise ParseError("exponent without a base", pos)
            exp = 1
            if k < len(toks) and toks[k][0] == "pow":
                exp = int(toks[k][1])
                k += 1
            items.append((item, exp))
        if depth:
            raise ParseError("missing ')'", len(text))
        return items

    return seq(0)


def _evaluate(tree: list, gens: dict, mul, ident, inv):
    acc = ident
    for item, exp in tree:
        if isinstance(item, list) and len(item) == 1 and isinstance(item[0], str):
            base = gens[item[0]]
        else:
            base = _evaluate(item, gens, mul, ident, inv)
        if exp < 0:
            base, exp = inv(base), -exp
        for _ in range(exp):
            acc = mul(acc, base)
    return acc


def relator_matrix(m: ModularData, relator: str) -> Matrix:
    tree = parse_relator(relator)
    return _evaluate(tree, {"S": m.S, "T": m.T}, linalg.matmul, linalg.identity(m.dim), linalg.inverse)


def modular_defect(m: ModularData, relator: str) -> Scalar:
    """The scalar c with relator(S, T) = c * I."""
    c = linalg.scalar_multiple_of_identity(relator_matrix(m, relator))
    if c is None:
        raise NotProjectivelyTrivial(f"{relator!r} does not evaluate to a scalar matrix on {m.label or 'this data'}")
    return c


def modular_defect_float(m: ModularData, relator: str, tol: float = 1e-9) -> complex:
    """Independent floating-point evaluation of the same defect."""
    S = np.array([[complex(x) for x in r] for r in m.S], dtype=complex)
    T = np.array([[complex(x) for x in r] for r in m.T], dtype=complex)
    M = _evaluate(parse_relator(relator), {"S": S, "T": T}, np.matmul, np.eye(m.dim, dtype=complex), np.linalg.inv)
    c = M[0, 0]
    if not np.allclose(M, c * np.eye(m.dim), atol=tol):
        raise NotProjectivelyTrivial(f"{relator!r} is not numerically scalar")
    return complex(c)
