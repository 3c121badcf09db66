"""Cobordism words: grammar, canonical AST, serializer and typechecker.

Grammar (whitespace insensitive, ASCII)::

    word := par (";" par)*
    par  := atom ("|" atom)*
    atom := GEN | "(" word ")"
    GEN  := id<n> | swap | cup | cap | mul | comul | ev | coev | lbnd | rbnd

``a ; b`` means "apply a, then b" (as matrices: B @ A).  ``a | b`` places
a and b side by side (Kronecker product, a on the left factor).  ``id`` is
``id1``; ``id0`` and the empty word are the identity of the empty object.

Objects: in dimension 2 a number of circles (``circles:2``); in dimension 1
a string of signs (``+-+``, empty for the empty set).  Dimension ``2c``
words are cylinderized 1d words; their objects print as ``[+-]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from ..errors import ParseError, WordTypeError

GENERATORS_2D = {"id", "swap", "cup", "cap", "mul", "comul"}
GENERATORS_1D = {"id", "swap", "ev", "coev", "lbnd", "rbnd"}
ALL_GENERATORS = GENERATORS_2D | GENERATORS_1D

# (inputs, outputs) in circles
SIGNATURE_2D = {"swap": (2, 2), "cup": (0, 1), "cap": (1, 0), "mul": (2, 1), "comul": (1, 2)}


@dataclass(frozen=True)
class Gen:
    name: str
    n: int = 1  # width, used by id only
    pos: int = field(default=-1, compare=False, hash=False)

    def __repr__(self):
        return f"Gen({self.text()!r})"

    def text(self) -> str:
        if self.name == "id":
            return "id" if self.n == 1 else f"id{self.n}"
        return self.name


@dataclass(frozen=True)
class Seq:
    items: tuple
    pos: int = field(default=-1, compare=False, hash=False)


@dataclass(frozen=True)
class Par:
    items: tuple
    pos: int = field(default=-1, compare=False, hash=False)


Node = Union[Gen, Seq, Par]


def seq(*items: Node, pos: int = -1) -> Node:
    """Sequential composite, flattening nested sequences."""
    flat: list[Node] = []
    for it in items:
        flat.extend(it.items if isinstance(it, Seq) else (it,))
    if len(flat) == 1:
        return flat[0]
    return Seq(tuple(flat), pos if pos >= 0 else flat[0].pos)


def par(*items: Node, pos: int = -1) -> Node:
    """Side-by-side composite, flattening nested tensors."""
    flat: list[Node] = []
    for it in items:
        flat.extend(it.items if isinstance(it, Par) else (it,))
    if len(flat) == 1:
        return flat[0]
    return Par(tuple(flat), pos if pos >= 0 else flat[0].pos)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(;)|(\|)|(\()|(\)))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    if not text.isascii():
        bad = next(i for i, ch in enumerate(text) if not ch.isascii())
        raise ParseError("non-ASCII character in word", bad)
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        kind = {1: "gen", 2: ";", 3: "|", 4: "(", 5: ")"}[m.lastindex]
        toks.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


_ID = re.compile(r"id(\d*)$")


class _Parser:
    def __init__(self, text: str, allowed: set[str]):
        self.toks = _tokenize(text)
        self.i = 0
        self.allowed = allowed

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def word(self) -> Node:
        start = self.peek()[2]
        items = [self.par()]
        while self.peek()[0] == ";":
            self.take()
            items.append(self.par())
        return seq(*items, pos=start)

    def par(self) -> Node:
        start = self.peek()[2]
        items = [self.atom()]
        while self.peek()[0] == "|":
            self.take()
            items.append(self.atom())
        return par(*items, pos=start)

    def atom(self) -> Node:
        kind, val, pos = self.take()
        if kind == "(":
            inner = self.word()
            k, _, p = self.take()
            if k != ")":
                raise ParseError("expected ')'", p)
            return inner
        if kind == "gen":
            m = _ID.match(val)
            if m:
                return Gen("id", int(m.group(1)) if m.group(1) else 1, pos)
            if val not in ALL_GENERATORS:
                raise ParseError(f"unknown generator {val!r}", pos)
            if val not in self.allowed:
                raise ParseError(f"generator {val!r} is not available in this dimension", pos)
            return Gen(val, 1, pos)
        what = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"expected a generator or '(' but found {what}", pos)


def parse_ast(text: str, dimension=2) -> Node:
    """Parse without typechecking."""
    allowed = GENERATORS_2D if dimension == 2 else GENERATORS_1D
    if not text.strip():
        return Gen("id", 0, 0)
    p = _Parser(text, allowed)
    node = p.word()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", pos)
    return node


def serialize_ast(node: Node) -> str:
    if isinstance(node, Gen):
        return node.text()
    if isinstance(node, Seq):
        return " ; ".join(serialize_ast(x) for x in node.items)
    parts = []
    for x in node.items:
        s = serialize_ast(x)
        parts.append(f"({s})" if isinstance(x, Seq) else s)
    return " | ".join(parts)


# ---------------------------------------------------------------------------
# typing


def format_object(dimension, obj) -> str:
    if dimension == 2:
        return f"circles:{obj}"
    s = "".join(obj)
    if dimension == "2c":
        return f"[{s}]"
    return s if s else "()"


def parse_object(text: str, dimension):
    text = text.strip()
    if dimension == 2:
        m = re.fullmatch(r"circles:(\d+)", text)
        if not m:
            raise ParseError(f"bad 2d object {text!r}; expected circles:<n>", 0)
        return int(m.group(1))
    if dimension == "2c" and text.startswith("[") and text.endswith("]"):
        text = text[1:-1]
    if text in ("", "()"):
        return ()
    bad = next((i for i, ch in enumerate(text) if ch not in "+-"), None)
    if bad is not None:
        raise ParseError(f"bad sign string {text!r}", bad)
    return tuple(text)


def _type_2d(node: Node) -> tuple[int, int]:
    if isinstance(node, Gen):
        if node.name == "id":
            return node.n, node.n
        return SIGNATURE_2D[node.name]
    if isinstance(node, Par):
        ins = outs = 0
        for it in node.items:
            a, b = _type_2d(it)
            ins, outs = ins + a, outs + b
        return ins, outs
    src, cur = _type_2d(node.items[0])
    for it in node.items[1:]:
        a, b = _type_2d(it)
        if a != cur:
            raise WordTypeError(
                f"boundary mismatch: left side ends at circles:{cur} but right side starts at circles:{a}", it.pos
            )
        cur = b
    return src, cur


class _Signs:
    """Union-find over sign variables; a class may be pinned to '+' or '-'."""

    def __init__(self):
        self.parent: list[int] = []
        self.value: list[str | None] = []

    def fresh(self, value: str | None = None) -> int:
        self.parent.append(len(self.parent))
        self.value.append(value)
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def unify(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return True
        vx, vy = self.value[rx], self.value[ry]
        if vx and vy and vx != vy:
            return False
        self.parent[ry] = rx
        self.value[rx] = vx or vy
        return True

    def resolve(self, x: int) -> str:
        return self.value[self.find(x)] or "+"


def _leaf_1d(node: Gen, S: _Signs) -> tuple[list[int], list[int]]:
    nm = node.name
    if nm == "id":
        vs = [S.fresh() for _ in range(node.n)]
        return vs, vs
    if nm == "swap":
        a, b = S.fresh(), S.fresh()
        return [a, b], [b, a]
    if nm == "ev":
        return [S.fresh("+"), S.fresh("-")], []
    if nm == "coev":
        return [], [S.fresh("-"), S.fresh("+")]
    if nm == "lbnd":
        return [], [S.fresh("+")]
    return [S.fresh("+")], []  # rbnd


def _type_1d(node: Node, S: _Signs, leaves: list | None = None) -> tuple[list[int], list[int]]:
    if isinstance(node, Gen):
        io = _leaf_1d(node, S)
        if leaves is not None:
            leaves.append(io)
        return io
    if isinstance(node, Par):
        ins: list[int] = []
        outs: list[int] = []
        for it in node.items:
            a, b = _type_1d(it, S, leaves)
            ins += a
            outs += b
        return ins, outs
    src, cur = _type_1d(node.items[0], S, leaves)
    for it in node.items[1:]:
        a, b = _type_1d(it, S, leaves)
        if len(a) != len(cur):
            raise WordTypeError(
                f"boundary mismatch: left side ends at {len(cur)} points but right side starts at {len(a)}", it.pos
            )
        for k, (x, y) in enumerate(zip(cur, a)):
            if not S.unify(x, y):
                raise WordTypeError(
                    f"orientation mismatch at point {k}: {S.resolve(x)} meets {S.resolve(y)}", it.pos
                )
        cur = b
    return src, cur


@dataclass(frozen=True)
class CobWord:
    dimension: object  # 1, 2 or "2c"
    ast: Node
    source: object
    target: object

    def __str__(self):
        return serialize_ast(self.ast)

    def signature(self) -> str:
        return f"{format_object(self.dimension, self.source)} -> {format_object(self.dimension, self.target)}"


def typecheck(ast: Node, dimension, source=None) -> tuple[object, object]:
    """Boundary objects of a word; 1d signs are inferred, defaulting to '+'."""
    return _typecheck(ast, dimension, source)[:2]


def leaf_signatures(ast: Node, source=None) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
    """Resolved (input signs, output signs) of every 1d leaf, left to right."""
    return _typecheck(ast, 1, source)[2]


def _typecheck(ast: Node, dimension, source=None):
    if dimension == 2:
        src, tgt = _type_2d(ast)
        if source is not None and source != src:
            raise WordTypeError(f"declared source circles:{source} but word starts at circles:{src}", 0)
        return src, tgt, []
    S = _Signs()
    leaves: list = []
    ins, outs = _type_1d(ast, S, leaves)
    if source is not None:
        source = tuple(source)
        if len(source) != len(ins):
            raise WordTypeError(f"declared source has {len(source)} points but word starts at {len(ins)}", 0)
        for k, (v, sgn) in enumerate(zip(ins, source)):
            if not S.unify(v, S.fresh(sgn)):
                raise WordTypeError(f"declared source sign {sgn} at point {k} conflicts with the word", 0)

    def res(vs):
        return tuple(S.resolve(v) for v in vs)

    return res(ins), res(outs), [(res(a), res(b)) for a, b in leaves]


def make_word(ast: Node, dimension, source=None) -> CobWord:
    src, tgt = typecheck(ast, dimension, source)
    return CobWord(dimension, ast, src, tgt)


def parse_word(text: str, dimension=2, source=None) -> CobWord:
    """Parse and typecheck; raises ParseError or WordTypeError with a position."""
    if dimension not in (1, 2, "2c"):
        raise ValueError("dimension must be 1, 2 or '2c'")
    ast = parse_ast(text, 2 if dimension == 2 else 1)
    return make_word(ast, dimension, source)


def serialize_word(w: CobWord) -> str:
    return serialize_ast(w.ast)


def generators_of(node: Node):
    """Leaves in left-to-right order."""
    if isinstance(node, Gen):
        yield node
    else:
        for it in node.items:
            yield from generators_of(it)
