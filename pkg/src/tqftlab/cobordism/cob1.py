"""Normal forms of 1d cobordisms with constrained ends.

A 1d cobordism A -> B between sign strings is, up to diffeomorphism rel
boundary, a set of oriented arcs plus a number of circles.  Arcs run from
a *start* to an *end*:

    starts: source '+' points, target '-' points, left constrained ends L
    ends:   source '-' points, target '+' points, right constrained ends R

Endpoints are encoded as ('s', i), ('t', j), ('L', 0) and ('R', 0); an arc
from L straight to R is a fully constrained interval.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import SignMismatch
from .dsl import CobWord, Gen, Node, Par, Seq, format_object, leaf_signatures, make_word, par, seq

L_END = ("L", 0)
R_END = ("R", 0)


@dataclass(frozen=True)
class Cob1:
    source: tuple
    target: tuple
    arcs: tuple  # sorted tuple of (start, end)
    circles: int = 0

    @staticmethod
    def make(source, target, arcs, circles: int = 0) -> "Cob1":
        return Cob1(tuple(source), tuple(target), tuple(sorted(arcs)), circles)

    # -- counts ------------------------------------------------------------------

    def intervals(self) -> int:
        """Fully constrained intervals L -> R."""
        return sum(1 for a in self.arcs if a == (L_END, R_END))

    def through(self) -> int:
        """Arcs joining a source point to a target point."""
        return sum(1 for s, e in self.arcs if {s[0], e[0]} == {"s", "t"})

    def euler(self) -> int:
        """Euler characteristic: arcs count 1, circles 0."""
        return len(self.arcs)

    def weight(self) -> int:
        """Euler characteristic not carried by straight strands."""
        return len(self.arcs) - self.through()

    def is_identity(self) -> bool:
        return self == identity(self.source)

    def describe(self) -> str:
        def ep(x):
            k, i = x
            return {"s": f"s{i}", "t": f"t{i}", "L": "L", "R": "R"}[k]

        parts = [f"{ep(s)}>{ep(e)}" for s, e in self.arcs]
        if self.circles:
            parts.append(f"O^{self.circles}")
        body = " ".join(parts) if parts else "empty"
        return f"{format_object(1, self.source)}->{format_object(1, self.target)}: {body}"


def _strand(sign: str, i: int, j: int):
    """Straight strand from source i to target j."""
    return (("s", i), ("t", j)) if sign == "+" else (("t", j), ("s", i))


def identity(obj) -> Cob1:
    obj = tuple(obj)
    return Cob1.make(obj, obj, [_strand(sg, i, i) for i, sg in enumerate(obj)])


def generator(name: str, ins: tuple, outs: tuple, n: int = 1) -> Cob1:
    """Normal form of one generator with resolved signs."""
    if name == "id":
        return identity(ins)
    if name == "swap":
        a, b = ins
        return Cob1.make(ins, outs, [_strand(a, 0, 1), _strand(b, 1, 0)])
    if name == "ev":  # +- -> empty
        return Cob1.make(("+", "-"), (), [(("s", 0), ("s", 1))])
    if name == "coev":  # empty -> -+
        return Cob1.make((), ("-", "+"), [(("t", 0), ("t", 1))])
    if name == "lbnd":  # empty -> +
        return Cob1.make((), ("+",), [(L_END, ("t", 0))])
    if name == "rbnd":  # + -> empty
        return Cob1.make(("+",), (), [(("s", 0), R_END)])
    raise ValueError(f"{name} is not a 1d generator")


def tensor(m: Cob1, n: Cob1) -> Cob1:
    ds, dt = len(m.source), len(m.target)

    def shift(x):
        k, i = x
        if k == "s":
            return ("s", i + ds)
        if k == "t":
            return ("t", i + dt)
        return x

    arcs = list(m.arcs) + [(shift(s), shift(e)) for s, e in n.arcs]
    return Cob1.make(m.source + n.source, m.target + n.target, arcs, m.circles + n.circles)


def compose(m: Cob1, n: Cob1) -> Cob1:
    """Glue: m first, then n (m.target must equal n.source)."""
    if m.target != n.source:
        raise SignMismatch(f"cannot glue {format_object(1, m.target)} to {format_object(1, n.source)}")
    # L starts are not unique, so they never serve as lookup keys
    m_next = {s: e for s, e in m.arcs if s != L_END}
    n_next = {s: e for s, e in n.arcs if s != L_END}
    # starts of the composite: m's source and L starts, n's target and L starts
    starts = [("m", s, e) for s, e in m.arcs if s[0] != "t"]
    starts += [("n", s, e) for s, e in n.arcs if s[0] != "s"]
    visited_mid: set[int] = set()
    arcs = []
    for side, s, e in starts:
        cur_side = side
        while True:
            if cur_side == "m" and e[0] == "t":
                visited_mid.add(e[1])
                cur_side, e = "n", n_next[("s", e[1])]
            elif cur_side == "n" and e[0] == "s":
                visited_mid.add(e[1])
                cur_side, e = "m", m_next[("t", e[1])]
            else:
                break
        arcs.append((_relabel(side, s), _relabel(cur_side, e)))
    circles = m.circles + n.circles
    for j in range(len(m.target)):
        if j in visited_mid:
            continue
        # walk a closed loop through the middle
        cur_side, cur = ("m", ("t", j)) if m.target[j] == "-" else ("n", ("s", j))
        first = j
        while True:
            e = (m_next if cur_side == "m" else n_next)[cur]
            visited_mid.add(e[1])
            if cur_side == "m":
                cur_side, cur = "n", ("s", e[1])
            else:
                cur_side, cur = "m", ("t", e[1])
            if e[1] == first:
                break
        circles += 1
    return Cob1.make(m.source, n.target, arcs, circles)


def _relabel(side: str, x):
    k, i = x
    if k in ("L", "R"):
        return x
    if side == "m":
        return ("s", i)  # only m's source points survive
    return ("t", i)  # only n's target points survive


def from_word(w: CobWord) -> Cob1:
    """Normal form of a typed 1d word."""
    sigs = iter(leaf_signatures(w.ast, w.source))

    def go(node: Node) -> Cob1:
        if isinstance(node, Gen):
            ins, outs = next(sigs)
            return generator(node.name, ins, outs, node.n)
        parts = [go(x) for x in node.items]
        acc = parts[0]
        for p in parts[1:]:
            acc = tensor(acc, p) if isinstance(node, Par) else compose(acc, p)
        return acc

    return go(w.ast)


# ---------------------------------------------------------------------------
# words realising normal forms


def permutation_ast(n: int, perm) -> Node:
    """Adjacent-swap word moving point k to position perm[k]."""
    perm = list(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation")
    # current[p] = original index now sitting at position p
    current = list(range(n))
    target_pos = perm
    layers: list[Node] = []
    changed = True
    while changed:
        changed = False
        for p in range(n - 1):
            if target_pos[current[p]] > target_pos[current[p + 1]]:
                current[p], current[p + 1] = current[p + 1], current[p]
                pieces = []
                if p:
                    pieces.append(Gen("id", p))
                pieces.append(Gen("swap"))
                if n - p - 2:
                    pieces.append(Gen("id", n - p - 2))
                layers.append(par(*pieces))
                changed = True
    if not layers:
        return Gen("id", n)
    return seq(*layers)


def mapping_cylinder(source, target, perm) -> CobWord:
    """Word for the cylinder of the bijection sending source point k to target point perm[k]."""
    source, target = tuple(source), tuple(target)
    if len(source) != len(target) or sorted(perm) != list(range(len(source))):
        raise SignMismatch("mapping cylinder needs a bijection between equally sized objects")
    for k, p in enumerate(perm):
        if source[k] != target[p]:
            raise SignMismatch(f"point {k} has sign {source[k]} but its image {p} has sign {target[p]}")
    return make_word(permutation_ast(len(source), perm), 1, source)


CIRCLE_WORD = "coev ; swap ; ev"
INTERVAL_WORD = "lbnd ; rbnd"


def _circle_ast() -> Node:
    return Seq((Gen("coev"), Gen("swap"), Gen("ev")))


def _interval_ast() -> Node:
    return Seq((Gen("lbnd"), Gen("rbnd")))


def canonical_ast(m: Cob1) -> Node:
    """A word whose normal form is m: permute, consume, produce, permute."""
    A, B = m.source, m.target
    # consumers on the source side
    order: list[int] = []
    consumers: list[Node] = []
    throughs: list[tuple[int, int]] = []  # (source index, target index)
    for s, e in m.arcs:
        if s[0] == "s" and e[0] == "s":  # cap: + at s[1], - at e[1]
            order += [s[1], e[1]]
            consumers.append(Gen("ev"))
        elif s[0] == "s" and e == R_END:
            order.append(s[1])
            consumers.append(Gen("rbnd"))
        elif s == L_END and e[0] == "s":
            order.append(e[1])
            consumers.append(Seq((Par((Gen("lbnd"), Gen("id"))), Gen("ev"))))
    for s, e in m.arcs:
        if s[0] == "s" and e[0] == "t":
            throughs.append((s[1], e[1]))
        elif s[0] == "t" and e[0] == "s":
            throughs.append((e[1], s[1]))
    throughs.sort(key=lambda x: x[1])
    order += [i for i, _ in throughs]
    k = len(throughs)
    pre_perm = [0] * len(A)
    for pos, i in enumerate(order):
        pre_perm[i] = pos
    parts: list[Node] = [permutation_ast(len(A), pre_perm)] if A else []
    if consumers:
        parts.append(par(*consumers, Gen("id", k)) if k else par(*consumers))
    # producers on the target side
    produced: list[int] = [j for _, j in throughs]
    producers: list[Node] = []
    for s, e in m.arcs:
        if s[0] == "t" and e[0] == "t":  # cup: - at s[1], + at e[1]
            produced += [s[1], e[1]]
            producers.append(Gen("coev"))
        elif s == L_END and e[0] == "t":
            produced.append(e[1])
            producers.append(Gen("lbnd"))
        elif s[0] == "t" and e == R_END:
            produced.append(s[1])
            producers.append(Seq((Gen("coev"), Par((Gen("id"), Gen("rbnd"))))))
    producers += [_circle_ast()] * m.circles
    producers += [_interval_ast()] * m.intervals()
    if producers:
        parts.append(par(Gen("id", k), *producers) if k else par(*producers))
    post_perm = [produced.index(j) for j in range(len(B))]
    inv = [0] * len(B)
    for j, p in enumerate(post_perm):
        inv[p] = j
    if B:
        parts.append(permutation_ast(len(B), inv))
    parts = [p for p in parts if not (isinstance(p, Gen) and p.name == "id" and not p.n)]
    if not parts:
        return Gen("id", len(A))
    cleaned = [p for p in parts if not _is_plain_identity(p)] or [parts[0]]
    return seq(*cleaned)


def _is_plain_identity(node: Node) -> bool:
    return isinstance(node, Gen) and node.name == "id"


def canonical_word(m: Cob1) -> CobWord:
    return make_word(canonical_ast(m), 1, m.source)


# ---------------------------------------------------------------------------
# enumeration


def sign_strings(max_points: int) -> list[tuple[str, ...]]:
    """All sign strings with at most max_points points, shortest first."""
    out: list[tuple[str, ...]] = []
    for n in range(max_points + 1):
        out += [tuple(p) for p in itertools.product("+-", repeat=n)]
    return out


def homs(source, target, max_circles: int = 0, max_intervals: int = 0) -> list[Cob1]:
    """Every normal form A -> B with bounded closed components.

    Each start is either matched to an unused end or sent to R; every end
    left over is fed from L.
    """
    A, B = tuple(source), tuple(target)
    starts = [("s", i) for i, x in enumerate(A) if x == "+"] + [("t", j) for j, x in enumerate(B) if x == "-"]
    ends = [("s", i) for i, x in enumerate(A) if x == "-"] + [("t", j) for j, x in enumerate(B) if x == "+"]
    out: list[Cob1] = []

    def rec(k: int, used: frozenset, arcs: list) -> None:
        if k == len(starts):
            fed = [(L_END, e) for e in ends if e not in used]
            for c in range(max_circles + 1):
                for i in range(max_intervals + 1):
                    out.append(Cob1.make(A, B, arcs + fed + [(L_END, R_END)] * i, c))
            return
        s = starts[k]
        rec(k + 1, used, arcs + [(s, R_END)])
        for e in ends:
            if e not in used:
                rec(k + 1, used | {e}, arcs + [(s, e)])

    rec(0, frozenset(), [])
    return out
