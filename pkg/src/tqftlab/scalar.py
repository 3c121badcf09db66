"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element of Q(zeta_N) is stored as an integer coefficient vector over the
power basis 1, x, ..., x^(phi(N)-1) of Q[x]/Phi_N together with one positive
common denominator.  Conductors are normalized so that N != 2 (mod 4)
(Q(zeta_2m) = Q(zeta_m) for odd m); mixed-conductor arithmetic embeds both
operands into Q(zeta_lcm).

Literal syntax (used by every file format and the CLI)::

    rat  := INT ("/" POSINT)?
    root := "q" POSINT ("^" INT)?
    term := rat | root | term "*" term | "(" expr ")"
    expr := term (("+" | "-") term)*

e.g. ``1/2*q8^3 + -1/2*q8``.
"""

from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Union

from .errors import ConductorOverflow, DivisionByZero, ParseError

DEFAULT_CONDUCTOR_CAP = 120
_cap = DEFAULT_CONDUCTOR_CAP


def conductor_cap() -> int:
    return _cap


def set_conductor_cap(n: int) -> None:
    global _cap
    if n < 1:
        raise ValueError("conductor cap must be positive")
    _cap = n


@contextlib.contextmanager
def conductor_limit(n: int) -> Iterator[None]:
    """Temporarily change the conductor cap."""
    old = _cap
    set_conductor_cap(n)
    try:
        yield
    finally:
        set_conductor_cap(old)


def _check_cap(n: int) -> None:
    if n > _cap:
        raise ConductorOverflow(f"conductor {n} exceeds the configured cap {_cap}")


# ---------------------------------------------------------------------------
# cyclotomic polynomials and per-conductor tables


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        den = cyclotomic_poly(d)
        quot = [0] * (len(num) - len(den) + 1)
        for i in range(len(quot) - 1, -1, -1):
            c = num[i + len(den) - 1]
            quot[i] = c
            if c:
                for j, b in enumerate(den):
                    num[i + j] -= c * b
        num = quot
    return tuple(num)


class _Field:
    __slots__ = ("n", "phi", "poly", "powers")

    def __init__(self, n: int):
        self.n = n
        self.poly = cyclotomic_poly(n)
        self.phi = len(self.poly) - 1
        # powers[k] = x^k mod Phi_n as a dense integer vector, 0 <= k < n
        powers = []
        cur = [1] + [0] * (self.phi - 1)
        for _ in range(n):
            powers.append(tuple(cur))
            cur = [0] + cur
            top = cur.pop()
            if top:
                for i in range(self.phi):
                    cur[i] -= top * self.poly[i]
        self.powers = powers

    def reduce(self, coeffs: list[int]) -> list[int]:
        phi, poly = self.phi, self.poly
        for k in range(len(coeffs) - 1, phi - 1, -1):
            c = coeffs[k]
            if c:
                base = k - phi
                for i in range(phi):
                    coeffs[base + i] -= c * poly[i]
        return coeffs[:phi] + [0] * (phi - len(coeffs))


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    return _Field(n)


@lru_cache(maxsize=None)
def _embedding(n: int, big: int) -> tuple[tuple[int, ...], ...]:
    """Images of the power basis of Q(zeta_n) inside Q(zeta_big)."""
    step = big // n
    F = _field(big)
    return tuple(F.powers[(k * step) % big] for k in range(_field(n).phi))


def _normalize_conductor(n: int) -> int:
    if n % 4 == 2:
        n //= 2
    return n


# ---------------------------------------------------------------------------


Number = Union[int, Fraction, "Scalar"]


class Scalar:
    """Immutable element of a cyclotomic field.

    ``Scalar(3)``, ``Scalar(Fraction(1, 2))`` and ``Scalar("1/2*q8^3")`` all
    work; arithmetic mixes freely with ``int`` and ``Fraction``.
    """

    __slots__ = ("n", "num", "den", "_hash")

    def __init__(self, value: Union[int, Fraction, str, "Scalar"] = 0):
        if isinstance(value, str):
            value = parse_scalar(value)
        if isinstance(value, Scalar):
            self.n, self.num, self.den = value.n, value.num, value.den
        else:
            q = Fraction(value)
            self.n, self.num, self.den = 1, (q.numerator,), q.denominator
        self._hash = None

    @classmethod
    def _make(cls, n: int, num: list[int], den: int) -> "Scalar":
        if den < 0:
            num, den = [-c for c in num], -den
        g = den
        for c in num:
            if g == 1:
                break
            g = math.gcd(g, c)
        if g != 1:
            num = [c // g for c in num]
            den //= g
        s = object.__new__(cls)
        s.n, s.num, s.den, s._hash = n, tuple(num), den, None
        return s

    @classmethod
    def from_coeffs(cls, n: int, coeffs) -> "Scalar":
        """Build sum(coeffs[k] * zeta_n^k); any length, reduced mod Phi_n."""
        n = int(n)
        if n < 1:
            raise ValueError("conductor must be positive")
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [c.numerator * (den // c.denominator) for c in fr]
        # fold exponents mod n first so long inputs stay cheap
        folded = [0] * n
        for k, c in enumerate(ints):
            folded[k % n] += c
        return cls._from_folded(n, folded, den)

    @classmethod
    def _from_folded(cls, n: int, folded: list[int], den: int) -> "Scalar":
        m = _normalize_conductor(n)
        if m != n:
            # zeta_n = -zeta_m^((m+1)/2) for odd m
            half = (m + 1) // 2
            refold = [0] * m
            for k, c in enumerate(folded):
                if c:
                    refold[(k * half) % m] += -c if k % 2 else c
            folded, n = refold, m
        _check_cap(n)
        F = _field(n)
        acc = [0] * F.phi
        for k, c in enumerate(folded):
            if c:
                for i, p in enumerate(F.powers[k]):
                    if p:
                        acc[i] += c * p
        return cls._make(n, acc, den)

    # -- basic predicates -------------------------------------------------

    @property
    def conductor(self) -> int:
        return self.n

    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    # -- coercion and embedding --------------------------------------------

    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction, str)):
            return Scalar(x)
        raise TypeError(f"cannot interpret {x!r} as a Scalar")

    def _lifted(self, big: int) -> tuple[int, ...]:
        if big == self.n:
            return self.num
        emb = _embedding(self.n, big)
        acc = [0] * _field(big).phi
        for c, img in zip(self.num, emb):
            if c:
                for i, p in enumerate(img):
                    if p:
                        acc[i] += c * p
        return tuple(acc)

    @staticmethod
    def _common(a: "Scalar", b: "Scalar") -> int:
        if a.n == b.n:
            return a.n
        big = a.n * b.n // math.gcd(a.n, b.n)
        _check_cap(big)
        return big

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        big = Scalar._common(self, other)
        a, b = self._lifted(big), other._lifted(big)
        da, db = self.den, other.den
        if da == db:
            return Scalar._make(big, [x + y for x, y in zip(a, b)], da)
        return Scalar._make(big, [x * db + y * da for x, y in zip(a, b)], da * db)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._make(self.n, [-c for c in self.num], self.den)

    def __sub__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if other.n == 1:
            c = other.num[0]
            return Scalar._make(self.n, [x * c for x in self.num], self.den * other.den)
        if self.n == 1:
            c = self.num[0]
            return Scalar._make(other.n, [x * c for x in other.num], self.den * other.den)
        big = Scalar._common(self, other)
        a, b = self._lifted(big), other._lifted(big)
        F = _field(big)
        prod = [0] * (2 * F.phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Scalar._make(big, F.reduce(prod), self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """Multiplicative inverse via extended Euclid against Phi_N."""
        if not self:
            raise DivisionByZero("inverse of zero")
        if self.n == 1:
            return Scalar._make(1, [self.den], self.num[0])
        inv = _poly_inverse_mod([Fraction(c) for c in self.num], cyclotomic_poly(self.n))
        den = 1
        for c in inv:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [c.numerator * (den // c.denominator) for c in inv]
        ints += [0] * (_field(self.n).phi - len(ints))
        # (num/den_self)^-1 = den_self * inv(num)
        return Scalar._make(self.n, [c * self.den for c in ints], den)

    def __truediv__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base, k = self.inverse(), -k
        result = ONE
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conjugate(self) -> "Scalar":
        """Image under zeta_N -> zeta_N^-1 (complex conjugation)."""
        if self.n == 1:
            return self
        folded = [0] * self.n
        for k, c in enumerate(self.num):
            folded[(-k) % self.n] += c
        return Scalar._from_folded(self.n, folded, self.den)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                return self.den == 1 and self.num[0] == other and not any(self.num[1:])
            if isinstance(other, Fraction):
                q = Fraction(other)
                return self.is_rational() and self.num[0] * q.denominator == q.numerator * self.den
            return NotImplemented
        if self.n == other.n:
            return self.den == other.den and self.num == other.num
        if self.den != other.den:
            return False
        big = Scalar._common(self, other)
        return self._lifted(big) == other._lifted(big)

    def __hash__(self):
        # normalized trace is independent of the field the element lives in
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                t = Fraction(0)
                n = self.n
                for k, c in enumerate(self.num):
                    if c:
                        m = n // math.gcd(n, k)
                        mu = _mobius(m)
                        if mu:
                            t += Fraction(c * mu, euler_phi(m))
                self._hash = hash(t / self.den)
        return self._hash

    # -- output ---------------------------------------------------------------

    def embed_complex(self) -> tuple[float, float]:
        """Float image under zeta_N -> exp(2 pi i / N)."""
        re, im = [], []
        for k, c in enumerate(self.num):
            if c:
                ang = 2 * math.pi * k / self.n
                re.append(c * math.cos(ang))
                im.append(c * math.sin(ang))
        return math.fsum(re) / self.den, math.fsum(im) / self.den

    def __complex__(self):
        return complex(*self.embed_complex())

    def reduced(self) -> "Scalar":
        """The same element written over its smallest conductor."""
        if self.is_rational():
            return Scalar._make(1, [self.num[0]], self.den)
        for m in _divisors(self.n):
            if m == self.n:
                break
            if m % 4 == 2 or m == 1:
                continue
            coeffs = _solve_subfield(self, m)
            if coeffs is not None:
                return Scalar.from_coeffs(m, coeffs)
        return self

    def __str__(self):
        s = self.reduced()
        if s.n == 1:
            return str(Fraction(s.num[0], s.den))
        terms = []
        for k, c in enumerate(s.num):
            if not c:
                continue
            q = Fraction(c, s.den)
            if k == 0:
                terms.append(str(q))
                continue
            root = f"q{s.n}" if k == 1 else f"q{s.n}^{k}"
            if q == 1:
                terms.append(root)
            elif q == -1:
                terms.append(f"-1*{root}")
            else:
                terms.append(f"{q}*{root}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def _poly_inverse_mod(a: list[Fraction], m: tuple[int, ...]) -> list[Fraction]:
    """u with a*u = 1 mod m, polynomials lowest degree first."""

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def divmod_(p, q):
        p = p[:]
        quot = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
        lead = q[-1]
        while len(trim(p)) >= len(q):
            c = p[-1] / lead
            shift = len(p) - len(q)
            quot[shift] = c
            for i, b in enumerate(q):
                p[shift + i] -= c * b
        return trim(quot), p

    def mul(p, q):
        if not p or not q:
            return []
        out = [Fraction(0)] * (len(p) + len(q) - 1)
        for i, x in enumerate(p):
            if x:
                for j, y in enumerate(q):
                    out[i + j] += x * y
        return trim(out)

    def sub(p, q):
        out = [Fraction(0)] * max(len(p), len(q))
        for i, x in enumerate(p):
            out[i] += x
        for i, y in enumerate(q):
            out[i] -= y
        return trim(out)

    r0, r1 = trim([Fraction(c) for c in m]), trim(a[:])
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        if not r1:
            raise DivisionByZero("element is not invertible modulo the cyclotomic polynomial")
    if not r1:
        raise DivisionByZero("element is not invertible modulo the cyclotomic polynomial")
    c = r1[0]
    return [x / c for x in s1]


def _solve_subfield(s: Scalar, m: int) -> list[Fraction] | None:
    """Coordinates of s in the power basis of Q(zeta_m), or None."""
    emb = _embedding(m, s.n)
    rows = len(s.num)
    cols = len(emb)
    aug = [[Fraction(emb[j][i]) for j in range(cols)] + [Fraction(s.num[i], s.den)] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][cols] != 0 for i in range(r, rows)):
        return None
    sol = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][cols]
    return sol


ZERO = Scalar(0)
ONE = Scalar(1)


def root_of_unity(n: int, k: int = 1) -> Scalar:
    """zeta_n^k written over the smallest conductor n/gcd(n, k)."""
    if n < 1:
        raise ValueError("root_of_unity needs n >= 1")
    g = math.gcd(n, k % n) if k % n else n
    m, e = n // g, (k % n) // g
    if m == 1:
        return ONE
    coeffs = [0] * m
    coeffs[e] = 1
    return Scalar._from_folded(m, coeffs, 1)


def conjugate(s: Scalar) -> Scalar:
    return Scalar.coerce(s).conjugate()


def embed_complex(s: Scalar) -> tuple[float, float]:
    return Scalar.coerce(s).embed_complex()


# ---------------------------------------------------------------------------
# expression trees and the literal parser


@dataclass(frozen=True)
class Rat:
    value: Fraction


@dataclass(frozen=True)
class Root:
    n: int
    k: int = 1


@dataclass(frozen=True)
class Add:
    args: tuple


@dataclass(frozen=True)
class Mul:
    args: tuple


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Inv:
    arg: object


def arith_eval(expr) -> Scalar:
    """Evaluate an expression tree exactly."""
    if isinstance(expr, Scalar):
        return expr
    if isinstance(expr, (int, Fraction)):
        return Scalar(expr)
    if isinstance(expr, Rat):
        return Scalar(expr.value)
    if isinstance(expr, Root):
        if expr.n < 1:
            raise ValueError("root of unity needs a positive order")
        _check_cap(_normalize_conductor(expr.n // math.gcd(expr.n, expr.k % expr.n or expr.n)))
        return root_of_unity(expr.n, expr.k)
    if isinstance(expr, Add):
        acc = ZERO
        for a in expr.args:
            acc = acc + arith_eval(a)
        return acc
    if isinstance(expr, Mul):
        acc = ONE
        for a in expr.args:
            acc = acc * arith_eval(a)
        return acc
    if isinstance(expr, Neg):
        return -arith_eval(expr.arg)
    if isinstance(expr, Inv):
        return arith_eval(expr.arg).inverse()
    raise TypeError(f"unknown expression node {expr!r}")


class _LiteralParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self, signed: bool) -> int:
        self.skip()
        start = self.pos
        if signed and self.peek() == "-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise ParseError("expected an integer", start)
        return int(self.text[start:self.pos])

    def expr(self):
        terms = [self.term()]
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            t = self.term()
            terms.append(t if op == "+" else Neg(t))
        return terms[0] if len(terms) == 1 else Add(tuple(terms))

    def term(self):
        factors = [self.factor()]
        while self.peek() == "*":
            self.pos += 1
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def factor(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            e = self.expr()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
            return e
        if c == "q":
            self.pos += 1
            start = self.pos
            n = self.integer(signed=False)
            if n < 1:
                raise ParseError("root order must be positive", start)
            k = 1
            if self.peek() == "^":
                self.pos += 1
                k = self.integer(signed=True)
            return Root(n, k)
        if c == "-" or c.isdigit():
            p = self.integer(signed=True)
            if self.peek() == "/":
                self.pos += 1
                start = self.pos
                q = self.integer(signed=False)
                if q == 0:
                    raise ParseError("zero denominator", start)
                return Rat(Fraction(p, q))
            return Rat(Fraction(p))
        raise ParseError(f"unexpected {c!r}" if c else "unexpected end of input", self.pos)


def parse_expr(text: str):
    """Parse a scalar literal into an expression tree."""
    p = _LiteralParser(text)
    e = p.expr()
    if p.peek():
        raise ParseError(f"trailing input {p.text[p.pos:]!r}", p.pos)
    return e


def parse_scalar(text: str) -> Scalar:
    return arith_eval(parse_expr(text))


def serialize_scalar(s: Scalar) -> str:
    return str(Scalar.coerce(s))
