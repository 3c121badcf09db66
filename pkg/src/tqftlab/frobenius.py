"""Frobenius algebras by structure constants, and their modules.

Basis e_0..e_{d-1}; ``mult[i][j][k]`` is the e_k coefficient of e_i e_j.
Vectors are coefficient tuples.  The Gram-dual basis e^i satisfies
eps(e_k e^i) = delta_ki and drives both the comultiplication
Delta(x) = sum_i x e_i (x) e^i and the handle element H = sum_i e_i e^i.
"""

from __future__ import annotations

from typing import Sequence

from . import linalg
from .errors import AlgebraMismatch, NotCommutative
from .group import FiniteGroup
from .linalg import Matrix
from .scalar import ONE, ZERO, Scalar
from .verdict import Verdict

Vector = tuple


def _vec(xs, n: int) -> Vector:
    v = tuple(Scalar.coerce(x) for x in xs)
    if len(v) != n:
        raise ValueError(f"expected a vector of length {n}")
    return v


class FrobeniusAlgebra:
    def __init__(self, dim: int, mult, unit, counit, label: str = ""):
        if dim < 1:
            raise ValueError("algebra dimension must be positive")
        self.dim = dim
        if len(mult) != dim or any(len(r) != dim for r in mult):
            raise ValueError("mult must be a dim x dim x dim array")
        m = tuple(tuple(_vec(mult[i][j], dim) for j in range(dim)) for i in range(dim))
        self.mult = m
        self.unit = _vec(unit, dim)
        self.counit = _vec(counit, dim)
        self.label = label
        self._cache: dict = {}

    # -- arithmetic ------------------------------------------------------------

    def multiply(self, x: Sequence, y: Sequence) -> Vector:
        acc = [ZERO] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, m in enumerate(self.mult[i][j]):
                    if m:
                        acc[k] = acc[k] + c * m
        return tuple(acc)

    def basis(self, i: int) -> Vector:
        return tuple(ONE if k == i else ZERO for k in range(self.dim))

    def eps(self, x: Sequence) -> Scalar:
        acc = ZERO
        for a, b in zip(self.counit, x):
            if a and b:
                acc = acc + a * b
        return acc

    def left_matrix(self, x: Sequence) -> Matrix:
        """Matrix of y -> x y."""
        cols = [self.multiply(x, self.basis(j)) for j in range(self.dim)]
        return linalg.transpose(tuple(cols))

    def right_matrix(self, x: Sequence) -> Matrix:
        cols = [self.multiply(self.basis(j), x) for j in range(self.dim)]
        return linalg.transpose(tuple(cols))

    # -- structure ---------------------------------------------------------------

    def gram(self) -> Matrix:
        if "gram" not in self._cache:
            d = self.dim
            self._cache["gram"] = tuple(
                tuple(self.eps(self.mult[i][j]) for j in range(d)) for i in range(d)
            )
        return self._cache["gram"]

    def dual_coefficients(self) -> Matrix:
        """C with e^i = sum_j C[i][j] e_j, i.e. C = (G^-1)^T."""
        if "dual" not in self._cache:
            self._cache["dual"] = linalg.transpose(linalg.inverse(self.gram()))
        return self._cache["dual"]

    def dual_basis(self) -> list[Vector]:
        return [tuple(row) for row in self.dual_coefficients()]

    def is_commutative(self) -> bool:
        d = self.dim
        return all(self.mult[i][j] == self.mult[j][i] for i in range(d) for j in range(i + 1, d))

    def is_symmetric(self) -> bool:
        g = self.gram()
        return all(g[i][j] == g[j][i] for i in range(self.dim) for j in range(self.dim))

    # -- matrices used by the evaluators -----------------------------------------

    def unit_matrix(self) -> Matrix:
        return tuple((x,) for x in self.unit)

    def counit_matrix(self) -> Matrix:
        return (self.counit,)

    def mult_matrix(self) -> Matrix:
        """dim x dim^2, column i*dim+j holds e_i e_j."""
        d = self.dim
        return tuple(tuple(self.mult[i][j][k] for i in range(d) for j in range(d)) for k in range(d))

    def comult_matrix(self) -> Matrix:
        """dim^2 x dim, Delta(e_k) = sum_i e_k e_i (x) e^i."""
        if "comult" not in self._cache:
            d = self.dim
            C = self.dual_coefficients()
            out = [[ZERO] * d for _ in range(d * d)]
            for k in range(d):
                for i in range(d):
                    left = self.mult[k][i]
                    for p in range(d):
                        if not left[p]:
                            continue
                        for q in range(d):
                            if C[i][q]:
                                out[p * d + q][k] = out[p * d + q][k] + left[p] * C[i][q]
            self._cache["comult"] = tuple(tuple(r) for r in out)
        return self._cache["comult"]

    def __repr__(self):
        return f"FrobeniusAlgebra({self.label or 'dim ' + str(self.dim)})"


def change_basis(a: FrobeniusAlgebra, P: Matrix) -> FrobeniusAlgebra:
    """Same algebra in the basis f_j = sum_i P[i][j] e_i."""
    P = linalg.as_matrix(P)
    Pi = linalg.inverse(P)
    d = a.dim
    cols = [tuple(P[i][j] for i in range(d)) for j in range(d)]

    def coords(v):
        return tuple(sum((Pi[r][k] * v[k] for k in range(d) if v[k] and Pi[r][k]), ZERO) for r in range(d))

    mult = [[coords(a.multiply(cols[i], cols[j])) for j in range(d)] for i in range(d)]
    counit = [a.eps(cols[j]) for j in range(d)]
    return FrobeniusAlgebra(d, mult, coords(a.unit), counit, a.label)


def field_algebra(lam=1) -> FrobeniusAlgebra:
    """K with eps(1) = lam."""
    return FrobeniusAlgebra(1, [[[ONE]]], [ONE], [Scalar.coerce(lam)], f"K[eps={lam}]")


def make_group_algebra(g: FiniteGroup, counit: Sequence | None = None) -> FrobeniusAlgebra:
    """K[G] with eps picking the identity coefficient (or a supplied functional)."""
    n = g.order
    mult = [[[ONE if k == g.mul(i, j) else ZERO for k in range(n)] for j in range(n)] for i in range(n)]
    unit = [ONE if k == g.identity else ZERO for k in range(n)]
    eps = list(unit) if counit is None else list(counit)
    return FrobeniusAlgebra(n, mult, unit, eps, f"K[{g.label or g.order}]")


def truncated_polynomial(n: int, counit: Sequence) -> FrobeniusAlgebra:
    """K[x]/x^n in the monomial basis."""
    mult = [[[ONE if k == i + j else ZERO for k in range(n)] for j in range(n)] for i in range(n)]
    unit = [ONE if k == 0 else ZERO for k in range(n)]
    return FrobeniusAlgebra(n, mult, unit, counit, f"K[x]/x^{n}")


def product_of_fields(counit: Sequence) -> FrobeniusAlgebra:
    """K^d with idempotent basis and eps(p_i) = counit[i]."""
    d = len(counit)
    mult = [[[ONE if i == j == k else ZERO for k in range(d)] for j in range(d)] for i in range(d)]
    return FrobeniusAlgebra(d, mult, [ONE] * d, counit, f"K^{d}")


def verify_frobenius(a: FrobeniusAlgebra) -> Verdict:
    d = a.dim
    checked = 0
    for i in range(d):
        for j in range(d):
            eij = a.mult[i][j]
            for k in range(d):
                checked += 1
                lhs = a.multiply(eij, a.basis(k))
                rhs = a.multiply(a.basis(i), a.mult[j][k])
                if lhs != rhs:
                    return Verdict.failed("associativity fails: (e_i e_j) e_k != e_i (e_j e_k)", (i, j, k), checked)
    for i in range(d):
        b = a.basis(i)
        if a.multiply(a.unit, b) != b or a.multiply(b, a.unit) != b:
            return Verdict.failed("unit law fails", (i,), checked)
    if not linalg.det(a.gram()):
        return Verdict.failed("pairing eps(xy) is degenerate (Gram determinant is 0)", None, checked)
    flags = {"commutative": a.is_commutative(), "symmetric": a.is_symmetric()}
    tags = ", ".join(k for k, v in flags.items() if v) or "noncommutative, nonsymmetric"
    return Verdict.passed(f"Frobenius axioms hold ({checked}/{checked} triples; {tags})", checked, **flags)


def center(a: FrobeniusAlgebra) -> list[Vector]:
    """Basis of {z : z e_i = e_i z for all i}."""
    d = a.dim
    rows = []
    for i in range(d):
        # z e_i - e_i z as a linear function of z: column j gives e_j e_i - e_i e_j
        for k in range(d):
            rows.append(tuple(a.mult[j][i][k] - a.mult[i][j][k] for j in range(d)))
    return linalg.nullspace(rows, d)


def handle_element(a: FrobeniusAlgebra) -> Vector:
    if not a.is_commutative():
        raise NotCommutative("handle element is only defined here for commutative algebras")
    H = [ZERO] * a.dim
    for i, dual in enumerate(a.dual_basis()):
        prod = a.multiply(a.basis(i), dual)
        H = [x + y for x, y in zip(H, prod)]
    return tuple(H)


def genus_invariant(g: int, a: FrobeniusAlgebra) -> Scalar:
    """eps(H^g)."""
    H = handle_element(a)
    x = a.unit
    for _ in range(g):
        x = a.multiply(x, H)
    return a.eps(x)


def is_semisimple(a: FrobeniusAlgebra) -> bool:
    """Nondegeneracy of the regular trace form tr(L_x L_y) (characteristic 0)."""
    d = a.dim
    L = [a.left_matrix(a.basis(i)) for i in range(d)]
    form = tuple(tuple(linalg.trace(linalg.matmul(L[i], L[j])) for j in range(d)) for i in range(d))
    return bool(linalg.det(form))


# ---------------------------------------------------------------------------


class AlgModule:
    """Left module: ``action[i]`` is the matrix of e_i."""

    def __init__(self, algebra: FrobeniusAlgebra, dim: int, action, label: str = ""):
        self.algebra = algebra
        self.dim = dim
        self.action = tuple(linalg.as_matrix(m) for m in action)
        if len(self.action) != algebra.dim:
            raise ValueError("need one action matrix per basis element")
        self.label = label

    def act(self, x: Sequence) -> Matrix:
        acc = linalg.zeros(self.dim, self.dim)
        for xi, m in zip(x, self.action):
            if xi:
                acc = linalg.add(acc, linalg.scale(xi, m))
        return acc

    def __repr__(self):
        return f"AlgModule({self.label or 'dim ' + str(self.dim)})"


def verify_module(r: AlgModule) -> Verdict:
    a = r.algebra
    d = a.dim
    for i in range(d):
        for j in range(d):
            if r.act(a.mult[i][j]) != linalg.matmul(r.action[i], r.action[j]):
                return Verdict.failed("action does not respect multiplication", (i, j))
    if r.dim and not linalg.is_identity(r.act(a.unit)):
        return Verdict.failed("unit does not act as the identity")
    return Verdict.passed(f"module axioms hold ({d * d}/{d * d} pairs)", d * d)


def regular_module(a: FrobeniusAlgebra) -> AlgModule:
    return AlgModule(a, a.dim, [a.left_matrix(a.basis(i)) for i in range(a.dim)], "regular")


def hom_modules(ra: AlgModule, rb: AlgModule) -> tuple[int, list[Matrix]]:
    """Intertwiners T: R_a -> R_b with T rho_a(x) = rho_b(x) T."""
    if ra.algebra is not rb.algebra and (
        ra.algebra.dim != rb.algebra.dim or ra.algebra.mult != rb.algebra.mult
    ):
        raise AlgebraMismatch("modules are over different algebras")
    m, n = rb.dim, ra.dim  # T is m x n, unknown t[p][q] at index p*n+q
    rows = []
    for A, B in zip(ra.action, rb.action):
        for p in range(m):
            for q in range(n):
                row = [ZERO] * (m * n)
                # (T A)[p][q] = sum_s T[p][s] A[s][q]
                for s in range(n):
                    if A[s][q]:
                        row[p * n + s] = row[p * n + s] + A[s][q]
                # (B T)[p][q] = sum_s B[p][s] T[s][q]
                for s in range(m):
                    if B[p][s]:
                        row[s * n + q] = row[s * n + q] - B[p][s]
                rows.append(tuple(row))
    basis = linalg.nullspace(rows, m * n) if m * n else []
    mats = [tuple(tuple(v[p * n + q] for q in range(n)) for p in range(m)) for v in basis]
    return len(mats), mats
