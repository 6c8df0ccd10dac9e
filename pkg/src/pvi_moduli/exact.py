"""Exact scalar arithmetic and small exact linear algebra.

Everything in this package computes over Q.  Rational scalars are
`fractions.Fraction` (canonical form: reduced, positive denominator),
re-exported as `Rat`.  Points of the projective line are `Rat | Infinity`.
`Mat2` is a 2x2 rational matrix and `Dual` a rational dual number
a + b*delta with delta^2 = 0, used for exact forward-mode derivatives.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import DegenerateInput, NoSolution, UnsupportedField

Rat = Fraction


class Infinity:
    """The point at infinity of P^1.  A single shared instance `INF` is used."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __eq__(self, other):
        return isinstance(other, Infinity)

    def __hash__(self):
        return hash("pvi-infinity")


INF = Infinity()

ProjRat = Union[Rat, Infinity]


def is_inf(v: ProjRat) -> bool:
    return isinstance(v, Infinity)


def rat(num, den=1) -> Rat:
    return Fraction(num, den)


def rat_from_str(s: str) -> Rat:
    """Parse "num/den" (or "num"); denominator must be nonzero."""
    s = s.strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise DegenerateInput(f"not a rational: {s!r}") from exc


def rat_to_str(x: Rat) -> str:
    """Canonical serialization "num/den" with positive denominator."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def proj_from_str(s: str) -> ProjRat:
    s = s.strip()
    if s == "inf":
        return INF
    return rat_from_str(s)


def proj_to_str(v: ProjRat) -> str:
    return "inf" if is_inf(v) else rat_to_str(v)


def rat_sqrt(x: Rat):
    """Exact square root of a nonnegative rational, or None if irrational."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# 2x2 matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Mat2:
    a11: Rat
    a12: Rat
    a21: Rat
    a22: Rat

    @classmethod
    def zero(cls) -> "Mat2":
        z = Fraction(0)
        return cls(z, z, z, z)

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(Fraction(1), Fraction(0), Fraction(0), Fraction(1))

    @classmethod
    def diag(cls, a, d) -> "Mat2":
        return cls(Fraction(a), Fraction(0), Fraction(0), Fraction(d))

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a11 + other.a11, self.a12 + other.a12,
                    self.a21 + other.a21, self.a22 + other.a22)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a11 - other.a11, self.a12 - other.a12,
                    self.a21 - other.a21, self.a22 - other.a22)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a11, -self.a12, -self.a21, -self.a22)

    def scale(self, s) -> "Mat2":
        s = Fraction(s)
        return Mat2(s * self.a11, s * self.a12, s * self.a21, s * self.a22)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a11 * other.a11 + self.a12 * other.a21,
                    self.a11 * other.a12 + self.a12 * other.a22,
                    self.a21 * other.a11 + self.a22 * other.a21,
                    self.a21 * other.a12 + self.a22 * other.a22)

    def matvec(self, v: Sequence[Rat]) -> tuple:
        return (self.a11 * v[0] + self.a12 * v[1],
                self.a21 * v[0] + self.a22 * v[1])

    def det(self) -> Rat:
        return self.a11 * self.a22 - self.a12 * self.a21

    def trace(self) -> Rat:
        return self.a11 + self.a22

    def rows(self):
        return ((self.a11, self.a12), (self.a21, self.a22))

    def to_strs(self):
        return [[rat_to_str(self.a11), rat_to_str(self.a12)],
                [rat_to_str(self.a21), rat_to_str(self.a22)]]

    @classmethod
    def from_strs(cls, rows) -> "Mat2":
        return cls(rat_from_str(rows[0][0]), rat_from_str(rows[0][1]),
                   rat_from_str(rows[1][0]), rat_from_str(rows[1][1]))


def eig2(m: Mat2):
    """Exact eigenpairs of a 2x2 rational matrix.

    Returns a list of (eigenvalue, eigenvector) pairs with Mv = lambda v
    exactly.  Two entries for distinct eigenvalues or a scalar matrix, one
    entry for a repeated eigenvalue with a one-dimensional eigenspace.
    Raises UnsupportedField when the characteristic roots are irrational.
    """
    tr, dt = m.trace(), m.det()
    disc = tr * tr - 4 * dt
    root = rat_sqrt(disc)
    if root is None:
        raise UnsupportedField(f"irrational eigenvalues: discriminant {disc}")
    lams = [(tr + root) / 2, (tr - root) / 2]

    def vector_for(lam):
        # rows of (M - lam*I) are proportional; any nonzero row gives the kernel
        r1 = (m.a11 - lam, m.a12)
        r2 = (m.a21, m.a22 - lam)
        for (x, y) in (r1, r2):
            if x != 0 or y != 0:
                return (y, -x)
        return None  # scalar matrix

    if root != 0:
        return [(lam, vector_for(lam)) for lam in lams]
    lam = lams[0]
    v = vector_for(lam)
    if v is None:
        return [(lam, (Fraction(1), Fraction(0))),
                (lam, (Fraction(0), Fraction(1)))]
    return [(lam, v)]


# ---------------------------------------------------------------------------
# Exact linear systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearSolution:
    rank: int
    particular: tuple      # one exact solution
    nullspace: tuple       # tuple of basis vectors of the kernel

    @property
    def nullity(self) -> int:
        return len(self.nullspace)


def solve_linear(rows: Sequence[Sequence[Rat]], rhs: Sequence[Rat]) -> LinearSolution:
    """Exact Gauss-Jordan elimination over Q.

    Returns the rank, one particular solution and a nullspace basis.
    Raises NoSolution for an inconsistent system.  Pivoting is
    deterministic (first nonzero entry), so the returned basis is
    reproducible.
    """
    m = len(rows)
    if m == 0:
        raise DegenerateInput("empty system")
    n = len(rows[0])
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            raise NoSolution("inconsistent linear system")
    free = [c for c in range(n) if c not in pivots]
    part = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        part[c] = a[i][n]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -a[i][fc]
        basis.append(tuple(v))
    return LinearSolution(rank=len(pivots), particular=tuple(part), nullspace=tuple(basis))


# ---------------------------------------------------------------------------
# Dual numbers (exact forward-mode differentiation)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Dual:
    """a + b*delta with delta^2 = 0, over Q."""

    val: Rat
    der: Rat

    @classmethod
    def var(cls, x) -> "Dual":
        return cls(Fraction(x), Fraction(1))

    @classmethod
    def const(cls, x) -> "Dual":
        return cls(Fraction(x), Fraction(0))

    @staticmethod
    def _lift(x) -> "Dual":
        if isinstance(x, Dual):
            return x
        return Dual(Fraction(x), Fraction(0))

    def __add__(self, other):
        o = Dual._lift(other)
        return Dual(self.val + o.val, self.der + o.der)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.val, -self.der)

    def __sub__(self, other):
        return self + (-Dual._lift(other))

    def __rsub__(self, other):
        return Dual._lift(other) + (-self)

    def __mul__(self, other):
        o = Dual._lift(other)
        return Dual(self.val * o.val, self.val * o.der + self.der * o.val)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Dual._lift(other)
        if o.val == 0:
            raise DegenerateInput("dual division by zero value")
        return Dual(self.val / o.val,
                    (self.der * o.val - self.val * o.der) / (o.val * o.val))

    def __rtruediv__(self, other):
        return Dual._lift(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DegenerateInput("dual powers only for nonnegative integers")
        out = Dual.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = Dual._lift(other)
        return self.val == o.val and self.der == o.der
