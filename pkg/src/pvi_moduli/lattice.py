"""Integer intersection theory on the rank-10 Picard lattice of the
8-point blow-up of the second Hirzebruch surface.

Basis: (C0, F, E1+, E1-, E2+, E2-, E3+, E3-, E4+, E4-) with
C0^2 = -2, F^2 = 0, C0.F = 1, (Ei±)^2 = -1 and all other products zero.
Derived classes: C1 = C0 + 2F, F'_i = F - Ei+ - Ei-, the anticanonical
class Y = 2C0 + F'_1 + ... + F'_4 and its reduction Y_red = C0 + sum F'_i.

`enumerate_transversal` lists the fiber classes of the affine-line
fibrations transversal to the |F| one; exactly the sixteen
C1 + F - sum_i Ei^{s_i}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import DegenerateInput

RANK = 10
BASIS_NAMES = ("C0", "F", "E1+", "E1-", "E2+", "E2-", "E3+", "E3-", "E4+", "E4-")


@dataclass(frozen=True)
class DivClass:
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != RANK or not all(isinstance(c, int) for c in self.coeffs):
            raise DegenerateInput("a divisor class is an integer vector of length 10")

    def __add__(self, other: "DivClass") -> "DivClass":
        return DivClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DivClass") -> "DivClass":
        return DivClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "DivClass":
        return DivClass(tuple(-a for a in self.coeffs))

    def __rmul__(self, n: int) -> "DivClass":
        return DivClass(tuple(n * a for a in self.coeffs))

    def dot(self, other: "DivClass") -> int:
        return intersect(self, other)

    def __str__(self):
        terms = []
        for c, name in zip(self.coeffs, BASIS_NAMES):
            if c == 0:
                continue
            sign = "+" if c > 0 else "-"
            mag = abs(c)
            terms.append(f"{sign} {'' if mag == 1 else str(mag)}{name}".strip())
        text = " ".join(terms) or "0"
        return text[2:] if text.startswith("+ ") else text


def _basis(i: int) -> DivClass:
    return DivClass(tuple(1 if j == i else 0 for j in range(RANK)))


C0 = _basis(0)
F = _basis(1)


def E(i: int, sign: str) -> DivClass:
    """Exceptional class over the point b_i^sign, i in 1..4, sign '+'/'-'."""
    if i not in (1, 2, 3, 4) or sign not in ("+", "-"):
        raise DegenerateInput("E(i, sign) needs i in 1..4 and sign '+' or '-'")
    return _basis(2 + 2 * (i - 1) + (0 if sign == "+" else 1))


C1 = C0 + 2 * F


def F_prime(i: int) -> DivClass:
    return F - E(i, "+") - E(i, "-")


Y = 2 * C0 + F_prime(1) + F_prime(2) + F_prime(3) + F_prime(4)
Y_RED = C0 + F_prime(1) + F_prime(2) + F_prime(3) + F_prime(4)


def L_sigma(sigma) -> DivClass:
    """C1 + F - sum_i E_i^{sigma_i} for a sign pattern like '+-++'."""
    out = C1 + F
    for i, s in enumerate(sigma, start=1):
        out = out - E(i, s)
    return out


def E_prime_minus(i: int) -> DivClass:
    """Proper transform of the section through the three b_j^- with j != i:
    C1 - sum_{j != i} Ej^-, a (-1)-class."""
    out = C1
    for j in range(1, 5):
        if j != i:
            out = out - E(j, "-")
    return out


# Gram matrix of the intersection form
_GRAM = [[0] * RANK for _ in range(RANK)]
_GRAM[0][0] = -2
_GRAM[0][1] = _GRAM[1][0] = 1
for _k in range(2, RANK):
    _GRAM[_k][_k] = -1


def intersect(d1: DivClass, d2: DivClass) -> int:
    return sum(d1.coeffs[i] * _GRAM[i][j] * d2.coeffs[j]
               for i in range(RANK) for j in range(RANK) if _GRAM[i][j] != 0)


def gram_matrix():
    return [row[:] for row in _GRAM]


def form_signature():
    """(n_plus, n_minus, n_zero) of the form, by exact congruence diagonalization."""
    a = [[Fraction(x) for x in row] for row in _GRAM]
    n = RANK
    pos = neg = zero = 0
    idx = list(range(n))
    k = 0
    while k < n:
        if a[k][k] == 0:
            swap = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if swap is None:
                off = next(((i, j) for i in range(k, n) for j in range(i + 1, n)
                            if a[i][j] != 0), None)
                if off is None:
                    zero += n - k
                    break
                i, j = off
                # replace row/col j by j + i to create a nonzero diagonal entry
                for m in range(n):
                    a[j][m] += a[i][m]
                for m in range(n):
                    a[m][j] += a[m][i]
                continue
            a[k], a[swap] = a[swap], a[k]
            for row in a:
                row[k], row[swap] = row[swap], row[k]
        piv = a[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        for j in range(k + 1, n):
            f = a[j][k] / piv
            if f != 0:
                for m in range(n):
                    a[j][m] -= f * a[k][m]
                for m in range(n):
                    a[m][j] -= f * a[m][k]
        k += 1
    return (pos, neg, zero)


def enumerate_transversal(n_max: int):
    """All classes L' = C1 + nF - sum a_i Ei+ - sum b_i Ei- with
    0 <= n <= n_max satisfying L'.F'_i >= 0, L'.Ei± >= 0, L'.Y_red = 1
    and L'^2 = 0.

    The per-point bound a_i, b_i in {0, 1} with a_i + b_i <= 1 is derived
    from the first two inequality families rather than assumed; the search
    space below is the survivor set of that derivation.
    """
    if n_max < 1:
        raise DegenerateInput("n_max must be at least 1")
    # L'.Ei+ = a_i >= 0 and L'.Ei- = b_i >= 0 bound the coefficients below;
    # L'.F'_i = 1 - a_i - b_i >= 0 then forces (a_i, b_i) in {(0,0),(1,0),(0,1)}.
    per_point = [(a, b) for a in range(0, n_max + 2) for b in range(0, n_max + 2)
                 if a >= 0 and b >= 0 and 1 - a - b >= 0]
    out = []
    for n in range(0, n_max + 1):
        for choice in product(per_point, repeat=4):
            cand = C1 + n * F
            for i, (a, b) in enumerate(choice, start=1):
                cand = cand - a * E(i, "+") - b * E(i, "-")
            if intersect(cand, Y_RED) != 1:
                continue
            if intersect(cand, cand) != 0:
                continue
            ok = all(intersect(cand, F_prime(i)) >= 0
                     and intersect(cand, E(i, "+")) >= 0
                     and intersect(cand, E(i, "-")) >= 0 for i in range(1, 5))
            if ok:
                out.append(cand)
    return out


def sigma_label(d: DivClass):
    """Sign pattern of a class of the form C1 + F - sum Ei^{s_i}, else None."""
    for sigma in product("+-", repeat=4):
        if d == L_sigma(sigma):
            return "".join(sigma)
    return None


def singular_fiber_decompositions():
    """The reducible-fiber identities of the two fibrations, as exact
    vector identities; returns a list of (name, holds) pairs."""
    checks = []
    L = L_sigma("----")
    for i in range(1, 5):
        checks.append((f"F = F'_{i} + E{i}+ + E{i}-",
                       F == F_prime(i) + E(i, "+") + E(i, "-")))
    for i in range(1, 5):
        checks.append((f"L = F'_{i} + E'_{i}- + E{i}+",
                       L == F_prime(i) + E_prime_minus(i) + E(i, "+")))
        checks.append((f"(E'_{i}-)^2 = -1", intersect(E_prime_minus(i), E_prime_minus(i)) == -1))
    checks.append(("L.C0 = 1", intersect(L, C0) == 1))
    for i in range(1, 5):
        checks.append((f"L.E{i}- = 1", intersect(L, E(i, "-")) == 1))
    checks.append(("L.F = 1", intersect(L, F) == 1))
    return checks


def anticanonical_check() -> bool:
    """Y = 2C0 + 4F - sum Ei± as a vector, Y.C0 = Y.F'_i = 0 and Y^2 = 0."""
    expanded = 2 * C0 + 4 * F
    for i in range(1, 5):
        expanded = expanded - E(i, "+") - E(i, "-")
    if Y != expanded:
        return False
    if intersect(Y, C0) != 0:
        return False
    if any(intersect(Y, F_prime(i)) != 0 for i in range(1, 5)):
        return False
    return intersect(Y, Y) == 0
