"""Normal forms of rank-2 logarithmic connections with poles (0, 1, t, oo).

Conventions.  The underlying bundle is B = O + O(1) with frame <e, f>;
f spans O(1) and the residue matrix at infinity is written in the basis
<e, x*f>.  Local exponents are encoded by kappa = (k0, k1, k2, k3, k4)
with 2*k0 + k1 + k2 + k3 + k4 = 1.  The residue eigenvalue pairs are
(k_i/2, -k_i/2) at the finite poles and (k4/2 - 1/2, -k4/2 - 1/2) at
infinity (the -1/2 shift realizes degree 1).

Two explicit gauges of the same connection are provided:

* `build_connection` -- the (q, p) chart.  A(1,2) = (x-q)/(x(x-1)(x-t)),
  the apparent singularity is x = q, and p is recovered from
  A(2,2)|_{x=q} by adding sum_i k_i/(2(q-t_i)) over the finite poles.
  The residue at infinity has eigenvalues k4/2 - 1/2 and -k4/2 - 1/2.

* `build_connection_qp` -- the (Q, p) chart, with the parabolic
  coordinates normalized to (0, 1, u, 0), u = t(Q-1)/(Q-t).  Here
  A(1,2) = p(Q-t)(x-q)/(x(x-1)(x-t)) with q = Q - k0/p, the matrix at
  infinity is minus the sum of the three finite residues (lower
  triangular with diagonal ((k4-1)/2, (1-k4)/2)), and C = 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DegenerateInput, NormalFormDegenerate, SpecialParameters
from .exact import INF, Mat2, ProjRat, Rat, is_inf, proj_from_str, proj_to_str, rat_from_str, rat_to_str

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# Parameters and residues
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KappaParams:
    k0: Rat
    k1: Rat
    k2: Rat
    k3: Rat
    k4: Rat

    def __post_init__(self):
        if 2 * self.k0 + self.k1 + self.k2 + self.k3 + self.k4 != 1:
            raise DegenerateInput("kappa parameters must satisfy 2*k0 + k1 + ... + k4 = 1")

    @classmethod
    def from_k1234(cls, k1, k2, k3, k4) -> "KappaParams":
        k1, k2, k3, k4 = map(Fraction, (k1, k2, k3, k4))
        return cls((1 - k1 - k2 - k3 - k4) / 2, k1, k2, k3, k4)

    @property
    def finite(self):
        return (self.k1, self.k2, self.k3)

    @property
    def all4(self):
        return (self.k1, self.k2, self.k3, self.k4)

    def to_strs(self):
        return [rat_to_str(k) for k in (self.k0, self.k1, self.k2, self.k3, self.k4)]

    @classmethod
    def from_strs(cls, items) -> "KappaParams":
        vals = [rat_from_str(s) for s in items]
        if len(vals) == 5:
            kp = cls(*vals)
        elif len(vals) == 4:
            kp = cls.from_k1234(*vals)
        else:
            raise DegenerateInput("kappa needs 4 or 5 entries")
        return kp

    def residues(self) -> "ResidueVector":
        """Residue eigenvalues of the degree-1 normal form (lambda = 1)."""
        r_minus = (self.k1 / 2, self.k2 / 2, self.k3 / 2, self.k4 / 2 - HALF)
        r_plus = (-self.k1 / 2, -self.k2 / 2, -self.k3 / 2, -self.k4 / 2 - HALF)
        return ResidueVector(r_plus=r_plus, r_minus=r_minus, lam=Fraction(1), degree=1)


def kappa_generic(kappa: KappaParams) -> bool:
    """k_i not integers, and no signed sum +-k1+-k2+-k3+-k4 an odd integer."""
    for k in kappa.all4:
        if k.denominator == 1:
            return False
    for s1 in (1, -1):
        for s2 in (1, -1):
            for s3 in (1, -1):
                for s4 in (1, -1):
                    v = s1 * kappa.k1 + s2 * kappa.k2 + s3 * kappa.k3 + s4 * kappa.k4
                    if v.denominator == 1 and v.numerator % 2 == 1:
                        return False
    return True


@dataclass(frozen=True)
class ResidueVector:
    """Residue eigenvalue data of a lambda-connection of fixed degree.

    r_minus[i] acts on the parabolic direction P_i, r_plus[i] on the
    quotient.  The Fuchs relation sum(r+ + r-) + lam*degree = 0 is enforced.
    """

    r_plus: tuple
    r_minus: tuple
    lam: Rat
    degree: int

    def __post_init__(self):
        if len(self.r_plus) != 4 or len(self.r_minus) != 4:
            raise DegenerateInput("residue vectors carry four poles")
        total = sum(self.r_plus) + sum(self.r_minus) + self.lam * self.degree
        if total != 0:
            raise DegenerateInput(f"Fuchs relation violated: sum = {total}")


def kostov_generic(r: ResidueVector) -> bool:
    """No signed sum r_1^{s1} + ... + r_4^{s4} is an integer."""
    for s1 in (0, 1):
        for s2 in (0, 1):
            for s3 in (0, 1):
                for s4 in (0, 1):
                    picks = (s1, s2, s3, s4)
                    v = sum((r.r_plus[i] if picks[i] else r.r_minus[i]) for i in range(4))
                    if v.denominator == 1:
                        return False
    return True


def nonresonant(r: ResidueVector) -> bool:
    """No eigenvalue gap r_i^+ - r_i^- is an integer."""
    return all((rp - rm).denominator != 1 for rp, rm in zip(r.r_plus, r.r_minus))


def elementary_transform_residues(r: ResidueVector, i: int) -> ResidueVector:
    """Elementary transformation at pole i (1-based): swaps the eigenvalues
    and shifts the new parabolic one by lambda; degree drops by 1."""
    if i not in (1, 2, 3, 4):
        raise DegenerateInput("pole index must be 1..4")
    j = i - 1
    rp = list(r.r_plus)
    rm = list(r.r_minus)
    rp[j], rm[j] = r.r_minus[j], r.r_plus[j] + r.lam
    return ResidueVector(r_plus=tuple(rp), r_minus=tuple(rm), lam=r.lam, degree=r.degree - 1)


# ---------------------------------------------------------------------------
# States and connection matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PQState:
    """(t, kappa, q, p): a point of the moduli space in the (q, p) chart."""

    t: Rat
    kappa: KappaParams
    q: ProjRat
    p: Rat

    def __post_init__(self):
        if self.t in (0, 1):
            raise DegenerateInput("pole position t must avoid 0 and 1")

    @property
    def poles(self):
        return (Fraction(0), Fraction(1), self.t, INF)

    def p_tilde(self) -> Rat:
        q = self.q
        if is_inf(q):
            raise NormalFormDegenerate("p_tilde undefined at q = inf")
        return q * (q - 1) * (q - self.t) * self.p

    def to_json_dict(self):
        return {"t": rat_to_str(self.t), "kappa": self.kappa.to_strs(),
                "q": proj_to_str(self.q), "p": rat_to_str(self.p)}

    @classmethod
    def from_json_dict(cls, d) -> "PQState":
        return cls(t=rat_from_str(d["t"]), kappa=KappaParams.from_strs(d["kappa"]),
                   q=proj_from_str(d["q"]), p=rat_from_str(d["p"]))


class Sheet(Enum):
    GENERIC = "generic"
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class PPoint:
    """A point of the non-separated line: a base point of P^1 plus, over a
    pole, the choice of one of the two glued copies."""

    base: ProjRat
    sheet: Sheet

    def to_json_dict(self):
        return {"base": proj_to_str(self.base), "sheet": self.sheet.value}


@dataclass(frozen=True)
class FourPoleConnection:
    """Residue matrices A1..A4 plus the constant part C of A(x).

    A(x) = A1/x + A2/(x-1) + A3/(x-t) + C, and A4 describes the pole at
    infinity in the basis <e, x*f> (see the module docstring for the two
    gauges this package constructs).
    """

    t: Rat
    kappa: KappaParams
    a1: Mat2
    a2: Mat2
    a3: Mat2
    a4: Mat2
    c: Mat2

    def finite_residues(self):
        return (self.a1, self.a2, self.a3)

    def matrix_at(self, x: Rat) -> Mat2:
        if x in (0, 1, self.t):
            raise DegenerateInput(f"A(x) has a pole at x = {x}")
        return (self.a1.scale(Fraction(1) / x)
                + self.a2.scale(Fraction(1) / (x - 1))
                + self.a3.scale(Fraction(1) / (x - self.t))
                + self.c)

    def a12_numerator(self):
        """Coefficients (n0, n1) of the linear polynomial
        A(1,2)(x) * x(x-1)(x-t) = n0 + n1*x."""
        t = self.t
        rho = (self.a1.a12, self.a2.a12, self.a3.a12)
        if self.c.a12 != 0:
            raise DegenerateInput("constant part in the (1,2) entry: not logarithmic at infinity")
        if sum(rho) != 0:
            raise DegenerateInput("(1,2) entry has a residue at infinity")
        # N(x) = rho1 (x-1)(x-t) + rho2 x(x-t) + rho3 x(x-1), quadratic term cancels
        n0 = rho[0] * t
        n1 = -rho[0] * (1 + t) - rho[1] * t - rho[2]
        return (n0, n1)

    def apparent_singularity_base(self) -> ProjRat:
        """The unique zero of the (1,2) entry of A(x)."""
        n0, n1 = self.a12_numerator()
        if n1 == 0:
            if n0 == 0:
                raise DegenerateInput("(1,2) entry vanishes identically")
            return INF
        return -n0 / n1

    def p_invariant(self) -> Rat:
        """Recover p from the gauge-invariant value A(2,2)|_{x=q}."""
        q = self.apparent_singularity_base()
        if is_inf(q) or q in (0, 1, self.t):
            raise NormalFormDegenerate("p-invariant needs q away from the poles")
        k = self.kappa
        a22 = self.matrix_at(q).a22
        return a22 + k.k1 / (2 * q) + k.k2 / (2 * (q - 1)) + k.k3 / (2 * (q - self.t))

    def infinity_residue(self) -> Mat2:
        """Residue of A(x)dx at x = infinity in the basis <e, x*f>.

        Entrywise: for the diagonal, minus the sum of the finite residues,
        with an extra -1 on the (2,2) entry from d(x)/x; the (1,2) entry is
        minus the x^{-2} coefficient of A(1,2); the (2,1) entry is -C(2,1).
        """
        s = self.a1 + self.a2 + self.a3
        _, n1 = self.a12_numerator()
        return Mat2(-s.a11, -n1, -self.c.a21, -s.a22 - 1)

    def to_json_dict(self):
        return {"t": rat_to_str(self.t), "kappa": self.kappa.to_strs(),
                "A1": self.a1.to_strs(), "A2": self.a2.to_strs(),
                "A3": self.a3.to_strs(), "A4": self.a4.to_strs(),
                "C": self.c.to_strs()}


def _require_buildable(s: PQState):
    if is_inf(s.q) or s.q in (0, 1, s.t):
        raise NormalFormDegenerate(f"apparent singularity q = {s.q} sits at a pole")
    if not kappa_generic(s.kappa):
        raise SpecialParameters("kappa parameters are special")


def build_connection(s: PQState) -> FourPoleConnection:
    """The (q, p) normal form.

    A(1,2) = (x-q)/(x(x-1)(x-t)); the residue matrices at the finite poles
    are trace-free with determinant -k_i^2/4, and the residue at infinity
    (basis <e, x*f>) has eigenvalues k4/2 - 1/2 and -k4/2 - 1/2 with
    eigenvectors (1, k0) and (1, k0 + k4).
    """
    _require_buildable(s)
    t, k, q = s.t, s.kappa, s.q
    pt = s.p_tilde()
    a1 = Mat2(-pt / t + k.k1 / 2, -q / t,
              pt * (pt - t * k.k1) / (t * q), pt / t - k.k1 / 2)
    a2 = Mat2(pt / (t - 1) + k.k2 / 2, (q - 1) / (t - 1),
              -pt * (pt + (t - 1) * k.k2) / ((t - 1) * (q - 1)), -pt / (t - 1) - k.k2 / 2)
    a3 = Mat2(-pt / (t * (t - 1)) + k.k3 / 2, -(q - t) / (t * (t - 1)),
              pt * (pt - t * (t - 1) * k.k3) / (t * (t - 1) * (q - t)), pt / (t * (t - 1)) - k.k3 / 2)
    a4 = Mat2(k.k0 + k.k4 / 2 - HALF, Fraction(-1),
              k.k0 * (k.k0 + k.k4), -k.k0 - k.k4 / 2 - HALF)
    c = Mat2(Fraction(0), Fraction(0), -k.k0 * (k.k0 + k.k4), Fraction(0))
    return FourPoleConnection(t=t, kappa=k, a1=a1, a2=a2, a3=a3, a4=a4, c=c)


def build_connection_qp(t: Rat, kappa: KappaParams, big_q: Rat, p: Rat) -> FourPoleConnection:
    """The (Q, p) gauge, parabolic coordinates normalized to (0, 1, u, 0).

    The three finite residues come out trace-free with determinant
    -k_i^2/4, the matrix at infinity is literally -(A1+A2+A3) (lower
    triangular, diagonal ((k4-1)/2, (1-k4)/2)), and
    A(1,2) = p(Q-t)(x-q)/(x(x-1)(x-t)) with q = Q - k0/p.
    """
    t, big_q, p = Fraction(t), Fraction(big_q), Fraction(p)
    if t in (0, 1):
        raise DegenerateInput("pole position t must avoid 0 and 1")
    if big_q in (0, 1, t):
        raise NormalFormDegenerate(f"parabolic coordinate Q = {big_q} sits at a pole")
    if not kappa_generic(kappa):
        raise SpecialParameters("kappa parameters are special")
    k = kappa
    u = t * (big_q - 1) / (big_q - t)
    e12 = Mat2(Fraction(0), Fraction(1), Fraction(0), Fraction(0))
    m = Mat2(Fraction(1), Fraction(1), Fraction(-1), Fraction(-1))
    n = Mat2(u, Fraction(1), -u * u, -u)
    a1 = e12.scale(k.k0 * (big_q - t) / t) + Mat2.diag(k.k1 / 2, -k.k1 / 2)
    a2 = m.scale(-k.k0 * (big_q - t) / (t - 1)) + Mat2(k.k2 / 2, Fraction(0), -k.k2, -k.k2 / 2)
    a3 = n.scale(k.k0 * (big_q - t) / (t * (t - 1))) + Mat2(k.k3 / 2, Fraction(0), -k.k3 * u, -k.k3 / 2)
    th1 = e12.scale(-big_q * (big_q - t) / t)
    th2 = m.scale((big_q - 1) * (big_q - t) / (t - 1))
    th3 = n.scale(-(big_q - t) * (big_q - t) / (t * (t - 1)))
    g1 = a1 + th1.scale(p)
    g2 = a2 + th2.scale(p)
    g3 = a3 + th3.scale(p)
    g4 = -(g1 + g2 + g3)
    return FourPoleConnection(t=t, kappa=k, a1=g1, a2=g2, a3=g3, a4=g4, c=Mat2.zero())


def eigen_table(s: PQState):
    """Closed-form eigenpairs of the residue matrices of `build_connection`.

    Returns, per pole, ((r_minus, v_minus), (r_plus, v_plus)); the v are
    written in the local frame (<e, f> at finite poles, <e, x*f> at
    infinity), so their slopes are the parabolic coordinates u_i.
    """
    _require_buildable(s)
    t, k, q = s.t, s.kappa, s.q
    pt = s.p_tilde()
    one = Fraction(1)
    return (
        ((k.k1 / 2, (one, -pt / q)), (-k.k1 / 2, (one, -(pt - t * k.k1) / q))),
        ((k.k2 / 2, (one, -pt / (q - 1))), (-k.k2 / 2, (one, -(pt + (t - 1) * k.k2) / (q - 1)))),
        ((k.k3 / 2, (one, -pt / (q - t))), (-k.k3 / 2, (one, -(pt - t * (t - 1) * k.k3) / (q - t)))),
        ((k.k4 / 2 - HALF, (one, k.k0)), (-k.k4 / 2 - HALF, (one, k.k0 + k.k4))),
    )


def apparent_singularity(s: PQState, infinite_parabolic: Optional[Sequence[bool]] = None) -> PPoint:
    """The image of the state on the non-separated line.

    The base point is q.  Over a pole t_i the sheet is decided by the
    parabolic data: the minus copy when the destabilizing O(1) fiber is the
    parabolic direction there (u_i = inf), the plus copy otherwise.
    """
    q = s.q
    poles = s.poles
    idx = next((i for i, tv in enumerate(poles) if q == tv), None)
    if idx is None:
        return PPoint(base=q, sheet=Sheet.GENERIC)
    flags = tuple(infinite_parabolic) if infinite_parabolic is not None else (False,) * 4
    if len(flags) != 4:
        raise DegenerateInput("need one parabolic flag per pole")
    return PPoint(base=q, sheet=Sheet.MINUS if flags[idx] else Sheet.PLUS)
