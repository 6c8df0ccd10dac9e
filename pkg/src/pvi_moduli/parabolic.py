"""Quasiparabolic structures on B = O + O(1) over four marked points.

A structure is recorded by coordinates u_i: the parabolic direction over
t_i is e(t_i) + u_i f(t_i), with u_i = inf meaning the O(1) fiber.  Over a
pole at infinity the coordinate is taken in the basis <e, x*f> (so the
interpolation condition "u lies on the line v0 + v1 x" reads u = v1 there).

The automorphism group of B acts by u_i -> (b + c t_i + u_i)/a; the
module computes the action, simplicity, the degree-(-1) subbundle through
all four directions (equivalently the conic through the corresponding
points of P^2), the induced coordinate Q, and the classifying map to the
non-separated line.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .connection import PPoint, PQState, Sheet, eigen_table
from .errors import DegenerateInput, NoSolution, NotSimple
from .exact import INF, ProjRat, Rat, is_inf, proj_from_str, proj_to_str, solve_linear


@dataclass(frozen=True)
class QuasiPar:
    poles: tuple          # four pairwise distinct points of P^1
    u: tuple              # four parabolic coordinates (Rat or INF)

    def __post_init__(self):
        if len(self.poles) != 4 or len(self.u) != 4:
            raise DegenerateInput("four poles and four parabolic coordinates required")
        for i in range(4):
            for j in range(i + 1, 4):
                if self.poles[i] == self.poles[j]:
                    raise DegenerateInput("pole positions must be pairwise distinct")

    def infinite_indices(self):
        return tuple(i for i in range(4) if is_inf(self.u[i]))

    def to_json_dict(self):
        return {"t": [proj_to_str(tv) for tv in self.poles],
                "u": [proj_to_str(uv) for uv in self.u]}

    @classmethod
    def from_json_dict(cls, d) -> "QuasiPar":
        return cls(poles=tuple(proj_from_str(s) for s in d["t"]),
                   u=tuple(proj_from_str(s) for s in d["u"]))


@dataclass(frozen=True)
class AutElement:
    """(a, b, c) acting by e -> a e + (b + c x) f, modulo scalars."""

    a: Rat
    b: Rat
    c: Rat

    def __post_init__(self):
        if self.a == 0:
            raise DegenerateInput("automorphism needs a != 0")

    def compose(self, other: "AutElement") -> "AutElement":
        """self * other, the element acting as self after other."""
        return AutElement(a=self.a * other.a,
                          b=self.b * other.a + other.b,
                          c=self.c * other.a + other.c)


def act(g: AutElement, qp: QuasiPar) -> QuasiPar:
    """u_i -> (b + c t_i + u_i)/a; at a pole at infinity, u -> (c + u)/a."""
    out = []
    for tv, uv in zip(qp.poles, qp.u):
        if is_inf(uv):
            out.append(INF)
        elif is_inf(tv):
            out.append((g.c + uv) / g.a)
        else:
            out.append((g.b + g.c * tv + uv) / g.a)
    return QuasiPar(poles=qp.poles, u=tuple(out))


def _line_rows(poles, indices, u):
    """Interpolation rows for v = v0 + v1 x against u_i at the given poles."""
    rows, rhs = [], []
    for i in indices:
        tv = poles[i]
        if is_inf(tv):
            rows.append([Fraction(0), Fraction(1)])
        else:
            rows.append([Fraction(1), Fraction(tv)])
        rhs.append(u[i])
    return rows, rhs


def line_through(qp: QuasiPar, indices: Sequence[int]):
    """The degree-1 interpolant v with v(t_i) = u_i over the given indices,
    or None when no single line fits.  All u_i there must be finite."""
    rows, rhs = _line_rows(qp.poles, indices, qp.u)
    try:
        sol = solve_linear(rows, rhs)
    except NoSolution:
        return None
    return (sol.particular[0], sol.particular[1])


def line_value(v, pole: ProjRat) -> Rat:
    """Value of the line v at a pole, in the chart convention of QuasiPar."""
    return v[1] if is_inf(pole) else v[0] + v[1] * pole


def is_simple(qp: QuasiPar) -> bool:
    """Indecomposability: at most one u_i = inf, and the finite directions
    are not all interpolated by one degree-1 section of O."""
    inf_idx = qp.infinite_indices()
    if len(inf_idx) > 1:
        return False
    finite = [i for i in range(4) if i not in inf_idx]
    return line_through(qp, finite) is None


def conic_subbundle(qp: QuasiPar):
    """The degree-(-1) map (v, w) into B through all four directions.

    v = v0 + v1 x and w = w0 + w1 x + w2 x^2 solve w(t_i) = u_i v(t_i)
    (v(t_i) = 0 when u_i = inf; at a pole at infinity the leading
    coefficients w2 = u v1 are used).  Returns the first vector of the
    deterministic nullspace basis; raises DegenerateInput when the
    solution is not unique up to scale.
    """
    rows = []
    for tv, uv in zip(qp.poles, qp.u):
        if is_inf(tv):
            if is_inf(uv):
                row = [Fraction(0), Fraction(1), Fraction(0), Fraction(0), Fraction(0)]
            else:
                row = [Fraction(0), -uv, Fraction(0), Fraction(0), Fraction(1)]
        elif is_inf(uv):
            row = [Fraction(1), Fraction(tv), Fraction(0), Fraction(0), Fraction(0)]
        else:
            row = [-uv, -uv * tv, Fraction(1), Fraction(tv), Fraction(tv) ** 2]
        rows.append(row)
    sol = solve_linear(rows, [Fraction(0)] * 4)
    if sol.nullity != 1:
        raise DegenerateInput(f"contact system has nullity {sol.nullity}, expected 1")
    v0, v1, w0, w1, w2 = sol.nullspace[0]
    return ((v0, v1), (w0, w1, w2))


def q_map(qp: QuasiPar) -> ProjRat:
    """The parabolic coordinate: the zero of the first component of the
    degree-(-1) subbundle through the four directions (equivalently, the
    tangent direction at the origin of the conic through them)."""
    (v0, v1), _ = conic_subbundle(qp)
    if v0 == 0 and v1 == 0:
        raise DegenerateInput("first component vanishes identically")
    if v1 == 0:
        return INF
    return -v0 / v1


def q_map_parabolic(qp: QuasiPar) -> ProjRat:
    """Closed form of `q_map` for poles (0, 1, t, inf) and finite u:

        Q = -t (u2 - u3 + (t-1) u4) / ((t-1) u1 - t u2 + u3).

    Falls back to the subbundle computation when some u_i = inf.  Raises
    DegenerateInput when numerator and denominator both vanish.
    """
    poles = qp.poles
    if not (poles[0] == 0 and poles[1] == 1 and is_inf(poles[3])) or is_inf(poles[2]):
        raise DegenerateInput("closed form assumes poles (0, 1, t, inf)")
    if not is_simple(qp):
        raise NotSimple("the parabolic coordinate is defined on simple structures only")
    if qp.infinite_indices():
        return q_map(qp)
    t = poles[2]
    u1, u2, u3, u4 = qp.u
    num = -t * (u2 - u3 + (t - 1) * u4)
    den = (t - 1) * u1 - t * u2 + u3
    if den == 0:
        if num == 0:
            raise DegenerateInput("parabolic coordinate formula is 0/0")
        return INF
    return num / den


def phi_map(qp: QuasiPar) -> PPoint:
    """Classifying map to the non-separated line.

    Over a pole the structure lands on the minus copy when its own
    direction is the O(1) fiber (u_i = inf) and on the plus copy when the
    other three directions are colinear; these are the only two ways the
    coordinate can hit a pole.
    """
    if not is_simple(qp):
        raise NotSimple("decomposable quasiparabolic structure")
    base = q_map(qp)
    idx = next((i for i, tv in enumerate(qp.poles) if base == tv), None)
    if idx is None:
        return PPoint(base=base, sheet=Sheet.GENERIC)
    if is_inf(qp.u[idx]):
        return PPoint(base=base, sheet=Sheet.MINUS)
    others = [j for j in range(4) if j != idx]
    if line_through(qp, others) is None:
        raise AssertionError("coordinate at a pole without origin or colinearity degeneration")
    return PPoint(base=base, sheet=Sheet.PLUS)


def parabolic_from_connection(s: PQState) -> QuasiPar:
    """Parabolic coordinates of the (q, p) normal form: the slopes of the
    eigenvectors on the parabolic eigenvalues, u4 in the <e, x*f> chart."""
    table = eigen_table(s)
    u = tuple(table[i][0][1][1] for i in range(4))
    return QuasiPar(poles=s.poles, u=u)


def parabolic_from_connection_plus(s: PQState) -> QuasiPar:
    """The alternative structure through the other eigendirections."""
    table = eigen_table(s)
    u = tuple(table[i][1][1][1] for i in range(4))
    return QuasiPar(poles=s.poles, u=u)
