"""Higgs limits of connections under the scaling action on the moduli space.

Scaling a connection to zero has a unique limit among alpha-stable
parabolic Higgs bundles.  When the underlying quasiparabolic bundle is
itself stable the limit keeps the bundle with zero Higgs field; otherwise
the limit is the graded object of the destabilizing subbundle L, with the
nonzero Higgs field induced by the connection.  The Higgs field is
recorded by its zero divisor plus the contact data of L, which determines
it up to the scalar automorphisms of the two summands.

For a limit computed from an actual connection, the zero divisor is the
root multiset of the exact "Wronskian" polynomial

    W * x(x-1)(x-t),
    W = s1 (s2' + A21 s1 + A22 s2) - s2 (s1' + A11 s1 + A12 s2),

where (s1, s2) is the polynomial section spanning L.  The cleared
polynomial has degree 3 - 2 deg(L) and its roots contain the contact
poles of L.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Optional

from .connection import FourPoleConnection, PPoint, PQState, Sheet, build_connection
from .errors import DegenerateInput, SpecialWeights
from .exact import INF, ProjRat, is_inf, proj_to_str, solve_linear
from .parabolic import QuasiPar, line_through, line_value, parabolic_from_connection, phi_map
from .stability import Branch, Subbundle, Weights, ZONE_STABLE, classify_zone, find_destabilizer, stable_subzone_branch

THETA_ZERO = "theta_zero"
GRADED = "graded"


def _divisor_key(z: ProjRat):
    return (1, Fraction(0)) if is_inf(z) else (0, z)


@dataclass(frozen=True)
class HiggsLimit:
    kind: str
    qp: Optional[QuasiPar] = None        # theta_zero: normalized representative
    deg_l: Optional[int] = None          # graded: degree of the destabilizer
    contact: Optional[frozenset] = None  # graded: contact poles of L (1-based)
    divisor: Optional[tuple] = None      # graded: zero divisor of the Higgs field

    def __post_init__(self):
        if self.kind == THETA_ZERO:
            if self.qp is None:
                raise DegenerateInput("theta_zero limit needs a representative")
        elif self.kind == GRADED:
            if self.deg_l is None or self.contact is None or self.divisor is None:
                raise DegenerateInput("graded limit needs degree, contact and divisor")
        else:
            raise DegenerateInput(f"unknown limit kind {self.kind}")

    @property
    def quotient_contact(self) -> Optional[frozenset]:
        """Poles where the parabolic direction lies in the quotient E/L."""
        if self.kind != GRADED:
            return None
        return frozenset(range(1, 5)) - self.contact

    def to_json_dict(self):
        if self.kind == THETA_ZERO:
            return {"kind": self.kind, "u": self.qp.to_json_dict()["u"]}
        return {"kind": self.kind, "degL": self.deg_l,
                "contact": sorted(self.contact),
                "divisor": [proj_to_str(z) for z in self.divisor]}


# ---------------------------------------------------------------------------
# Canonical representatives of points of the non-separated line
# ---------------------------------------------------------------------------

def _frame(poles):
    """Deterministic frame values with every triple of directions non-colinear.

    Candidates (0, 1, a, b): for fixed poles each colinearity condition
    removes at most one a or, per a, at most one b, so the small grid
    always contains a frame.
    """
    for a in range(2, 20):
        for b in range(2, 20):
            cand = (Fraction(0), Fraction(1), Fraction(a), Fraction(b))
            qp = QuasiPar(poles=poles, u=cand)
            if all(line_through(qp, list(tr)) is None for tr in combinations(range(4), 3)):
                return cand
    raise DegenerateInput("no frame found for these poles")


def representative(point: PPoint, poles) -> QuasiPar:
    """A canonical quasiparabolic structure mapping to the given point.

    Orbit coordinates are fixed by pinning three directions to a
    deterministic frame; the image under the classifying map is asserted.
    """
    poles = tuple(poles)
    frame = _frame(poles)
    idx = next((i for i, tv in enumerate(poles) if point.base == tv), None)
    if idx is None:
        if point.sheet != Sheet.GENERIC:
            raise DegenerateInput("sheet labels only exist over the poles")
        u = _solve_chart1(point.base, poles, frame)
    elif point.sheet == Sheet.MINUS:
        mod = list(frame)
        mod[idx] = INF
        u = tuple(mod)
    elif point.sheet == Sheet.PLUS:
        others = [j for j in range(4) if j != idx]
        v = line_through(QuasiPar(poles=poles, u=frame), others[:2])
        mod = list(frame)
        mod[others[2]] = line_value(v, poles[others[2]])
        u = tuple(mod)
    else:
        raise DegenerateInput("a point over a pole needs a plus or minus sheet")
    qp = QuasiPar(poles=poles, u=u)
    if phi_map(qp) != point:
        raise AssertionError(f"representative of {point} classifies wrongly")
    return qp


def _solve_chart1(base, poles, frame):
    """Solve for u1 such that (u1, frame2, frame3, frame4) maps to base.

    The degree-(-1) section (v, w) through the four directions must have
    v vanishing at the (finite, non-pole) base; normalizing v = x - base
    leaves an invertible linear system for (w0, w1, w2, u1).
    """
    if is_inf(base):
        # v has its zero at infinity: v = 1 constant
        def vval(tv):
            return Fraction(0) if is_inf(tv) else Fraction(1)
        vlead = Fraction(0)
    else:
        def vval(tv):
            return None if is_inf(tv) else tv - base
        vlead = Fraction(1)
    rows, rhs = [], []
    for j in (1, 2, 3):
        tv, uv = poles[j], frame[j]
        if is_inf(tv):
            rows.append([Fraction(0), Fraction(0), Fraction(1), Fraction(0)])
            rhs.append(uv * vlead)                      # w2 = u * v_lead
        else:
            rows.append([Fraction(1), tv, tv * tv, Fraction(0)])
            rhs.append(uv * vval(tv))                   # w(t) = u * v(t)
    t1 = poles[0]
    if is_inf(t1):
        rows.append([Fraction(0), Fraction(0), Fraction(1), -vlead])
        rhs.append(Fraction(0))                          # w2 - u1 * v_lead = 0
    else:
        rows.append([Fraction(1), t1, t1 * t1, -vval(t1)])
        rhs.append(Fraction(0))                          # w(t1) - u1 * v(t1) = 0
    sol = solve_linear(rows, rhs)
    if sol.nullity != 0:
        raise DegenerateInput("chart solve degenerated")
    return (sol.particular[3], frame[1], frame[2], frame[3])


# ---------------------------------------------------------------------------
# Exact theta divisor
# ---------------------------------------------------------------------------

def _poly_mul(f, g):
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out


def _poly_add(*ps):
    n = max(len(p) for p in ps)
    out = [Fraction(0)] * n
    for p in ps:
        for i, a in enumerate(p):
            out[i] += a
    return out


def _poly_scale(c, p):
    return [c * a for a in p]


def _poly_deriv(p):
    return [i * a for i, a in enumerate(p)][1:] or [Fraction(0)]


def _divisors(n):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.update((d, n // d))
        d += 1
    return sorted(out)


def _synthetic_division(p, root):
    """(quotient, remainder) of p by (x - root), exact."""
    q = [Fraction(0)] * (len(p) - 1)
    carry = Fraction(0)
    for i in range(len(p) - 1, 0, -1):
        q[i - 1] = p[i] + carry
        carry = q[i - 1] * root
    return q, p[0] + carry


def _rational_roots(poly):
    """Root multiset of an exact polynomial that splits over Q.

    Linear factors are taken directly; higher-degree leftovers go through
    a rational-root search.  Raises DegenerateInput if an irrational
    factor remains (cannot happen for the Wronskian polynomials of
    nonspecial states, whose roots are contact poles plus rational
    leftovers).
    """
    p = [Fraction(c) for c in poly]
    while p and p[-1] == 0:
        p.pop()
    if not p:
        raise DegenerateInput("zero polynomial has no root divisor")
    roots = []
    while len(p) > 1:
        if len(p) == 2:
            roots.append(-p[0] / p[1])
            break
        den = 1
        for c in p:
            den = lcm(den, c.denominator)
        ip = [int(c * den) for c in p]
        g = 0
        for c in ip:
            g = gcd(g, c)
        ip = [c // g for c in ip]
        found = None
        if ip[0] == 0:
            found = Fraction(0)
        else:
            for num in _divisors(ip[0]):
                for den2 in _divisors(ip[-1]):
                    for sgn in (1, -1):
                        cand = Fraction(sgn * num, den2)
                        if sum(c * cand ** i for i, c in enumerate(ip)) == 0:
                            found = cand
                            break
                    if found is not None:
                        break
                if found is not None:
                    break
        if found is None:
            raise DegenerateInput("theta divisor has an irrational zero")
        roots.append(found)
        p, _ = _synthetic_division(p, found)
    return roots


def theta_divisor(conn: FourPoleConnection, sub: Subbundle):
    """Zero divisor of the Higgs field induced on L -> (E/L) x Omega(log D).

    The Wronskian W is cleared by x(x-1)(x-t); any degree deficit against
    3 - 2 deg(L) counts as zeros at infinity.
    """
    t = conn.t
    if sub.degree == 1:
        s1, s2 = [Fraction(0)], [Fraction(1)]          # the O(1) direction
    elif sub.degree == 0:
        v0, v1 = sub.coefficients
        s1, s2 = [Fraction(1)], [v0, v1]
    elif sub.degree == -1:
        v0, v1, w0, w1, w2 = sub.coefficients
        s1, s2 = [v0, v1], [w0, w1, w2]
    else:
        raise DegenerateInput(f"unsupported subbundle degree {sub.degree}")
    pi = [Fraction(0), t, -(1 + t), Fraction(1)]        # x(x-1)(x-t)

    def cleared_entry(getter):
        """Entry of A(x) * x(x-1)(x-t) as exact polynomial coefficients."""
        a1, a2, a3 = (getter(m) for m in conn.finite_residues())
        base = _poly_add(
            _poly_scale(a1, [t, -(1 + t), Fraction(1)]),                # (x-1)(x-t)
            _poly_scale(a2, [Fraction(0), -t, Fraction(1)]),            # x(x-t)
            _poly_scale(a3, [Fraction(0), Fraction(-1), Fraction(1)]),  # x(x-1)
        )
        cc = getter(conn.c)
        if cc != 0:
            base = _poly_add(base, _poly_scale(cc, pi))
        return base

    a11 = cleared_entry(lambda m: m.a11)
    a12 = cleared_entry(lambda m: m.a12)
    a21 = cleared_entry(lambda m: m.a21)
    a22 = cleared_entry(lambda m: m.a22)
    w_poly = _poly_add(
        _poly_mul(pi, _poly_add(_poly_mul(s1, _poly_deriv(s2)),
                                _poly_scale(Fraction(-1), _poly_mul(s2, _poly_deriv(s1))))),
        _poly_mul(s1, _poly_add(_poly_mul(a21, s1), _poly_mul(a22, s2))),
        _poly_scale(Fraction(-1), _poly_mul(s2, _poly_add(_poly_mul(a11, s1), _poly_mul(a12, s2)))),
    )
    expected = 3 - 2 * sub.degree
    trimmed = list(w_poly)
    while trimmed and trimmed[-1] == 0:
        trimmed.pop()
    deficit = expected - (len(trimmed) - 1)
    # Strict compatibility forces zeros at the finite contact poles:
    # divide them out first, so only a small leftover needs a root search.
    roots = []
    poles = (Fraction(0), Fraction(1), t, INF)
    for i in sorted(sub.contact):
        tv = poles[i - 1]
        if is_inf(tv):
            continue  # accounted for by the degree deficit
        trimmed, rem = _synthetic_division(trimmed, tv)
        if rem != 0:
            raise DegenerateInput(f"Higgs field fails to vanish at contact pole {i}")
        roots.append(tv)
    roots += _rational_roots(trimmed) if len(trimmed) > 1 else []
    roots += [INF] * deficit
    return tuple(sorted(roots, key=_divisor_key))


# ---------------------------------------------------------------------------
# Limits
# ---------------------------------------------------------------------------

def higgs_limit(s: PQState, w: Weights) -> HiggsLimit:
    """The limit of the rescaled connection, computed structurally.

    Stable underlying quasiparabolic bundle: the limit keeps it with zero
    Higgs field, recorded by the canonical orbit representative of its
    classifying point.  Unstable: the graded object of the destabilizer
    with the induced Higgs field's exact zero divisor.
    """
    qp = parabolic_from_connection(s)
    sub = find_destabilizer(qp, w)
    if sub is None:
        return HiggsLimit(kind=THETA_ZERO, qp=representative(phi_map(qp), s.poles))
    conn = build_connection(s)
    div = theta_divisor(conn, sub)
    return HiggsLimit(kind=GRADED, deg_l=sub.degree, contact=sub.contact, divisor=div)


def v_alpha_unstable(point: PPoint, poles) -> HiggsLimit:
    """The scaling-fixed stable Higgs bundle attached to a point of the
    non-separated line, for weights with eps sum below 1/2 (every structure
    unstable and the destabilizer is the O(1))."""
    contact = frozenset()
    if point.sheet == Sheet.MINUS:
        idx = next(i for i, tv in enumerate(poles) if point.base == tv)
        contact = frozenset({idx + 1})
    elif point.sheet == Sheet.PLUS:
        next(i for i, tv in enumerate(poles) if point.base == tv)  # must be over a pole
    return HiggsLimit(kind=GRADED, deg_l=1, contact=contact, divisor=(point.base,))


def v_alpha_stable(point: PPoint, w: Weights, poles) -> HiggsLimit:
    """The scaling-fixed stable Higgs bundle attached to a point of the
    non-separated line, for stable-zone weights."""
    if classify_zone(w) != ZONE_STABLE:
        raise SpecialWeights("stable-zone weights required")
    poles = tuple(poles)
    idx = next((i for i, tv in enumerate(poles) if point.base == tv), None)
    if idx is None:
        return HiggsLimit(kind=THETA_ZERO, qp=representative(point, poles))
    branch = stable_subzone_branch(w, idx + 1)
    if point.sheet == Sheet.MINUS:
        if branch == Branch.ORIGIN_UNSTABLE:
            return HiggsLimit(kind=GRADED, deg_l=1, contact=frozenset({idx + 1}),
                              divisor=(poles[idx],))
        return HiggsLimit(kind=THETA_ZERO, qp=representative(point, poles))
    if point.sheet == Sheet.PLUS:
        if branch == Branch.COLINEAR_UNSTABLE:
            others = frozenset(j + 1 for j in range(4) if j != idx)
            divisor = tuple(sorted((poles[j - 1] for j in others), key=_divisor_key))
            return HiggsLimit(kind=GRADED, deg_l=0, contact=others, divisor=divisor)
        return HiggsLimit(kind=THETA_ZERO, qp=representative(point, poles))
    raise DegenerateInput("a point over a pole needs a plus or minus sheet")
