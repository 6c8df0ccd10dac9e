"""Parabolic weights, zone classification and destabilizing subbundles.

Weights are (mu_i, eps_i) with 0 < eps_i < 1/2; only the eps enter any
verdict here.  A quasiparabolic structure on B = O + O(1) of parabolic
degree d = 1 is destabilized by a line subbundle L exactly when

    deg(L) + sum_{i in S(L)} eps_i - sum_{i not in S(L)} eps_i > 1/2,

S(L) the contact set.  Three families of saturated candidates exist:
the unique O(1), the degree-0 maps (1, v) with v of degree <= 1, and the
degree-(-1) map through all four directions.  The weight space splits
into eight unstable zones (every structure unstable, with a predicted
destabilizer type) and the stable zone.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .errors import DegenerateInput, SpecialWeights
from .exact import Rat, is_inf, rat_from_str, rat_to_str
from .parabolic import QuasiPar, conic_subbundle, line_through, line_value

HALF = Fraction(1, 2)

ZONE_A = "A"
ZONE_B = "B"
ZONE_STABLE = "Stable"


def czone(i: int, j: int) -> str:
    """Label of the pairwise unstable zone, indices 1-based, i < j."""
    i, j = min(i, j), max(i, j)
    if not (1 <= i < j <= 4):
        raise DegenerateInput("pair indices must be distinct in 1..4")
    return f"C{i}{j}"


ALL_ZONES = (ZONE_A, ZONE_B) + tuple(czone(i, j) for i, j in combinations(range(1, 5), 2))


@dataclass(frozen=True)
class Weights:
    mu: tuple
    eps: tuple

    def __post_init__(self):
        if len(self.mu) != 4 or len(self.eps) != 4:
            raise DegenerateInput("weights carry four poles")
        for e in self.eps:
            if not (0 < e < HALF):
                raise SpecialWeights(f"eps = {e} outside (0, 1/2)")

    @classmethod
    def of_eps(cls, eps) -> "Weights":
        return cls(mu=(Fraction(0),) * 4, eps=tuple(Fraction(e) for e in eps))

    def alpha(self, i: int, sign: int) -> Rat:
        """alpha_i^± = mu_i ± eps_i, pole index 1-based."""
        return self.mu[i - 1] + sign * self.eps[i - 1]

    def to_json_dict(self):
        return {"eps": [rat_to_str(e) for e in self.eps],
                "mu": [rat_to_str(m) for m in self.mu]}

    @classmethod
    def from_json_dict(cls, d) -> "Weights":
        eps = tuple(rat_from_str(s) for s in d["eps"])
        mu = tuple(rat_from_str(s) for s in d.get("mu", ["0/1"] * 4))
        return cls(mu=mu, eps=eps)


def nonspecial_weights(alpha, d: int) -> bool:
    """alpha = (a1-, a1+, ..., a4-, a4+): strict interlacing a- < a+ < a- + 1
    and all sixteen signed sums sum_i a_i^{s_i} + (d - sum(a+ + a-))/2
    avoid the integers."""
    if len(alpha) != 8:
        raise DegenerateInput("eight weight values expected")
    lo = [Fraction(alpha[2 * i]) for i in range(4)]
    hi = [Fraction(alpha[2 * i + 1]) for i in range(4)]
    for a, b in zip(lo, hi):
        if not (a < b < a + 1):
            return False
    shift = (d - sum(lo) - sum(hi)) / 2
    for s1 in (0, 1):
        for s2 in (0, 1):
            for s3 in (0, 1):
                for s4 in (0, 1):
                    picks = (s1, s2, s3, s4)
                    v = sum((hi[i] if picks[i] else lo[i]) for i in range(4)) + shift
                    if v.denominator == 1:
                        return False
    return True


def weights_nonspecial(w: Weights, d: int = 1) -> bool:
    alpha = []
    for i in range(4):
        alpha += [w.mu[i] - w.eps[i], w.mu[i] + w.eps[i]]
    return nonspecial_weights(alpha, d)


def classify_zone(w: Weights) -> str:
    """One of A, B, C{ij} or Stable; boundary weights raise SpecialWeights."""
    eps = w.eps
    total = sum(eps)
    if total == HALF or total == Fraction(3, 2):
        raise SpecialWeights(f"eps sum on a wall: {total}")
    combos = {}
    for i, j in combinations(range(4), 2):
        c = eps[i] + eps[j] - sum(e for k, e in enumerate(eps) if k not in (i, j))
        if c == HALF or c == -HALF:
            raise SpecialWeights(f"pair combination on a wall: eps_{i+1}+eps_{j+1}-rest = {c}")
        combos[(i, j)] = c
    if total < HALF:
        return ZONE_A
    if total > Fraction(3, 2):
        return ZONE_B
    for (i, j), c in combos.items():
        if c > HALF:
            return czone(i + 1, j + 1)
    return ZONE_STABLE


def et_pair(w: Weights, i: int, j: int) -> Weights:
    """Elementary transformations at poles i != j (1-based):
    eps -> 1/2 - eps and mu -> mu - 1/2 at both poles."""
    if i == j:
        raise DegenerateInput("et_pair needs two distinct poles")
    mu, eps = list(w.mu), list(w.eps)
    for k in (i - 1, j - 1):
        eps[k] = HALF - eps[k]
        mu[k] = mu[k] - HALF
    return Weights(mu=tuple(mu), eps=tuple(eps))


class Branch(Enum):
    ORIGIN_UNSTABLE = "origin_unstable"
    COLINEAR_UNSTABLE = "colinear_unstable"


def stable_subzone_branch(w: Weights, i: int) -> Branch:
    """Which of the two points over t_i is unstable, for stable-zone weights:
    the origin point (u_i = inf) iff eps_j + eps_k + eps_l - eps_i < 1/2."""
    if classify_zone(w) != ZONE_STABLE:
        raise SpecialWeights("branch question only makes sense in the stable zone")
    rest = sum(w.eps) - 2 * w.eps[i - 1]
    if rest == HALF:
        raise SpecialWeights(f"branch wall at pole {i}")
    return Branch.ORIGIN_UNSTABLE if rest < HALF else Branch.COLINEAR_UNSTABLE


# ---------------------------------------------------------------------------
# Destabilizing subbundles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subbundle:
    """A saturated line subbundle of B recorded by its map data.

    degree 1: the canonical O(1), coefficients ().
    degree 0: map (1, v0 + v1 x), coefficients (v0, v1).
    degree -1: map (v, w), coefficients (v0, v1, w0, w1, w2).
    contact: the 1-based pole indices where the subbundle passes through
    the parabolic direction.
    """

    degree: int
    coefficients: tuple
    contact: frozenset

    def to_json_dict(self):
        return {"degree": self.degree,
                "coefficients": [rat_to_str(c) for c in self.coefficients],
                "contact": sorted(self.contact)}


def parabolic_degree(sub: Subbundle, w: Weights) -> Rat:
    inside = sum(w.eps[i - 1] for i in sub.contact)
    outside = sum(w.eps) - inside
    return sub.degree + inside - outside


def _o1_candidate(qp: QuasiPar) -> Subbundle:
    contact = frozenset(i + 1 for i in qp.infinite_indices())
    return Subbundle(degree=1, coefficients=(), contact=contact)


def _deg0_contact(qp: QuasiPar, v) -> frozenset:
    out = set()
    for i, (tv, uv) in enumerate(zip(qp.poles, qp.u)):
        if not is_inf(uv) and line_value(v, tv) == uv:
            out.add(i + 1)
    return frozenset(out)


def _poly_gcd(f, g):
    """Monic gcd of two rational polynomials given by coefficient tuples."""
    def norm(p):
        p = list(p)
        while p and p[-1] == 0:
            p.pop()
        return p

    f, g = norm(f), norm(g)
    while g:
        # f mod g
        f = f[:]
        while len(f) >= len(g):
            c = f[-1] / g[-1]
            shift = len(f) - len(g)
            for k in range(len(g)):
                f[shift + k] -= c * g[k]
            f = norm(f)
            if not f:
                break
        f, g = g, f
    if not f:
        return []
    lead = f[-1]
    return [c / lead for c in f]


def _poly_div(f, g):
    """Quotient of exact polynomial division (g must divide f)."""
    f = list(f)
    out = [Fraction(0)] * (max(len(f) - len(g) + 1, 0))
    while len(f) >= len(g) and any(x != 0 for x in f):
        while f and f[-1] == 0:
            f.pop()
        if len(f) < len(g):
            break
        c = f[-1] / g[-1]
        shift = len(f) - len(g)
        out[shift] = c
        for k in range(len(g)):
            f[shift + k] -= c * g[k]
    return out


def _minus1_candidate(qp: QuasiPar) -> Optional[Subbundle]:
    """The degree-(-1) subbundle through all four directions, reclassified
    at its saturated degree if the defining sections share a factor."""
    try:
        (v0, v1), (w0, w1, w2) = conic_subbundle(qp)
    except DegenerateInput:
        return None
    v, wpoly = (v0, v1), (w0, w1, w2)
    if v0 == 0 and v1 == 0:
        # lands inside O(1): saturates to the O(1) candidate, handled separately
        return None
    g = _poly_gcd(v, wpoly)
    if len(g) == 2:  # common linear factor: saturated subbundle has degree 0
        vq = _poly_div(v, g)
        wq = _poly_div(wpoly, g)
        c = vq[0] if vq else Fraction(0)
        if c == 0:
            return None  # saturates into O(1)
        w_lin = (wq[0] / c if len(wq) > 0 else Fraction(0),
                 wq[1] / c if len(wq) > 1 else Fraction(0))
        sub = Subbundle(degree=0, coefficients=w_lin, contact=_deg0_contact(qp, w_lin))
        return sub
    contact = set()
    for i, (tv, uv) in enumerate(zip(qp.poles, qp.u)):
        if is_inf(tv):
            direction = (v1, w2)
        else:
            direction = (v0 + v1 * tv, w0 + w1 * tv + w2 * tv * tv)
        if is_inf(uv):
            hit = direction[0] == 0
        else:
            hit = direction[1] == uv * direction[0]
        if hit:
            contact.add(i + 1)
    return Subbundle(degree=-1, coefficients=(v0, v1, w0, w1, w2), contact=frozenset(contact))


def candidate_subbundles(qp: QuasiPar):
    """All saturated candidates relevant for stability, deduplicated."""
    cands = [_o1_candidate(qp)]
    finite = [i for i in range(4) if not is_inf(qp.u[i])]
    seen = set()
    for i, j in combinations(finite, 2):
        v = line_through(qp, [i, j])
        if v is None:
            continue
        if v in seen:
            continue
        seen.add(v)
        cands.append(Subbundle(degree=0, coefficients=v, contact=_deg0_contact(qp, v)))
    m1 = _minus1_candidate(qp)
    if m1 is not None and (m1.degree != 0 or m1.coefficients not in seen):
        cands.append(m1)
    return cands


def find_destabilizer(qp: QuasiPar, w: Weights) -> Optional[Subbundle]:
    """The destabilizing subbundle of maximal parabolic degree, or None.

    Enumerates the saturated candidates, scores them against the weights
    and returns the maximizer when its score exceeds 1/2.  A score exactly
    1/2 anywhere means the weights sit on a wall: SpecialWeights.
    """
    best = best_key = best_score = None
    for sub in candidate_subbundles(qp):
        score = parabolic_degree(sub, w)
        if score == HALF:
            raise SpecialWeights(f"candidate of parabolic degree exactly 1/2: {sub}")
        key = (score, sub.degree, tuple(sorted(sub.contact)))
        if best_key is None or key > best_key:
            best, best_key, best_score = sub, key, score
    if best_score > HALF:
        return best
    return None


PREDICTED_TYPE = {"A": 1, "B": -1}  # zone -> destabilizer degree; C-zones are degree 0


def predicted_destabilizer_degree(zone: str) -> int:
    if zone in PREDICTED_TYPE:
        return PREDICTED_TYPE[zone]
    if zone.startswith("C"):
        return 0
    raise DegenerateInput(f"no destabilizer prediction for zone {zone}")
