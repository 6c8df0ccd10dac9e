"""Middle-convolution exponent calculus for rank-2 data at four points.

All bookkeeping happens on rational rotation numbers (exponents mod 1) of
the local monodromy eigenvalues.  Input data carries exponents
mu_i ± eps_i with 0 < eps_i < 1/2 and sum(mu) = -1/2 mod 1 (odd degree).
A convolver choice picks one eigenvalue per point (sign vector sigma) and
rank-1 twist exponents z_i with sum(z) = -sum of the chosen exponents.

The transformed eigenvalue pair at t_i is {z_i, z_i + y_i} with

    y_i = -1/2 + sum_j sigma_j eps_j - 2 sigma_i eps_i   (mod 1).

Normalization: the representative h_i of y_i in (-1, 0) gives
eps'_i = -h_i/2 in (0, 1/2) and mu'_i = z_i + h_i/2; when the resulting
sum(mu') lands at 0 instead of -1/2 mod 1 (even degree), the earliest
point is flipped (eps' -> 1/2 - eps', mu' -> mu' + 1/2) to restore odd
degree.  The zone of eps' is independent of the z_i and of any residual
relabeling, which changes eps' only by elementary-transformation pairs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from .errors import DegenerateInput, SpecialParameters
from .exact import Rat, rat_from_str, rat_to_str
from .stability import Weights, ZONE_STABLE, classify_zone

HALF = Fraction(1, 2)


def _mod1(x: Rat) -> Rat:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class ExponentData:
    mu: tuple
    eps: tuple

    def __post_init__(self):
        if len(self.mu) != 4 or len(self.eps) != 4:
            raise DegenerateInput("exponent data carries four poles")
        for e in self.eps:
            if not (0 < e < HALF):
                raise SpecialParameters(f"eps = {e} outside (0, 1/2)")
        if _mod1(sum(self.mu)) != HALF:
            raise DegenerateInput("odd-degree normalization needs sum(mu) = -1/2 mod 1")

    @classmethod
    def of_eps(cls, eps) -> "ExponentData":
        eps = tuple(Fraction(e) for e in eps)
        return cls(mu=(Fraction(0), Fraction(0), Fraction(0), Fraction(-1, 2)), eps=eps)

    def weights(self) -> Weights:
        return Weights(mu=self.mu, eps=self.eps)

    def zone(self) -> str:
        return classify_zone(self.weights())

    def to_json_dict(self):
        return {"mu": [rat_to_str(m) for m in self.mu],
                "eps": [rat_to_str(e) for e in self.eps]}


def parse_sigma(text: str):
    if len(text) != 4 or any(c not in "+-" for c in text):
        raise DegenerateInput("sigma must be four signs like '++-+'")
    return tuple(1 if c == "+" else -1 for c in text)


def sigma_text(sigma) -> str:
    return "".join("+" if s > 0 else "-" for s in sigma)


@dataclass(frozen=True)
class BetaChoice:
    """Sign vector selecting the convolved eigenvalue per point, plus the
    twist exponents z_i constrained by sum(z) = -sum(chosen exponents)."""

    sigma: tuple
    z: tuple

    def __post_init__(self):
        if len(self.sigma) != 4 or any(s not in (1, -1) for s in self.sigma):
            raise DegenerateInput("sigma must be four signs")
        if len(self.z) != 4:
            raise DegenerateInput("four twist exponents required")

    @classmethod
    def default(cls, e: ExponentData, sigma) -> "BetaChoice":
        """z1 = z2 = z3 = 0 with z4 absorbing the product constraint."""
        if isinstance(sigma, str):
            sigma = parse_sigma(sigma)
        chosen = sum(e.mu[i] + sigma[i] * e.eps[i] for i in range(4))
        z4 = _mod1(-chosen)
        return cls(sigma=tuple(sigma), z=(Fraction(0), Fraction(0), Fraction(0), z4))

    def validate_against(self, e: ExponentData):
        chosen = sum(e.mu[i] + self.sigma[i] * e.eps[i] for i in range(4))
        if _mod1(sum(self.z) + chosen) != 0:
            raise DegenerateInput("twist exponents violate the product constraint")


def nonspecial_exponents(e: ExponentData) -> bool:
    """All sixteen signed eps sums avoid the half-integers (equivalently,
    with the -1/2 degree shift they avoid the integers)."""
    for signs in product((1, -1), repeat=4):
        v = sum(s * ev for s, ev in zip(signs, e.eps)) - HALF
        if v.denominator == 1:
            return False
    return True


def defect(r: int, n: int, multiplicities) -> int:
    """(n - 2) r - sum of the convolver multiplicities."""
    return (n - 2) * r - sum(multiplicities)


def mc_exponents(e: ExponentData, choice: Optional[BetaChoice] = None,
                 sigma=None) -> ExponentData:
    """Exponent data of the middle convolution for the given choice.

    The output eigen-exponent pair at t_i is {z_i, z_i + y_i}; see the
    module docstring for the (mu', eps') normalization.
    """
    if choice is None:
        choice = BetaChoice.default(e, sigma if sigma is not None else "++++")
    choice.validate_against(e)
    if not nonspecial_exponents(e):
        raise SpecialParameters("signed eps sums hit a half-integer")
    sg = choice.sigma
    s_tot = sum(s * ev for s, ev in zip(sg, e.eps))
    mu_out, eps_out = [], []
    for i in range(4):
        y = -HALF + s_tot - 2 * sg[i] * e.eps[i]
        if _mod1(y) == 0:
            raise SpecialParameters("output eigenvalue gap vanishes")
        h = _mod1(y) - 1                      # representative in (-1, 0)
        eps_out.append(-h / 2)
        mu_out.append(_mod1(choice.z[i] + h / 2))
    total = _mod1(sum(mu_out))
    if total != HALF:
        if total != 0:
            raise DegenerateInput(f"parity bookkeeping broke: sum mu' = {total}")
        eps_out[0] = HALF - eps_out[0]
        mu_out[0] = _mod1(mu_out[0] + HALF)
    return ExponentData(mu=tuple(mu_out), eps=tuple(eps_out))


def zone_interchange_check(e: ExponentData):
    """Search the sixteen convolver choices from an unstable-zone input.

    Returns a report dict: the input zone, the zone reached by every
    sigma, the subset of sigma reaching the stable zone, and the result
    of the all-plus choice.
    """
    zone_in = e.zone()
    if zone_in == ZONE_STABLE:
        raise DegenerateInput("input must lie in an unstable zone")
    per_sigma = {}
    stable_sigmas = []
    for signs in product((1, -1), repeat=4):
        out = mc_exponents(e, sigma=signs)
        label = out.zone()
        per_sigma[sigma_text(signs)] = label
        if label == ZONE_STABLE:
            stable_sigmas.append(sigma_text(signs))
    return {
        "input_zone": zone_in,
        "zones": per_sigma,
        "stable_sigmas": stable_sigmas,
        "all_plus_zone": per_sigma["++++"],
        "found_stable": bool(stable_sigmas),
    }


def parse_eps_list(text: str):
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 4:
        raise DegenerateInput("four eps values required")
    return tuple(rat_from_str(p) for p in parts)
