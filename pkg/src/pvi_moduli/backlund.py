"""The group of birational symmetries acting on (kappa, q, p).

Generators: the four parabolic switches s1..s4, the three cross-ratio
preserving pole permutations r_(ij)(kl), and the extra Okamoto involution
s0.  On a state with derived k0 = (1 - k1 - k2 - k3 - k4)/2:

    s_i (i = 1, 2, 3): k_i -> -k_i,  p -> p - k_i/(q - t_i)
    s_4:               k_4 -> -k_4,  (q, p) fixed
    s_0:               k_i -> k_i + k0,  q -> q + k0/p
    r_(12)(34):  kappa -> (k2, k1, k4, k3),  q -> t(q-1)/(q-t),
                 p -> -(q-t)((q-t)p + k0)/(t(t-1))
    r_(13)(24):  kappa -> (k3, k4, k1, k2),  q -> (q-t)/(q-1),
                 p -> (q-1)((q-1)p + k0)/(t-1)
    r_(14)(23):  kappa -> (k4, k3, k2, k1),  q -> t/q,
                 p -> -q(qp + k0)/t

The p-shift of s_i uses the coefficient k_i: that is what makes each s_i
an involution, and it reproduces the parabolic switch exactly (the
composite s1 s2 s3 s4 sends p to p - k1/q - k2/(q-1) - k3/(q-t), the
denominator of the alternative parabolic coordinate Q').

Words act left-to-right: apply_word([g, h], s) = h(g(s)).  k0 is always
recomputed from k1..k4, never carried.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Sequence

from .connection import KappaParams
from .errors import DegenerateInput, NoFiniteIntersection
from .exact import Dual, Rat, rat_to_str

ALPHABET = ("s0", "s1", "s2", "s3", "s4", "r12_34", "r13_24", "r14_23")


@dataclass(frozen=True)
class SymState:
    t: Rat
    kappa: KappaParams
    q: Rat
    p: Rat

    def __post_init__(self):
        if self.t in (0, 1):
            raise DegenerateInput("pole position t must avoid 0 and 1")

    @classmethod
    def make(cls, t, k1234, q, p) -> "SymState":
        return cls(t=Fraction(t), kappa=KappaParams.from_k1234(*k1234),
                   q=Fraction(q), p=Fraction(p))

    @property
    def k0(self) -> Rat:
        return self.kappa.k0

    def with_kappa(self, k1234, q=None, p=None) -> "SymState":
        return SymState(t=self.t, kappa=KappaParams.from_k1234(*k1234),
                        q=self.q if q is None else q,
                        p=self.p if p is None else p)

    def to_json_dict(self):
        return {"t": rat_to_str(self.t), "kappa": self.kappa.to_strs(),
                "q": rat_to_str(self.q), "p": rat_to_str(self.p)}

    @classmethod
    def from_json_dict(cls, d) -> "SymState":
        kp = KappaParams.from_strs(d["kappa"])
        from .exact import rat_from_str
        return cls(t=rat_from_str(d["t"]), kappa=kp,
                   q=rat_from_str(d["q"]), p=rat_from_str(d["p"]))


def _s0(s: SymState) -> SymState:
    if s.p == 0:
        raise DegenerateInput("s0 needs p != 0")
    k = s.kappa
    k0 = k.k0
    return s.with_kappa((k.k1 + k0, k.k2 + k0, k.k3 + k0, k.k4 + k0), q=s.q + k0 / s.p)


def _s_finite(i: int) -> Callable[[SymState], SymState]:
    def gen(s: SymState) -> SymState:
        k = list(s.kappa.all4)
        ki = k[i - 1]
        pole = (Fraction(0), Fraction(1), s.t)[i - 1]
        if s.q == pole:
            raise DegenerateInput(f"s{i} has a pole at q = {pole}")
        k[i - 1] = -ki
        return s.with_kappa(tuple(k), p=s.p - ki / (s.q - pole))
    return gen


def _s4(s: SymState) -> SymState:
    k = s.kappa
    return s.with_kappa((k.k1, k.k2, k.k3, -k.k4))


def _r12_34(s: SymState) -> SymState:
    k, t, q, p = s.kappa, s.t, s.q, s.p
    if q == t:
        raise DegenerateInput("r12_34 has a pole at q = t")
    return s.with_kappa((k.k2, k.k1, k.k4, k.k3),
                        q=t * (q - 1) / (q - t),
                        p=-(q - t) * ((q - t) * p + k.k0) / (t * (t - 1)))


def _r13_24(s: SymState) -> SymState:
    k, t, q, p = s.kappa, s.t, s.q, s.p
    if q == 1:
        raise DegenerateInput("r13_24 has a pole at q = 1")
    return s.with_kappa((k.k3, k.k4, k.k1, k.k2),
                        q=(q - t) / (q - 1),
                        p=(q - 1) * ((q - 1) * p + k.k0) / (t - 1))


def _r14_23(s: SymState) -> SymState:
    k, t, q, p = s.kappa, s.t, s.q, s.p
    if q == 0:
        raise DegenerateInput("r14_23 has a pole at q = 0")
    return s.with_kappa((k.k4, k.k3, k.k2, k.k1),
                        q=t / q,
                        p=-q * (q * p + k.k0) / t)


GENERATORS: Dict[str, Callable[[SymState], SymState]] = {
    "s0": _s0, "s1": _s_finite(1), "s2": _s_finite(2), "s3": _s_finite(3),
    "s4": _s4, "r12_34": _r12_34, "r13_24": _r13_24, "r14_23": _r14_23,
}


def apply_generator(name: str, s: SymState) -> SymState:
    if name not in GENERATORS:
        raise DegenerateInput(f"unknown generator {name!r}; alphabet: {', '.join(ALPHABET)}")
    return GENERATORS[name](s)


def apply_word(word: Sequence[str], s: SymState) -> SymState:
    """Left-to-right composition; a degenerate step aborts with its index."""
    for step, name in enumerate(word):
        try:
            s = apply_generator(name, s)
        except DegenerateInput as exc:
            raise DegenerateInput(f"word degenerates at step {step} ({name}): {exc}") from exc
    return s


def parse_word(text: str) -> tuple:
    return tuple(w.strip() for w in text.split(",") if w.strip())


# Composites realizing integer shifts of the exponents.  The pole
# permutation conjugates the parabolic switches, so the s1 s2 block must
# come before the first s0 to shift the first two exponents:
#   WORD_SHIFT_12: kappa -> (k1+1, k2+1, k3, k4)
#   WORD_SHIFT_34: kappa -> (k1, k2, k3+1, k4+1)
#   WORD_SCHLESINGER: kappa -> (1-k1, 1-k2, k3, k4), the closed form below.
WORD_SHIFT_12 = ("r12_34", "s1", "s2", "s0", "s3", "s4", "s0")
WORD_SHIFT_34 = ("r12_34", "s3", "s4", "s0", "s1", "s2", "s0")
WORD_SCHLESINGER = ("r12_34", "s0", "s3", "s4", "s0")

_R_FOR_PAIR = {frozenset({1, 2}): "r12_34", frozenset({3, 4}): "r12_34",
               frozenset({1, 3}): "r13_24", frozenset({2, 4}): "r13_24",
               frozenset({1, 4}): "r14_23", frozenset({2, 3}): "r14_23"}


def pair_fibration_word(i: int, j: int) -> tuple:
    """The composite whose q-coordinate is the fibration attached to the
    pairwise unstable zone C(i, j).

    It acts on the exponents by k -> 1 - k at poles i and j (an
    elementary-transformation pair): [r, s0, s_k, s_l, s0] with (k, l)
    the complementary pair and r the permutation pairing (i j)(k l).
    The Higgs-limit zero divisor for C(i, j)-zone weights is
    {t_i, t_j, q o word}.
    """
    if i == j or not ({i, j} <= {1, 2, 3, 4}):
        raise DegenerateInput("pair indices must be distinct in 1..4")
    k, l = sorted({1, 2, 3, 4} - {i, j})
    return (_R_FOR_PAIR[frozenset({i, j})], "s0", f"s{k}", f"s{l}", "s0")


def full_flip_fibration_word() -> tuple:
    """A composite whose q-coordinate is the fibration attached to the
    all-contact unstable zone (degree -1 destabilizer).

    Any two complementary pair words compose to the same transformation;
    the (1,2)(3,4) pairing is used.  The Higgs-limit zero divisor for that
    zone is {t_1, t_2, t_3, t_4, q o word}.
    """
    return pair_fibration_word(1, 2) + pair_fibration_word(3, 4)


def schlesinger_composite_qp(s: SymState) -> SymState:
    """Closed form of the composite WORD_SCHLESINGER.

    kappa goes to (1-k1, 1-k2, k3, k4) and

        q' = t (q-1)(q-t) [p^2 + ((1-k1-k2)/(q-1) - k3/(q-t)) p
                           + k0(k0+k4)/((q-1)(q-t))] / D,
        p' = -D / (t(t-1) p),     D = ((q-t)p + k0 + k4)((q-t)p + k0).
    """
    k, t, q, p = s.kappa, s.t, s.q, s.p
    if p == 0 or q in (1, t):
        raise DegenerateInput("composite needs p != 0 and q away from 1, t")
    dd = ((q - t) * p + k.k0 + k.k4) * ((q - t) * p + k.k0)
    if dd == 0:
        raise DegenerateInput("composite denominator vanishes")
    num = p * p + ((1 - k.k1 - k.k2) / (q - 1) - k.k3 / (q - t)) * p \
        + k.k0 * (k.k0 + k.k4) / ((q - 1) * (q - t))
    q2 = t * (q - 1) * (q - t) * num / dd
    p2 = -dd / (t * (t - 1) * p)
    return s.with_kappa((1 - k.k1, 1 - k.k2, k.k3, k.k4), q=q2, p=p2)


# ---------------------------------------------------------------------------
# Fibration coordinates
# ---------------------------------------------------------------------------

def q_of(s: SymState) -> Rat:
    return s.q


def big_q_of(s: SymState) -> Rat:
    """The parabolic fibration coordinate Q = q + k0/p."""
    if s.p == 0:
        raise DegenerateInput("Q needs p != 0")
    return s.q + s.k0 / s.p


def big_q_prime_of(s: SymState) -> Rat:
    """The coordinate of the alternative parabolic structure:
    Q' = Q o s1 s2 s3 s4 = q + (1-k0)/(p - k1/q - k2/(q-1) - k3/(q-t))."""
    return big_q_of(apply_word(("s1", "s2", "s3", "s4"), s))


def al_chart(s: SymState):
    """(x, y) = (q, q + k0/p): the two fibration coordinates as a chart
    on P^1 x P^1; the Okamoto involution becomes (x, y) -> (y, x)."""
    return (q_of(s), big_q_of(s))


def symplectic_check(s: SymState) -> bool:
    """Exact check of k0 * det d(x,y)/d(q,p) / (x-y)^2 = -1 via dual numbers."""
    if s.p == 0 or s.k0 == 0:
        raise DegenerateInput("symplectic identity needs p != 0 and k0 != 0")
    k0 = s.k0

    def chart(qd, pd):
        return (qd, qd + k0 / pd)

    x_q, y_q = chart(Dual.var(s.q), Dual.const(s.p))
    x_p, y_p = chart(Dual.const(s.q), Dual.var(s.p))
    jac_det = x_q.der * y_p.der - x_p.der * y_q.der
    x, y = x_q.val, y_q.val
    if x == y:
        raise DegenerateInput("chart degenerate: x = y")
    return k0 * jac_det / ((x - y) ** 2) == -1


def transversality_solve(lambda1: Rat, lambda2: Rat, k0: Rat):
    """The unique solution of {q = lambda1, Q = lambda2}: p = k0/(l2 - l1).

    Equal fiber values only meet at infinity: NoFiniteIntersection.
    """
    lambda1, lambda2, k0 = Fraction(lambda1), Fraction(lambda2), Fraction(k0)
    if k0 == 0:
        raise DegenerateInput("k0 must be nonzero")
    if lambda1 == lambda2:
        raise NoFiniteIntersection("the two fibers meet only at infinity")
    return (lambda1, k0 / (lambda2 - lambda1))


# ---------------------------------------------------------------------------
# Relation report
# ---------------------------------------------------------------------------

RELATION_WORDS = []
for _i in (0, 1, 2, 3, 4):
    RELATION_WORDS.append((f"s{_i}^2 = 1", (f"s{_i}", f"s{_i}"), ()))
for _i in (1, 2, 3, 4):
    for _j in (1, 2, 3, 4):
        if _i < _j:
            RELATION_WORDS.append((f"s{_i} s{_j} = s{_j} s{_i}",
                                   (f"s{_i}", f"s{_j}"), (f"s{_j}", f"s{_i}")))
for _i in (1, 2, 3, 4):
    RELATION_WORDS.append((f"s0 s{_i} s0 = s{_i} s0 s{_i}",
                           ("s0", f"s{_i}", "s0"), (f"s{_i}", "s0", f"s{_i}")))
for _r in ("r12_34", "r13_24", "r14_23"):
    RELATION_WORDS.append((f"{_r}^2 = 1", (_r, _r), ()))
_R_PAIRS = {"r12_34": ((1, 2), (3, 4)), "r13_24": ((1, 3), (2, 4)), "r14_23": ((1, 4), (2, 3))}
for _r, _prs in _R_PAIRS.items():
    for (_i, _j) in _prs:
        for (_a, _b) in ((_i, _j), (_j, _i)):
            RELATION_WORDS.append((f"{_r} s{_a} = s{_b} {_r}",
                                   (_r, f"s{_a}"), (f"s{_b}", _r)))


def check_relations(sample: SymState):
    """Evaluate every group relation on the sample; returns a list of
    (relation, holds, witness) with exact states in the witness."""
    out = []
    for name, left, right in RELATION_WORDS:
        lhs = apply_word(left, sample)
        rhs = apply_word(right, sample)
        holds = (lhs == rhs)
        witness = None if holds else {"lhs": lhs.to_json_dict(), "rhs": rhs.to_json_dict()}
        out.append((name, holds, witness))
    return out
