"""Building-block evaluators for colored trivalent-graph state sums.

Four atoms and their exact maximal degrees:

  theta(a,b,c)      value of the theta net with edge colors a, b, c
  circle(k)         value of the k-colored unknot, (-1)^k [k+1]
  framing_power     the framing-twist scalar f(a)^w as a signed monomial
  delta6j           the quotient of the 6j tetrahedron by the theta,
                    produced by the triangle move

Colors are non-negative integers.  A triple is admissible when its sum is
even and it satisfies the triangle inequality; theta vanishes conceptually
outside that set and we reject such input outright.

The framing scalar f(a) = (sqrt(-1))^(-a) v^(-a(a+2)/2) is only ever needed
in real combinations here (even colors, or fourth powers), so it is kept as
an exact sign plus exponent and never as a polynomial with imaginary
coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .qlaurent import ZERO, LaurentPoly, qbinom, qint, qmultinom


class InadmissibleColoring(ValueError):
    """Colors violate parity or the triangle inequality."""


class NonRealPhase(ValueError):
    """Framing power whose fourth-root-of-unity phase is not real."""


class FractionalExponent(ValueError):
    """Framing power whose v-exponent is not an integer."""


def is_admissible(x, y, z):
    """True when (x, y, z) has even sum and satisfies the triangle inequality."""
    if min(x, y, z) < 0:
        return False
    if (x + y + z) % 2:
        return False
    return x <= y + z and y <= x + z and z <= x + y


def require_admissible(x, y, z):
    if not is_admissible(x, y, z):
        raise InadmissibleColoring(f"({x}, {y}, {z}) is not an admissible triple")


class SignedMonomial(NamedTuple):
    """Exactly +/- v^exponent."""

    sign: int
    exponent: int

    def to_poly(self):
        return LaurentPoly.monomial(self.exponent, self.sign)


@dataclass(frozen=True)
class DeltaDegreeData:
    """Degree bookkeeping for one 6j quotient.

    z_top is the largest summation index; the degree formula is the value
    of the top term: one binomial-degree contribution per factor.
    """

    z_top: int
    g_terms: tuple[int, int, int, int]
    z_range: tuple[int, int]


def circle(k):
    """Value of the k-colored unknot: (-1)^k [k+1]."""
    if k < 0:
        raise ValueError(f"negative unknot color {k}")
    p = qint(k + 1)
    return p if k % 2 == 0 else -p


@lru_cache(maxsize=None)
def _theta_sorted(a, b, c):
    half = (a + b + c) // 2
    return circle(half) * qmultinom(((-a + b + c) // 2, (a - b + c) // 2, (a + b - c) // 2))


def theta(a, b, c):
    """Theta net value O^((a+b+c)/2) * [half; parts], symmetric in a, b, c."""
    require_admissible(a, b, c)
    x, y, z = sorted((a, b, c))
    return _theta_sorted(x, y, z)


def framing_power(a, w):
    """The scalar f(a)^w as a SignedMonomial.

    f(a)^w has phase (sqrt(-1))^(-aw), real only when a*w is even, and
    v-exponent -w*a(a+2)/2, integral only when a(a+2)*w is even.
    """
    if a < 0:
        raise ValueError(f"negative color {a}")
    if (a * w) % 2:
        raise NonRealPhase(f"f({a})^{w} has a non-real phase")
    if (a * (a + 2) * w) % 2:
        raise FractionalExponent(f"f({a})^{w} has a fractional exponent")
    sign = -1 if (a * w // 2) % 2 else 1
    return SignedMonomial(sign, -(w * a * (a + 2)) // 2)


def _delta_frame(a, b, c, alpha, beta, gamma):
    """Common index bookkeeping for the 6j quotient and its degree.

    Returns (half_sum, tops, offsets, zlo, zhi) where the four binomials of
    the z-sum are [z+1; half_sum+1] and [tops[i]; z - offsets[i]].
    """
    for total in (a + b + c, a + beta + gamma, alpha + b + gamma, alpha + beta + c):
        if total % 2:
            raise InadmissibleColoring(
                f"6j quotient with odd vertex sum in ({a},{b},{c},{alpha},{beta},{gamma})"
            )
    half = (a + b + c) // 2
    tops = ((-a + b + c) // 2, (a - b + c) // 2, (a + b - c) // 2)
    offsets = ((a + beta + gamma) // 2, (alpha + b + gamma) // 2, (alpha + beta + c) // 2)
    zlo = max(half, *offsets)
    zhi = min(t + o for t, o in zip(tops, offsets))
    return half, tops, offsets, zlo, zhi


def delta6j(a, b, c, alpha, beta, gamma):
    """The 6j/theta quotient of the triangle move, as an alternating z-sum.

    z runs over exactly the indices for which all four quantum binomials
    have in-range arguments; an empty range gives the zero polynomial so
    that state sums can skip vanishing summands uniformly.
    """
    half, tops, offsets, zlo, zhi = _delta_frame(a, b, c, alpha, beta, gamma)
    if min(tops) < 0 or zlo > zhi:
        return ZERO
    acc = ZERO
    for z in range(zlo, zhi + 1):
        term = qbinom(z + 1, half + 1)
        for t, o in zip(tops, offsets):
            term = term * qbinom(t, z - o)
        acc = acc + term if (z + half) % 2 == 0 else acc - term
    return acc


def qbinom_max_deg(n, k):
    """Maximal degree of the symmetric quantum binomial [n; k]: 2k(n-k)."""
    return 2 * k * (n - k)


def dplus_theta(a, b, c):
    """Maximal degree of theta(a,b,c): a(1-a)+b(1-b)+c(1-c)+(a+b+c)^2/2."""
    require_admissible(a, b, c)
    s = a + b + c
    return a * (1 - a) + b * (1 - b) + c * (1 - c) + (s * s) // 2


def dplus_delta6j(a, b, c, alpha, beta, gamma):
    """Maximal degree of the 6j quotient, with its bookkeeping data.

    The degree is the top z-term's: the binomial degrees at z = z_top,
    where 2*z_top = a+b+c+alpha+beta+gamma - max(a+alpha, b+beta, c+gamma).
    Raises InadmissibleColoring when the z-range is empty (zero value has
    no degree).
    """
    half, tops, offsets, zlo, zhi = _delta_frame(a, b, c, alpha, beta, gamma)
    if min(tops) < 0 or zlo > zhi:
        raise InadmissibleColoring(
            f"empty summation range for ({a},{b},{c},{alpha},{beta},{gamma})"
        )
    total = a + b + c + alpha + beta + gamma
    assert (total - max(a + alpha, b + beta, c + gamma)) % 2 == 0
    z_top = (total - max(a + alpha, b + beta, c + gamma)) // 2
    assert z_top == zhi
    g_terms = (qbinom_max_deg(z_top + 1, half + 1),) + tuple(
        qbinom_max_deg(t, z_top - o) for t, o in zip(tops, offsets)
    )
    return sum(g_terms), DeltaDegreeData(z_top, g_terms, (zlo, zhi))


def dplus_framing(a):
    """Maximal degree of f(a): -a(a+2)/2, a half-integer for odd colors."""
    return Fraction(-a * (a + 2), 2)


def dplus_circle(k):
    """Maximal degree of the k-colored unknot value: 2k."""
    return 2 * k
