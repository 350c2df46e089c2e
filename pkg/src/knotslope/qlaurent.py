"""Exact Laurent polynomial and quantum integer arithmetic.

Everything downstream (theta nets, 6j quotients, state sums, degree bounds)
is built on a single value type: a sparse Laurent polynomial in one variable
v with arbitrary-precision integer coefficients.  This module supplies the
ring operations, exact division, a polynomial gcd, quantum integers and
their factorials/binomials/multinomials, and a small field-of-fractions
layer used while accumulating state sums whose summands are quotients.

Conventions:
  - the quantum integer [k] is sum_{i=0..k-1} v^(2k-2-4i), so [0] = 0,
    [1] = 1, [2] = v^2 + v^-2;
  - the zero polynomial is the empty term map; nonzero coefficients only;
  - canonical text form is "coeff*v^exp" terms joined by " + " in
    descending exponent order, e.g. "1*v^2 + 1*v^-2";
  - JSON form is a list of [exponent, "coefficient"] pairs, descending
    exponent, coefficients as decimal strings.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd as _int_gcd


class ZeroPolynomial(ValueError):
    """Degree or leading coefficient requested for the zero polynomial."""


class NonExactDivision(ArithmeticError):
    """exact_div was called on a pair with a nonzero remainder."""


class NotPolynomial(ArithmeticError):
    """A fraction whose reduced denominator is not a monomial unit."""


class LaurentPoly:
    """Sparse Laurent polynomial in v over the integers.

    Immutable after construction.  The term map never stores a zero
    coefficient, so equal values always have identical term maps and
    results of the ring operations are canonical.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = c
        self._terms = clean

    @classmethod
    def _raw(cls, clean_terms):
        # Internal fast path: caller guarantees no zero coefficients.
        p = object.__new__(cls)
        p._terms = clean_terms
        return p

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        if coefficient == 0:
            return ZERO
        return cls._raw({int(exponent): coefficient})

    # -- basic queries ------------------------------------------------

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def max_deg(self):
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no degree")
        return max(self._terms)

    @property
    def min_deg(self):
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no degree")
        return min(self._terms)

    @property
    def leading_coeff(self):
        return self._terms[self.max_deg]

    def coeff(self, exponent):
        return self._terms.get(exponent, 0)

    def terms(self):
        """Term list as (exponent, coefficient) pairs, descending exponent."""
        return sorted(self._terms.items(), reverse=True)

    def __len__(self):
        return len(self._terms)

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.monomial(0, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.monomial(0, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) > len(b):
            a, b = b, a
        out = {}
        get = out.get
        bitems = list(b.items())
        for ea, ca in a.items():
            for eb, cb in bitems:
                e = ea + eb
                s = get(e, 0) + ca * cb
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return LaurentPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def shift(self, exponent, sign=1):
        """Multiply by sign * v^exponent (sign must be +1 or -1)."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if not self._terms:
            return ZERO
        if sign == 1:
            return LaurentPoly._raw({e + exponent: c for e, c in self._terms.items()})
        return LaurentPoly._raw({e + exponent: -c for e, c in self._terms.items()})

    # -- comparisons ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- serialization --------------------------------------------------

    def to_text(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*v^{e}" for e, c in self.terms())

    @classmethod
    def from_text(cls, text):
        text = text.strip()
        if text == "0":
            return ZERO
        terms = {}
        for part in text.split(" + "):
            coeff_str, _, exp_str = part.partition("*v^")
            if not exp_str:
                raise ValueError(f"malformed polynomial term: {part!r}")
            e = int(exp_str)
            if e in terms:
                raise ValueError(f"duplicate exponent {e} in {text!r}")
            terms[e] = int(coeff_str)
        return cls(terms)

    def to_json(self):
        return [[e, str(c)] for e, c in self.terms()]

    @classmethod
    def from_json(cls, pairs):
        terms = {}
        for e, c in pairs:
            e = int(e)
            if e in terms:
                raise ValueError(f"duplicate exponent {e} in JSON polynomial")
            terms[e] = int(c)
        return cls(terms)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"<LaurentPoly {self.to_text()}>"

    # -- dense helpers (internal) ----------------------------------------

    def _dense(self):
        """Coefficients as an ascending list plus the exponent offset."""
        lo = self.min_deg
        hi = self.max_deg
        out = [0] * (hi - lo + 1)
        for e, c in self._terms.items():
            out[e - lo] = c
        return out, lo


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})


# -- quantum integers ---------------------------------------------------


@lru_cache(maxsize=None)
def qint(k):
    """Quantum integer [k] = (v^2k - v^-2k)/(v^2 - v^-2), k >= 0."""
    if k < 0:
        raise ValueError(f"quantum integer undefined for negative {k}")
    return LaurentPoly._raw({2 * k - 2 - 4 * i: 1 for i in range(k)})


@lru_cache(maxsize=None)
def qfact(k):
    """Quantum factorial [k]! = [k][k-1]...[1], with [0]! = 1."""
    if k < 0:
        raise ValueError(f"quantum factorial undefined for negative {k}")
    if k == 0:
        return ONE
    return qfact(k - 1) * qint(k)


@lru_cache(maxsize=None)
def qbinom(n, k):
    """Symmetric quantum binomial [n]! / ([k]! [n-k]!), 0 <= k <= n.

    Computed by the Pascal recurrence
        [n;k] = v^(2k) [n-1;k] + v^(-2(n-k)) [n-1;k-1],
    which needs no division.
    """
    if not 0 <= k <= n:
        raise ValueError(f"quantum binomial needs 0 <= k <= n, got ({n}, {k})")
    if k == 0 or k == n:
        return ONE
    if 2 * k > n:
        return qbinom(n, n - k)
    return qbinom(n - 1, k).shift(2 * k) + qbinom(n - 1, k - 1).shift(-2 * (n - k))


def qmultinom(parts):
    """Symmetric quantum multinomial [sum parts]! / prod [part]!.

    Assembled as a chain of quantum binomials, which agrees with the
    factorial quotient and is always exact.
    """
    parts = list(parts)
    if any(p < 0 for p in parts):
        raise ValueError(f"multinomial parts must be non-negative, got {parts}")
    total = sum(parts)
    result = ONE
    remaining = total
    for p in parts[:-1]:
        result = result * qbinom(remaining, p)
        remaining -= p
    return result


# -- exact division and gcd ---------------------------------------------


def exact_div(p, q):
    """Exact quotient p / q in the Laurent ring.

    Raises NonExactDivision if q does not divide p over Z[v, v^-1], and
    ZeroDivisionError for a zero divisor.  Used as a correctness tripwire:
    state-sum totals must clear their theta denominators exactly.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return ZERO
    num, num_off = p._dense()
    den, den_off = q._dense()
    dn, dd = len(num) - 1, len(den) - 1
    if dn < dd:
        raise NonExactDivision("dividend degree span below divisor")
    lead = den[-1]
    quot = [0] * (dn - dd + 1)
    work = num[:]
    for i in range(dn - dd, -1, -1):
        c = work[i + dd]
        if c == 0:
            continue
        f, r = divmod(c, lead)
        if r:
            raise NonExactDivision("leading coefficient not divisible")
        quot[i] = f
        for j in range(dd + 1):
            work[i + j] -= f * den[j]
    if any(work[:dd]):
        raise NonExactDivision("nonzero remainder")
    shift = num_off - den_off
    return LaurentPoly({i + shift: c for i, c in enumerate(quot)})


def _content_primitive(coeffs):
    g = 0
    for c in coeffs:
        g = _int_gcd(g, c)
        if g == 1:
            break
    if g == 0:
        return 0, coeffs
    prim = [c // g for c in coeffs]
    if prim[-1] < 0:
        g, prim = -g, [-c for c in prim]
    return g, prim


def _pseudo_rem(a, b):
    """Pseudo-remainder of dense integer polynomial a by b (deg b <= deg a)."""
    a = a[:]
    db = len(b) - 1
    lead_b = b[-1]
    while len(a) - 1 >= db:
        if a[-1] == 0:
            a.pop()
            continue
        da = len(a) - 1
        lead_a = a[-1]
        a = [lead_b * c for c in a]
        for j in range(db + 1):
            a[da - db + j] -= lead_a * b[j]
        while a and a[-1] == 0:
            a.pop()
        if not a:
            break
    return a


def poly_gcd(p, q):
    """Gcd of two Laurent polynomials, up to units.

    Both operands are shifted to ordinary polynomials with nonzero constant
    term, the primitive Euclidean algorithm runs over the integers, and the
    integer content gcd is restored.  The result is normalized to an
    ordinary polynomial (min_deg 0) with positive leading coefficient.
    """
    if p.is_zero() and q.is_zero():
        return ZERO
    if p.is_zero():
        return _unit_normalize(q)
    if q.is_zero():
        return _unit_normalize(p)
    a, _ = p._dense()
    b, _ = q._dense()
    ca, a = _content_primitive(a)
    cb, b = _content_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while any(b):
        r = _pseudo_rem(a, b)
        a = b
        if not r:
            b = []
            break
        _, b = _content_primitive(r)
    content = _int_gcd(abs(ca), abs(cb))
    return LaurentPoly({i: content * c for i, c in enumerate(a)})


def _unit_normalize(p):
    """Shift to min_deg 0 and make the leading coefficient positive."""
    q = p.shift(-p.min_deg)
    if q.leading_coeff < 0:
        q = -q
    return q


# -- field of fractions ---------------------------------------------------


@dataclass(frozen=True)
class PolyFraction:
    """Quotient of Laurent polynomials, kept unreduced until asked.

    State-sum summands divide by theta values, so intermediates live here;
    the final total must convert back to a genuine polynomial.
    """

    num: LaurentPoly
    den: LaurentPoly = ONE

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("fraction with zero denominator")

    def __add__(self, other):
        other = _as_fraction(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return PolyFraction(self.num + other.num, self.den)
        return PolyFraction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return PolyFraction(-self.num, self.den)

    def __sub__(self, other):
        other = _as_fraction(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = _as_fraction(other)
        if other is NotImplemented:
            return NotImplemented
        return PolyFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def den_span(self):
        """Degree span of the denominator, the trigger for gcd reduction."""
        return self.den.max_deg - self.den.min_deg

    def reduce(self):
        """Divide out the gcd and normalize the denominator.

        After reduction the denominator has min_deg 0, positive leading
        coefficient, and shares no non-unit factor with the numerator.
        """
        if self.num.is_zero():
            return PolyFraction(ZERO, ONE)
        g = poly_gcd(self.num, self.den)
        num = exact_div(self.num, g)
        den = exact_div(self.den, g)
        e = den.min_deg
        num = num.shift(-e)
        den = den.shift(-e)
        if den.leading_coeff < 0:
            num, den = -num, -den
        return PolyFraction(num, den)

    def to_poly(self):
        """Convert to a LaurentPoly; NotPolynomial if the value is not one."""
        r = self.reduce()
        if r.den == ONE:
            return r.num
        raise NotPolynomial(f"denominator {r.den.to_text()} is not a unit")

    def __eq__(self, other):
        other = _as_fraction(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den


def _as_fraction(value):
    if isinstance(value, PolyFraction):
        return value
    if isinstance(value, LaurentPoly):
        return PolyFraction(value, ONE)
    if isinstance(value, int):
        return PolyFraction(LaurentPoly.monomial(0, value), ONE)
    return NotImplemented


def frac_sum(fractions, reduce_span=64):
    """Sum fractions with thresholded reduction.

    The running value is reduced whenever its denominator span exceeds
    reduce_span, and once at the end.  Batching the gcd work this way is
    much cheaper than reducing after every addition.
    """
    acc = PolyFraction(ZERO, ONE)
    for f in fractions:
        acc = acc + f
        if acc.den_span() > reduce_span:
            acc = acc.reduce()
    return acc.reduce()
