"""Degree engine: the quadratic integer program behind the state sum.

The maximal degree of the N-colored invariant equals the maximum over the
summation domain of an integer-valued objective assembled from the
building-block degrees.  This module evaluates that objective, maximizes
it three independent ways (exhaustive scan, case analysis, closed form),
and fits quadratic quasi-polynomials to computed degree sequences.

Writing A = -(r+s+1)/2, B = -(r+1), C = -(r+t)/2 and disc = 4AC - B^2 for
the quadratic form of the objective restricted to the face a = b+c,
d = 2n, the parameter space splits into

  tag "1"    A >= 0 or C >= 0
  tag "2.1"  A, C < 0 and disc < 0        (same conclusion as "1")
  tag "2.2"  A, C < 0 and disc > 0
  tag "2.3"  A, C < 0, disc = 0, (r+s-1, r+t-2) != (0, 0)
  tag "2.4"  A, C < 0, disc = 0, r = -3, s = 4, t = 5

Tags "1" and "2.1" give a quadratic degree with period (s+t-1)/2 in the
color; the rest give the linear degree 2u(N-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .jones import domain_points
from .ktg import dplus_delta6j, dplus_theta


class BelowThreshold(ValueError):
    """Closed form requested below the recorded stabilization threshold."""


class NoQuadraticFit(ValueError):
    """A residue class has too few samples to pin a quadratic."""


@dataclass(frozen=True)
class Classification:
    """Quadratic-form data of the face objective and the case tag.

    bb, bc, cc are the coefficients of b^2, bc and c^2 (the A, B, C of the
    report format); disc = 4*bb*cc - bc^2.
    """

    bb: int
    bc: int
    cc: int
    disc: int
    tag: str

    @property
    def degree_model(self):
        """Shape of the degree sequence: "quadratic" for tags 1/2.1, else "linear"."""
        return "quadratic" if self.tag in ("1", "2.1") else "linear"

    def to_json(self):
        return {"A": self.bb, "B": self.bc, "C": self.cc, "Delta": self.disc,
                "case": self.tag}


@dataclass(frozen=True)
class ResidueData:
    """Constant term data for one residue class of the quadratic form.

    nearest_odd is the odd integer nearest to 2(t-1)j/(s+t-1); ties at an
    even integer are broken toward the smaller value after checking both
    give the same constant.
    """

    j: int
    nearest_odd: int
    offset: Fraction
    constant: Fraction

    def to_json(self):
        return {"j": self.j, "v_j": self.nearest_odd,
                "beta_j": str(self.offset), "c_j": str(self.constant)}


@dataclass(frozen=True)
class QuasiPolynomial:
    """Per-residue quadratic model of a degree sequence.

    coeffs maps the residue j to (a, two_b, c): the value at N = j mod
    period is a*N^2 + two_b*N + c.  n0 is the least sample from which the
    model reproduces every later sample exactly.
    """

    period: int
    coeffs: dict
    n0: int

    def evaluate(self, N):
        a, two_b, c = self.coeffs[N % self.period]
        value = a * N * N + two_b * N + c
        if value.denominator != 1:
            raise ArithmeticError(f"non-integral quasi-polynomial value at {N}")
        return int(value)


def classify(params):
    """Exact quadratic-form coefficients and case tag for the parameters."""
    r, s, t, u = params.astuple()
    assert (r + s + 1) % 2 == 0 and (r + t) % 2 == 0
    bb = -(r + s + 1) // 2
    bc = -(r + 1)
    cc = -(r + t) // 2
    disc = 4 * bb * cc - bc * bc
    if bb >= 0 or cc >= 0:
        tag = "1"
    elif disc < 0:
        tag = "2.1"
    elif disc > 0:
        tag = "2.2"
    elif (r + s - 1) ** 2 + (r + t - 2) ** 2 != 0:
        tag = "2.3"
    else:
        tag = "2.4"
        assert (r, s, t) == (-3, 4, 5)
    return Classification(bb, bc, cc, disc, tag)


def degree_objective(params, n, colors):
    """The summand degree bound at one lattice point, an exact integer.

    Sum of the maximal degrees of every factor of the summand (thetas and
    6j quotients positively, the four theta denominators negatively, the
    framing monomial exponents with their multiplicities, the unknot
    values, and the global framing correction).  The half-integer framing
    terms always combine to an integer on even colors.
    """
    r, s, t, u = params.astuple()
    a, b, c, d = colors.a, colors.b, colors.c, colors.d
    value = dplus_theta(a, b, c)
    value += 2 * dplus_delta6j(a, b, c, n, n, n)[0]
    value += dplus_delta6j(b, n, n, d, n, n)[0]
    for x, w in ((a, r), (b, s), (c, t), (d, u)):
        twist = -w * x * (x + 2)
        assert twist % 2 == 0
        value += twist // 2
    for x in (a, b, c, d):
        value += 2 * x
        value -= dplus_theta(x, n, n)
    value += 2 * u * n * (n + 2)
    return value


def face_objective(params, n, b, c):
    """The objective on the face a = b+c, d = 2n, directly as a quadratic.

    Equals degree_objective(params, n, (b+c, b, c, 2n)) for even lattice
    points of the triangle b, c >= 0, b + c <= 2n.
    """
    r, s, t, u = params.astuple()
    num = (
        -(r + s + 1) * b * b
        - 2 * (r + s - 1) * b
        - 2 * (r + 1) * b * c
        - (r + t) * c * c
        - 2 * (r + t - 2) * c
        + 4 * u * n
    )
    assert num % 2 == 0
    return num // 2


def line_objective(params, n, b):
    """The face objective on the boundary line b + c = 2n."""
    r, s, t, u = params.astuple()
    num = (
        -(s + t - 1) * b * b
        + 2 * (2 * (t - 1) * n - s + t - 1) * b
        - 4 * (r + t) * n * n
        - 4 * (r - u + t - 2) * n
    )
    assert num % 2 == 0
    return num // 2


def line_peak(params, n):
    """Real maximizer of the boundary-line quadratic."""
    r, s, t, u = params.astuple()
    return Fraction(2 * (t - 1) * n - s + t - 1, s + t - 1)


def brute_max_objective(params, n):
    """Exhaustive maximum of the objective over the whole domain.

    Returns the maximum and every maximizing lattice point in enumeration
    order.
    """
    best = None
    argmax = []
    for colors in domain_points(n):
        value = degree_objective(params, n, colors)
        if best is None or value > best:
            best = value
            argmax = [colors]
        elif value == best:
            argmax.append(colors)
    return best, argmax


def fast_max_objective(params, n):
    """Case-analysis maximum of the objective, no domain scan.

    Quadratic cases restrict to the face a = b+c, d = 2n and compare the
    boundary-line values at the even points bracketing the real peak
    (clamped to [0, 2n]) with the face value at the origin; linear cases
    return the origin value 2un outright.
    """
    if n < 1:
        raise ValueError(f"fast maximization needs n >= 1, got {n}")
    r, s, t, u = params.astuple()
    tag = classify(params).tag
    if tag in ("2.2", "2.3", "2.4"):
        return 2 * u * n
    peak = line_peak(params, n)
    lo = ((peak.numerator // peak.denominator) // 2) * 2
    candidates = {0, 2 * n}
    for b in (lo - 2, lo, lo + 2, lo + 4):
        if 0 <= b <= 2 * n:
            candidates.add(b)
    best = max(line_objective(params, n, b) for b in sorted(candidates))
    return max(best, face_objective(params, n, 0, 0))


def period(params):
    """Degree-model period: (s+t-1)/2 in the quadratic cases, else 1."""
    if classify(params).degree_model == "quadratic":
        return (params.s + params.t - 1) // 2
    return 1


def quadratic_coefficient(params):
    """Growth rate of the degree: 2(t-1)^2/(s+t-1) - 2(r+t), or 0."""
    r, s, t, u = params.astuple()
    if classify(params).degree_model == "quadratic":
        return Fraction(2 * (t - 1) ** 2, s + t - 1) - 2 * (r + t)
    return Fraction(0)


def linear_coefficient(params):
    """The full linear coefficient (twice the half-coefficient b)."""
    r, s, t, u = params.astuple()
    if classify(params).degree_model == "quadratic":
        return 2 * (r + u + 3)
    return 2 * u


def residue_data(params, j):
    """Constant-term data for residue class j of the quadratic model."""
    r, s, t, u = params.astuple()
    p2 = s + t - 1
    if not 0 <= j < p2 // 2:
        raise ValueError(f"residue {j} outside [0, {p2 // 2})")
    x = Fraction(2 * (t - 1) * j, p2)
    candidates = _nearest_odd(x)
    picks = []
    for v in candidates:
        offset = v - 1 - x
        constant = -Fraction(p2, 2) * offset * offset - p2 * offset - 2 * (u + 2)
        picks.append((v, offset, constant))
    if len(picks) == 2 and picks[0][2] != picks[1][2]:
        raise ArithmeticError(f"odd-tie constants differ at residue {j}")
    v, offset, constant = picks[0]
    return ResidueData(j, v, offset, constant)


def _nearest_odd(x):
    """Odd integers nearest to the rational x; two on a tie, smaller first."""
    k = (x - 1) / 2
    lo = 2 * (k.numerator // k.denominator) + 1
    hi = lo + 2
    dlo, dhi = x - lo, hi - x
    if dlo < dhi:
        return [lo]
    if dhi < dlo:
        return [hi]
    return [lo, hi]


def residue_table(params):
    """All residue classes of the quadratic model, in order."""
    if classify(params).degree_model != "quadratic":
        return []
    return [residue_data(params, j) for j in range(period(params))]


def constant_term(params, j):
    """Constant coefficient of the degree model on residue class j."""
    if classify(params).degree_model == "quadratic":
        return residue_data(params, j).constant
    return Fraction(-2 * params.u)


def closed_form_dplus(params, N, threshold=None):
    """Degree of the N-colored invariant by the closed form.

    Quadratic cases: aN^2 + 2bN + c_j with j = N mod (s+t-1)/2; linear
    cases: 2u(N-1).  The formula is only guaranteed above the empirically
    recorded stabilization threshold; pass it to enforce the guard, leave
    it None to request the raw value.
    """
    if N < 1:
        raise ValueError(f"color N must be >= 1, got {N}")
    if threshold is not None and N < threshold:
        raise BelowThreshold(f"N={N} below recorded threshold {threshold}")
    if classify(params).degree_model != "quadratic":
        return 2 * params.u * (N - 1)
    j = N % period(params)
    value = (
        quadratic_coefficient(params) * N * N
        + linear_coefficient(params) * N
        + constant_term(params, j)
    )
    if value.denominator != 1:
        raise ArithmeticError(f"closed form not integral at N={N}")
    return int(value)


def report_fragment(params, n0=None):
    """Classification and residue table as one JSON-ready fragment."""
    fragment = classify(params).to_json()
    fragment["period"] = period(params)
    fragment["residues"] = [r.to_json() for r in residue_table(params)]
    fragment["N0"] = n0
    return fragment


def fit_quasi(samples, p):
    """Fit a period-p quadratic quasi-polynomial to (N, degree) samples.

    Each residue class needs at least three samples; the quadratic through
    its last three is taken.  n0 is the least sample N from which every
    later sample (all classes merged) matches its class model.
    """
    if p < 1:
        raise ValueError(f"period must be positive, got {p}")
    ordered = sorted(samples)
    by_class = {}
    for N, value in ordered:
        by_class.setdefault(N % p, []).append((N, value))
    coeffs = {}
    for j in range(p):
        pts = by_class.get(j, [])
        if len(pts) < 3:
            raise NoQuadraticFit(
                f"residue class {j} has {len(pts)} samples, need at least 3"
            )
        coeffs[j] = _quadratic_through(pts[-3:])
    n0 = None
    for N, value in reversed(ordered):
        if _eval_quad(coeffs[N % p], N) == value:
            n0 = N
        else:
            break
    if n0 is None:
        raise NoQuadraticFit("even the final samples disagree with their models")
    return QuasiPolynomial(p, coeffs, n0)


def _quadratic_through(pts):
    (x1, y1), (x2, y2), (x3, y3) = pts
    d21 = Fraction(y2 - y1, x2 - x1)
    d32 = Fraction(y3 - y2, x3 - x2)
    a = (d32 - d21) / (x3 - x1)
    two_b = d21 - a * (x1 + x2)
    c = y1 - a * x1 * x1 - two_b * x1
    return (a, two_b, c)


def _eval_quad(model, N):
    a, two_b, c = model
    return a * N * N + two_b * N + c


def stabilization_threshold(params, degrees):
    """Least N from which every computed degree matches the closed form.

    degrees is a list of (N, value) pairs.  Returns None when even the
    last sample disagrees.
    """
    n0 = None
    for N, value in sorted(degrees, reverse=True):
        if closed_form_dplus(params, N) == value:
            n0 = N
        else:
            break
    return n0
