"""Edgepath systems in the Hatcher-Oertel diagram, specialized to M(1/r, 1/(s-1/u), 1/t).

Projective curve systems [a, b, c] on the four-punctured sphere are plotted
in the uv-plane via u = b/(a+b), v = c/(a+b).  Vertices of the diagram:

  arc <p/q>      curve system [1, q-1, p],  uv = ((q-1)/q, p/q)
  circle <p/q>o  curve system [0, p, q],    uv = (1, p/q)
  arc <inf>      uv = (-1, 0)

An edgepath is stored as its edge list in ending-to-starting order, each
edge traversed from its right (larger-u) vertex to its left vertex; the
sign of an edge is +1/-1 as v increases/decreases along that traversal and
its length is 1 for a complete edge or the traversed fraction for a final
partial edge.  A system is one edgepath per tangle; the admissibility
conditions are

  E1  each path starts on the horizontal edge of its tangle fraction,
  E2  paths are minimal (no stopping, retracing, or two sides of one
      diagram triangle in succession),
  E3  ending points share one u-coordinate and their v-coordinates sum
      to zero,
  E4  paths proceed monotonically right to left.

The twist of a system is the sum of -2 * sign * length over non-constant
edges; boundary slopes are twist differences against the Seifert system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .degopt import classify

ARC = "arc"
CIRCLE = "circle"
INFINITY = "infinity"


@dataclass(frozen=True)
class DiagramVertex:
    kind: str
    slope: Fraction | None = None

    def uv(self):
        if self.kind == ARC:
            q = self.slope.denominator
            return (Fraction(q - 1, q), self.slope)
        if self.kind == CIRCLE:
            return (Fraction(1), self.slope)
        return (Fraction(-1), Fraction(0))

    def curve_system(self):
        if self.kind == ARC:
            p, q = self.slope.numerator, self.slope.denominator
            return (1, q - 1, p)
        if self.kind == CIRCLE:
            p, q = self.slope.numerator, self.slope.denominator
            return (0, p, q)
        raise ValueError("the infinity vertex carries no projective class")

    def __str__(self):
        if self.kind == ARC:
            return f"<{self.slope}>"
        if self.kind == CIRCLE:
            return f"<{self.slope}>o"
        return "<inf>"


def arc(slope):
    return DiagramVertex(ARC, Fraction(slope))


def circle_vertex(slope):
    return DiagramVertex(CIRCLE, Fraction(slope))


INFINITY_VERTEX = DiagramVertex(INFINITY)


def vertex_uv(vertex):
    """Exact uv-coordinates of a diagram vertex."""
    return vertex.uv()


NONHORIZONTAL = "nonhorizontal"
HORIZONTAL = "horizontal"
VERTICAL = "vertical"
INFINITY_EDGE = "infinity"
CONSTANT = "constant"


@dataclass(frozen=True)
class DiagramEdge:
    """One edge, traversed from its right vertex toward its left vertex.

    fraction is 1 for a complete edge and k/m in (0, 1) for a partial edge
    ending at the interpolated point; constant edges carry fraction 0 plus
    the horizontal position of the point they sit at.
    """

    kind: str
    right: DiagramVertex
    left: DiagramVertex
    fraction: Fraction = Fraction(1)
    position: Fraction | None = None

    def endpoint(self):
        """The uv-point reached at the left end of the traversal."""
        if self.kind == CONSTANT:
            _, uv = interp_point(self.right, self.left, self.position)
            return uv
        if self.fraction == 1:
            return self.left.uv()
        _, uv = interp_point(self.right, self.left, self.fraction)
        return uv


def nonhorizontal_edge(right, left, fraction=Fraction(1)):
    ps = right.slope.numerator * left.slope.denominator
    qr = right.slope.denominator * left.slope.numerator
    if abs(ps - qr) != 1:
        raise ValueError(f"{right} and {left} are not joined by a diagram edge")
    kind = NONHORIZONTAL
    if right.slope.denominator == 1 and left.slope.denominator == 1:
        kind = VERTICAL
    return DiagramEdge(kind, right, left, Fraction(fraction))


def interp_point(near, far, fraction):
    """Projective interpolation of two vertices, weight `fraction` on far.

    Returns the combined curve system k*[far] + (m-k)*[near] for
    fraction = k/m, plus its uv-coordinates.
    """
    fraction = Fraction(fraction)
    if not 0 <= fraction <= 1:
        raise ValueError(f"interpolation fraction {fraction} outside [0, 1]")
    k, m = fraction.numerator, fraction.denominator
    na, nb, nc = near.curve_system()
    fa, fb, fc = far.curve_system()
    curve = (k * fa + (m - k) * na, k * fb + (m - k) * nb, k * fc + (m - k) * nc)
    a, b, c = curve
    if a + b == 0:
        raise ValueError("interpolated class has no uv-coordinates")
    return curve, (Fraction(b, a + b), Fraction(c, a + b))


def partial_fraction_from_u(near, far, u0):
    """The unique weight on `far` whose interpolated point has u-coordinate u0.

    With q, w the denominators of the near/far arc slopes, the projective
    sum gives k*w + (m-k)*q = m/(1-u0), so the weight is
    (1/(1-u0) - q) / (w - q).  u0 must lie in the edge's u-interval;
    hitting an endpoint returns 0 or 1.
    """
    u0 = Fraction(u0)
    u_near, _ = near.uv()
    u_far, _ = far.uv()
    lo, hi = min(u_near, u_far), max(u_near, u_far)
    if not lo <= u0 <= hi:
        raise ValueError(f"u0={u0} outside the edge interval [{lo}, {hi}]")
    q = near.slope.denominator
    w = far.slope.denominator
    f = (Fraction(1) / (1 - u0) - q) / (w - q)
    assert 0 <= f <= 1
    return f


def edge_measure(edge):
    """(sign, length) of an edge.

    Sign is +1/-1 as v increases/decreases right to left, 0 for infinity
    edges; constant edges have length 0 (their sign never enters a twist).
    """
    if edge.kind == CONSTANT:
        return 0, Fraction(0)
    if edge.kind == INFINITY_EDGE:
        return 0, Fraction(1)
    _, v_right = edge.right.uv()
    _, v_end = edge.endpoint()
    if v_end > v_right:
        sign = 1
    elif v_end < v_right:
        sign = -1
    else:
        sign = 0
    return sign, Fraction(edge.fraction)


@dataclass(frozen=True)
class Edgepath:
    """Edges in ending-to-starting order plus the tangle fraction served."""

    edges: tuple
    tangle: Fraction

    def start_vertex(self):
        return self.edges[-1].right

    def ending_point(self):
        return self.edges[0].endpoint()

    def is_constant(self):
        return all(e.kind == CONSTANT for e in self.edges)

    def length(self):
        return sum((edge_measure(e)[1] for e in self.edges), Fraction(0))


AT_ZERO_VERTEX = "zero_vertex"
INTERIOR_U = "interior"


@dataclass(frozen=True)
class EdgepathSystem:
    paths: tuple
    ending_kind: str

    def ending_u(self):
        return self.paths[0].ending_point()[0]

    def total_length(self):
        return sum((p.length() for p in self.paths), Fraction(0))


@dataclass(frozen=True)
class AdmissibilityReport:
    e1: bool
    e2: bool
    e3: bool
    e4: bool
    lemma41: bool

    def all_conditions(self):
        return self.e1 and self.e2 and self.e3 and self.e4

    def to_json(self):
        return {"E1": self.e1, "E2": self.e2, "E3": self.e3, "E4": self.e4,
                "lemma41": self.lemma41}


def twist(system):
    """Total twist: sum of -2 * sign * length over non-constant edges."""
    total = Fraction(0)
    for path in system.paths:
        for edge in path.edges:
            if edge.kind == CONSTANT:
                continue
            sign, length = edge_measure(edge)
            total += -2 * sign * length
    return total


def seifert_system(params):
    """Edgepath system of the Seifert surface.

    One complete edge from <1/r> to <0>, the chain from <-u/(-su+1)> down
    to <0> through the vertices <k/(sk+1)>, and one complete edge from
    <1/t> to <0>; all three paths end at the origin vertex <0>.
    """
    r, s, t, u = params.astuple()
    zero = arc(Fraction(0))
    path1 = Edgepath((nonhorizontal_edge(arc(Fraction(1, r)), zero),), Fraction(1, r))
    chain = [zero] + [arc(Fraction(k, s * k + 1)) for k in range(1, -u + 1)]
    edges2 = tuple(
        nonhorizontal_edge(chain[i + 1], chain[i]) for i in range(len(chain) - 1)
    )
    path2 = Edgepath(edges2, Fraction(u, s * u - 1))
    path3 = Edgepath((nonhorizontal_edge(arc(Fraction(1, t)), zero),), Fraction(1, t))
    return EdgepathSystem((path1, path2, path3), AT_ZERO_VERTEX)


def ending_u(params):
    """Common ending u-coordinate of the non-Seifert system: (t-1)s/(ts+t-1)."""
    r, s, t, u = params.astuple()
    return Fraction((t - 1) * s, t * s + t - 1)


def line_check(params):
    """Verify the ending u solves the three-line equation and sits leftmost.

    The final edges of the three paths extend to the lines v = u/(t-1),
    v = u/s and v = u - 1; their v-values at the ending u must sum to zero,
    and the ending u must lie strictly left of the u-coordinates of <1/t>,
    <1/(s+1)> and <1/r>.
    """
    r, s, t, u = params.astuple()
    u0 = ending_u(params)
    balance = u0 / (t - 1) + u0 / s + (u0 - 1)
    if balance != 0:
        return False
    u_t = Fraction(t - 1, t)
    u_s1 = Fraction(s, s + 1)
    u_r = Fraction(-r - 1, -r)
    disc = classify(params).disc
    checks = [
        (u0 - u_t, Fraction(-((t - 1) ** 2), t * (s * t + t - 1))),
        (u0 - u_s1, Fraction(-(s * s), (s + 1) * (s * t + t - 1))),
        (u0 - u_r, Fraction(-disc, r * (s * t + t - 1))),
    ]
    return all(actual == closed and actual < 0 for actual, closed in checks)


def _chain_cut(params):
    """Total 1/r-path length, its complete-edge count and final fraction.

    The length is (t-1)^2/(s+t-1) - r - t; k = ceil(length) - 1 keeps the
    final partial fraction in (0, 1], a whole edge on the boundary case.
    """
    r, s, t, u = params.astuple()
    lam = Fraction((t - 1) ** 2, s + t - 1) - r - t
    k = -((-lam).numerator // (-lam).denominator) - 1
    return lam, k, lam - k


def gamma_system(params):
    """Edgepath system of the non-Seifert essential surface (quadratic cases).

    The 1/r path climbs the chain <1/r>, <1/(r+1)>, ... for k complete
    edges and then takes a partial edge so that its total length is
    (t-1)^2/(s+t-1) - r - t; the other two paths are the Seifert chains
    cut short by partial final edges.  All three ending points share the
    u-coordinate (t-1)s/(ts+t-1) and their v-coordinates cancel.
    """
    r, s, t, u = params.astuple()
    cls = classify(params)
    if cls.degree_model != "quadratic":
        raise ValueError(f"no interior-ending system for case {cls.tag} parameters")
    assert cls.disc < 0
    u0 = ending_u(params)

    lam, k, final_frac = _chain_cut(params)
    if not (0 <= k <= -r - 2 and 0 < final_frac <= 1):
        raise ArithmeticError(f"chain cut k={k} out of range for {params}")

    chain1 = [arc(Fraction(1, r + i)) for i in range(k + 2)]
    edges1 = [nonhorizontal_edge(chain1[k], chain1[k + 1], final_frac)]
    for i in range(k - 1, -1, -1):
        edges1.append(nonhorizontal_edge(chain1[i], chain1[i + 1]))
    path1 = Edgepath(tuple(edges1), Fraction(1, r))

    zero = arc(Fraction(0))
    chain2 = [zero] + [arc(Fraction(i, s * i + 1)) for i in range(1, -u + 1)]
    frac2 = partial_fraction_from_u(chain2[1], zero, u0)
    edges2 = [nonhorizontal_edge(chain2[1], zero, frac2)]
    for i in range(1, len(chain2) - 1):
        edges2.append(nonhorizontal_edge(chain2[i + 1], chain2[i]))
    path2 = Edgepath(tuple(edges2), Fraction(u, s * u - 1))

    frac3 = partial_fraction_from_u(arc(Fraction(1, t)), zero, u0)
    path3 = Edgepath(
        (nonhorizontal_edge(arc(Fraction(1, t)), zero, frac3),), Fraction(1, t)
    )

    system = EdgepathSystem((path1, path2, path3), INTERIOR_U)
    for path in system.paths:
        if path.ending_point()[0] != u0:
            raise ArithmeticError(f"path ending off u0={u0} for {params}")
    assert final_frac == partial_fraction_from_u(chain1[k], chain1[k + 1], u0)
    if sum(p.ending_point()[1] for p in system.paths) != 0:
        raise ArithmeticError(f"ending v-coordinates do not cancel for {params}")
    return system


def check_admissible(system):
    """Evaluate E1-E4 and the essentiality direction test, without throwing."""
    e1 = all(_starts_on_tangle(p) for p in system.paths)
    e2 = all(_is_minimal(p) for p in system.paths)
    endings = [p.ending_point() for p in system.paths]
    e3 = len({uv[0] for uv in endings}) == 1 and sum(uv[1] for uv in endings) == 0
    e4 = all(_is_monotone(p) for p in system.paths)

    u_end = endings[0][0]
    signs = set()
    for p in system.paths:
        final = p.edges[0]
        if final.kind != CONSTANT:
            signs.add(edge_measure(final)[0])
    lemma41 = e3 and u_end > 0 and len(signs) == 1 and 0 not in signs
    return AdmissibilityReport(e1, e2, e3, e4, lemma41)


def _starts_on_tangle(path):
    start = path.start_vertex()
    if path.is_constant():
        return start.kind in (ARC, CIRCLE) and start.slope == path.tangle
    return start.kind == ARC and start.slope == path.tangle


def _traversal_vertices(path):
    vertices = [path.start_vertex()]
    for edge in reversed(path.edges):
        vertices.append(edge.left)
    return vertices


def _joined(v1, v2):
    """True when two vertices are joined by an edge of the diagram."""
    if INFINITY in (v1.kind, v2.kind):
        other = v2 if v1.kind == INFINITY else v1
        return other.kind == ARC and other.slope.denominator == 1
    if v1.kind == v2.kind == ARC:
        ps = v1.slope.numerator * v2.slope.denominator
        qr = v1.slope.denominator * v2.slope.numerator
        return abs(ps - qr) == 1
    if v1.kind == v2.kind == CIRCLE:
        return False
    return v1.slope == v2.slope  # horizontal edge arc <-> circle


def _is_minimal(path):
    """No stopping or retracing, and no two sides of a triangle in a row."""
    if path.is_constant():
        return True
    vertices = _traversal_vertices(path)
    seen = set()
    for v in vertices:
        key = (v.kind, v.slope)
        if key in seen:
            return False
        seen.add(key)
    for i in range(len(vertices) - 1):
        if not _joined(vertices[i], vertices[i + 1]):
            return False
    for i in range(len(vertices) - 2):
        if _joined(vertices[i], vertices[i + 2]):
            return False
    return True


def _is_monotone(path):
    for edge in path.edges:
        if edge.kind == CONSTANT:
            continue
        u_right = edge.right.uv()[0]
        u_end = edge.endpoint()[0]
        if u_end > u_right:
            return False
        if u_end == u_right and edge.kind != VERTICAL:
            return False
    return True


def euler_ratio(system):
    """The ratio (Euler characteristic)/(number of sheets) of the surface.

    For a system ending at the origin vertex the negative ratio is the
    total length minus 2.  For an interior ending at u0 it is

        sum of non-constant path lengths + N_const - N
        + (N - 2 - sum over constant paths of 1/q) / (1 - u0)

    with N = 3 tangles here.
    """
    n_paths = len(system.paths)
    if system.ending_kind == AT_ZERO_VERTEX:
        return 2 - system.total_length()
    if system.ending_kind != INTERIOR_U:
        raise ValueError(f"unsupported ending kind {system.ending_kind}")
    u0 = system.ending_u()
    const_paths = [p for p in system.paths if p.is_constant()]
    moving_length = sum(
        (p.length() for p in system.paths if not p.is_constant()), Fraction(0)
    )
    const_q = sum(
        (Fraction(1, p.tangle.denominator) for p in const_paths), Fraction(0)
    )
    neg_ratio = (
        moving_length
        + len(const_paths)
        - n_paths
        + (n_paths - 2 - const_q) / (1 - u0)
    )
    return -neg_ratio


def boundary_slope(params):
    """Boundary slope of the distinguished essential surface.

    Quadratic cases: twist difference of the interior-ending system against
    the Seifert system.  Linear cases: the Seifert surface itself, slope 0.
    """
    if classify(params).degree_model == "quadratic":
        return twist(gamma_system(params)) - twist(seifert_system(params))
    return Fraction(0)


def slope_report(params):
    """Report fragment for the slope CLI and the verification pipeline."""
    case1 = classify(params).degree_model == "quadratic"
    seifert = seifert_system(params)
    report = {
        "u0": None,
        "k": None,
        "gamma_lengths": None,
        "twists": {"seifert": str(twist(seifert)), "gamma": None},
        "slope": str(boundary_slope(params)),
        "euler_ratio_seifert": str(euler_ratio(seifert)),
        "euler_ratio_gamma": None,
        "admissibility": check_admissible(seifert).to_json(),
    }
    if case1:
        gamma = gamma_system(params)
        _, k, _ = _chain_cut(params)
        report["u0"] = str(ending_u(params))
        report["k"] = k
        report["gamma_lengths"] = [str(p.length()) for p in gamma.paths]
        report["twists"]["gamma"] = str(twist(gamma))
        report["euler_ratio_gamma"] = str(euler_ratio(gamma))
        report["admissibility"] = check_admissible(gamma).to_json()
    return report
