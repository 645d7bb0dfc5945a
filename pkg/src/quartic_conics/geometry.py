"""The quartic family over P^4, its discriminant cubic and the Heisenberg group.

A point p = [A:B:C:D:E] of P^4 gives the quartic

    A(x^4+y^4+z^4+w^4) + Bxyzw + C(x^2y^2+z^2w^2) + D(x^2z^2+y^2w^2) + E(x^2w^2+y^2z^2)

whose singular members are cut out by 15 hyperplanes and the Segre cubic
Delta = 0.  This module holds that dictionary together with the Kummer
correspondences between points of P^3 and points of the cubic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

from .arith import GaussRat, I, Rational, as_fraction
from .poly import (
    MultiPoly,
    evaluate,
    exact_divide,
    gradient,
    restrict_to_line,
    restrict_to_plane,
)
from .tower import RATIONALS, TowerDescriptor, TowerElement, embed_rational_sqrt, tower_sqrt


class DegenerateError(ValueError):
    """The input lies on a locus where the requested construction breaks down."""


# --------------------------------------------------------------------------
# points of P^4
# --------------------------------------------------------------------------


def pin_vector(coords: Sequence[Rational | str]) -> tuple[int, ...]:
    """Integer representative with gcd 1 and first nonzero entry positive."""
    fr = [as_fraction(c) for c in coords]
    if not any(fr):
        raise ValueError("the zero vector is not a projective point")
    lcm = 1
    for f in fr:
        lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in fr]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    ints = [v // g for v in ints]
    if next(v for v in ints if v) < 0:
        ints = [-v for v in ints]
    return tuple(ints)


@dataclass(frozen=True)
class SurfaceParams:
    """A point [A:B:C:D:E] stored by its pinned integer representative."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != 5:
            raise ValueError(f"need 5 coordinates, got {len(self.coords)}")
        object.__setattr__(self, "coords", pin_vector(self.coords))

    @classmethod
    def parse(cls, text: str) -> SurfaceParams:
        parts = [t.strip() for t in text.split(",")]
        if len(parts) != 5 or not all(parts):
            raise ValueError(f"expected five comma separated coordinates, got {text!r}")
        return cls(tuple(Fraction(t) for t in parts))

    @property
    def A(self) -> int:
        return self.coords[0]

    @property
    def B(self) -> int:
        return self.coords[1]

    @property
    def C(self) -> int:
        return self.coords[2]

    @property
    def D(self) -> int:
        return self.coords[3]

    @property
    def E(self) -> int:
        return self.coords[4]

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.coords) + "]"


def _params(p: SurfaceParams | Sequence[Rational]) -> SurfaceParams:
    return p if isinstance(p, SurfaceParams) else SurfaceParams(tuple(p))


# --------------------------------------------------------------------------
# the family and Delta
# --------------------------------------------------------------------------

_x, _y, _z, _w = (MultiPoly.var(i, 4) for i in range(4))
FAMILY_BASIS: tuple[MultiPoly, ...] = (
    _x**4 + _y**4 + _z**4 + _w**4,
    _x * _y * _z * _w,
    _x**2 * _y**2 + _z**2 * _w**2,
    _x**2 * _z**2 + _y**2 * _w**2,
    _x**2 * _w**2 + _y**2 * _z**2,
)
# one representative monomial per basis quartic, used to read coefficients back
_FAMILY_KEYS = ((4, 0, 0, 0), (1, 1, 1, 1), (2, 2, 0, 0), (2, 0, 2, 0), (2, 0, 0, 2))


def family_quartic(coeffs: Sequence[Any]) -> MultiPoly:
    """The family member with coefficient vector ``coeffs`` over any field."""
    out = MultiPoly(4)
    for c, b in zip(coeffs, FAMILY_BASIS):
        out = out + b * c
    return out


def surface_equation(p: SurfaceParams | Sequence[Rational]) -> MultiPoly:
    return family_quartic(_params(p).coords)


def family_coefficients(f: MultiPoly) -> list[Any] | None:
    """Read [A,B,C,D,E] off a quartic, or None if f is not of the family shape."""
    coeffs = [f.coefficient(k) for k in _FAMILY_KEYS]
    return coeffs if family_quartic(coeffs) == f else None


_A, _B, _C, _D, _E = (MultiPoly.var(i, 5) for i in range(5))
DELTA_POLY = 16 * _A**3 + _A * _B**2 - 4 * _A * (_C**2 + _D**2 + _E**2) + 4 * _C * _D * _E


def delta(p: SurfaceParams | Sequence[Any]) -> Any:
    c = p.coords if isinstance(p, SurfaceParams) else p
    A, B, C, D, E = c
    return 16 * A**3 + A * B**2 - 4 * A * (C**2 + D**2 + E**2) + 4 * C * D * E


# --------------------------------------------------------------------------
# hyperplanes and nodes
# --------------------------------------------------------------------------

HYPERPLANES: dict[str, tuple[int, int, int, int, int]] = {
    "A": (1, 0, 0, 0, 0),
    "q+C": (2, 0, 1, 0, 0),
    "q-C": (2, 0, -1, 0, 0),
    "q+D": (2, 0, 0, 1, 0),
    "q-D": (2, 0, 0, -1, 0),
    "q+E": (2, 0, 0, 0, 1),
    "q-E": (2, 0, 0, 0, -1),
    "p+0": (4, 1, 2, 2, 2),
    "p-0": (4, -1, 2, 2, 2),
    "p+1": (4, 1, 2, -2, -2),
    "p-1": (4, -1, 2, -2, -2),
    "p+2": (4, 1, -2, 2, -2),
    "p-2": (4, -1, -2, 2, -2),
    "p+3": (4, 1, -2, -2, 2),
    "p-3": (4, -1, -2, -2, 2),
}
HYPERPLANE_NAMES: tuple[str, ...] = tuple(HYPERPLANES)
DELTA_NAME = "Delta"

NODES: tuple[tuple[int, int, int, int, int], ...] = (
    (1, 0, -2, -2, 2),
    (1, 0, -2, 2, -2),
    (1, 0, 2, -2, -2),
    (1, 0, 2, 2, 2),
    (0, -2, 1, 0, 0),
    (0, 2, 1, 0, 0),
    (0, -2, 0, 1, 0),
    (0, 2, 0, 1, 0),
    (0, -2, 0, 0, 1),
    (0, 2, 0, 0, 1),
)

QUADRICS: tuple[MultiPoly, ...] = (
    _x**2 - _y**2 - _z**2 + _w**2,
    _x**2 - _y**2 + _z**2 - _w**2,
    _x**2 + _y**2 - _z**2 - _w**2,
    _x**2 + _y**2 + _z**2 + _w**2,
    _x * _y - _z * _w,
    _x * _y + _z * _w,
    _x * _z - _y * _w,
    _x * _z + _y * _w,
    _x * _w - _y * _z,
    _x * _w + _y * _z,
)


def _check_node(i: int) -> int:
    if not 1 <= i <= 10:
        raise ValueError(f"node index must be in 1..10, got {i}")
    return i


def node(i: int) -> tuple[int, ...]:
    return NODES[_check_node(i) - 1]


def quadric(i: int) -> MultiPoly:
    return QUADRICS[_check_node(i) - 1]


def hyperplane_value(name: str, p: SurfaceParams | Sequence[Any]) -> Any:
    if name == DELTA_NAME:
        return delta(p)
    c = p.coords if isinstance(p, SurfaceParams) else p
    return sum(h * v for h, v in zip(HYPERPLANES[name], c))


def node_hyperplanes(i: int) -> list[str]:
    """The singular hyperplanes through node q_i."""
    q = node(i)
    return [h for h in HYPERPLANE_NAMES if hyperplane_value(h, q) == 0]


@dataclass(frozen=True)
class SingularVerdict:
    smooth: bool
    values: dict[str, Fraction]
    vanishing: tuple[str, ...]


def singular_test(p: SurfaceParams | Sequence[Rational]) -> SingularVerdict:
    p = _params(p)
    values = {h: Fraction(hyperplane_value(h, p)) for h in HYPERPLANE_NAMES}
    values[DELTA_NAME] = Fraction(delta(p))
    vanishing = tuple(h for h, v in values.items() if v == 0)
    return SingularVerdict(not vanishing, values, vanishing)


# --------------------------------------------------------------------------
# the group Gamma on P^3
# --------------------------------------------------------------------------

GAMMA_GENERATORS: tuple[tuple[tuple[int, ...], ...], ...] = (
    ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0)),  # [y,x,w,z]
    ((0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0)),  # [z,w,x,y]
    ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, -1, 0), (0, 0, 0, -1)),  # [x,y,-z,-w]
    ((1, 0, 0, 0), (0, -1, 0, 0), (0, 0, 1, 0), (0, 0, 0, -1)),  # [x,-y,z,-w]
)


def _matmul(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> tuple[tuple[Any, ...], ...]:
    n, m, k = len(a), len(b[0]), len(b)
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)) for i in range(n))


def matvec(M: Sequence[Sequence[Any]], v: Sequence[Any]) -> list[Any]:
    return [sum((M[i][j] * v[j] for j in range(len(v)) if M[i][j]), start=0) for i in range(len(M))]


def gamma_word(mask: int) -> str:
    """Name of the Gamma element with generator bitmask ``mask`` (bit 0 = g1)."""
    return "".join(f"g{j + 1}" for j in range(4) if mask >> j & 1) or "id"


def parse_gamma_word(word: str) -> int:
    word = word.strip()
    if word in ("", "id", "1"):
        return 0
    mask = 0
    rest = word
    while rest:
        if not rest.startswith("g") or len(rest) < 2 or rest[1] not in "1234":
            raise ValueError(f"bad Gamma word {word!r}")
        bit = 1 << (int(rest[1]) - 1)
        if mask & bit:
            raise ValueError(f"repeated generator in {word!r}")
        mask |= bit
        rest = rest[2:]
    return mask


@lru_cache(maxsize=None)
def gamma_matrix(mask: int) -> tuple[tuple[int, ...], ...]:
    """Integer matrix of the Gamma element, as the ordered product g1 g2 g3 g4."""
    M: tuple[tuple[int, ...], ...] = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
    for j in range(4):
        if mask >> j & 1:
            M = _matmul(M, GAMMA_GENERATORS[j])
    return M


def gamma_elements() -> list[tuple[int, tuple[tuple[int, ...], ...]]]:
    return [(m, gamma_matrix(m)) for m in range(16)]


def projectively_equal(a: Sequence[Any], b: Sequence[Any]) -> bool:
    if not any(a) or not any(b):
        return False
    n = len(a)
    return all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n))


def normalize_point(v: Sequence[Any]) -> tuple[Any, ...]:
    """Scale so that the last nonzero coordinate is 1."""
    k = max(i for i, t in enumerate(v) if t)
    lead = v[k]
    if isinstance(lead, int):
        lead = Fraction(lead)
    inv = 1 / lead
    return tuple(t * inv for t in v)


def gamma_orbit(P: Sequence[Any]) -> list[tuple[Any, ...]]:
    """The 16 points gamma(P), in mask order, each normalized."""
    return [normalize_point(matvec(gamma_matrix(m), P)) for m in range(16)]


def on_invariant_lines(P: Sequence[Any]) -> bool:
    """True iff P lies on one of the 30 lines fixed pointwise by some gamma."""
    return any(projectively_equal(matvec(gamma_matrix(m), P), P) for m in range(1, 16))


# --------------------------------------------------------------------------
# Kummer surfaces on the Segre cubic
# --------------------------------------------------------------------------


def kummer_from_point(P: Sequence[Rational]) -> SurfaceParams:
    """The point of the Segre cubic whose Kummer surface is singular at Gamma.P."""
    if len(P) != 4:
        raise ValueError("P must have four coordinates")
    P = [as_fraction(c) for c in P]
    if not any(P):
        raise ValueError("zero vector")
    if on_invariant_lines(P):
        raise DegenerateError(f"{P} lies on an invariant line of Gamma")
    x, y, z, w = P
    s1, d1 = y * z + x * w, y * z - x * w
    s2, d2 = x * z + y * w, x * z - y * w
    s3, d3 = z * w + x * y, z * w - x * y
    A = s1 * d1 * s2 * d2 * s3 * d3
    B = (2 * x * y * z * w * (-x**2 - y**2 + z**2 + w**2) * (-x**2 + y**2 + z**2 - w**2)
         * (x**2 - y**2 + z**2 - w**2) * (x**2 + y**2 + z**2 + w**2))
    C = s1 * d1 * s2 * d2 * (x**4 + y**4 - z**4 - w**4)
    D = s1 * d1 * s3 * d3 * (-x**4 + y**4 - z**4 + w**4)
    E = s2 * d2 * s3 * d3 * (x**4 - y**4 - z**4 + w**4)
    if not any((A, B, C, D, E)):
        raise DegenerateError(f"{P} gives the zero point of P^4")
    result = SurfaceParams((A, B, C, D, E))
    if delta(result) != 0:
        raise ArithmeticError("Kummer point is off the Segre cubic")
    grad = gradient(surface_equation(result))
    for Q in gamma_orbit(P):
        if any(evaluate(g, Q) for g in grad):
            raise ArithmeticError(f"Kummer surface is smooth at {Q}")
    return result


def kummer_from_point_raw(P: Sequence[Rational]) -> tuple[Fraction, ...]:
    """Unpinned [A,B,C,D,E] straight from the product formulas."""
    x, y, z, w = (as_fraction(c) for c in P)
    s1, d1 = y * z + x * w, y * z - x * w
    s2, d2 = x * z + y * w, x * z - y * w
    s3, d3 = z * w + x * y, z * w - x * y
    return (
        s1 * d1 * s2 * d2 * s3 * d3,
        2 * x * y * z * w * (-x**2 - y**2 + z**2 + w**2) * (-x**2 + y**2 + z**2 - w**2)
        * (x**2 - y**2 + z**2 - w**2) * (x**2 + y**2 + z**2 + w**2),
        s1 * d1 * s2 * d2 * (x**4 + y**4 - z**4 - w**4),
        s1 * d1 * s3 * d3 * (-x**4 + y**4 - z**4 + w**4),
        s2 * d2 * s3 * d3 * (x**4 - y**4 - z**4 + w**4),
    )


# --------------------------------------------------------------------------
# lines through the nodes
# --------------------------------------------------------------------------


def beta(p: SurfaceParams | Sequence[Any], i: int) -> Fraction:
    """The scalar beta_i with grad(Delta)(p) . q_i = 4 beta_i."""
    c = p.coords if isinstance(p, SurfaceParams) else p
    A, B, C, D, E = (as_fraction(v) for v in c)
    sq = C * C + D * D + E * E
    quarter = B * B / 4
    _check_node(i)
    if i == 1:
        return 12 * A * A + quarter + 4 * A * (C + D - E) - sq + 2 * (C * D - C * E - D * E)
    if i == 2:
        return 12 * A * A + quarter + 4 * A * (C - D + E) - sq + 2 * (-C * D + C * E - D * E)
    if i == 3:
        return 12 * A * A + quarter + 4 * A * (-C + D + E) - sq + 2 * (-C * D - C * E + D * E)
    if i == 4:
        return 12 * A * A + quarter - 4 * A * (C + D + E) - sq + 2 * (C * D + C * E + D * E)
    return {
        5: -(A * B + 2 * A * C - D * E),
        6: A * B - 2 * A * C + D * E,
        7: -(A * B + 2 * A * D - C * E),
        8: A * B - 2 * A * D + C * E,
        9: -(A * B + 2 * A * E - C * D),
        10: A * B - 2 * A * E + C * D,
    }[i]


def third_intersection(p: SurfaceParams | Sequence[Rational], i: int) -> tuple[SurfaceParams, Fraction]:
    """Residual point of the line p q_i on the Segre cubic, and beta_i(p)."""
    p = _params(p)
    q = node(i)
    d = delta(p)
    if d == 0:
        raise DegenerateError(f"{p} lies on the Segre cubic")
    form = restrict_to_line(DELTA_POLY, p.coords, q)  # binary cubic in (s, t)
    if form.coefficient((0, 3)) or form.coefficient((1, 2)):
        raise ArithmeticError("node is not a double point of the restricted cubic")
    c3, c2 = form.coefficient((3, 0)), form.coefficient((2, 1))
    if c2 == 0:
        raise DegenerateError(f"line through {p} and q{i} meets the cubic only at q{i}")
    # f = s^2 (c3 s + c2 t); residual root (s : t) = (c2 : -c3)
    residual = SurfaceParams(tuple(c2 * a - c3 * b for a, b in zip(p.coords, q)))
    b = beta(p, i)
    if Fraction(c2) != 4 * b:
        raise ArithmeticError(f"beta_{i} closed form disagrees with the line computation")
    return residual, b


def residual_surface(p: SurfaceParams | Sequence[Rational], i: int) -> MultiPoly:
    """The pinned quartic beta_i X_p - (Delta/4) Q_i^2 of the residual point."""
    p = _params(p)
    b = beta(p, i)
    if b == 0:
        raise DegenerateError(f"beta_{i} vanishes at {p}")
    f = surface_equation(p) * b - quadric(i) ** 2 * Fraction(delta(p), 4)
    coeffs = family_coefficients(f)
    if coeffs is None:
        raise ArithmeticError("residual quartic is not of the family shape")
    point, _ = third_intersection(p, i)
    if not projectively_equal(coeffs, point.coords):
        raise ArithmeticError("residual quartic does not match the line residual point")
    return f


def residual_coefficients(p: SurfaceParams | Sequence[Rational], i: int) -> list[Fraction]:
    """[A_i, B_i, C_i, D_i, E_i] of the pinned residual quartic."""
    coeffs = family_coefficients(residual_surface(p, i))
    assert coeffs is not None
    return [as_fraction(c) for c in coeffs]


# --------------------------------------------------------------------------
# singular points of a Kummer member
# --------------------------------------------------------------------------


def _sqrt_in(x: TowerElement) -> TowerElement | None:
    if x.is_rational() and x:
        return embed_rational_sqrt(x.rational_value(), x.desc)
    return tower_sqrt(x)


def singular_points_on_segre(
    P: SurfaceParams | Sequence[Rational], tower: TowerDescriptor = RATIONALS
) -> list[tuple[TowerElement, ...]]:
    """The 16 singular points of X_P for P on the Segre cubic, over ``tower``.

    Solves the octic in z (w = 1) through the chain u -> z^2 -> z, then y^2
    from the quadratic relation and x from the bilinear one.  Any branch
    gives one singular point; the other fifteen are its Gamma-orbit.
    """
    coords = P.coords if isinstance(P, SurfaceParams) else tuple(as_fraction(c) for c in P)
    if delta(coords) != 0:
        raise DegenerateError("point is not on the Segre cubic")
    on = [h for h in HYPERPLANE_NAMES if hyperplane_value(h, coords) == 0]
    if on:
        raise DegenerateError(f"point lies on singular hyperplanes {on}")
    A, B, C, D, E = (as_fraction(c) for c in coords)
    a = -A * A * B * B
    b = 4 * (2 * A * D - C * E) * (2 * A * E - C * D)
    c = 2 * (A * A * B * B - 2 * (E * E + D * D) * (4 * A * A + C * C) + 16 * A * C * D * E)
    if a == 0:
        raise DegenerateError("leading coefficient of the octic vanishes")
    one = tower.one()
    disc = b * b - 4 * a * (c - 2 * a)
    s = embed_rational_sqrt(disc, tower) if disc else tower.zero()
    if s is None:
        raise DegenerateError(f"tower {tower} does not contain sqrt({disc})")
    d_ = 4 * A * A - C * C
    e_ = E * E - D * D
    for su in (s, -s):
        u = (one * (-b) + su) / (2 * a)
        m = _sqrt_in(u * u - 4)
        if m is None:
            continue
        for sm in (m, -m):
            z2 = (u + sm) / 2
            z = _sqrt_in(z2)
            if z is None or not z:
                continue
            denom = d_ * (z2 * E - D)
            if not denom:
                continue
            y2 = -(z2 * z2 * (A * (d_ + e_)) + z2 * (C * e_) + A * (e_ - d_)) / denom
            y = _sqrt_in(y2)
            if y is None or not y:
                continue
            x = -(z2 * (B * C) + z2 * z2 * (A * B) + A * B) / (y * z * (2 * (C * C - 4 * A * A)))
            seed = (x, y, z, one)
            points = gamma_orbit(seed)
            grad = gradient(family_quartic(coords))
            for pt in points:
                if any(evaluate(g, pt) for g in grad):
                    raise ArithmeticError(f"computed point {pt} is not singular")
            return points
    raise DegenerateError(f"tower {tower} is too small for the singular points")


# --------------------------------------------------------------------------
# Segre planes and invariant lines
# --------------------------------------------------------------------------


def _normalized_linear(f: MultiPoly) -> tuple[Fraction, ...]:
    coeffs = []
    for i in range(f.nvars):
        e = tuple(int(i == j) for j in range(f.nvars))
        coeffs.append(as_fraction(f.coefficient(e)))
    lead = next(c for c in coeffs if c)
    return tuple(c / lead for c in coeffs)


@lru_cache(maxsize=None)
def segre_plane_decomposition(h: str) -> tuple[frozenset[str], ...]:
    """The three Segre planes in {h = 0} cap {Delta = 0}, as hyperplane triples.

    Delta restricted to h is split by trial division against the restricted
    hyperplane forms; the three linear factors must exhaust it up to a
    constant.  Each factor is shared by exactly two further hyperplanes.
    """
    if h == DELTA_NAME or h not in HYPERPLANES:
        raise ValueError(f"not a singular hyperplane: {h!r}")
    plane = HYPERPLANES[h]
    rest = restrict_to_plane(DELTA_POLY, plane)
    groups: dict[tuple[Fraction, ...], list[str]] = {}
    forms: dict[tuple[Fraction, ...], MultiPoly] = {}
    for other in HYPERPLANE_NAMES:
        if other == h:
            continue
        lin = restrict_to_plane(MultiPoly.linear(HYPERPLANES[other], ("A", "B", "C", "D", "E")), plane)
        if not lin:
            raise ArithmeticError(f"{other} vanishes identically on {h}")
        key = _normalized_linear(lin)
        groups.setdefault(key, []).append(other)
        forms.setdefault(key, lin)
    triples = []
    for key, names in groups.items():
        while True:
            q = exact_divide(rest, forms[key])
            if q is None:
                break
            rest = q
            triples.append(frozenset([h, *names]))
    if rest.degree != 0 or len(triples) != 3:
        raise ArithmeticError(f"Delta does not split into three planes on {h}")
    if any(len(t) != 3 for t in triples):
        raise ArithmeticError(f"unexpected Segre plane shape on {h}: {triples}")
    order = {n: k for k, n in enumerate(HYPERPLANE_NAMES)}
    return tuple(sorted(triples, key=lambda t: sorted(order[n] for n in t)))


def segre_planes() -> list[frozenset[str]]:
    out: list[frozenset[str]] = []
    for h in HYPERPLANE_NAMES:
        for t in segre_plane_decomposition(h):
            if t not in out:
                out.append(t)
    return out


def _nullspace(rows: Sequence[Sequence[Rational]], n: int) -> list[list[Fraction]]:
    m = [[as_fraction(v) for v in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [v / m[r][col] for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][free]
        basis.append(v)
    return basis


# Printed line pairs, keyed by Gamma bitmask; each line is two spanning points.
_i = I
_TABLE_LINES: dict[int, tuple[tuple[tuple[Any, ...], tuple[Any, ...]], tuple[tuple[Any, ...], tuple[Any, ...]]]] = {
    0b0001: (((1, 1, 0, 0), (0, 0, 1, 1)), ((1, -1, 0, 0), (0, 0, 1, -1))),
    0b0010: (((1, 0, 1, 0), (0, 1, 0, 1)), ((1, 0, -1, 0), (0, 1, 0, -1))),
    0b0011: (((1, 0, 0, 1), (0, 1, 1, 0)), ((1, 0, 0, -1), (0, 1, -1, 0))),
    0b0100: (((1, 0, 0, 0), (0, 1, 0, 0)), ((0, 0, 1, 0), (0, 0, 0, 1))),
    0b0101: (((1, -1, 0, 0), (0, 0, 1, 1)), ((1, 1, 0, 0), (0, 0, 1, -1))),
    0b0110: (((1, 0, _i, 0), (0, 1, 0, _i)), ((1, 0, -_i, 0), (0, 1, 0, -_i))),
    0b0111: (((1, 0, 0, _i), (0, 1, _i, 0)), ((1, 0, 0, -_i), (0, 1, -_i, 0))),
    0b1000: (((1, 0, 0, 0), (0, 0, 1, 0)), ((0, 1, 0, 0), (0, 0, 0, 1))),
    0b1001: (((1, _i, 0, 0), (0, 0, 1, _i)), ((1, -_i, 0, 0), (0, 0, 1, -_i))),
    0b1010: (((1, 0, -1, 0), (0, 1, 0, 1)), ((1, 0, 1, 0), (0, 1, 0, -1))),
    0b1011: (((1, 0, 0, -_i), (0, 1, _i, 0)), ((1, 0, 0, _i), (0, 1, -_i, 0))),
    0b1100: (((1, 0, 0, 0), (0, 0, 0, 1)), ((0, 1, 0, 0), (0, 0, 1, 0))),
    0b1101: (((1, -_i, 0, 0), (0, 0, 1, _i)), ((1, _i, 0, 0), (0, 0, 1, -_i))),
    0b1110: (((1, 0, -_i, 0), (0, 1, 0, _i)), ((1, 0, _i, 0), (0, 1, 0, -_i))),
    0b1111: (((1, 0, 0, -1), (0, 1, 1, 0)), ((1, 0, 0, 1), (0, 1, -1, 0))),
}

# Segre-plane column as printed; "q+W" is not a hyperplane name.
PRINTED_SEGRE_COLUMN: dict[int, tuple[str, str, str]] = {
    0b0001: ("q+C", "p+0", "p-1"),
    0b0010: ("q+D", "p+0", "p-2"),
    0b0011: ("q+E", "p+0", "p-3"),
    0b0100: ("A", "q+C", "q-C"),
    0b0101: ("q-C", "p-0", "p+1"),
    0b0110: ("q-D", "p-1", "p+3"),
    0b0111: ("q-E", "p-1", "p+2"),
    0b1000: ("A", "q+D", "q-D"),
    0b1001: ("q-C", "p-2", "p+3"),
    0b1010: ("q+D", "p-0", "p+2"),
    0b1011: ("q-E", "p+1", "p-2"),
    0b1100: ("A", "q+E", "q-E"),
    0b1101: ("q-C", "p+2", "p-3"),
    0b1110: ("q-D", "p+1", "p-3"),
    0b1111: ("q+W", "p-0", "p+3"),
}


@dataclass(frozen=True)
class InvariantLinePair:
    gamma: int
    line: tuple[tuple[Any, ...], tuple[Any, ...]]
    line_bar: tuple[tuple[Any, ...], tuple[Any, ...]]
    segre_plane: frozenset[str]

    @property
    def word(self) -> str:
        return gamma_word(self.gamma)


def _to_gauss(v: Sequence[Any]) -> tuple[GaussRat, ...]:
    return tuple(x if isinstance(x, GaussRat) else GaussRat(x) for x in v)


def _line_fixed(mask: int, line: Sequence[Sequence[Any]]) -> bool:
    M = gamma_matrix(mask)
    a, b = (_to_gauss(v) for v in line)
    pts = (a, b, tuple(u + v * 2 for u, v in zip(a, b)))
    return all(projectively_equal(matvec(M, pt), pt) for pt in pts)


def _singular_along(coords: Sequence[Fraction], line: Sequence[Sequence[Any]]) -> bool:
    grad = gradient(family_quartic(coords))
    a, b = (_to_gauss(v) for v in line)
    pts = (a, b, tuple(u + v * 3 for u, v in zip(a, b)))
    return all(not evaluate(g, pt) for g in grad for pt in pts)


def segre_plane_for_lines(mask: int) -> frozenset[str]:
    """The Segre plane whose generic member is singular along gamma's line pair."""
    line, line_bar = _TABLE_LINES[mask]
    hits = []
    for triple in segre_planes():
        basis = _nullspace([HYPERPLANES[h] for h in triple], 5)
        if len(basis) != 3:
            raise ArithmeticError(f"{sorted(triple)} is not a plane")
        samples = [
            [basis[0][k] + 2 * basis[1][k] + 5 * basis[2][k] for k in range(5)],
            [3 * basis[0][k] - basis[1][k] + 7 * basis[2][k] for k in range(5)],
        ]
        if all(_singular_along(s, line) and _singular_along(s, line_bar) for s in samples):
            hits.append(triple)
    if len(hits) != 1:
        raise ArithmeticError(f"{gamma_word(mask)} matches {len(hits)} Segre planes")
    return hits[0]


@lru_cache(maxsize=None)
def invariant_lines_table() -> tuple[InvariantLinePair, ...]:
    rows = []
    for mask in range(1, 16):
        line, line_bar = _TABLE_LINES[mask]
        if not (_line_fixed(mask, line) and _line_fixed(mask, line_bar)):
            raise ArithmeticError(f"lines of {gamma_word(mask)} are not fixed pointwise")
        for g in range(16):
            M = gamma_matrix(g)
            imgs = {_line_key([matvec(M, _to_gauss(v)) for v in ln]) for ln in (line, line_bar)}
            if imgs != {_line_key(line), _line_key(line_bar)}:
                raise ArithmeticError(f"pair of {gamma_word(mask)} is not Gamma-stable")
        rows.append(InvariantLinePair(mask, line, line_bar, segre_plane_for_lines(mask)))
    return tuple(rows)


def _line_key(line: Sequence[Sequence[Any]]) -> tuple:
    """Canonical key of the span of two points: reduced row echelon form."""
    rows = [list(_to_gauss(v)) for v in line]
    piv_cols = []
    r = 0
    for col in range(4):
        piv = next((i for i in range(r, 2) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = GaussRat(1) / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(2):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    return tuple((v.re, v.im) for row in rows for v in row)
