"""The 320 conics on a smooth member X_p, built exactly.

For each node q_i the residual point p_i lies on the Segre cubic; a singular
point s of the Kummer surface X_{p_i} is dual to a trope T, and on T

    beta_i X_p = X_{p_i} + (Delta/4) Q_i^2 = mu Q'^2 + (Delta/4) Q_i^2,

which splits as a product of the two conics a2*Q_i +- r*Q' with
r^2 = -4 mu a2^2 / Delta.  Everything is computed in the node tower
Q(sqrt c_1, ..., sqrt c_5).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

from .geometry import (
    DegenerateError,
    SurfaceParams,
    _params,
    delta,
    family_quartic,
    gamma_matrix,
    hyperplane_value,
    quadric,
    residual_coefficients,
    singular_points_on_segre,
    surface_equation,
)
from .poly import MultiPoly, act_linear, exact_divide, matrix_inverse, restrict_to_plane
from .tower import (
    TowerDescriptor,
    TowerElement,
    apply_sign_automorphism,
    embed_rational_sqrt,
    tower_sqrt,
)

_VARS = ("x", "y", "z", "w")


@dataclass(frozen=True)
class ConicRecord:
    node: int
    plane: tuple[TowerElement, ...]
    quad: MultiPoly
    branch: int
    gamma: int = 0  # Gamma bitmask carrying the seed to this record

    @property
    def tower(self) -> TowerDescriptor:
        return self.plane[0].desc


def _lift_poly(f: MultiPoly, tower: TowerDescriptor) -> MultiPoly:
    return f.map_coefficients(lambda c: c if isinstance(c, TowerElement) else tower.rational(c))


def normalize_vector(v: Sequence[Any]) -> tuple[Any, ...]:
    """Scale so that the first nonzero entry is 1."""
    lead = next(t for t in v if t)
    if isinstance(lead, int):
        lead = Fraction(lead)
    inv = 1 / lead
    return tuple(t * inv for t in v)


# --------------------------------------------------------------------------
# tropes, Q' and mu
# --------------------------------------------------------------------------


def trope_from_singular_point(s: Sequence[Any]) -> tuple[Any, ...]:
    """Plane coefficients r3*x + r2*y + r1*z + w of the point [r3:r2:r1:1]."""
    if len(s) != 4:
        raise ValueError("singular point must have four coordinates")
    if s[3] != 1:
        raise ValueError("singular point must be normalized with last coordinate 1")
    return tuple(s)


def plane_image(plane: Sequence[Any], mask: int) -> tuple[Any, ...]:
    """Coefficients of gamma(T): a -> a M^{-1} (contragredient action)."""
    Minv = _gamma_inverse(mask)
    return tuple(sum((plane[r] * Minv[r][c] for r in range(4)), start=0 * plane[0]) for c in range(4))


@lru_cache(maxsize=None)
def _gamma_inverse(mask: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(row) for row in matrix_inverse([[Fraction(v) for v in row] for row in gamma_matrix(mask)]))


def qprime_coefficients(s: Sequence[Any]) -> tuple[Any, ...]:
    """a0..a5 of Q' for the singular point s = [r3:r2:r1:1]."""
    r3, r2, r1 = s[0], s[1], s[2]
    u = (r2 * r3 - r1) * (r2 * r3 + r1)
    v = (r1 * r3 - r2) * (r1 * r3 + r2)
    t = (r1 * r2 - r3) * (r1 * r2 + r3)
    k = 2 * r1**2 * r2**2 * r3**2 - r1**4 - r2**4 - r3**4 + 1
    return (u * v, u * t, v * t, r3 * r2 * k, r3 * r1 * k, r2 * r1 * k)


def qprime(s: Sequence[Any]) -> MultiPoly:
    a0, a1, a2, a3, a4, a5 = qprime_coefficients(s)
    terms = {
        (2, 0, 0, 0): a0, (0, 2, 0, 0): a1, (0, 0, 2, 0): a2,
        (1, 1, 0, 0): a3, (1, 0, 1, 0): a4, (0, 1, 1, 0): a5,
    }
    return MultiPoly(4, terms, _VARS)


def qprime_and_mu(residual: Sequence[Any], s: Sequence[Any]) -> tuple[MultiPoly, Any]:
    """Q' and mu for the pinned residual quartic with coefficient vector ``residual``.

    Checks that X_{p_i} - mu Q'^2 vanishes on the trope of s.
    """
    Ai, _, Ci, _, _ = residual
    a2 = qprime_coefficients(s)[2]
    if not a2:
        raise DegenerateError("a2 vanishes: degenerate trope")
    r1 = s[2]
    mu = (r1**4 * Ai + r1**2 * Ci + Ai) / a2**2
    Q = qprime(s)
    tower = s[0].desc if isinstance(s[0], TowerElement) else None
    Xi = family_quartic(list(residual))
    if tower is not None:
        Xi = _lift_poly(Xi, tower)
        Q = _lift_poly(Q, tower)
    T = MultiPoly.linear(list(trope_from_singular_point(s)), _VARS)
    if exact_divide(Xi - Q * Q * mu, T) is None:
        raise ArithmeticError("X_{p_i} - mu Q'^2 is not divisible by the trope")
    return Q, mu


# --------------------------------------------------------------------------
# conic pairs
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _node_data(coords: tuple[int, ...], i: int) -> tuple[TowerDescriptor, tuple, tuple]:
    from .galois import node_tower

    p = SurfaceParams(coords)
    tower = node_tower(p, i)
    residual = tuple(residual_coefficients(p, i))
    points = singular_points_on_segre(SurfaceParams(residual), tower)
    return tower, residual, tuple(points)


def node_singular_points(p: SurfaceParams | Sequence, i: int) -> list[tuple[TowerElement, ...]]:
    p = _params(p)
    return list(_node_data(p.coords, i)[2])


def conic_pair(p: SurfaceParams | Sequence, i: int, s: Sequence[TowerElement] | None = None) -> tuple[ConicRecord, ConicRecord]:
    """The two conics a2*Q_i +- r*Q' on the trope of s (default: the seed point)."""
    p = _params(p)
    tower, residual, points = _node_data(p.coords, i)
    if s is None:
        s = points[0]
    d = delta(p)
    if d == 0:
        raise DegenerateError(f"{p} lies on the Segre cubic")
    Q, mu = qprime_and_mu(residual, s)
    if not mu:
        raise DegenerateError("mu vanishes; the conic pair collapses")
    a2 = qprime_coefficients(s)[2]
    r = tower_sqrt(mu * a2**2 * Fraction(-4, d))
    if r is None:
        raise DegenerateError(f"-4 mu a2^2/Delta is not a square in the node {i} tower {tower}")
    Qi = _lift_poly(quadric(i), tower) * a2
    plane = trope_from_singular_point(s)
    plus = ConicRecord(i, plane, Qi + Q * r, 1)
    minus = ConicRecord(i, plane, Qi - Q * r, -1)
    # product identity on the trope: (4 a2^2 beta / Delta) X_p
    X = _lift_poly(surface_equation(p), tower)
    prod = restrict_to_plane(plus.quad * minus.quad, plane)
    from .geometry import beta

    target = restrict_to_plane(X, plane) * (a2**2 * (4 * beta(p, i) / d))
    if prod != target:
        raise ArithmeticError("conic pair does not multiply to beta_i X_p on the trope")
    return plus, minus


def gamma_record(rec: ConicRecord, mask: int) -> ConicRecord:
    if mask == 0:
        return rec
    M = [[Fraction(v) for v in row] for row in gamma_matrix(mask)]
    return ConicRecord(rec.node, plane_image(rec.plane, mask), act_linear(rec.quad, M), rec.branch, rec.gamma ^ mask)


def conic_key(rec: ConicRecord) -> tuple:
    plane = normalize_vector(rec.plane)
    restricted = restrict_to_plane(rec.quad, plane)
    coeffs = normalize_vector([c for _, c in sorted(restricted.terms.items())])
    monos = tuple(sorted(restricted.terms))
    return rec.node, plane, monos, coeffs


def plane_key(rec: ConicRecord) -> tuple:
    return rec.node, normalize_vector(rec.plane)


def conics_for_node(p: SurfaceParams | Sequence, i: int) -> list[ConicRecord]:
    """The 32 conics of node q_i: the Gamma-orbit of the seed pair, mask-major order."""
    p = _params(p)
    plus, minus = conic_pair(p, i)
    out = []
    for mask in range(16):
        out.append(gamma_record(plus, mask))
        out.append(gamma_record(minus, mask))
    keys = {conic_key(r) for r in out}
    planes = {plane_key(r) for r in out}
    if len(keys) != 32 or len(planes) != 16:
        raise DegenerateError(f"node {i}: orbit collapsed to {len(keys)} conics on {len(planes)} planes")
    return out


def all_conics(p: SurfaceParams | Sequence) -> list[ConicRecord]:
    p = _params(p)
    out = []
    for i in range(1, 11):
        try:
            out.extend(conics_for_node(p, i))
        except (DegenerateError, ArithmeticError) as exc:
            raise type(exc)(f"node {i}: {exc}") from exc
    return out


def record_labels(records: Sequence[ConicRecord]) -> list[str]:
    return [f"q{r.node}:{r.gamma}:{'+' if r.branch > 0 else '-'}" for r in records]


def transform_record_signs(rec: ConicRecord, signs: Sequence[int]) -> ConicRecord:
    plane = tuple(apply_sign_automorphism(c, signs) for c in rec.plane)
    quad = rec.quad.map_coefficients(lambda c: apply_sign_automorphism(c, signs))
    return ConicRecord(rec.node, plane, quad, rec.branch, rec.gamma)


def conjugate_record(rec: ConicRecord, records_by_plane: dict) -> ConicRecord:
    """The other conic on the same plane."""
    pair = records_by_plane[plane_key(rec)]
    return pair[1] if conic_key(pair[0]) == conic_key(rec) else pair[0]


# --------------------------------------------------------------------------
# verification
# --------------------------------------------------------------------------


def _conic_determinant(f: MultiPoly) -> Any:
    if f.nvars != 3:
        raise ValueError("ternary form expected")
    half = Fraction(1, 2)
    c = f.coefficient
    m = [
        [c((2, 0, 0)), c((1, 1, 0)) * half, c((1, 0, 1)) * half],
        [c((1, 1, 0)) * half, c((0, 2, 0)), c((0, 1, 1)) * half],
        [c((1, 0, 1)) * half, c((0, 1, 1)) * half, c((0, 0, 2))],
    ]
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def verify_conic(p: SurfaceParams | Sequence, rec: ConicRecord) -> bool:
    """X_p|_T divisible by quad|_T, and the restricted conic is smooth."""
    p = _params(p)
    tower = rec.tower
    X = _lift_poly(surface_equation(p), tower)
    plane = rec.plane
    if not any(plane):
        return False
    q = restrict_to_plane(rec.quad, plane)
    if not q or q.degree != 2:
        return False
    if exact_divide(restrict_to_plane(X, plane), q) is None:
        return False
    return bool(_conic_determinant(q))


# --------------------------------------------------------------------------
# closed-form tropes for q_1
# --------------------------------------------------------------------------


def _global_tower(p: SurfaceParams) -> TowerDescriptor:
    from .galois import global_classes, independent_prefix

    values = global_classes(p)
    keep = independent_prefix(values)
    return TowerDescriptor.from_classes([values[k] for k in keep])


SIGMA_Q1 = ("q+C", "q+D", "q-E", "p+0", "p-0", "p+1", "p-1", "p+2", "p-2")


def radical_tower(p: SurfaceParams | Sequence) -> TowerDescriptor:
    """Q(sqrt(q+C), sqrt(q+D), sqrt(-q-E), sqrt(p+-k) for k=0,1,2, sqrt(Delta)).

    Holds every radical of the closed-form node-1 tropes and, since each node-1
    class is a product of these forms, the whole node-1 field as well.
    """
    from .galois import independent_prefix

    p = _params(p)
    values = [Fraction(hyperplane_value(h, p)) * (-1 if h == "q-E" else 1) for h in SIGMA_Q1]
    values.append(Fraction(delta(p)))
    if any(v == 0 for v in values):
        raise DegenerateError(f"{p} lies on a hyperplane through q1 or on the Segre cubic")
    keep = independent_prefix(values)
    return TowerDescriptor.from_classes([values[k] for k in keep])


def _root(value: Fraction, tower: TowerDescriptor) -> TowerElement:
    if value == 0:
        raise DegenerateError("radicand vanishes")
    r = embed_rational_sqrt(value, tower)
    if r is None:
        raise DegenerateError(f"sqrt({value}) is not in {tower}")
    return r


def node1_seed_plane(p: SurfaceParams | Sequence, tower: TowerDescriptor | None = None) -> tuple[TowerElement, ...]:
    """[r0 : r1 : r2 : r3] for node q_1 from the closed-form radical expressions."""
    p = _params(p)
    tower = tower or radical_tower(p)
    h = {name: Fraction(hyperplane_value(name, p)) for name in SIGMA_Q1}
    sC, sD, sE = _root(h["q+C"], tower), _root(h["q+D"], tower), _root(-h["q-E"], tower)
    sp = {k: _root(h[k], tower) for k in ("p+0", "p-0", "p+1", "p-1", "p+2", "p-2")}

    def rt(*names: str) -> TowerElement:
        out = tower.one()
        for n in names:
            out = out * sp[n]
        return out

    r0 = sC * sD * sE * (8 * p.B)
    r1 = sC * (rt("p-2", "p-0", "p+2", "p+1") + rt("p+1", "p+0") * h["p+2"]
               + rt("p-2", "p-1", "p+2", "p+0") + rt("p-1", "p-0") * h["p-2"])
    r2 = sD * (rt("p-1", "p-0", "p+1", "p+2") + rt("p+2", "p+0") * h["p+1"]
               + rt("p-1", "p-2", "p+1", "p+0") + rt("p-2", "p-0") * h["p-1"])
    r3 = -sE * (rt("p-0", "p-1", "p+0", "p+2") + rt("p+2", "p+1") * h["p+0"]
                + rt("p-0", "p-2", "p+0", "p+1") + rt("p-2", "p-1") * h["p-0"])
    return (r0, r1, r2, r3)


def node1_plane_formulas(p: SurfaceParams | Sequence, tower: TowerDescriptor | None = None) -> list[tuple[TowerElement, ...]]:
    """The Gamma-orbit of the closed-form node-1 trope, mask order."""
    seed = node1_seed_plane(p, tower)
    return [plane_image(seed, m) for m in range(16)]


def embed_node_planes(p: SurfaceParams | Sequence, i: int, target: TowerDescriptor | None = None) -> set[tuple]:
    """Normalized node-i trope coefficients carried into ``target`` (default: the global tower)."""
    p = _params(p)
    target = target or _global_tower(p)
    tower = _node_data(p.coords, i)[0]
    images = []
    for g in tower.generators:
        img = embed_rational_sqrt(g, target)
        if img is None:
            raise ArithmeticError(f"node {i} generator {g} is outside {target}")
        images.append(img)
    out = set()
    for rec in conics_for_node(p, i)[::2]:
        plane = normalize_vector(rec.plane)
        out.add(tuple(c.map_to(target, images) for c in plane))
    return out
