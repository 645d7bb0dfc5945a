"""Monodromy of the 160 tropes and 320 conics.

The stored tables give, for each loop (around a singular hyperplane, or the
Segre cubic for the conic table) and each node, the induced permutation of
that node's tropes as an element of Gamma, with a leading "-" when the two
conics on every trope are also exchanged.  They are checked three ways:
re-derivation from the q_1 column by transport along Omega, comparison with
the Galois action of the square-class flips, and numeric loop tracking.
"""
from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Mapping, Sequence

import numpy as np

from .geometry import (
    DELTA_NAME,
    HYPERPLANE_NAMES,
    HYPERPLANES,
    DegenerateError,
    SurfaceParams,
    _params,
    family_coefficients,
    gamma_matrix,
    gamma_word,
    node_hyperplanes,
    parse_gamma_word,
    quadric,
)
from .groups import (
    NODE_LABELS,
    Perm,
    action_on_nodes,
    conjugate_rule,
    omega_group,
    perm_closure,
)

LOOP_ROWS: tuple[str, ...] = (DELTA_NAME,) + tuple(HYPERPLANE_NAMES)
SIGMA_Q1: tuple[str, ...] = tuple(node_hyperplanes(1))


# --------------------------------------------------------------------------
# tables
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Entry:
    """An element of Gamma, optionally composed with the conjugate swap."""

    mask: int
    swap: bool = False

    @classmethod
    def parse(cls, text: str) -> Entry:
        text = text.strip()
        if not text:
            return cls(0)
        if text == "-1":
            return cls(0, True)
        if text.startswith("-"):
            return cls(parse_gamma_word(text[1:]), True)
        return cls(parse_gamma_word(text))

    def __str__(self) -> str:
        if not self.mask:
            return "-1" if self.swap else ""
        return ("-" if self.swap else "") + gamma_word(self.mask)


@dataclass(frozen=True)
class MonodromyTable:
    rows: tuple[str, ...]
    header: tuple[str, ...]
    entries: Mapping[tuple[str, int], Entry]

    def __getitem__(self, key: tuple[str, int]) -> Entry:
        return self.entries[key]

    def column(self, i: int) -> dict[str, Entry]:
        return {r: self.entries[(r, i)] for r in self.rows}


def _row_name(label: str) -> str:
    # row labels "-q-C" etc. name the loop around q-C = 0
    return label[1:] if label.startswith("-q") else label


def _load(name: str) -> MonodromyTable:
    text = resources.files("quartic_conics").joinpath("data", name).read_text()
    reader = list(csv.reader(text.splitlines()))
    header = tuple(reader[0][1:])
    if len(header) != 10:
        raise ValueError(f"{name}: expected 10 node columns")
    rows, entries = [], {}
    for line in reader[1:]:
        r = _row_name(line[0])
        rows.append(r)
        for i, cell in enumerate(line[1:], start=1):
            entries[(r, i)] = Entry.parse(cell)
    return MonodromyTable(tuple(rows), header, entries)


def check_table_structure(t2: MonodromyTable, t3: MonodromyTable) -> None:
    if set(t2.rows) != set(HYPERPLANE_NAMES):
        raise ValueError("plane table rows are not the 15 hyperplanes")
    if t3.rows[0] != DELTA_NAME or set(t3.rows[1:]) != set(HYPERPLANE_NAMES):
        raise ValueError("conic table rows are not Delta plus the 15 hyperplanes")
    for i in range(1, 11):
        if t3[(DELTA_NAME, i)] != Entry(0, True):
            raise ValueError(f"conic table Delta row, column {i} is not -1")
        for r in t2.rows:
            e2, e3 = t2[(r, i)], t3[(r, i)]
            if e2.swap:
                raise ValueError("plane table entries cannot swap conics")
            expected = Entry(e2.mask, bool(e2.mask))
            if e3 != expected:
                raise ValueError(f"conic table ({r}, {i}) = {e3} but plane table gives {e2}")


@lru_cache(maxsize=None)
def stored_tables() -> tuple[MonodromyTable, MonodromyTable]:
    t2, t3 = _load("table2.csv"), _load("table3.csv")
    check_table_structure(t2, t3)
    return t2, t3


def q1_column() -> dict[str, int]:
    """Gamma masks of the q_1 column (nontrivial only on Sigma_{q_1})."""
    t2, _ = stored_tables()
    return {r: e.mask for r, e in t2.column(1).items() if e.mask}


def transporters(convention: str = "to_q1") -> dict[int, object]:
    """For each node i an element of Omega relating q_1 and q_i.

    ``to_q1``: phi(q_i) = q_1 (so phi(H) is read in the q_1 column);
    ``from_q1``: phi(q_1) = q_i.  The first element in breadth-first order is used.
    """
    out: dict[int, object] = {}
    for g in omega_group():
        act = action_on_nodes(g)
        for i in range(1, 11):
            if i in out:
                continue
            if convention == "to_q1" and act(NODE_LABELS[i - 1]) == "q1":
                out[i] = g
            elif convention == "from_q1" and act("q1") == NODE_LABELS[i - 1]:
                out[i] = g
        if len(out) == 10:
            break
    if len(out) != 10:
        raise ArithmeticError("Omega is not transitive on the nodes")
    return out


def derive_table(column: Mapping[str, int] | None = None, convention: str = "to_q1") -> dict[tuple[str, int], int]:
    """Every (hyperplane, node) entry as phi^{-1} gamma_{phi(H)} phi."""
    column = q1_column() if column is None else column
    phis = transporters(convention)
    return {(h, i): conjugate_rule(phis[i], h, column) for h in HYPERPLANE_NAMES for i in range(1, 11)}


def compare_derived(derived: Mapping[tuple[str, int], int]) -> list[tuple[str, int, int, int]]:
    """Mismatches (row, node, derived mask, stored mask)."""
    t2, _ = stored_tables()
    return [(h, i, m, t2[(h, i)].mask) for (h, i), m in derived.items() if t2[(h, i)].mask != m]


# --------------------------------------------------------------------------
# permutation groups
# --------------------------------------------------------------------------

PLANE_LABELS: tuple[tuple[int, int], ...] = tuple((i, m) for i in range(1, 11) for m in range(16))
CONIC_LABELS: tuple[tuple[int, int, int], ...] = tuple(
    (i, m, b) for i in range(1, 11) for m in range(16) for b in (1, -1)
)


def plane_perm(entries: Mapping[int, Entry]) -> Perm:
    """Node i's tropes gamma_m(T_i) move to gamma_{m ^ mask}(T_i)."""
    index = {lab: k for k, lab in enumerate(PLANE_LABELS)}
    return Perm(PLANE_LABELS, tuple(index[(i, m ^ entries[i].mask)] for i, m in PLANE_LABELS))


def conic_perm(entries: Mapping[int, Entry]) -> Perm:
    index = {lab: k for k, lab in enumerate(CONIC_LABELS)}
    images = []
    for i, m, b in CONIC_LABELS:
        e = entries[i]
        images.append(index[(i, m ^ e.mask, -b if e.swap else b)])
    return Perm(CONIC_LABELS, tuple(images))


def plane_generators() -> dict[str, Perm]:
    t2, _ = stored_tables()
    return {r: plane_perm({i: t2[(r, i)] for i in range(1, 11)}) for r in t2.rows}


def conic_generators() -> dict[str, Perm]:
    _, t3 = stored_tables()
    return {r: conic_perm({i: t3[(r, i)] for i in range(1, 11)}) for r in t3.rows}


@dataclass(frozen=True)
class GroupSummary:
    order: int
    degree: int
    abelian: bool
    exponent_two: bool
    orbit_sizes: tuple[int, ...]


def _summary(gens: Sequence[Perm]) -> GroupSummary:
    from .groups import orbits

    group = perm_closure(list(gens))
    abelian = all((a * b).images == (b * a).images for a in gens for b in gens)
    exp2 = all((g * g).is_identity() for g in group)
    return GroupSummary(
        order=len(group),
        degree=len(gens[0].labels),
        abelian=abelian,
        exponent_two=exp2,
        orbit_sizes=tuple(sorted(len(o) for o in orbits(list(gens)))),
    )


def plane_monodromy_group() -> GroupSummary:
    return _summary(list(plane_generators().values()))


def conic_monodromy_group() -> GroupSummary:
    return _summary(list(conic_generators().values()))


# --------------------------------------------------------------------------
# Galois side
# --------------------------------------------------------------------------


def loop_to_class_flips(target: str) -> tuple[int, ...]:
    """1-based indices of the global classes containing ``target`` to odd order."""
    from .galois import GLOBAL_CLASS_EXPRS

    if target not in LOOP_ROWS:
        raise ValueError(f"unknown loop target {target!r}")
    return tuple(j + 1 for j, (_, fs) in enumerate(GLOBAL_CLASS_EXPRS) if fs.count(target) % 2)


@dataclass(frozen=True)
class MatchReport:
    rows: Mapping[str, bool]
    mismatches: Mapping[str, list[str]]
    galois_order: int
    table_order: int
    groups_equal: bool
    orbit_sizes: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return all(self.rows.values()) and self.groups_equal


def _record_index(records) -> dict[tuple[int, int, int], int]:
    return {(r.node, r.gamma, r.branch): k for k, r in enumerate(records)}


def match_galois_monodromy(p: SurfaceParams | Sequence) -> MatchReport:
    """Compare, row by row, the Galois flip permutation with the table permutation."""
    from .conics import all_conics
    from .galois import galois_flip_permutation, galois_group
    from .groups import orbits

    p = _params(p)
    if galois_group(p).rank != 10:
        raise DegenerateError(f"{p} does not have rank 10")
    records = all_conics(p)
    idx = _record_index(records)
    to_table = [CONIC_LABELS.index((r.node, r.gamma, r.branch)) for r in records]
    gens = conic_generators()
    ok, bad, galois_perms, table_perms = {}, {}, [], []
    for row in LOOP_ROWS:
        flips = {j - 1 for j in loop_to_class_flips(row)}
        g = galois_flip_permutation(p, flips, records)
        t = gens[row]
        # table perm carried to record order
        t_rec = tuple(idx[CONIC_LABELS[t.images[to_table[k]]]] for k in range(len(records)))
        galois_perms.append(g)
        table_perms.append(Perm(g.labels, t_rec))
        ok[row] = g.images == t_rec
        if not ok[row]:
            nodes = sorted({records[k].node for k in range(len(records)) if g.images[k] != t_rec[k]})
            bad[row] = [f"q{i}" for i in nodes]
    G = perm_closure(galois_perms)
    T = perm_closure(table_perms)
    equal = {g.images for g in G} == {t.images for t in T}
    return MatchReport(ok, bad, len(G), len(T), equal, tuple(sorted(len(o) for o in orbits(galois_perms))))


# --------------------------------------------------------------------------
# numeric tracking
# --------------------------------------------------------------------------

DEFAULT_STEPS = 512
MAX_STEPS = 1 << 16
AMBIGUITY_RATIO = 10.0

_HYP = {h: np.array(HYPERPLANES[h], dtype=complex) for h in HYPERPLANE_NAMES}


def delta_c(p: np.ndarray) -> complex:
    A, B, C, D, E = p
    return 16 * A**3 + A * B**2 - 4 * A * (C**2 + D**2 + E**2) + 4 * C * D * E


def grad_delta_c(p: np.ndarray) -> np.ndarray:
    A, B, C, D, E = p
    return np.array([
        48 * A**2 + B**2 - 4 * (C**2 + D**2 + E**2),
        2 * A * B,
        -8 * A * C + 4 * D * E,
        -8 * A * D + 4 * C * E,
        -8 * A * E + 4 * C * D,
    ])


@lru_cache(maxsize=None)
def _q_square(i: int) -> np.ndarray:
    return np.array([complex(c) for c in family_coefficients(quadric(i) ** 2)])


@lru_cache(maxsize=None)
def _quadric_matrix(i: int) -> np.ndarray:
    q = quadric(i)
    M = np.zeros((4, 4), dtype=complex)
    for e, c in q.terms.items():
        idx = [k for k, v in enumerate(e) for _ in range(v)]
        a, b = idx
        if a == b:
            M[a, a] += complex(c)
        else:
            M[a, b] += complex(c) / 2
            M[b, a] += complex(c) / 2
    return M


def residual_numeric(p: np.ndarray, i: int) -> np.ndarray:
    """beta_i X_p - (Delta/4) Q_i^2 as a coefficient vector."""
    from .geometry import node

    beta = np.dot(grad_delta_c(p), np.array(node(i), dtype=complex)) / 4
    return beta * p - delta_c(p) / 4 * _q_square(i)


def singular_points_numeric(P: np.ndarray) -> np.ndarray:
    """The 16 singular points [x, y, z, 1] of the Kummer member P (complex)."""
    A, B, C, D, E = P
    a = -A * A * B * B
    b = 4 * (2 * A * D - C * E) * (2 * A * E - C * D)
    c = 2 * (A * A * B * B - 2 * (E * E + D * D) * (4 * A * A + C * C) + 16 * A * C * D * E)
    z = np.roots([a, 0, b, 0, c, 0, b, 0, a])
    d_ = 4 * A * A - C * C
    e_ = E * E - D * D
    z2 = z * z
    y2 = -(z2 * z2 * (A * (d_ + e_)) + z2 * (C * e_) + A * (e_ - d_)) / (d_ * (z2 * E - D))
    y = np.sqrt(y2)
    z = np.repeat(z, 2)
    z2 = z * z
    y = np.stack([y, -y], axis=1).ravel()
    x = -(z2 * B * C + z2 * z2 * A * B + A * B) / (y * z * 2 * (C * C - 4 * A * A))
    return np.stack([x, y, z, np.ones_like(z)], axis=1)


def planes_numeric(p: np.ndarray, i: int = 1) -> np.ndarray:
    return singular_points_numeric(residual_numeric(p, i))


def conics_numeric(p: np.ndarray, i: int = 1) -> np.ndarray:
    """32 vectors (plane, restricted conic) for node i; the conic part is projective."""
    P = residual_numeric(p, i)
    pts = singular_points_numeric(P)
    d = delta_c(p)
    Qi = _quadric_matrix(i)
    r3, r2, r1 = pts[:, 0], pts[:, 1], pts[:, 2]
    u = (r2 * r3 - r1) * (r2 * r3 + r1)
    v = (r1 * r3 - r2) * (r1 * r3 + r2)
    t = (r1 * r2 - r3) * (r1 * r2 + r3)
    k = 2 * r1**2 * r2**2 * r3**2 - r1**4 - r2**4 - r3**4 + 1
    a = (u * v, u * t, v * t, r3 * r2 * k, r3 * r1 * k, r2 * r1 * k)
    mu = (P[0] * r1**4 + P[2] * r1**2 + P[0]) / a[2] ** 2
    r = np.sqrt(-4 * mu * a[2] ** 2 / d)
    n = len(pts)
    Qp = np.zeros((n, 4, 4), dtype=complex)
    for (row, col), c in {(0, 0): a[0], (1, 1): a[1], (2, 2): a[2]}.items():
        Qp[:, row, col] = c
    for (row, col), c in {(0, 1): a[3], (0, 2): a[4], (1, 2): a[5]}.items():
        Qp[:, row, col] = Qp[:, col, row] = c / 2
    L = np.zeros((n, 4, 3), dtype=complex)
    L[:, :3, :3] = np.eye(3)
    L[:, 3, :] = -pts[:, :3] / pts[:, 3:4]
    base = a[2][:, None, None] * Qi[None]
    twist = r[:, None, None] * Qp
    out = np.empty((n, 2, 10), dtype=complex)
    for b, sign in enumerate((1, -1)):
        M = np.einsum("nji,njk,nkl->nil", L, base + sign * twist, L)
        vec = np.stack([M[:, 0, 0], M[:, 1, 1], M[:, 2, 2], M[:, 0, 1], M[:, 0, 2], M[:, 1, 2]], axis=1)
        out[:, b, :4] = pts
        out[:, b, 4:] = vec
    return out.reshape(2 * n, 10)


@dataclass(frozen=True)
class Loop:
    """A closed path in P^4 given as segments of complex base points."""

    target: str
    coordinate: int
    center: complex
    rho: float
    start: np.ndarray
    detour: np.ndarray | None = None  # optional shifted base point (B' = 0 case)

    @property
    def segments(self) -> int:
        return 3 if self.detour is None else 5

    def at(self, t: float) -> np.ndarray:
        """Point of the loop at parameter t in [0, segments]."""
        if self.detour is not None:
            if t <= 1:
                return self.start + (self.detour - self.start) * t
            if t >= 4:
                return self.detour + (self.start - self.detour) * (t - 4)
            t -= 1
        base = self.start if self.detour is None else self.detour
        f0 = base[self.coordinate] - self.center
        # approach along a slightly rotated ray so real obstructions are not crossed
        ang = cmath.phase(f0) + 0.37
        f1 = self.rho * cmath.exp(1j * ang)
        if t <= 1:
            f = f0 + (f1 - f0) * t
        elif t <= 2:
            f = self.rho * cmath.exp(1j * (ang + 2 * math.pi * (t - 1)))
        else:
            f = f1 + (f0 - f1) * (t - 2)
        out = base.copy()
        out[self.coordinate] += f - f0
        return out

    def points(self, steps: int) -> np.ndarray:
        return np.array([self.at(k / steps) for k in range(self.segments * steps + 1)])


def _obstruction_radius(p: np.ndarray, k: int, center: complex, skip: str) -> float:
    """Distance from ``center`` (in coordinate k) to the nearest other discriminant component."""
    radii = []
    for h in HYPERPLANE_NAMES:
        if h == skip:
            continue
        c = _HYP[h]
        if abs(c[k]) < 1e-15:
            continue
        # h(p + (center + f - p_k) e_k) = 0
        root = (c[k] * (p[k] - center) - np.dot(c, p)) / c[k]
        radii.append(abs(root))
    # Delta as a polynomial in f: sample and interpolate (degree <= 3)
    fs = np.array([0, 1, -1, 2, 1j]) * 1.0
    vals = []
    for f in fs[:4]:
        q = p.copy()
        q[k] = center + f
        vals.append(delta_c(q))
    coeffs = np.polyfit(fs[:4].real, np.array(vals), 3)
    for r in np.roots(coeffs):
        if skip == DELTA_NAME and abs(r) < 1e-9 * (1 + abs(center)):
            continue
        radii.append(abs(r))
    if k == 1:
        # B = 0 is where the two conics on each trope meet; keep the circle off it
        radii.append(abs(center))
    return min(radii) if radii else 1.0


def make_loop(p: SurfaceParams | Sequence, target: str, epsilon: float = 1e-2) -> Loop:
    p = _params(p)
    base = np.array([complex(c) for c in p.coords])
    if target == DELTA_NAME:
        k = 1
        A, _, C, D, E = base
        if abs(A) == 0:
            raise DegenerateError("A = 0: no Segre-cubic loop in the B coordinate")
        detour = None
        rest = 16 * A**3 - 4 * A * (C**2 + D**2 + E**2) + 4 * C * D * E
        Bp = cmath.sqrt(-rest / A)
        if abs(Bp) < 1e-12:
            detour = base.copy()
            detour[0] += epsilon
            A = detour[0]
            rest = 16 * A**3 - 4 * A * (C**2 + D**2 + E**2) + 4 * C * D * E
            Bp = cmath.sqrt(-rest / A)
        ref = base if detour is None else detour
        center = Bp if abs(ref[1] - Bp) <= abs(ref[1] + Bp) else -Bp
        radius = _obstruction_radius(ref, k, center, DELTA_NAME)
        return Loop(target, k, center, 0.5 * min(radius, abs(ref[1] - center)), base, detour)
    if target not in HYPERPLANES:
        raise ValueError(f"unknown loop target {target!r}")
    c = _HYP[target]
    k = int(np.argmax(np.abs(c)))
    center = base[k] - np.dot(c, base) / c[k]
    radius = _obstruction_radius(base, k, center, target)
    return Loop(target, k, center, 0.5 * min(radius, abs(base[k] - center)), base)


def loop_clearance(loop: Loop, steps: int = DEFAULT_STEPS) -> float:
    """Smallest |form| along the loop over the 15 forms and Delta, the target excluded."""
    pts = loop.points(steps)
    vals = [np.abs(pts @ _HYP[h]) for h in HYPERPLANE_NAMES if h != loop.target]
    if loop.target != DELTA_NAME:
        vals.append(np.abs(np.array([delta_c(q) for q in pts])))
    return float(min(v.min() for v in vals))


class AmbiguousMatch(RuntimeError):
    pass


PLANE_BLOCKS = ((0, 4),)
CONIC_BLOCKS = ((0, 4), (4, 10))


def projective_distance(a: np.ndarray, b: np.ndarray, blocks: Sequence[tuple[int, int]]) -> np.ndarray:
    """Pairwise chordal distance between rows of a and b, the max over projective blocks."""
    out = np.zeros((len(a), len(b)))
    for lo, hi in blocks:
        u, v = a[:, lo:hi], b[:, lo:hi]
        inner = np.abs(u @ v.conj().T) ** 2
        norms = np.outer(np.sum(np.abs(u) ** 2, axis=1), np.sum(np.abs(v) ** 2, axis=1))
        out = np.maximum(out, np.sqrt(np.clip(1 - inner / norms, 0, None)))
    return out


def _match(dist: np.ndarray, what: str) -> np.ndarray:
    srt = np.sort(dist, axis=1)
    choice = np.argmin(dist, axis=1)
    if np.any(srt[:, 1] < AMBIGUITY_RATIO * srt[:, 0]) or len(set(choice.tolist())) != len(choice):
        raise AmbiguousMatch(f"{what} is ambiguous")
    return choice


def _advance(loop: Loop, evaluate, blocks, cur: np.ndarray, a: float, b: float, depth: int) -> tuple[np.ndarray, int]:
    """Carry ``cur`` from parameter a to b, bisecting while the matching is ambiguous."""
    nxt = evaluate(loop.at(b))
    try:
        return nxt[_match(projective_distance(cur, nxt, blocks), "nearest-neighbour matching")], 0
    except AmbiguousMatch:
        if depth == 0:
            raise
    mid = (a + b) / 2
    cur, d1 = _advance(loop, evaluate, blocks, cur, a, mid, depth - 1)
    cur, d2 = _advance(loop, evaluate, blocks, cur, mid, b, depth - 1)
    return cur, 1 + max(d1, d2)


def track(loop: Loop, evaluate, blocks=PLANE_BLOCKS, steps: int = DEFAULT_STEPS) -> tuple[list[int], int]:
    """Permutation of the tracked items and the finest steps-per-segment used.

    Intervals where the matching is ambiguous are halved, down to MAX_STEPS
    per segment.
    """
    if loop_clearance(loop, steps) < 1e-9:
        raise DegenerateError(f"a radicand vanishes on the {loop.target} loop")
    depth = max(0, int(math.log2(MAX_STEPS // steps)))
    start = evaluate(loop.at(0))
    cur, deepest = start, 0
    for k in range(loop.segments * steps):
        cur, d = _advance(loop, evaluate, blocks, cur, k / steps, (k + 1) / steps, depth)
        deepest = max(deepest, d)
    # cur[j] is where start[j] ended
    perm = _match(projective_distance(cur, start, blocks), "endpoint identification")
    return perm.tolist(), steps << deepest


def _gamma_on_planes(planes: np.ndarray, perm: Sequence[int], tol: float = 1e-6) -> int | None:
    """The Gamma mask g with planes[perm[j]] ~ gamma_g(planes[j]) for all j, if any."""
    for g in range(16):
        Minv = np.linalg.inv(np.array(gamma_matrix(g), dtype=complex))
        ok = True
        for j, k in enumerate(perm):
            img = planes[j][:4] @ Minv
            img = img / img[3]
            if np.abs(img - planes[k][:4] / planes[k][3]).max() > tol * (1 + np.abs(img).max()):
                ok = False
                break
        if ok:
            return g
    return None


@dataclass(frozen=True)
class TrackResult:
    target: str
    mask: int | None
    swap: bool | None
    steps: int
    rho: float

    @property
    def entry(self) -> str:
        if self.mask is None:
            return "?"
        return str(Entry(self.mask, bool(self.swap)))


def numeric_track_planes(p: SurfaceParams | Sequence, target: str, steps: int = DEFAULT_STEPS) -> TrackResult:
    loop = make_loop(p, target)
    perm, used = track(loop, planes_numeric, PLANE_BLOCKS, steps)
    planes = planes_numeric(loop.at(0))
    return TrackResult(target, _gamma_on_planes(planes, perm), False, used, loop.rho)


def numeric_track_conics(p: SurfaceParams | Sequence, target: str = DELTA_NAME, steps: int = DEFAULT_STEPS) -> TrackResult:
    loop = make_loop(p, target)
    perm, used = track(loop, conics_numeric, CONIC_BLOCKS, steps)
    conics = conics_numeric(loop.at(0))
    plane_of = [j // 2 for j in range(32)]
    plane_perm_ = []
    swaps = set()
    for j in range(0, 32, 2):
        k = perm[j]
        plane_perm_.append(plane_of[k])
        swaps.add((k % 2) != (j % 2))
    mask = _gamma_on_planes(conics[::2], plane_perm_) if len(swaps) == 1 else None
    swap = swaps.pop() if len(swaps) == 1 else None
    return TrackResult(target, mask, swap, used, loop.rho)
