"""The projective groups Gamma and Omega acting on P^3 x P^4.

Elements are pairs of integer matrices modulo independent scalars: a 4x4
matrix over Z[i] (kept as real and imaginary parts) and a 5x5 matrix over Z.
Each is stored in a canonical form so that closure can hash them.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .arith import GaussRat
from .geometry import (
    GAMMA_GENERATORS,
    HYPERPLANE_NAMES,
    HYPERPLANES,
    NODES,
    gamma_word,
    projectively_equal,
)

CLOSURE_CAP = 20000


def _gcd_all(arrays: Iterable[np.ndarray]) -> int:
    g = 0
    for a in arrays:
        g = math.gcd(g, int(np.gcd.reduce(np.abs(a).ravel())))
    return g


def _canon3(re: np.ndarray, im: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    flat_re, flat_im = re.ravel(), im.ravel()
    k = int(np.flatnonzero((flat_re != 0) | (flat_im != 0))[0])
    a, b = int(flat_re[k]), int(flat_im[k])
    # multiply by conj(a + bi): the first entry becomes a^2 + b^2 > 0
    re2 = re * a + im * b
    im2 = im * a - re * b
    g = _gcd_all((re2, im2))
    return re2 // g, im2 // g


def _canon4(m: np.ndarray) -> np.ndarray:
    g = _gcd_all((m,))
    m = m // g
    first = m.ravel()[np.flatnonzero(m.ravel())[0]]
    return -m if first < 0 else m


class GroupElement:
    """A projective transformation of P^3 x P^4 in canonical form."""

    __slots__ = ("re", "im", "m4", "key")

    def __init__(self, re: np.ndarray, im: np.ndarray, m4: np.ndarray, canonical: bool = False) -> None:
        if not canonical:
            re, im = _canon3(np.asarray(re, dtype=np.int64), np.asarray(im, dtype=np.int64))
            m4 = _canon4(np.asarray(m4, dtype=np.int64))
        self.re, self.im, self.m4 = re, im, m4
        self.key = re.tobytes() + im.tobytes() + m4.tobytes()

    @classmethod
    def from_exact(cls, m3: Sequence[Sequence[object]], m4: Sequence[Sequence[int]]) -> GroupElement:
        re = [[_re(v) for v in row] for row in m3]
        im = [[_im(v) for v in row] for row in m3]
        return cls(np.array(re, dtype=np.int64), np.array(im, dtype=np.int64), np.array(m4, dtype=np.int64))

    def __mul__(self, other: GroupElement) -> GroupElement:
        re = self.re @ other.re - self.im @ other.im
        im = self.re @ other.im + self.im @ other.re
        return GroupElement(re, im, self.m4 @ other.m4)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupElement) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def is_identity(self) -> bool:
        return self.key == IDENTITY.key

    def acts_trivially_on_p4(self) -> bool:
        return self.m4.tolist() == IDENTITY.m4.tolist()

    def power(self, k: int) -> GroupElement:
        out = IDENTITY
        for _ in range(k):
            out = out * self
        return out

    def order(self) -> int:
        g, k = self, 1
        while not g.is_identity():
            g = g * self
            k += 1
            if k > 1000:
                raise ArithmeticError("element of infinite order")
        return k

    def inverse(self) -> GroupElement:
        return self.power(self.order() - 1)

    def m3_exact(self) -> list[list[GaussRat]]:
        return [[GaussRat(int(a), int(b)) for a, b in zip(r, i)] for r, i in zip(self.re, self.im)]

    def m3_rational(self) -> list[list[int]]:
        if self.im.any():
            raise ValueError("P^3 part is not rational")
        return self.re.tolist()

    def m4_exact(self) -> list[list[int]]:
        return self.m4.tolist()

    def __repr__(self) -> str:
        return f"GroupElement(m3={self.m3_exact()}, m4={self.m4_exact()})"


def _re(v: object) -> int:
    if isinstance(v, GaussRat):
        return int(v.re)
    if isinstance(v, complex):
        return int(v.real)
    return int(v)  # type: ignore[arg-type]


def _im(v: object) -> int:
    if isinstance(v, GaussRat):
        return int(v.im)
    if isinstance(v, complex):
        return int(v.imag)
    return 0


_ID4 = np.eye(4, dtype=np.int64)
IDENTITY = GroupElement(_ID4, np.zeros((4, 4), dtype=np.int64), np.eye(5, dtype=np.int64))

_I = GaussRat(0, 1)
PHI_GENERATORS: tuple[GroupElement, ...] = (
    GroupElement.from_exact(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]],
        [[1, 0, 0, 0, 0], [0, -1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]],
    ),
    GroupElement.from_exact(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
        [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 1], [0, 0, 0, 1, 0]],
    ),
    GroupElement.from_exact(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
        [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 0, 1, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 1]],
    ),
    GroupElement.from_exact(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, _I, 0], [0, 0, 0, _I]],
        [[1, 0, 0, 0, 0], [0, -1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, -1, 0], [0, 0, 0, 0, -1]],
    ),
    GroupElement.from_exact(
        [[1, -1, 0, 0], [1, 1, 0, 0], [0, 0, 1, -1], [0, 0, 1, 1]],
        [[2, 0, 1, 0, 0], [0, 0, 0, 8, -8], [12, 0, -2, 0, 0], [0, 1, 0, 2, 2], [0, -1, 0, 2, 2]],
    ),
)


def phi(k: int) -> GroupElement:
    if not 1 <= k <= 5:
        raise ValueError("phi index must be 1..5")
    return PHI_GENERATORS[k - 1]


def word(*indices: int) -> GroupElement:
    """phi_{i1} phi_{i2} ... as a product of matrices (rightmost acts first)."""
    out = IDENTITY
    for k in indices:
        out = out * phi(k)
    return out


def gamma_element(mask: int) -> GroupElement:
    M = IDENTITY
    for j in range(4):
        if mask >> j & 1:
            M = M * GroupElement.from_exact(GAMMA_GENERATORS[j], np.eye(5, dtype=np.int64).tolist())
    return M


# gamma_1..gamma_4 written as words in the phi generators
GAMMA_AS_PHI_WORDS: dict[int, tuple[int, ...]] = {
    1: (3, 4, 4, 3, 5, 5),
    2: (4, 4, 3, 5, 5, 3),
    3: (4, 4),
    4: (3, 4, 4, 3),
}


@lru_cache(maxsize=None)
def _gamma_lookup() -> dict[bytes, int]:
    return {gamma_element(m).key: m for m in range(16)}


def gamma_mask(g: GroupElement) -> int | None:
    """Bitmask of g if g lies in Gamma, else None."""
    return _gamma_lookup().get(g.key)


def closure(generators: Sequence[GroupElement], cap: int = CLOSURE_CAP) -> list[GroupElement]:
    """All products of the generators, in breadth-first order from the identity."""
    seen = {IDENTITY.key: IDENTITY}
    order = [IDENTITY]
    queue = deque([IDENTITY])
    while queue:
        g = queue.popleft()
        for s in generators:
            h = g * s
            if h.key not in seen:
                seen[h.key] = h
                order.append(h)
                queue.append(h)
                if len(order) > cap:
                    raise ArithmeticError(f"closure exceeds {cap} elements")
    return order


@lru_cache(maxsize=None)
def gamma_group() -> tuple[GroupElement, ...]:
    gens = [gamma_element(1 << j) for j in range(4)]
    return tuple(closure(gens))


@lru_cache(maxsize=None)
def omega_group() -> tuple[GroupElement, ...]:
    return tuple(closure(PHI_GENERATORS))


@dataclass(frozen=True)
class OmegaReport:
    order: int
    gamma_order: int
    gamma_normal: bool
    quotient_order: int
    trivial_centre: bool
    gamma_from_phi_words: bool
    p4_kernel_is_gamma: bool


def omega_report() -> OmegaReport:
    omega = omega_group()
    gamma = gamma_group()
    gamma_keys = {g.key for g in gamma}
    normal = all((s * g * s.inverse()).key in gamma_keys for s in PHI_GENERATORS for g in gamma)
    centre = [z for z in omega if all((z * s).key == (s * z).key for s in PHI_GENERATORS)]
    words_ok = all(word(*GAMMA_AS_PHI_WORDS[j]).key == gamma_element(1 << (j - 1)).key for j in range(1, 5))
    kernel = {g.key for g in omega if g.acts_trivially_on_p4()}
    return OmegaReport(
        order=len(omega),
        gamma_order=len(gamma),
        gamma_normal=normal,
        quotient_order=len(omega) // len(gamma),
        trivial_centre=len(centre) == 1,
        gamma_from_phi_words=words_ok,
        p4_kernel_is_gamma=kernel == gamma_keys,
    )


# --------------------------------------------------------------------------
# permutations
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Perm:
    """A bijection of ``labels`` given as the tuple of image indices."""

    labels: tuple
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.labels))):
            raise ValueError("not a permutation")

    @classmethod
    def identity(cls, labels: Sequence) -> Perm:
        return cls(tuple(labels), tuple(range(len(labels))))

    @classmethod
    def from_mapping(cls, labels: Sequence, mapping: Mapping) -> Perm:
        labels = tuple(labels)
        index = {x: k for k, x in enumerate(labels)}
        return cls(labels, tuple(index[mapping.get(x, x)] for x in labels))

    @classmethod
    def from_cycles(cls, labels: Sequence, text: str) -> Perm:
        """Parse cycle notation such as "(a,b)(c,d,e)"."""
        mapping = {}
        for chunk in text.replace(" ", "").split(")"):
            if not chunk:
                continue
            if not chunk.startswith("("):
                raise ValueError(f"bad cycle text {text!r}")
            items = chunk[1:].split(",")
            for a, b in zip(items, items[1:] + items[:1]):
                mapping[a] = b
        return cls.from_mapping(labels, mapping)

    def __call__(self, x):
        return self.labels[self.images[self.labels.index(x)]]

    def __mul__(self, other: Perm) -> Perm:
        """Composition: (self * other)(x) = self(other(x))."""
        if self.labels != other.labels:
            raise ValueError("label sets differ")
        return Perm(self.labels, tuple(self.images[i] for i in other.images))

    def inverse(self) -> Perm:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(self.labels, tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        k, p = 1, self
        while not p.is_identity():
            p = p * self
            k += 1
        return k

    def cycles(self) -> list[tuple]:
        seen, out = set(), []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cyc, k = [], start
            while k not in seen:
                seen.add(k)
                cyc.append(self.labels[k])
                k = self.images[k]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        return "".join("(" + ",".join(str(x) for x in c) + ")" for c in self.cycles()) or "()"

    def __str__(self) -> str:
        return self.cycle_string()


def perm_closure(generators: Sequence[Perm], cap: int = 1 << 16) -> list[Perm]:
    if not generators:
        raise ValueError("need at least one generator")
    ident = Perm.identity(generators[0].labels)
    seen = {ident.images}
    out = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in generators:
            h = g * s
            if h.images not in seen:
                seen.add(h.images)
                out.append(h)
                queue.append(h)
                if len(out) > cap:
                    raise ArithmeticError(f"permutation group exceeds {cap} elements")
    return out


def orbits(generators: Sequence[Perm]) -> list[list]:
    labels = generators[0].labels
    parent = list(range(len(labels)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in generators:
        for i, j in enumerate(g.images):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    groups: dict[int, list] = {}
    for i, x in enumerate(labels):
        groups.setdefault(find(i), []).append(x)
    return list(groups.values())


# --------------------------------------------------------------------------
# actions on hyperplanes and nodes
# --------------------------------------------------------------------------

NODE_LABELS: tuple[str, ...] = tuple(f"q{i}" for i in range(1, 11))


def action_on_hyperplanes(g: GroupElement) -> Perm:
    """H -> g(H): the image hyperplane h' satisfies h' M4 ~ h."""
    M = g.m4
    mapping = {}
    for h in HYPERPLANE_NAMES:
        row = np.array(HYPERPLANES[h], dtype=np.int64)
        hits = [h2 for h2 in HYPERPLANE_NAMES
                if projectively_equal((np.array(HYPERPLANES[h2], dtype=np.int64) @ M).tolist(), row.tolist())]
        if len(hits) != 1:
            raise ArithmeticError(f"hyperplane {h} has no unique image")
        mapping[h] = hits[0]
    return Perm.from_mapping(HYPERPLANE_NAMES, mapping)


def action_on_nodes(g: GroupElement) -> Perm:
    M = g.m4
    mapping = {}
    for i, q in enumerate(NODES):
        img = (M @ np.array(q, dtype=np.int64)).tolist()
        hits = [NODE_LABELS[k] for k, q2 in enumerate(NODES) if projectively_equal(img, list(q2))]
        if len(hits) != 1:
            raise ArithmeticError(f"node q{i + 1} has no unique image")
        mapping[NODE_LABELS[i]] = hits[0]
    return Perm.from_mapping(NODE_LABELS, mapping)


def conjugate_rule(phi_el: GroupElement, H: str, table_q1: Mapping[str, int]) -> int:
    """Gamma bitmask of phi^{-1} gamma_{phi(H)} phi, with gamma read from the q1 column."""
    target = action_on_hyperplanes(phi_el)(H)
    g = gamma_element(table_q1.get(target, 0))
    conj = phi_el.inverse() * g * phi_el
    mask = gamma_mask(conj)
    if mask is None:
        raise ArithmeticError("conjugate of a Gamma element left Gamma")
    return mask


def transporter(i: int) -> GroupElement:
    """The first element of Omega (breadth-first order) sending node q_i to q_1."""
    for g in omega_group():
        if action_on_nodes(g)(NODE_LABELS[i - 1]) == "q1":
            return g
    raise ArithmeticError(f"no element of Omega moves q{i} to q1")


def describe(g: GroupElement) -> str:
    m = gamma_mask(g)
    return gamma_word(m) if m is not None else repr(g)
