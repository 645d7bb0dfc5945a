"""Square-class description of the fields of definition of the conics.

Each node q_i contributes five classes (products of Delta, A and the
hyperplane forms); the compositum L of the node fields is generated by
ten global classes.  Gal(L/K) is C_2^rank where rank is the F_2-rank of
those classes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import SquareClass, class_in_span, square_class_rank, squarefree_part
from .geometry import DELTA_NAME, DegenerateError, SurfaceParams, _params, delta, hyperplane_value
from .groups import Perm
from .tower import TowerDescriptor

# A class expression is (sign, factor names); factors are hyperplane names or "Delta".
ClassExpr = tuple[int, tuple[str, ...]]


def _c(sign: int, *factors: str) -> ClassExpr:
    return sign, (DELTA_NAME,) + factors


PRINTED_NODE_CLASS_EXPRS: dict[int, tuple[ClassExpr, ...]] = {
    1: (_c(1, "q+C", "p-0", "p+1"), _c(1, "q+C", "p+0", "p-1"), _c(1, "q+D", "p+0", "p-2"),
        _c(1, "q+D", "p-0", "p+2"), _c(-1, "q-E", "p+1", "p-2")),
    2: (_c(1, "q+C", "p-0", "p+1"), _c(1, "q+C", "p+0", "p-1"), _c(1, "q+E", "p+0", "p-3"),
        _c(1, "q+E", "p-0", "p+3"), _c(-1, "q-D", "p+1", "p-3")),
    3: (_c(1, "q+D", "p-0", "p+2"), _c(1, "q+D", "p+0", "p-2"), _c(1, "q+E", "p+0", "p-3"),
        _c(1, "q+E", "p-0", "p+3"), _c(-1, "q-C", "p+2", "p-3")),
    4: (_c(-1, "q-D", "p+1", "p-3"), _c(-1, "q-D", "p-1", "p+3"), _c(-1, "q-E", "p-1", "p+2"),
        _c(-1, "q-E", "p+1", "p-2"), _c(-1, "q-C", "p+2", "p-3")),
    5: (_c(-1, "A", "q+E", "q-E"), _c(-1, "A", "q+D", "q-D"), _c(1, "q+D", "p+0", "p-2"),
        _c(1, "q+E", "p+0", "p-3"), _c(-1, "q-E", "p+1", "p-2")),
    6: (_c(-1, "A", "q+E", "q-E"), _c(-1, "A", "q+D", "q-D"), _c(1, "q+D", "p-0", "p+2"),
        _c(1, "q+E", "p-0", "p+3"), _c(-1, "q-E", "p-1", "p+2")),
    7: (_c(-1, "A", "q+C", "q-C"), _c(-1, "A", "q+E", "q-E"), _c(1, "q+C", "p+0", "p-1"),
        _c(1, "q+E", "p+0", "p-3"), _c(-1, "q-E", "p+1", "p-2")),
    8: (_c(-1, "A", "q+C", "q-C"), _c(-1, "A", "q+E", "q-E"), _c(1, "q+C", "p-0", "p+1"),
        _c(1, "q+E", "p-0", "p+3"), _c(-1, "q-E", "p-1", "p+2")),
    9: (_c(-1, "A", "q+C", "q-C"), _c(-1, "q+D", "q-D"), _c(1, "q+C", "p+0", "p-1"),
        _c(1, "q+D", "p+0", "p-2"), _c(-1, "q-D", "p+1", "p-3")),
    10: (_c(-1, "A", "q+C", "q-C"), _c(-1, "q+D", "q-D"), _c(1, "q+C", "p-0", "p+1"),
         _c(1, "q+D", "p-0", "p+2"), _c(-1, "q-D", "p-1", "p+3")),
}

# Node classes as used by the computations.  Relative to the printed lists,
# K7/K8 and K9/K10 exchange their fifth class, and the second class of K9 and
# K10 carries the factor A like its twins in K5..K8.  Both changes are forced:
# the radicals of the singular-point chain do not lie in the printed fields.
NODE_CLASS_EXPRS: dict[int, tuple[ClassExpr, ...]] = dict(PRINTED_NODE_CLASS_EXPRS)
NODE_CLASS_EXPRS[7] = PRINTED_NODE_CLASS_EXPRS[7][:4] + PRINTED_NODE_CLASS_EXPRS[8][4:]
NODE_CLASS_EXPRS[8] = PRINTED_NODE_CLASS_EXPRS[8][:4] + PRINTED_NODE_CLASS_EXPRS[7][4:]
NODE_CLASS_EXPRS[9] = (PRINTED_NODE_CLASS_EXPRS[9][0], _c(-1, "A", "q+D", "q-D"),
                       *PRINTED_NODE_CLASS_EXPRS[9][2:4], PRINTED_NODE_CLASS_EXPRS[10][4])
NODE_CLASS_EXPRS[10] = (PRINTED_NODE_CLASS_EXPRS[10][0], _c(-1, "A", "q+D", "q-D"),
                        *PRINTED_NODE_CLASS_EXPRS[10][2:4], PRINTED_NODE_CLASS_EXPRS[9][4])

GLOBAL_CLASS_EXPRS: tuple[ClassExpr, ...] = (
    _c(-1, "A", "q+C", "q-C"),
    _c(-1, "A", "q+D", "q-D"),
    _c(-1, "A", "q+E", "q-E"),
    _c(1, "q+C", "p+0", "p-1"),
    _c(1, "q+C", "p-0", "p+1"),
    _c(1, "q+D", "p+0", "p-2"),
    _c(1, "q+D", "p-0", "p+2"),
    _c(1, "q+E", "p+0", "p-3"),
    _c(1, "q+E", "p-0", "p+3"),
    _c(-1, "q-C", "p+2", "p-3"),
)


def render_class(expr: ClassExpr) -> str:
    sign, factors = expr
    return ("-" if sign < 0 else "") + "*".join(factors)


def factor_value(name: str, p: SurfaceParams) -> Fraction:
    return Fraction(delta(p)) if name == DELTA_NAME else Fraction(hyperplane_value(name, p))


def evaluate_class(expr: ClassExpr, p: SurfaceParams | Sequence) -> Fraction:
    p = _params(p)
    sign, factors = expr
    out = Fraction(sign)
    for f in factors:
        v = factor_value(f, p)
        if v == 0:
            raise DegenerateError(f"factor {f} vanishes at {p}")
        out *= v
    return out


@dataclass(frozen=True)
class NodeClassList:
    node: int
    exprs: tuple[ClassExpr, ...]
    values: tuple[Fraction, ...]

    @property
    def classes(self) -> tuple[SquareClass, ...]:
        return tuple(squarefree_part(v) for v in self.values)


def node_classes(p: SurfaceParams | Sequence, i: int) -> NodeClassList:
    if i not in NODE_CLASS_EXPRS:
        raise ValueError(f"node index {i} out of range 1..10")
    exprs = NODE_CLASS_EXPRS[i]
    return NodeClassList(i, exprs, tuple(evaluate_class(e, p) for e in exprs))


def global_classes(p: SurfaceParams | Sequence) -> list[Fraction]:
    return [evaluate_class(e, p) for e in GLOBAL_CLASS_EXPRS]


def independent_prefix(values: Sequence[Fraction]) -> list[int]:
    """Indices of a greedy F_2-independent subset, scanning in order."""
    keep: list[int] = []
    for k, v in enumerate(values):
        if squarefree_part(v).value == 1:
            continue
        rank, _ = square_class_rank([values[j] for j in keep] + [v])
        if rank == len(keep) + 1:
            keep.append(k)
    return keep


def node_tower(p: SurfaceParams | Sequence, i: int) -> TowerDescriptor:
    """Q(sqrt(c_1),...,sqrt(c_5)) for the node classes, dropping dependent ones."""
    values = node_classes(p, i).values
    keep = independent_prefix(values)
    return TowerDescriptor.from_classes([values[k] for k in keep])


@dataclass(frozen=True)
class GaloisGroupReport:
    exprs: tuple[ClassExpr, ...]
    values: tuple[Fraction, ...]
    classes: tuple[SquareClass, ...]
    rank: int
    basis: tuple[int, ...]

    @property
    def statement(self) -> str:
        return f"Gal(L/K) = C2^{self.rank}"


def galois_group(p: SurfaceParams | Sequence) -> GaloisGroupReport:
    p = _params(p)
    values = global_classes(p)
    rank, basis = square_class_rank(values)
    return GaloisGroupReport(
        exprs=GLOBAL_CLASS_EXPRS,
        values=tuple(values),
        classes=tuple(squarefree_part(v) for v in values),
        rank=rank,
        basis=tuple(basis),
    )


def node_span(p: SurfaceParams | Sequence, i: int) -> list[list[int] | None]:
    """Each node class written as a subset of the ten global classes."""
    basis = global_classes(p)
    return [class_in_span(v, basis) for v in node_classes(p, i).values]


def node_sign_vector(p: SurfaceParams | Sequence, i: int, flips: set[int]) -> list[int]:
    """Signs on the node tower generators when the global roots in ``flips`` are negated.

    Global classes are 0-indexed.  A node generator sqrt(c) with c equal to the
    product of global classes S (mod squares) changes sign iff |S & flips| is odd.
    """
    p = _params(p)
    values = node_classes(p, i).values
    keep = independent_prefix(values)
    basis = global_classes(p)
    signs = []
    for k in keep:
        subset = class_in_span(values[k], basis)
        if subset is None:
            raise ArithmeticError(f"node {i} class {k + 1} is outside the global span")
        signs.append(-1 if len(set(subset) & flips) % 2 else 1)
    return signs


def galois_action_on_conics(p: SurfaceParams | Sequence, j: int, records=None) -> Perm:
    """Permutation of the 320 conics induced by negating the j-th global root (1-based)."""
    return galois_flip_permutation(p, {j - 1}, records)


def galois_flip_permutation(p: SurfaceParams | Sequence, flips: set[int], records=None) -> Perm:
    from .conics import all_conics, conic_key, record_labels, transform_record_signs

    p = _params(p)
    if records is None:
        records = all_conics(p)
    labels = record_labels(records)
    index = {conic_key(r): k for k, r in enumerate(records)}
    images = []
    for r in records:
        signs = node_sign_vector(p, r.node, flips)
        key = conic_key(transform_record_signs(r, signs))
        if key not in index:
            raise ArithmeticError(f"Galois image of a node {r.node} conic is not among the records")
        images.append(index[key])
    return Perm(tuple(labels), tuple(images))
