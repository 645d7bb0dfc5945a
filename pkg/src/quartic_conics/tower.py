"""Multiquadratic fields Q(sqrt(d1), ..., sqrt(dn)).

An element is stored as integer numerators keyed by a generator bitmask,
over one shared positive denominator: mask S stands for the monomial
prod_{j in S} sqrt(d_j).  Generators are squarefree nonzero integers that
must be F2-independent modulo squares, so the 2^n monomials are a basis.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from .arith import (
    Rational,
    SquareClass,
    as_fraction,
    class_in_span,
    rational_sqrt,
    square_class_rank,
    squarefree_part,
)


@dataclass(frozen=True)
class TowerDescriptor:
    generators: tuple[int, ...]

    def __post_init__(self) -> None:
        gens = tuple(int(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if any(g == 0 for g in gens):
            raise ValueError("tower generators must be nonzero")
        for g in gens:
            if squarefree_part(g).value != g:
                raise ValueError(f"generator {g} is not squarefree")
        if gens:
            rank, _ = square_class_rank(gens)
            if rank != len(gens):
                raise ValueError(f"generators {gens} are dependent modulo squares")

    @classmethod
    def from_classes(cls, classes: Iterable[SquareClass | Rational]) -> TowerDescriptor:
        gens = []
        for c in classes:
            gens.append(c.value if isinstance(c, SquareClass) else squarefree_part(c).value)
        return _descriptor(tuple(gens))

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def dim(self) -> int:
        return 1 << self.n

    @cached_property
    def overlap(self) -> list[int]:
        """overlap[m] = product of the generators in mask m."""
        out = [1] * self.dim
        for m in range(1, self.dim):
            low = m & -m
            out[m] = out[m ^ low] * self.generators[low.bit_length() - 1]
        return out

    @cached_property
    def subfield(self) -> TowerDescriptor:
        if not self.generators:
            raise ValueError("the rational field has no subfield")
        return _descriptor(self.generators[:-1])

    def zero(self) -> TowerElement:
        return TowerElement(self, {}, 1)

    def one(self) -> TowerElement:
        return TowerElement(self, {0: 1}, 1)

    def rational(self, r: Rational) -> TowerElement:
        r = as_fraction(r)
        return TowerElement(self, {0: r.numerator}, r.denominator)

    def root(self, j: int) -> TowerElement:
        """sqrt(d_j) as an element."""
        return TowerElement(self, {1 << j: 1}, 1)

    def monomial(self, mask: int, coeff: Rational = 1) -> TowerElement:
        c = as_fraction(coeff)
        return TowerElement(self, {mask: c.numerator}, c.denominator)

    def from_coords(self, coords: Mapping[int, Rational]) -> TowerElement:
        fr = {int(m): as_fraction(c) for m, c in coords.items()}
        den = math.lcm(*(c.denominator for c in fr.values())) if fr else 1
        return TowerElement(self, {m: c.numerator * (den // c.denominator) for m, c in fr.items()}, den)

    @cached_property
    def root_values(self) -> list[complex]:
        return [cmath.sqrt(g) for g in self.generators]

    def __str__(self) -> str:
        return "Q(" + ", ".join(f"sqrt({g})" for g in self.generators) + ")" if self.generators else "Q"


@lru_cache(maxsize=None)
def _descriptor(gens: tuple[int, ...]) -> TowerDescriptor:
    return TowerDescriptor(gens)


RATIONALS = _descriptor(())


def _mask_str(mask: int, gens: Sequence[int]) -> str:
    return "*".join(f"sqrt({gens[j]})" for j in range(len(gens)) if mask >> j & 1)


class TowerElement:
    __slots__ = ("desc", "num", "den", "_hash")

    def __init__(self, desc: TowerDescriptor, num: Mapping[int, int], den: int = 1) -> None:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        nz = {m: c for m, c in num.items() if c}
        if den < 0:
            nz = {m: -c for m, c in nz.items()}
            den = -den
        g = den
        for c in nz.values():
            g = math.gcd(g, c)
            if g == 1:
                break
        if g > 1:
            nz = {m: c // g for m, c in nz.items()}
            den //= g
        if not nz:
            den = 1
        self.desc = desc
        self.num = nz
        self.den = den
        self._hash: int | None = None

    # -- coercion --------------------------------------------------------

    def _coerce(self, other: object) -> TowerElement | None:
        if isinstance(other, TowerElement):
            if other.desc != self.desc:
                raise ValueError(f"tower mismatch: {self.desc} vs {other.desc}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.desc.rational(other)
        return None

    @property
    def coords(self) -> dict[int, Fraction]:
        return {m: Fraction(c, self.den) for m, c in sorted(self.num.items())}

    def coeff(self, mask: int) -> Fraction:
        return Fraction(self.num.get(mask, 0), self.den)

    def is_rational(self) -> bool:
        return all(m == 0 for m in self.num)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeff(0)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: object) -> TowerElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {m: c * o.den for m, c in self.num.items()}
        for m, c in o.num.items():
            out[m] = out.get(m, 0) + c * self.den
        return TowerElement(self.desc, out, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> TowerElement:
        return TowerElement(self.desc, {m: -c for m, c in self.num.items()}, self.den)

    def __sub__(self, other: object) -> TowerElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> TowerElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> TowerElement:
        if isinstance(other, (int, Fraction)):
            f = as_fraction(other)
            return TowerElement(self.desc, {m: c * f.numerator for m, c in self.num.items()}, self.den * f.denominator)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ov = self.desc.overlap
        out: dict[int, int] = {}
        for m1, c1 in self.num.items():
            for m2, c2 in o.num.items():
                k = m1 ^ m2
                out[k] = out.get(k, 0) + c1 * c2 * ov[m1 & m2]
        return TowerElement(self.desc, out, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> TowerElement:
        if isinstance(other, (int, Fraction)):
            f = as_fraction(other)
            if f == 0:
                raise ZeroDivisionError("division by zero")
            return TowerElement(self.desc, {m: c * f.denominator for m, c in self.num.items()}, self.den * f.numerator)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * invert(o)

    def __rtruediv__(self, other: object) -> TowerElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * invert(self)

    def __pow__(self, k: int) -> TowerElement:
        if k < 0:
            return invert(self) ** (-k)
        out, base = self.desc.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            f = as_fraction(other)
            if f == 0:
                return not self.num
            return self.is_rational() and self.coeff(0) == f
        if isinstance(other, TowerElement):
            return self.desc == other.desc and self.den == other.den and self.num == other.num
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeff(0))
            else:
                self._hash = hash((self.desc.generators, self.den, frozenset(self.num.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.num)

    # -- structure -------------------------------------------------------

    def split(self) -> tuple[TowerElement, TowerElement]:
        """x = u + v*sqrt(d_n) with u, v in the subfield."""
        sub = self.desc.subfield
        top = 1 << (self.desc.n - 1)
        u = {m: c for m, c in self.num.items() if not m & top}
        v = {m ^ top: c for m, c in self.num.items() if m & top}
        return TowerElement(sub, u, self.den), TowerElement(sub, v, self.den)

    def lift(self, desc: TowerDescriptor) -> TowerElement:
        """Embed from a prefix subfield into ``desc`` (same masks)."""
        if desc.generators[: self.desc.n] != self.desc.generators:
            raise ValueError(f"{self.desc} is not a prefix subfield of {desc}")
        return TowerElement(desc, self.num, self.den)

    def conjugate_top(self) -> TowerElement:
        top = 1 << (self.desc.n - 1)
        return TowerElement(self.desc, {m: -c if m & top else c for m, c in self.num.items()}, self.den)

    def to_complex(self) -> complex:
        roots = self.desc.root_values
        total = 0j
        for m, c in self.num.items():
            v = complex(c)
            j = 0
            mm = m
            while mm:
                if mm & 1:
                    v *= roots[j]
                mm >>= 1
                j += 1
            total += v
        return total / self.den

    def map_to(self, target: TowerDescriptor, images: Sequence[TowerElement]) -> TowerElement:
        """Apply the embedding sending sqrt(d_j) to ``images[j]`` (monomials)."""
        cache: dict[int, TowerElement] = {0: target.one()}

        def image(m: int) -> TowerElement:
            if m not in cache:
                low = m & -m
                cache[m] = image(m ^ low) * images[low.bit_length() - 1]
            return cache[m]

        out = target.zero()
        for m, c in self.num.items():
            out = out + image(m) * Fraction(c, self.den)
        return out

    def to_json(self) -> dict:
        return {
            "generators": list(self.desc.generators),
            "coords": {str(m): str(c) for m, c in self.coords.items()},
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> TowerElement:
        desc = _descriptor(tuple(int(g) for g in doc["generators"]))
        return desc.from_coords({int(m): Fraction(c) for m, c in doc["coords"].items()})

    def __repr__(self) -> str:
        return f"TowerElement({self})"

    def __str__(self) -> str:
        if not self.num:
            return "0"
        parts = []
        for m, c in self.coords.items():
            mono = _mask_str(m, self.desc.generators)
            parts.append(str(c) if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(parts)


# --------------------------------------------------------------------------
# field operations
# --------------------------------------------------------------------------


def multiply(x: TowerElement, y: TowerElement) -> TowerElement:
    if x.desc != y.desc:
        raise ValueError("descriptor mismatch")
    return x * y


def invert(x: TowerElement) -> TowerElement:
    """Inverse by norm descent over the top generator."""
    if not x:
        raise ZeroDivisionError("inverse of zero tower element")
    desc = x.desc
    if desc.n == 0:
        return desc.rational(1 / x.coeff(0))
    u, v = x.split()
    if not v:
        return invert(u).lift(desc)
    d = desc.generators[-1]
    norm = u * u - v * v * d
    return x.conjugate_top() * invert(norm).lift(desc)


def apply_sign_automorphism(x: TowerElement, signs: Sequence[int]) -> TowerElement:
    """sqrt(d_j) -> signs[j]*sqrt(d_j)."""
    if len(signs) != x.desc.n:
        raise ValueError(f"need {x.desc.n} signs, got {len(signs)}")
    flip = 0
    for j, s in enumerate(signs):
        if s not in (1, -1):
            raise ValueError("signs must be +1 or -1")
        if s == -1:
            flip |= 1 << j
    return TowerElement(
        x.desc,
        {m: -c if bin(m & flip).count("1") % 2 else c for m, c in x.num.items()},
        x.den,
    )


def tower_sqrt(x: TowerElement) -> TowerElement | None:
    """A square root of x inside its own field, or None if x is not a square."""
    desc = x.desc
    if not x:
        return x
    if desc.n == 0:
        r = rational_sqrt(x.coeff(0))
        return None if r is None else desc.rational(r)
    d = desc.generators[-1]
    top = desc.root(desc.n - 1)
    u, v = x.split()
    if not v:
        s = tower_sqrt(u)
        if s is not None:
            return s.lift(desc)
        t = tower_sqrt(u / d)
        return None if t is None else t.lift(desc) * top
    m = tower_sqrt(u * u - v * v * d)
    if m is None:
        return None
    for sgn in (1, -1):
        a2 = (u + m * sgn) / 2
        if not a2:
            continue
        a = tower_sqrt(a2)
        if a is None:
            continue
        b = v / (a * 2)
        return a.lift(desc) + b.lift(desc) * top
    return None


def embed_rational_sqrt(r: Rational, desc: TowerDescriptor) -> TowerElement | None:
    """q * prod_{j in S} sqrt(d_j) squaring to r, with q > 0; None if r's class is outside."""
    r = as_fraction(r)
    if r == 0:
        raise ValueError("cannot embed sqrt(0) as a unit")
    subset = class_in_span(r, desc.generators) if desc.n else ([] if rational_sqrt(r) is not None else None)
    if subset is None:
        return None
    mask = 0
    for j in subset:
        mask |= 1 << j
    q = rational_sqrt(r / desc.overlap[mask])
    if q is None:  # class_in_span guarantees this cannot happen
        raise ArithmeticError(f"inconsistent square class for {r}")
    return desc.monomial(mask, q)
