"""Exact scalar arithmetic: factorization, square classes in Q*/(Q*)^2, and
the Gaussian rationals used for the projective matrices of the big group.

Square classes are handled as F2 exponent vectors over the "primes"
-1, 2, 3, 5, ...  A vector is stored sparsely as a frozenset of the primes
that occur to odd order (with -1 standing for the sign).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Rational = int | Fraction

TRIAL_LIMIT = 10**6


def as_fraction(r: Rational | str) -> Fraction:
    if isinstance(r, Fraction):
        return r
    return Fraction(r)


# --------------------------------------------------------------------------
# integer factorization
# --------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases (deterministic < 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, out, rng)
        _split(r, out, rng)
        return
    d = _pollard_brent(n, rng)
    _split(d, out, rng)
    _split(n // d, out, rng)


@lru_cache(maxsize=4096)
def _factor_cached(n: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    m = n
    for p in (2, 3, 5):
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    # wheel mod 30 trial division
    p, steps = 7, (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while p <= TRIAL_LIMIT and p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += steps[i]
        i = (i + 1) % 8
    if m > 1:
        _split(m, out, random.Random(m))
    return tuple(sorted(out.items()))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer as {prime: exponent}."""
    if n <= 0:
        raise ValueError(f"factorize needs a positive integer, got {n}")
    return dict(_factor_cached(n))


# --------------------------------------------------------------------------
# square classes
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SquareClass:
    """Class of a nonzero rational modulo squares: sign * squarefree_part."""

    sign: int
    squarefree_part: int

    @property
    def value(self) -> int:
        return self.sign * self.squarefree_part

    def vector(self) -> frozenset[int]:
        primes = set(factorize(self.squarefree_part)) if self.squarefree_part > 1 else set()
        if self.sign < 0:
            primes.add(-1)
        return frozenset(primes)

    def is_trivial(self) -> bool:
        return self.sign == 1 and self.squarefree_part == 1

    def __str__(self) -> str:
        return f"{'-' if self.sign < 0 else '+'}{self.squarefree_part}"


def _odd_part(n: int) -> int:
    prod = 1
    for p, e in factorize(n).items():
        if e % 2:
            prod *= p
    return prod


def squarefree_part(r: Rational) -> SquareClass:
    """Square class of a nonzero rational.

    >>> squarefree_part(18), squarefree_part(-12)
    (SquareClass(sign=1, squarefree_part=2), SquareClass(sign=-1, squarefree_part=3))
    """
    r = as_fraction(r)
    if r == 0:
        raise ValueError("square class of zero is undefined")
    sign = 1 if r > 0 else -1
    n = abs(r.numerator) * r.denominator
    return SquareClass(sign, _odd_part(n))


def class_vector(r: Rational) -> frozenset[int]:
    return squarefree_part(r).vector()


def is_rational_square(r: Rational) -> bool:
    r = as_fraction(r)
    if r < 0:
        return False
    a, b = r.numerator, r.denominator
    return math.isqrt(a) ** 2 == a and math.isqrt(b) ** 2 == b


def rational_sqrt(r: Rational) -> Fraction | None:
    """Nonnegative rational square root, or None if r is not a square in Q."""
    r = as_fraction(r)
    if r < 0:
        return None
    a, b = math.isqrt(r.numerator), math.isqrt(r.denominator)
    if a * a != r.numerator or b * b != r.denominator:
        return None
    return Fraction(a, b)


# --------------------------------------------------------------------------
# F2 linear algebra on class vectors
# --------------------------------------------------------------------------


class _F2Basis:
    """Incremental echelon basis; rows are ints (bitsets) over a prime index."""

    def __init__(self) -> None:
        self.pivots: dict[int, tuple[int, int]] = {}  # pivot bit -> (row, combo)

    def reduce(self, row: int) -> tuple[int, int]:
        combo = 0
        while row:
            top = row.bit_length() - 1
            if top not in self.pivots:
                break
            prow, pcombo = self.pivots[top]
            row ^= prow
            combo ^= pcombo
        return row, combo

    def insert(self, row: int, tag: int) -> bool:
        row, combo = self.reduce(row)
        if row == 0:
            return False
        self.pivots[row.bit_length() - 1] = (row, combo ^ (1 << tag))
        return True


def _index_vectors(vectors: Sequence[frozenset[int]]) -> dict[int, int]:
    primes = sorted(set().union(*vectors)) if vectors else []
    return {p: i for i, p in enumerate(primes)}


def _bits(v: frozenset[int], index: dict[int, int]) -> int:
    out = 0
    for p in v:
        out |= 1 << index[p]
    return out


def _check_nonzero(values: Iterable[Rational]) -> list[Fraction]:
    out = [as_fraction(v) for v in values]
    if any(v == 0 for v in out):
        raise ValueError("square classes need nonzero entries")
    return out


def square_class_rank(classes: Sequence[Rational]) -> tuple[int, list[int]]:
    """F2 rank of the classes, with the earliest-first maximal independent subset."""
    vals = _check_nonzero(classes)
    vecs = [class_vector(v) for v in vals]
    index = _index_vectors(vecs)
    basis = _F2Basis()
    chosen = [i for i, v in enumerate(vecs) if basis.insert(_bits(v, index), i)]
    return len(chosen), chosen


def _strip_primes(n: int, primes: Iterable[int]) -> tuple[int, set[int]]:
    odd: set[int] = set()
    for p in primes:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            odd.add(p)
    return n, odd


def class_in_span(target: Rational, basis: Sequence[Rational]) -> list[int] | None:
    """Indices of basis entries whose product has the class of ``target``.

    Only the basis entries are factored; the target is stripped of the basis
    primes and the cofactor must then be a perfect square, otherwise the
    target carries a prime outside the span.  Returns None when outside.
    """
    t = as_fraction(target)
    if t == 0:
        raise ValueError("target must be nonzero")
    vals = _check_nonzero(basis)
    vecs = [class_vector(v) for v in vals]
    support = sorted({p for v in vecs for p in v if p > 0})
    num, odd_n = _strip_primes(abs(t.numerator), support)
    den, odd_d = _strip_primes(t.denominator, support)
    if not is_rational_square(Fraction(num, den)):
        return None
    tvec = set(odd_n ^ odd_d)
    if t < 0:
        tvec.add(-1)
    index = _index_vectors(vecs + [frozenset(tvec)])
    eb = _F2Basis()
    for i, v in enumerate(vecs):
        eb.insert(_bits(v, index), i)
    rest, combo = eb.reduce(_bits(frozenset(tvec), index))
    if rest:
        return None
    return [i for i in range(len(vals)) if combo >> i & 1]


# --------------------------------------------------------------------------
# Gaussian rationals
# --------------------------------------------------------------------------


class GaussRat:
    """Element re + im*i of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational = 0, im: Rational = 0) -> None:
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @staticmethod
    def _lift(x: object) -> GaussRat:
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussRat(x)
        if isinstance(x, complex):
            return GaussRat(Fraction(x.real), Fraction(x.imag))
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> GaussRat:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> GaussRat:
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other: object) -> GaussRat:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: object) -> GaussRat:
        return (-self) + other

    def __mul__(self, other: object) -> GaussRat:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> GaussRat:
        return GaussRat(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other: object) -> GaussRat:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        q = self * o.conjugate()
        return GaussRat(q.re / n, q.im / n)

    def __rtruediv__(self, other: object) -> GaussRat:
        return self._lift(other) / self

    def __pow__(self, k: int) -> GaussRat:
        out = GaussRat(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        if self.im == 0:
            return f"GaussRat({self.re})"
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"


I = GaussRat(0, 1)
