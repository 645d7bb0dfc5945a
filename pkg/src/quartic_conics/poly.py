"""Sparse multivariate polynomials over an exact coefficient field.

Coefficients can be ints, Fractions, GaussRat or TowerElement values; the
class only relies on the arithmetic operators and truthiness for zero tests.
Terms are ordered graded-lexicographically (x > y > z > w, A > ... > E).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

Exponent = tuple[int, ...]

P3_VARS = ("x", "y", "z", "w")
P4_VARS = ("A", "B", "C", "D", "E")


def _grlex_key(e: Exponent) -> tuple[int, Exponent]:
    return (sum(e), e)


def _clean(c: Any) -> Any:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class MultiPoly:
    __slots__ = ("nvars", "terms", "names")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Any] | None = None, names: Sequence[str] | None = None):
        self.nvars = nvars
        self.names = tuple(names) if names is not None else _default_names(nvars)
        if len(self.names) != nvars:
            raise ValueError("names do not match arity")
        out: dict[Exponent, Any] = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong arity for {nvars} variables")
            if c:
                out[tuple(e)] = _clean(c)
        self.terms = out

    # -- constructors ----------------------------------------------------

    @classmethod
    def const(cls, c: Any, nvars: int, names: Sequence[str] | None = None) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: c}, names)

    @classmethod
    def var(cls, i: int, nvars: int, names: Sequence[str] | None = None) -> MultiPoly:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, names)

    @classmethod
    def linear(cls, coeffs: Sequence[Any], names: Sequence[str] | None = None) -> MultiPoly:
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms, names)

    def _like(self, terms: Mapping[Exponent, Any]) -> MultiPoly:
        return MultiPoly(self.nvars, terms, self.names)

    def zero(self) -> MultiPoly:
        return self._like({})

    # -- basic properties ------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[Exponent, Any]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exponent, Any]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def coefficient(self, e: Exponent) -> Any:
        return self.terms.get(tuple(e), 0)

    def coefficients(self) -> list[Any]:
        return [c for _, c in self.sorted_terms()]

    def map_coefficients(self, fn) -> MultiPoly:
        return self._like({e: fn(c) for e, c in self.terms.items()})

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: MultiPoly) -> None:
        if other.nvars != self.nvars:
            raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other: Any) -> MultiPoly:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.const(other, self.nvars, self.names)

    def __add__(self, other: Any) -> MultiPoly:
        o = self._lift(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out[e] + c if e in out else c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Any) -> MultiPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> MultiPoly:
        return self._lift(other) - self

    def __mul__(self, other: Any) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            if not other:
                return self.zero()
            return self._like({e: c * other for e, c in self.terms.items()})
        self._check(other)
        out: dict[Exponent, Any] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return self._like(out)

    def __rmul__(self, other: Any) -> MultiPoly:
        if not other:
            return self.zero()
        return self._like({e: other * c for e, c in self.terms.items()})

    def __truediv__(self, scalar: Any) -> MultiPoly:
        if isinstance(scalar, int):
            scalar = Fraction(scalar)
        return self._like({e: c / scalar for e, c in self.terms.items()})

    def __pow__(self, k: int) -> MultiPoly:
        out = MultiPoly.const(1, self.nvars, self.names)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars or other.terms.keys() != self.terms.keys():
                return False
            return all(self.terms[e] == other.terms[e] for e in self.terms)
        if not other:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:  # pragma: no cover - polynomials are not used as keys
        raise TypeError("MultiPoly is unhashable")

    # -- composition -----------------------------------------------------

    def substitute(self, images: Sequence[MultiPoly]) -> MultiPoly:
        """Replace variable i by images[i] (all images share one arity)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0]
        powers: list[dict[int, MultiPoly]] = [{0: MultiPoly.const(1, target.nvars, target.names)} for _ in images]

        def power(i: int, k: int) -> MultiPoly:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        out = MultiPoly(target.nvars, {}, target.names)
        for e, c in self.terms.items():
            term = MultiPoly.const(c, target.nvars, target.names)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k
            )
            cs = str(c)
            if not mono:
                parts.append(f"({cs})" if " " in cs else cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}" if " " in cs else f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __str__ = render

    def __repr__(self) -> str:
        return f"MultiPoly({self.render()})"


def _default_names(n: int) -> tuple[str, ...]:
    if n == 4:
        return P3_VARS
    if n == 5:
        return P4_VARS
    if n == 3:
        return P3_VARS[:3]
    if n == 2:
        return ("s", "t")
    return tuple(f"v{i}" for i in range(n))


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------


def evaluate(f: MultiPoly, point: Sequence[Any]) -> Any:
    if len(point) != f.nvars:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {f.nvars} variables")
    total: Any = 0
    cache: dict[tuple[int, int], Any] = {}
    for e, c in f.terms.items():
        v = c
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in cache:
                    cache[key] = point[i] ** k
                v = v * cache[key]
        total = total + v
    return total


def matrix_inverse(M: Sequence[Sequence[Any]]) -> list[list[Any]]:
    """Gauss-Jordan over any exact field; raises ValueError when singular."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    one = Fraction(1)
    a = [[(Fraction(x) if isinstance(x, int) else x) for x in row] + [one if i == j else Fraction(0) for j in range(n)]
         for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = one / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [[_clean(v) for v in row[n:]] for row in a]


def act_linear(f: MultiPoly, M: Sequence[Sequence[Any]]) -> MultiPoly:
    """Push f forward along x -> M x, i.e. return f(M^{-1} x).

    The zero set of the result is the image under M of the zero set of f,
    and act_linear(act_linear(f, M), N) == act_linear(f, N M).
    """
    if len(M) != f.nvars:
        raise ValueError("matrix size does not match arity")
    Minv = matrix_inverse(M)
    images = [MultiPoly(f.nvars, {tuple(int(i == j) for i in range(f.nvars)): Minv[r][j] for j in range(f.nvars)}, f.names)
              for r in range(f.nvars)]
    return f.substitute(images)


def exact_divide(f: MultiPoly, g: MultiPoly) -> MultiPoly | None:
    """Quotient q with f == q*g, or None when g does not divide f."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    f._check(g)
    ge, gc = g.leading_term()
    rem = dict(f.terms)
    quot: dict[Exponent, Any] = {}
    g_terms = list(g.terms.items())
    inv = Fraction(1, gc) if isinstance(gc, int) else 1 / gc
    while rem:
        e = max(rem, key=_grlex_key)
        if any(a < b for a, b in zip(e, ge)):
            return None
        qe = tuple(a - b for a, b in zip(e, ge))
        qc = _clean(rem[e] * inv)
        quot[qe] = qc
        for te, tc in g_terms:
            ne = tuple(a + b for a, b in zip(qe, te))
            v = rem.get(ne, 0) - qc * tc
            if v:
                rem[ne] = v
            else:
                rem.pop(ne, None)
    return f._like(quot)


def restrict_to_plane(f: MultiPoly, plane: Sequence[Any]) -> MultiPoly:
    """Substitute the plane equation, eliminating its last variable with nonzero coefficient."""
    if len(plane) != f.nvars:
        raise ValueError("plane size does not match arity")
    k = max((i for i, t in enumerate(plane) if t), default=None)
    if k is None:
        raise ValueError("zero plane")
    n = f.nvars
    names = tuple(nm for i, nm in enumerate(f.names) if i != k)
    lead = plane[k]
    if isinstance(lead, int):
        lead = Fraction(lead)
    images = []
    for i in range(n):
        if i == k:
            terms = {}
            for j, t in enumerate(plane):
                if j == k or not t:
                    continue
                e = [0] * (n - 1)
                e[j if j < k else j - 1] = 1
                terms[tuple(e)] = -t / lead
            images.append(MultiPoly(n - 1, terms, names))
        else:
            e = [0] * (n - 1)
            e[i if i < k else i - 1] = 1
            images.append(MultiPoly(n - 1, {tuple(e): 1}, names))
    return f.substitute(images)


def _projectively_equal(a: Sequence[Any], b: Sequence[Any]) -> bool:
    n = len(a)
    return all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n))


def restrict_to_line(f: MultiPoly, a: Sequence[Any], b: Sequence[Any]) -> MultiPoly:
    """The binary form f(s*a + t*b) in (s, t)."""
    if len(a) != f.nvars or len(b) != f.nvars:
        raise ValueError("points do not match arity")
    if not any(a) or not any(b) or _projectively_equal(a, b):
        raise ValueError("line needs two distinct projective points")
    names = ("s", "t")
    images = [MultiPoly(2, {(1, 0): ai, (0, 1): bi}, names) for ai, bi in zip(a, b)]
    return f.substitute(images)


def gradient(f: MultiPoly) -> list[MultiPoly]:
    out = []
    for i in range(f.nvars):
        terms = {}
        for e, c in f.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        out.append(f._like(terms))
    return out


def binary_roots_multiplicity(form: MultiPoly, root: tuple[Any, Any]) -> int:
    """Multiplicity of the projective root (s0 : t0) of a binary form."""
    if form.nvars != 2:
        raise ValueError("binary form expected")
    s0, t0 = root
    lin = MultiPoly(2, {(1, 0): t0, (0, 1): -s0}, form.names)
    k, cur = 0, form
    while cur:
        q = exact_divide(cur, lin)
        if q is None:
            break
        k += 1
        cur = q
    return k


def polys_from_iterable(n: int, items: Iterable[tuple[Exponent, Any]]) -> MultiPoly:
    return MultiPoly(n, dict(items))
