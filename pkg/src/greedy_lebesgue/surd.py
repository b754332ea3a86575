"""Exact arithmetic in multi-quadratic fields Q(sqrt(r1), sqrt(r2), ...).

The constructed norms carry factors 1/sqrt(r) and 1/sqrt(n_k); exact mode
keeps those as elements ``sum_r c_r * sqrt(r)`` with rational ``c_r`` and
squarefree radicands ``r``.  Square roots of distinct squarefree integers are
linearly independent over Q, so an element is zero iff all its coefficients
vanish, and its sign is decided by interval refinement.

Arithmetic results that turn out rational are returned as ``Fraction`` so the
rational fast path stays fast.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = ["Surd", "sqrt", "is_exact", "to_exact"]


@lru_cache(maxsize=4096)
def _squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, r)`` with ``n == s*s*r`` and ``r`` squarefree."""
    s, r = 1, 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            s *= d ** (e // 2)
            if e % 2:
                r *= d
        d += 1 if d == 2 else 2
    return s, r * n


@lru_cache(maxsize=4096)
def _largest_prime(n: int) -> int:
    p, d = 1, 2
    while d * d <= n:
        while n % d == 0:
            n //= d
            p = d
        d += 1 if d == 2 else 2
    return max(p, n) if n > 1 else p


class Surd:
    """Immutable element of a multi-quadratic number field."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms):
        # terms: mapping radicand -> Fraction, radicands squarefree and > 0
        self._terms = tuple(sorted((r, c) for r, c in terms.items() if c))
        self._hash = None

    @staticmethod
    def _make(terms: dict):
        terms = {r: c for r, c in terms.items() if c}
        if not terms:
            return Fraction(0)
        if len(terms) == 1 and 1 in terms:
            return terms[1]
        return Surd(terms)

    @staticmethod
    def _coerce(x) -> dict:
        if isinstance(x, Surd):
            return dict(x._terms)
        if isinstance(x, (int, Rational)):
            return {1: Fraction(x)}
        raise TypeError(f"cannot mix Surd with {type(x).__name__}")

    @property
    def terms(self) -> tuple:
        return self._terms

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, float):
            return float(self) + other
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        a = dict(self._terms)
        for r, c in b.items():
            a[r] = a.get(r, 0) + c
        return self._make(a)

    __radd__ = __add__

    def __neg__(self):
        return Surd({r: -c for r, c in self._terms})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, float):
            return float(self) - other
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        a = dict(self._terms)
        for r, c in b.items():
            a[r] = a.get(r, 0) - c
        return self._make(a)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, float):
            return float(self) * other
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        out: dict = {}
        for r, c in self._terms:
            for s, d in b.items():
                g = math.gcd(r, s)
                rad = (r // g) * (s // g)
                out[rad] = out.get(rad, 0) + c * d * g
        return self._make(out)

    __rmul__ = __mul__

    def _inverse(self):
        terms = dict(self._terms)
        radicands = [r for r in terms if r != 1]
        if not radicands:
            return 1 / terms[1]
        p = max(_largest_prime(r) for r in radicands)
        u: dict = {}
        v: dict = {}
        for r, c in terms.items():
            if r % p == 0:
                v[r // p] = c
            else:
                u[r] = c
        u_el, v_el = self._make(u), self._make(v)
        conj = u_el - v_el * sqrt(p)
        norm = u_el * u_el - p * v_el * v_el  # free of sqrt(p)
        inv_norm = norm._inverse() if isinstance(norm, Surd) else 1 / Fraction(norm)
        return conj * inv_norm

    def __truediv__(self, other):
        if isinstance(other, float):
            return float(self) / other
        if isinstance(other, Surd):
            return self * other._inverse()
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("Surd division by zero")
            q = Fraction(other)
            return self._make({r: c / q for r, c in self._terms})
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, float):
            return other / float(self)
        if isinstance(other, (int, Rational)):
            return self._inverse() * other
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Fraction(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- comparisons ----------------------------------------------------
    def sign(self) -> int:
        if not self._terms:
            return 0
        bits = 32
        while True:
            lo, hi = self._interval(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def _interval(self, bits: int) -> tuple[Fraction, Fraction]:
        scale = 1 << bits
        lo = hi = Fraction(0)
        for r, c in self._terms:
            s = math.isqrt(r * scale * scale)
            if s * s == r * scale * scale:
                lo += c * Fraction(s, scale)
                hi += c * Fraction(s, scale)
                continue
            a, b = Fraction(s, scale), Fraction(s + 1, scale)
            if c > 0:
                lo += c * a
                hi += c * b
            else:
                lo += c * b
                hi += c * a
        return lo, hi

    def _cmp(self, other) -> int:
        if isinstance(other, float):
            x = float(self)
            return (x > other) - (x < other)
        return _sign(self - other)

    def __eq__(self, other):
        if isinstance(other, Surd):
            return self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return False  # a Surd is never rational by construction
        if isinstance(other, float):
            return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return math.fsum(float(c) * math.sqrt(r) for r, c in self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"Surd({self})"

    def __str__(self):
        parts = []
        for r, c in self._terms:
            parts.append(str(c) if r == 1 else f"{c}*sqrt({r})")
        return " + ".join(parts) if parts else "0"


def _sign(x) -> int:
    if isinstance(x, Surd):
        return x.sign()
    return (x > 0) - (x < 0)


def sqrt(x):
    """Exact square root of a nonnegative rational (or a rational Surd)."""
    if isinstance(x, Surd):
        raise TypeError("nested square roots are not supported")
    q = Fraction(x)
    if q < 0:
        raise ValueError("square root of a negative number")
    if q == 0:
        return Fraction(0)
    num, den = q.numerator, q.denominator
    s, r = _squarefree_split(num * den)
    coef = Fraction(s, den)
    return coef if r == 1 else Surd({r: coef})


def is_exact(x) -> bool:
    return isinstance(x, (int, Rational, Surd)) and not isinstance(x, bool)


def to_exact(x):
    """Convert ints, floats (binary-exact) and strings like '3/4' to Fraction."""
    if isinstance(x, Surd):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)
