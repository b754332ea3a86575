"""Finitely supported coefficient vectors and the elementary operations on them.

An element ``f = sum_n a_n x_n`` of a sequence space is represented purely by
its coefficients ``(a_n)``; indices are positive integers.  Index sets are
sorted tuples and sign patterns are tuples of ``+1``/``-1`` aligned with the
sorted index set.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .surd import to_exact

__all__ = [
    "CoeffVector",
    "index_set",
    "support",
    "project",
    "initial_projection",
    "indicator",
    "parse_vector",
    "format_vector",
    "sign",
]


def sign(a) -> int:
    """Sign with the convention ``sign(0) = 1``."""
    return -1 if a < 0 else 1


def index_set(indices: Iterable[int]) -> tuple[int, ...]:
    """Normalize an iterable of indices to a sorted tuple of positive ints."""
    out = tuple(sorted(set(int(i) for i in indices)))
    if out and out[0] < 1:
        raise ValueError(f"indices must be positive integers, got {out[0]}")
    return out


@dataclass(frozen=True)
class CoeffVector:
    """Immutable finitely supported coefficient sequence.

    ``items`` holds ``(index, value)`` pairs with strictly increasing indices
    and no stored zeros, so equality is structural.
    """

    items: tuple = ()

    def __post_init__(self):
        prev = 0
        for n, a in self.items:
            if n <= prev:
                raise ValueError("indices must be positive and strictly increasing")
            if a == 0:
                raise ValueError("stored coefficients must be nonzero")
            prev = n

    @classmethod
    def from_dict(cls, entries: Mapping[int, object]) -> "CoeffVector":
        return cls(tuple((int(n), a) for n, a in sorted(entries.items()) if a != 0))

    @classmethod
    def from_dense(cls, values: Sequence, start: int = 1) -> "CoeffVector":
        """Build from a dense list whose first entry sits at index ``start``."""
        return cls(tuple((start + i, a) for i, a in enumerate(values) if a != 0))

    @classmethod
    def zero(cls) -> "CoeffVector":
        return cls(())

    # -- access ---------------------------------------------------------
    def __getitem__(self, n: int):
        for k, a in self.items:
            if k == n:
                return a
            if k > n:
                break
        return 0

    def as_dict(self) -> dict:
        return dict(self.items)

    def dense(self, length: int | None = None) -> list:
        """Coefficients at indices ``1..length`` (default: up to the last index)."""
        if length is None:
            length = self.max_index()
        out = [0] * length
        for n, a in self.items:
            if n > length:
                raise ValueError(f"index {n} outside dense length {length}")
            out[n - 1] = a
        return out

    def support(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.items)

    def max_index(self) -> int:
        return self.items[-1][0] if self.items else 0

    def values(self) -> tuple:
        return tuple(a for _, a in self.items)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __bool__(self):
        return bool(self.items)

    def max_abs(self):
        return max((abs(a) for _, a in self.items), default=0)

    # -- linear structure ----------------------------------------------
    def __add__(self, other: "CoeffVector") -> "CoeffVector":
        d = dict(self.items)
        for n, a in other.items:
            d[n] = d.get(n, 0) + a
        return CoeffVector.from_dict(d)

    def __sub__(self, other: "CoeffVector") -> "CoeffVector":
        return self + other.scale(-1)

    def __neg__(self) -> "CoeffVector":
        return self.scale(-1)

    def scale(self, t) -> "CoeffVector":
        if t == 0:
            return CoeffVector()
        return CoeffVector(tuple((n, t * a) for n, a in self.items))

    def map_values(self, fn) -> "CoeffVector":
        return CoeffVector.from_dict({n: fn(a) for n, a in self.items})

    def exact(self) -> "CoeffVector":
        """Same vector with every coefficient converted to an exact number."""
        return CoeffVector(tuple((n, to_exact(a)) for n, a in self.items))

    def as_float(self) -> "CoeffVector":
        return CoeffVector(tuple((n, float(a)) for n, a in self.items))

    def __str__(self):
        return format_vector(self)


def support(v: CoeffVector) -> tuple[int, ...]:
    return v.support()


def project(v: CoeffVector, A: Iterable[int]) -> CoeffVector:
    """Coordinate projection ``P_A``."""
    keep = set(A)
    return CoeffVector(tuple((n, a) for n, a in v.items if n in keep))


def initial_projection(v: CoeffVector, m: int) -> CoeffVector:
    """Partial sum projection ``P_m``, i.e. restriction to ``{1..m}``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return CoeffVector(tuple((n, a) for n, a in v.items if n <= m))


def indicator(A: Iterable[int], signs: Sequence[int] | Mapping[int, int] | None = None,
              scale=1) -> CoeffVector:
    """Signed indicator sum ``scale * sum_{n in A} eps_n x_n``.

    ``signs`` is either aligned with ``sorted(A)`` or a mapping defined on
    exactly ``A``; ``None`` means all ones.
    """
    A = index_set(A)
    if signs is None:
        eps = (1,) * len(A)
    elif isinstance(signs, Mapping):
        if set(signs) != set(A):
            raise ValueError("sign pattern domain does not match the index set")
        eps = tuple(signs[n] for n in A)
    else:
        eps = tuple(signs)
        if len(eps) != len(A):
            raise ValueError("sign pattern length does not match the index set")
    if any(e not in (1, -1) for e in eps):
        raise ValueError("real sign patterns take values in {+1, -1}")
    if scale == 0:
        return CoeffVector()
    return CoeffVector(tuple((n, e * scale) for n, e in zip(A, eps)))


def _parse_scalar(text: str, exact: bool):
    if exact:
        return Fraction(text)
    if "/" in text:
        return float(Fraction(text))
    return float(text)


def parse_vector(text: str, exact: bool = False) -> CoeffVector:
    """Parse whitespace-separated ``index:value`` pairs (indices increasing)."""
    items = []
    prev = 0
    for tok in text.split():
        if ":" not in tok:
            raise ValueError(f"expected index:value, got {tok!r}")
        i, val = tok.split(":", 1)
        n = int(i)
        if n <= prev:
            raise ValueError("indices must be positive and strictly increasing")
        prev = n
        a = _parse_scalar(val, exact)
        if a != 0:
            items.append((n, a))
    return CoeffVector(tuple(items))


def _format_scalar(a) -> str:
    if isinstance(a, float):
        return repr(a)
    if isinstance(a, Fraction) and a.denominator == 1:
        return str(a.numerator)
    return str(a)


def format_vector(v: CoeffVector) -> str:
    return " ".join(f"{n}:{_format_scalar(a)}" for n, a in v.items)
