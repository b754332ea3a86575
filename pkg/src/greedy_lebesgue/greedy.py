"""Greedy sets, the thresholding greedy algorithm, truncation, and A_p / eta_p."""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from math import comb

from . import surd
from .coeffspace import CoeffVector, index_set, project, sign

__all__ = [
    "BudgetError",
    "GreedyResult",
    "TruncationResult",
    "greedy_sets",
    "is_greedy_set",
    "canonical_order",
    "canonical_greedy_set",
    "tga_residual",
    "truncate",
    "a_p",
    "eta_p",
]

DEFAULT_BUDGET = 10 ** 6


class BudgetError(RuntimeError):
    """Enumeration would exceed the configured budget."""


@dataclass(frozen=True)
class GreedyResult:
    order: tuple  # k(1), ..., k(m)
    greedy_sum: CoeffVector
    residual: CoeffVector

    @property
    def indices(self) -> tuple:
        return tuple(sorted(self.order))


@dataclass(frozen=True)
class TruncationResult:
    alpha: object
    over: tuple  # G_alpha(f)
    truncated: CoeffVector


def is_greedy_set(f: CoeffVector, A) -> bool:
    """``min_{n in A} |a_n| >= max_{n not in A} |a_n|``."""
    A = set(A)
    inside = min((abs(f[n]) for n in A), default=None)
    if inside is None:
        return True
    outside = max((abs(a) for n, a in f if n not in A), default=0)
    return inside >= outside


def greedy_sets(f: CoeffVector, m: int, window: int | None = None,
                budget: int = DEFAULT_BUDGET) -> list[tuple]:
    """All greedy sets of order ``m``, as sorted tuples in lexicographic order.

    When ``m`` exceeds the support size the sets are ``supp(f)`` plus any
    ``m - |supp f|`` further indices of ``{1..window}``.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    supp = f.support()
    if m == 0:
        return [()]
    if m >= len(supp):
        extra = m - len(supp)
        if extra == 0:
            return [supp]
        if window is None:
            raise ValueError("a window is needed when m exceeds the support size")
        pool = [n for n in range(1, window + 1) if n not in set(supp)]
        if len(pool) < extra:
            raise ValueError(f"window {window} cannot supply {m} indices")
        if comb(len(pool), extra) > budget:
            raise BudgetError("greedy set enumeration exceeds budget")
        return sorted(index_set(supp + c) for c in combinations(pool, extra))
    mags = sorted((abs(a) for _, a in f), reverse=True)
    tau = mags[m - 1]
    strict = [n for n, a in f if abs(a) > tau]
    ties = [n for n, a in f if abs(a) == tau]
    need = m - len(strict)
    if comb(len(ties), need) > budget:
        raise BudgetError("greedy set enumeration exceeds budget")
    return sorted(index_set(strict + list(c)) for c in combinations(ties, need))


def canonical_order(f: CoeffVector, m: int) -> tuple:
    """``(k(1), ..., k(m))``: decreasing modulus, minimal index first on ties.

    Past the support the recursion picks the smallest unused indices.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    ranked = [n for n, _ in sorted(f, key=lambda item: _RankKey(item))]
    order = ranked[:m]
    if len(order) < m:
        used = set(order)
        n = 1
        while len(order) < m:
            if n not in used:
                order.append(n)
            n += 1
    return tuple(order)


class _RankKey:
    __slots__ = ("mag", "idx")

    def __init__(self, item):
        self.idx, self.mag = item[0], abs(item[1])

    def __lt__(self, other):
        if self.mag != other.mag:
            return self.mag > other.mag
        return self.idx < other.idx


def canonical_greedy_set(f: CoeffVector, m: int) -> GreedyResult:
    order = canonical_order(f, m)
    gs = project(f, order)
    return GreedyResult(order, gs, f - gs)


def tga_residual(space, f: CoeffVector, m: int) -> CoeffVector:
    """``f - G_m(f)`` for the canonical greedy set (the space plays no role)."""
    return canonical_greedy_set(f, m).residual


def truncate(f: CoeffVector, alpha) -> TruncationResult:
    """``T_alpha(f) = alpha 1_{eps(f), G_alpha(f)} + (f - P_{G_alpha(f)} f)``."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    over = tuple(n for n, a in f if abs(a) > alpha)
    keep = set(over)
    items = tuple((n, alpha * sign(a) if n in keep else a) for n, a in f)
    return TruncationResult(alpha, over, CoeffVector(items))


def a_p(p, exact: bool = False):
    """``A_p = (2^p - 1)^{1/p}``; below 1 for p < 1 (see the convexity report suite).

    ``exact=True`` supports ``p in {1, 1/2}`` and returns a Fraction or Surd.
    """
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    if exact:
        from fractions import Fraction

        q = Fraction(p)
        if q == 1:
            return Fraction(1)
        if q == Fraction(1, 2):
            return (surd.sqrt(2) - 1) ** 2
        raise ValueError("exact A_p is available for p in {1, 1/2}")
    if p == 1:
        return 1.0
    p = float(p)
    return math.expm1(p * math.log(2)) ** (1 / p)


def _log_eta_objective(p: float, c: float, t: float) -> float:
    # log of (1 - t^p)^{-1/p} (1 - (1 + c t)^{-p})^{-1/p}
    one_minus_tp = -math.expm1(p * math.log(t))
    one_minus_q = -math.expm1(-p * math.log1p(c * t))
    if one_minus_tp <= 0 or one_minus_q <= 0:
        return math.inf
    return -(math.log(one_minus_tp) + math.log(one_minus_q)) / p


def _golden(fn, lo, hi, tol=1e-13):
    g = (math.sqrt(5) - 1) / 2
    x1, x2 = hi - g * (hi - lo), lo + g * (hi - lo)
    f1, f2 = fn(x1), fn(x2)
    while hi - lo > tol * max(1.0, abs(lo) + abs(hi)):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - g * (hi - lo)
            f1 = fn(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + g * (hi - lo)
            f2 = fn(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def eta_p(p, u, seeds: int = 64, return_argmin: bool = False):
    """``eta_p(u) = min_{0<t<1} (1-t^p)^{-1/p} (1-(1+A_p^{-1} u^{-1} t)^{-p})^{-1/p}``.

    The search runs in logit coordinates: ``seeds`` grid points, then a
    golden-section refinement of every bracket around a grid local minimum.
    """
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    if not u > 0:
        raise ValueError("u must be positive")
    p = float(p)
    c = 1.0 / (a_p(p) * float(u))

    def obj(s):
        t = 1.0 / (1.0 + math.exp(-s))
        return _log_eta_objective(p, c, t)

    lo_s, hi_s = -40.0, 40.0
    grid = [lo_s + (hi_s - lo_s) * i / (seeds - 1) for i in range(seeds)]
    vals = [obj(s) for s in grid]
    best_s, best_v = grid[0], vals[0]
    for i in range(seeds):
        left = vals[i - 1] if i > 0 else math.inf
        right = vals[i + 1] if i + 1 < seeds else math.inf
        if vals[i] <= left and vals[i] <= right:
            a = grid[max(i - 1, 0)]
            b = grid[min(i + 1, seeds - 1)]
            s, v = _golden(obj, a, b)
            if v < best_v:
                best_s, best_v = s, v
    value = math.exp(best_v)
    if return_argmin:
        return value, 1.0 / (1.0 + math.exp(-best_s))
    return value
