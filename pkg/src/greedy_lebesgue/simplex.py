"""Small dense LP/QP core that works over floats, Fractions and Surds.

The tableau simplex uses Bland's rule throughout, so it is deterministic and
cannot cycle.  When every input number is exact the arithmetic is exact and
no tolerance is used; with floats a tolerance of ``FLOAT_EPS`` applies.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .surd import Surd

__all__ = [
    "LPResult",
    "LPError",
    "linprog_max",
    "solve_linear",
    "nearest_point",
    "detect_exact",
    "FLOAT_EPS",
]

FLOAT_EPS = 1e-11


class LPError(RuntimeError):
    """Raised on iteration-cap exhaustion or an impossible LP outcome."""


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: list = field(default_factory=list)
    value: object = None
    iterations: int = 0


def detect_exact(*arrays) -> bool:
    """True when no float occurs in the (nested) inputs."""
    stack = list(arrays)
    while stack:
        a = stack.pop()
        if isinstance(a, float):
            return False
        if isinstance(a, (list, tuple)):
            stack.extend(a)
    return True


def _coerce(a, exact):
    # python ints divide to floats; lift them to Fraction in exact mode
    if exact:
        return a if isinstance(a, (Fraction, Surd)) else Fraction(a)
    return float(a)


def _is_zero(x, eps) -> bool:
    if eps:
        return -eps <= x <= eps
    return x == 0


def _pivot(T, obj, basis, i, j):
    row = T[i]
    piv = row[j]
    inv = 1 / piv
    T[i] = row = [a * inv if a else a for a in row]
    for k, other in enumerate(T):
        if k != i:
            f = other[j]
            if f:
                T[k] = [a - f * b if b else a for a, b in zip(other, row)]
    f = obj[j]
    if f:
        obj[:] = [a - f * b if b else a for a, b in zip(obj, row)]
    basis[i] = j


def _run(T, obj, basis, eps, max_iter, allowed):
    """Bland-rule iterations maximizing; ``obj`` holds reduced costs and -value."""
    it = 0
    ncol = len(obj) - 1
    while True:
        j = next((c for c in range(ncol) if allowed[c] and obj[c] > eps), None)
        if j is None:
            return "optimal", it
        best = None
        for i, row in enumerate(T):
            a = row[j]
            if a > eps:
                ratio = row[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return "unbounded", it
        _pivot(T, obj, basis, best[1], j)
        it += 1
        if it > max_iter:
            raise LPError(f"simplex iteration cap {max_iter} reached")


def linprog_max(c: Sequence, rows: Sequence, *, exact: bool | None = None,
                max_iter: int = 100_000) -> LPResult:
    """Maximize ``c @ x`` subject to ``rows`` and ``x >= 0``.

    Each row is ``(coeffs, sense, rhs)`` with ``sense`` in ``{"<=", ">=", "="}``
    and ``coeffs`` a dense sequence of length ``len(c)``.
    """
    n = len(c)
    if exact is None:
        exact = detect_exact(list(c), [r[0] for r in rows], [r[2] for r in rows])
    eps = 0 if exact else FLOAT_EPS
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0

    c = [_coerce(a, exact) for a in c]
    norm_rows = []
    for coeffs, sense, rhs in rows:
        coeffs = [_coerce(a, exact) for a in coeffs]
        rhs = _coerce(rhs, exact)
        if len(coeffs) != n:
            raise ValueError("row length does not match the number of variables")
        if rhs < 0:
            coeffs = [-a for a in coeffs]
            rhs = -rhs
            sense = {"<=": ">=", ">=": "<=", "=": "="}[sense]
        norm_rows.append((coeffs, sense, rhs))

    n_slack = sum(1 for _, s, _ in norm_rows if s != "=")
    n_art = sum(1 for _, s, _ in norm_rows if s != "<=")
    ntot = n + n_slack + n_art
    T, basis = [], []
    s_col, a_col = n, n + n_slack
    art_cols = []
    for coeffs, sense, rhs in norm_rows:
        row = list(coeffs) + [zero] * (n_slack + n_art) + [rhs]
        if sense == "<=":
            row[s_col] = one
            basis.append(s_col)
            s_col += 1
        else:
            if sense == ">=":
                row[s_col] = -one
                s_col += 1
            row[a_col] = one
            basis.append(a_col)
            art_cols.append(a_col)
            a_col += 1
        T.append(row)

    iters = 0
    allowed = [True] * ntot
    if art_cols:
        # phase 1: maximize -sum(artificials)
        obj = [zero] * (ntot + 1)
        for col in art_cols:
            obj[col] = -one
        for i, b in enumerate(basis):
            if b in art_cols:
                obj = [o + a for o, a in zip(obj, T[i])]
        status, it = _run(T, obj, basis, eps, max_iter, allowed)
        iters += it
        if obj[-1] > eps:  # -(phase-1 value) > 0 -> artificials cannot vanish
            return LPResult("infeasible", iterations=iters)
        art = set(art_cols)
        drop = []
        for i, b in enumerate(basis):
            if b in art:
                j = next((c for c in range(n + n_slack) if not _is_zero(T[i][c], eps)), None)
                if j is None:
                    drop.append(i)
                else:
                    _pivot(T, obj, basis, i, j)
        for i in reversed(drop):
            del T[i]
            del basis[i]
        for col in art_cols:
            allowed[col] = False
        for row in T:
            for col in art_cols:
                row[col] = zero

    obj = [zero] * (ntot + 1)
    for j in range(n):
        obj[j] = c[j]
    for i, b in enumerate(basis):
        cb = obj[b]
        if cb:
            obj = [o - cb * a for o, a in zip(obj, T[i])]
    status, it = _run(T, obj, basis, eps, max_iter, allowed)
    iters += it
    if status == "unbounded":
        return LPResult("unbounded", iterations=iters)
    x = [zero] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = T[i][-1]
    value = zero
    for j in range(n):
        if c[j] and x[j]:
            value = value + c[j] * x[j]
    return LPResult("optimal", x=x, value=value, iterations=iters)


def _abs(x):
    return abs(x)


def solve_linear(M: Sequence[Sequence], b: Sequence, exact: bool | None = None):
    """Gaussian elimination; returns the solution list or ``None`` if singular."""
    n = len(M)
    if exact is None:
        exact = detect_exact([list(r) for r in M], list(b))
    eps = 0 if exact else 1e-13
    A = [[_coerce(a, exact) for a in r] + [_coerce(bi, exact)] for r, bi in zip(M, b)]
    for col in range(n):
        if exact:
            piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        else:
            piv = max(range(col, n), key=lambda r: _abs(A[r][col]))
            if _abs(A[piv][col]) <= eps:
                piv = None
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [a * inv for a in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [a - f * p for a, p in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]


def _dot(u, v):
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def nearest_point(c0: Sequence, G: Sequence[Sequence], h: Sequence, x0: Sequence,
                  exact: bool | None = None, max_iter: int = 10_000) -> list:
    """Euclidean projection of ``c0`` onto ``{x : G x <= h}`` from feasible ``x0``.

    Primal active-set method; removal of working constraints follows the
    smallest-index rule among positive multipliers.
    """
    if exact is None:
        exact = detect_exact(list(c0), [list(g) for g in G], list(h), list(x0))
    eps = 0 if exact else 1e-12
    n = len(c0)
    c0 = [_coerce(a, exact) for a in c0]
    G = [[_coerce(a, exact) for a in g] for g in G]
    h = [_coerce(a, exact) for a in h]
    x = [_coerce(a, exact) for a in x0]
    W: list[int] = []
    for _ in range(max_iter):
        grad = [xi - ci for xi, ci in zip(x, c0)]
        if W:
            GW = [G[i] for i in W]
            gram = [[_dot(gi, gj) for gj in GW] for gi in GW]
            mu = solve_linear(gram, [_dot(gi, grad) for gi in GW], exact)
            if mu is None:
                raise LPError("dependent working set in projection")
            d = list(grad)
            d = [-di for di in d]
            for mui, gi in zip(mu, GW):
                if mui:
                    d = [dj + mui * gij for dj, gij in zip(d, gi)]
        else:
            mu = []
            d = [-g for g in grad]
        if all(_is_zero(di, eps) for di in d):
            pos = [(k, m) for k, m in enumerate(mu) if m > eps]
            if not pos:
                return x
            k = min(pos, key=lambda km: W[km[0]])[0]
            del W[k]
            continue
        alpha, block = 1, None
        for i in range(len(G)):
            if i in W:
                continue
            gd = _dot(G[i], d)
            if gd > eps:
                slack = h[i] - _dot(G[i], x)
                if slack < 0:
                    slack = 0
                step = slack / gd
                if step < alpha:
                    alpha, block = step, i
        if alpha:
            x = [xi + alpha * di for xi, di in zip(x, d)]
        if block is not None:
            W.append(block)
    raise LPError("projection did not converge")
