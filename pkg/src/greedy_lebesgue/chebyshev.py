"""Chebyshev thresholding greedy algorithm.

For polyhedral norms ``||v|| = max_i |phi_i(v)|`` the best coefficients on a
support ``A`` solve the min-max LP

    minimize t  subject to  -t <= phi_i(f - sum_{n in A} c_n x_n) <= t.

Functionals are either listed explicitly (c0_sup, c0_summing) or produced on
demand by a separation oracle (l_1 sign functionals, the D_k and Q_k
functionals of the constructed spaces); in the latter case the LP is solved by
constraint generation.  The dual LP supplies an optimality certificate and
ties are broken by the Euclidean projection of ``P_A f``'s coefficients onto
the optimal face.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import spaces as sp
from . import surd
from .coeffspace import CoeffVector, index_set, project, sign
from .greedy import canonical_order, tga_residual
from .simplex import FLOAT_EPS, linprog_max, nearest_point

__all__ = [
    "LinearFunctionalSet",
    "ChebyshevFit",
    "ChebyshevError",
    "polyhedral_functionals",
    "minmax_lp",
    "chebyshev_sum",
    "ctga",
    "verify_certificate",
    "maximize_coordinate",
    "residual_value",
    "best_sparse_residual",
]


class ChebyshevError(RuntimeError):
    """Solver failure (iteration cap, non-convergence)."""


@dataclass
class LinearFunctionalSet:
    """``||v|| = max_i |phi_i(v)|`` for ``v`` supported in ``{1..window}``.

    ``explicit`` holds sparse functionals as ``{index: coeff}`` dicts.
    ``separator(v)`` (optional) returns functionals attaining ``||v||``; the
    represented norm is then the max over explicit and all separable ones.
    """

    window: int
    explicit: list = field(default_factory=list)
    separator: Callable | None = None
    exact: bool = False
    label: str = ""

    def value(self, v: CoeffVector, extra=()):
        best = Fraction(0) if self.exact else 0.0
        for phi in list(self.explicit) + list(extra):
            x = abs(_apply(phi, v))
            if x > best:
                best = x
        return best

    def count(self) -> int:
        return len(self.explicit)


def _apply(phi: dict, v: CoeffVector):
    s = 0
    for n, a in v:
        c = phi.get(n)
        if c:
            s = s + c * a
    return s


def _lift(x, exact):
    if exact:
        return x if isinstance(x, (Fraction, surd.Surd)) else surd.to_exact(x)
    return float(x)


@dataclass
class ChebyshevFit:
    support: tuple
    coeffs: dict
    residual: object
    method: str  # lp_exact | lp_float | closed_form | iterative
    certificate: dict | None = None
    rounds: int = 0

    def approximant(self) -> CoeffVector:
        return CoeffVector.from_dict(self.coeffs)


def polyhedral_functionals(space: sp.SpaceSpec, window: int) -> LinearFunctionalSet:
    """Finite (or separator-backed) functional representation of ``space``."""
    ex = space.exact
    one = Fraction(1) if ex else 1.0
    if space.kind == "c0_sup":
        phis = [{j: one} for j in range(1, window + 1)]
        return LinearFunctionalSet(window, phis, None, ex, "coordinates")
    if space.kind == "c0_summing":
        phis = [{n: one for n in range(j, window + 1)} for j in range(1, window + 1)]
        return LinearFunctionalSet(window, phis, None, ex, "tail sums")
    if space.kind == "lp_quasi":
        if space.p != 1:
            raise sp.SpaceError("lp_quasi with p < 1 is not polyhedral")

        def l1_sep(v: CoeffVector):
            return [{n: one * sign(a) for n, a in v if n <= window}] if v else []

        return LinearFunctionalSet(window, [], l1_sep, ex, "l1 signs")
    phis = [{j: one} for j in range(1, window + 1)]

    def scale_sep(v: CoeffVector):
        return _scale_cuts(space, v, window)

    return LinearFunctionalSet(window, phis, scale_sep, ex, "coordinates + D_k/Q_k cuts")


def _scale_cuts(space, v: CoeffVector, window: int):
    if not v:
        return []
    vals = sp._num_mode(space, v.dense())
    cuts = []
    for k, (n, m) in enumerate(space.scales, start=1):
        val, idx, sg = sp._d_best(space, k, vals)
        if idx:
            w = 1 / (m * (surd.sqrt(len(idx)) if space.exact else math.sqrt(len(idx))))
            cuts.append({i: s * w for i, s in zip(idx, sg)})
        _, delta, _ = sp._q_dual(space, k, vals, want_delta=True)
        if delta is not None:
            phi = {j + 1: d / m for j, d in enumerate(delta) if d and j + 1 <= window}
            if phi:
                cuts.append(phi)
    return cuts


def _freeze(phi: dict):
    return tuple(sorted(phi.items()))


def _solve_primal(rows_phi, f, A, exact):
    """min t over the current functional list; returns (c, t)."""
    k = len(A)
    nv = 2 * k + 1
    zero = Fraction(0) if exact else 0.0
    c_obj = [zero] * nv
    c_obj[-1] = -1
    rows = []
    for phi in rows_phi:
        fa = _apply(phi, f)
        coef = [phi.get(n, 0) for n in A]
        # phi(f) - coef.c <= t   and   -(phi(f) - coef.c) <= t
        r1 = [-x for x in coef] + list(coef) + [-1]
        r2 = list(coef) + [-x for x in coef] + [-1]
        rows.append((r1, "<=", -fa))
        rows.append((r2, "<=", fa))
    res = linprog_max(c_obj, rows, exact=exact)
    if res.status != "optimal":
        raise ChebyshevError(f"min-max LP ended with status {res.status}")
    c = [res.x[i] - res.x[k + i] for i in range(k)]
    return c, res.x[-1]


def _solve_dual(rows_phi, f, A, exact):
    """max sum y_i phi_i(f) s.t. sum y_i phi_i|_A = 0, sum |y_i| <= 1."""
    q = len(rows_phi)
    zero = Fraction(0) if exact else 0.0
    c_obj = []
    for phi in rows_phi:
        fa = _apply(phi, f)
        c_obj.append(fa)
    c_obj = c_obj + [-x for x in c_obj]
    rows = []
    for n in A:
        coef = [phi.get(n, zero) for phi in rows_phi]
        rows.append((coef + [-x for x in coef], "=", zero))
    rows.append(([1] * (2 * q), "<=", 1))
    res = linprog_max(c_obj, rows, exact=exact)
    if res.status != "optimal":
        raise ChebyshevError(f"dual LP ended with status {res.status}")
    y = [res.x[i] - res.x[q + i] for i in range(q)]
    return y, res.value


def minmax_lp(functionals: LinearFunctionalSet, f: CoeffVector, A, *, norm_fn=None,
              tie_break: bool = True, max_rounds: int = 500) -> ChebyshevFit:
    """Solve ``min_c max_i |phi_i(f - sum_{n in A} c_n x_n)|`` exactly.

    ``norm_fn`` (default: the functional set itself) evaluates the true norm
    when a separator is present.
    """
    A = index_set(A)
    exact = functionals.exact
    if f.max_index() > functionals.window or (A and A[-1] > functionals.window):
        raise ValueError("functionals do not cover supp(f) and A")
    f = f.exact() if exact else f.as_float()
    tol = 0 if exact else 1e-10
    active, seen = [], set()

    def add(phis):
        added = 0
        for phi in phis:
            phi = {n: _lift(c, exact) for n, c in phi.items() if c}
            key = _freeze(phi)
            if phi and key not in seen:
                seen.add(key)
                active.append(phi)
                added += 1
        return added

    add(functionals.explicit)
    sep = functionals.separator
    if sep is not None:
        add(sep(f))
        add(sep(f - project(f, A)))
    if not active:
        zero = Fraction(0) if exact else 0.0
        return ChebyshevFit(A, {}, zero, "lp_exact" if exact else "lp_float", None, 0)

    def true_norm(v):
        if norm_fn is not None:
            return norm_fn(v)
        return functionals.value(v, sep(v) if sep else ())

    def residual_of(c):
        return f - CoeffVector.from_dict(dict(zip(A, c)))

    rounds = 0
    while True:
        rounds += 1
        if rounds > max_rounds:
            raise ChebyshevError("constraint generation did not converge")
        if A:
            c, t = _solve_primal(active, f, A, exact)
        else:
            c, t = [], functionals.value(f, active)
        if sep is None:
            break
        r = residual_of(c)
        if true_norm(r) <= t + tol:
            break
        if not add(sep(r)):
            raise ChebyshevError("separator returned no new cut for a violated point")

    if A and tie_break:
        target = [f[n] for n in A]
        for _ in range(max_rounds):
            G, h = [], []
            for phi in active:
                fa = _apply(phi, f)
                coef = [phi.get(n, 0) for n in A]
                G.append([-x for x in coef])
                h.append(t - fa)
                G.append(list(coef))
                h.append(t + fa)
            c_new = nearest_point(target, G, h, c, exact)
            if sep is None or true_norm(residual_of(c_new)) <= t + tol:
                c = c_new
                break
            if not add(sep(residual_of(c_new))):
                break
    y, dual_value = _solve_dual(active, f, A, exact) if A else ([], t)
    cert = {
        "value": t,
        "dual_value": dual_value,
        "weights": [(i, w) for i, w in enumerate(y) if w],
        "functionals": [active[i] for i, w in enumerate(y) if w],
    }
    residual = true_norm(residual_of(c)) if sep is not None else functionals.value(residual_of(c), active)
    coeffs = {n: cn for n, cn in zip(A, c)}
    return ChebyshevFit(A, coeffs, residual, "lp_exact" if exact else "lp_float", cert, rounds)


def verify_certificate(fit: ChebyshevFit, f: CoeffVector, tol: float = 1e-9) -> bool:
    """Check dual feasibility and the zero duality gap of an LP fit."""
    cert = fit.certificate
    if cert is None:
        return False
    exact = fit.method == "lp_exact"
    if exact:
        f = f.exact()
    tl = 0 if exact else tol
    ws = [w for _, w in cert["weights"]]
    total = 0
    for w in ws:
        total = total + abs(w)
    if total > 1 + tl:
        return False
    for n in fit.support:
        s = 0
        for w, phi in zip(ws, cert["functionals"]):
            s = s + w * phi.get(n, 0)
        if abs(s) > tl:
            return False
    lower = 0
    for w, phi in zip(ws, cert["functionals"]):
        lower = lower + w * _apply(phi, f)
    return abs(lower - fit.residual) <= tl


def _iterative(space, f, A, seed=0, restarts=32, sweeps=200):
    rng = random.Random(seed)
    base = [float(f[n]) for n in A]
    ff = f.as_float()
    scale = max((abs(x) for x in base), default=0.0) + 1.0

    def obj(c):
        return float(sp.norm(space, ff - CoeffVector.from_dict(dict(zip(A, c)))))

    starts = [list(base)] + [[x + rng.uniform(-scale, scale) for x in base] for _ in range(restarts - 1)]
    best_c, best_v = None, math.inf
    converged = True
    for c in starts:
        v = obj(c)
        for _ in range(sweeps):
            improved = False
            for i in range(len(A)):
                def g(x, i=i):
                    cc = list(c)
                    cc[i] = x
                    return obj(cc)

                xs = [c[i] + scale * (j / 20 - 1) for j in range(41)]
                fx = [g(x) for x in xs]
                j = min(range(41), key=fx.__getitem__)
                lo, hi = xs[max(j - 1, 0)], xs[min(j + 1, 40)]
                x, fxv = _golden1(g, lo, hi)
                if fxv < v - 1e-13:
                    c[i], v, improved = x, fxv, True
            if not improved:
                break
        else:
            converged = False
        if v < best_v:
            best_c, best_v = list(c), v
    if not converged:
        raise ChebyshevError("coordinate descent hit its sweep cap")
    return best_c, best_v


def _golden1(fn, lo, hi, iters=80):
    gr = (math.sqrt(5) - 1) / 2
    x1, x2 = hi - gr * (hi - lo), lo + gr * (hi - lo)
    f1, f2 = fn(x1), fn(x2)
    for _ in range(iters):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - gr * (hi - lo)
            f1 = fn(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + gr * (hi - lo)
            f2 = fn(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def chebyshev_sum(space: sp.SpaceSpec, f: CoeffVector, A, method: str = "auto",
                  seed: int = 0) -> ChebyshevFit:
    """Best approximation of ``f`` from ``span{x_n : n in A}``.

    ``method``: ``auto`` (closed form for lp_quasi, LP otherwise), ``lp``,
    ``closed_form`` (lp_quasi only) or ``iterative``.
    """
    A = index_set(A)
    if not A:
        return ChebyshevFit((), {}, sp.norm(space, f), "closed_form")
    if method == "auto":
        method = "closed_form" if space.kind == "lp_quasi" else "lp"
    if method == "closed_form":
        if space.kind != "lp_quasi":
            raise ValueError("closed form is available for lp_quasi only")
        # the quasi-norm separates coordinates, so c = a_A is optimal
        coeffs = {n: f[n] for n in A}
        if space.exact:
            coeffs = {n: surd.to_exact(c) for n, c in coeffs.items()}
        return ChebyshevFit(A, coeffs, sp.norm(space, f - project(f, A)), "closed_form")
    if method == "iterative":
        c, v = _iterative(space, f, A, seed=seed)
        return ChebyshevFit(A, dict(zip(A, c)), v, "iterative")
    if method != "lp":
        raise ValueError(f"unknown method {method!r}")
    window = max(f.max_index(), A[-1], space.scale_window)
    fs = polyhedral_functionals(space, window)
    norm_fn = (lambda v: sp.norm(space, v)) if fs.separator is not None else None
    return minmax_lp(fs, f, A, norm_fn=norm_fn)


def ctga(space: sp.SpaceSpec, f: CoeffVector, m: int, method: str = "auto") -> ChebyshevFit:
    """CTGA step: best fit on the canonical greedy set ``A_m(f)``."""
    return chebyshev_sum(space, f, canonical_order(f, m), method=method)


def ctga_gap(space, f, m):
    """``(ctga residual, tga residual norm)`` for the dominance check."""
    fit = ctga(space, f, m)
    return fit.residual, sp.norm(space, tga_residual(space, f, m))


def maximize_coordinate(space: sp.SpaceSpec, n: int, N: int, max_rounds: int = 500):
    """``max a_n`` over ``||v|| <= 1`` with ``supp v`` in ``{1..N}`` (LP)."""
    exact = space.exact
    window = N
    fs = polyhedral_functionals(space, window)
    zero = Fraction(0) if exact else 0.0
    active, seen = [], set()

    def add(phis):
        k = 0
        for phi in phis:
            phi = {i: _lift(c, exact) for i, c in phi.items() if c and i <= N}
            key = _freeze(phi)
            if phi and key not in seen:
                seen.add(key)
                active.append(phi)
                k += 1
        return k

    add(fs.explicit)
    if fs.separator is not None:
        add(fs.separator(CoeffVector.from_dict({n: 1})))
        if not fs.explicit:
            add([{i: 1 for i in range(1, N + 1)}])
    tol = 0 if exact else 1e-10
    for _ in range(max_rounds):
        c = [zero] * (2 * N)
        c[n - 1] = 1
        c[N + n - 1] = -1
        rows = []
        for phi in active:
            coef = [zero] * N
            for i, a in phi.items():
                coef[i - 1] = a
            rows.append((coef + [-a for a in coef], "<=", 1))
            rows.append(([-a for a in coef] + coef, "<=", 1))
        res = linprog_max(c, rows, exact=exact)
        if res.status != "optimal":
            raise ChebyshevError(f"coordinate LP ended with status {res.status}")
        v = CoeffVector.from_dense([res.x[i] - res.x[N + i] for i in range(N)])
        if fs.separator is None or sp.norm(space, v) <= 1 + tol:
            return res.value
        if not add(fs.separator(v)):
            raise ChebyshevError("separator returned no new cut")
    raise ChebyshevError("coordinate LP did not converge")


def _tail_sums(vals):
    out = [0] * (len(vals) + 2)
    for j in range(len(vals), 0, -1):
        out[j] = out[j + 1] + vals[j - 1]
    return out  # out[j] = sum_{n >= j} a_n, out[len+1] = 0


def residual_value(space: sp.SpaceSpec, f: CoeffVector, S):
    """``min_c ||f - sum_{n in S} c_n x_n||`` (closed form where one exists).

    c0_summing: with ``S = {s_1 < ... < s_r}`` the tail sums of the residual
    are ``T_j - C_i`` on each block ``(s_{i-1}, s_i]`` with free constants
    ``C_i``, and ``T_j`` past ``s_r``; the optimum is the largest half-range.
    """
    S = index_set(S)
    if space.kind == "lp_quasi":
        return sp.norm(space, f - project(f, S))
    exact = space.exact
    vals = sp._num_mode(space, f.dense())
    if space.kind == "c0_sup":
        keep = set(S)
        return max((abs(a) for n, a in enumerate(vals, start=1) if n not in keep),
                   default=Fraction(0) if exact else 0.0)
    if space.kind == "c0_summing":
        T = _tail_sums(vals)
        top = len(vals)
        best = Fraction(0) if exact else 0.0
        last = S[-1] if S else 0
        for j in range(last + 1, top + 1):
            if abs(T[j]) > best:
                best = abs(T[j])
        prev = 0
        for s_i in S:
            block = [T[j] if j <= top else 0 for j in range(prev + 1, s_i + 1)]
            if block:
                half = (max(block) - min(block)) / 2
                if half > best:
                    best = half
            prev = s_i
        return best
    return chebyshev_sum(space, f, S).residual


def best_sparse_residual(space: sp.SpaceSpec, f: CoeffVector, s: int, window: int):
    """``inf { ||f - y|| : supp y in {1..window}, |supp y| <= s }``."""
    from itertools import combinations

    if space.kind == "lp_quasi":
        # best s-term approximation keeps the s largest coefficients
        top = canonical_order(f, min(s, len(f)))
        return sp.norm(space, f - project(f, top))
    if space.kind == "c0_sup":
        mags = sorted((abs(a) for _, a in sp._num_mode_items(space, f)), reverse=True)
        if s < len(mags):
            return mags[s]
        return Fraction(0) if space.exact else 0.0
    best = None
    universe = range(1, window + 1)
    for r in range(0, min(s, window) + 1):
        for S in combinations(universe, r):
            v = residual_value(space, f, S)
            if best is None or v < best:
                best = v
    return best
