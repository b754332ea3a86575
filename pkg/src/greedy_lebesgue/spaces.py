"""Quasi-norm oracles for the built-in sequence spaces.

Classical spaces: ``lp_quasi(p)`` (canonical basis of l_p, 0 < p <= 1),
``c0_sup`` (canonical basis of c_0) and ``c0_summing`` (summing basis of c_0,
coefficient norm ``max_j |sum_{n >= j} a_n|``).

Constructed spaces ``prop5_space`` / ``prop6_space`` carry a finite list of
scales ``(n_k, m_k)``; their norm is

    max( max_n |a_n|,  max_k D_k(a),  max_k Q_k(a) )

with ``D_k`` a weighted top-r tail functional and ``Q_k`` the support function
of the polytope ``Delta_k`` scaled by ``1/m_k``.  The two constructions differ
only in the coupling constraint of ``Delta_k``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import surd
from .coeffspace import CoeffVector, sign
from .simplex import linprog_max

__all__ = [
    "SpaceSpec",
    "SpaceError",
    "QCertificate",
    "lp_quasi",
    "c0_sup",
    "c0_summing",
    "prop5_space",
    "prop6_space",
    "minimal_strict_scale",
    "norm",
    "norm_dense",
    "eval_D",
    "eval_Q",
    "q_certificate",
    "q_proof_lower_bound",
    "delta_feasible",
    "dual_functional_norm",
    "higher_scale_cap",
    "load_space",
    "parse_space",
    "space_from_dict",
]

KINDS = ("lp_quasi", "c0_sup", "c0_summing", "prop5_space", "prop6_space")
CONSTRUCTED = ("prop5_space", "prop6_space")
FLOAT_TOL = 1e-9


class SpaceError(ValueError):
    """Invalid space description."""


@dataclass(frozen=True)
class SpaceSpec:
    kind: str
    p: Fraction = Fraction(1)
    scales: tuple = ()
    strict_growth: bool = False
    exact: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpaceError(f"unknown space kind {self.kind!r}")
        p = Fraction(str(self.p)) if isinstance(self.p, float) else Fraction(self.p)
        object.__setattr__(self, "p", p)
        if not 0 < p <= 1:
            raise SpaceError("p must lie in (0, 1]")
        if self.kind != "lp_quasi" and p != 1:
            raise SpaceError(f"{self.kind} is a Banach space; p must be 1")
        scales = tuple((int(n), int(m)) for n, m in self.scales)
        object.__setattr__(self, "scales", scales)
        if self.kind in CONSTRUCTED:
            _check_scales(self.kind, scales, self.strict_growth)
        elif scales:
            raise SpaceError(f"{self.kind} takes no scales")
        if self.exact and self.kind == "lp_quasi" and p not in (1, Fraction(1, 2)):
            raise SpaceError("exact mode supports lp_quasi only for p in {1, 1/2}")

    @property
    def polyhedral(self) -> bool:
        return self.kind != "lp_quasi" or self.p == 1

    @property
    def schauder(self) -> bool:
        return self.kind in ("lp_quasi", "c0_sup", "c0_summing")

    @property
    def scale_window(self) -> int:
        """Coordinates touched by the Q_k polytopes: ``2 * n_{K_max}``."""
        return 2 * max((n for n, _ in self.scales), default=0)

    @property
    def pf(self) -> float:
        return float(self.p)

    def with_exact(self, exact: bool = True) -> "SpaceSpec":
        return SpaceSpec(self.kind, self.p, self.scales, self.strict_growth, exact)

    def label(self) -> str:
        if self.kind == "lp_quasi":
            return f"lp_quasi({self.p})"
        if self.kind in CONSTRUCTED:
            sc = ",".join(f"{n}x{m}" for n, m in self.scales)
            return f"{self.kind}[{sc}]"
        return self.kind

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "p": str(self.p),
            "scales": [list(s) for s in self.scales],
            "strict_growth": self.strict_growth,
            "exact": self.exact,
        }


def _check_scales(kind, scales, strict):
    if not scales:
        raise SpaceError(f"{kind} needs at least one scale (n_k, m_k)")
    for k, (n, m) in enumerate(scales, start=1):
        if n < 2 or m < 6:
            raise SpaceError(f"scale {k}: need n_k >= 2 and m_k >= 6, got ({n}, {m})")
        if kind == "prop5_space" and n % 2:
            raise SpaceError(f"scale {k}: prop5_space needs even n_k, got {n}")
        if strict:
            lower = 2 * m ** (4 * k) if kind == "prop5_space" else m ** (4 * k)
            if not lower < n:
                raise SpaceError(f"scale {k}: growth condition needs n_k > {lower}, got {n}")
            if k < len(scales) and not 2 * n < scales[k][1]:
                raise SpaceError(f"scale {k}: growth condition needs m_{k + 1} > 2 n_k")


def lp_quasi(p=1, exact: bool = False) -> SpaceSpec:
    return SpaceSpec("lp_quasi", Fraction(str(p)) if isinstance(p, float) else Fraction(p), exact=exact)


def c0_sup(exact: bool = False) -> SpaceSpec:
    return SpaceSpec("c0_sup", exact=exact)


def c0_summing(exact: bool = False) -> SpaceSpec:
    return SpaceSpec("c0_summing", exact=exact)


def prop5_space(scales, strict_growth: bool = True, exact: bool = False) -> SpaceSpec:
    return SpaceSpec("prop5_space", 1, tuple(scales), strict_growth, exact)


def prop6_space(scales, strict_growth: bool = True, exact: bool = False) -> SpaceSpec:
    return SpaceSpec("prop6_space", 1, tuple(scales), strict_growth, exact)


def minimal_strict_scale(kind: str, m: int = 6) -> tuple[int, int]:
    """Smallest admissible ``(n_1, m_1)`` for a single strict scale."""
    if kind == "prop5_space":
        n = 2 * m ** 4 + 1
        n += n % 2
    elif kind == "prop6_space":
        n = m ** 4 + 1
    else:
        raise SpaceError(f"{kind} has no scales")
    return n, m


# ---------------------------------------------------------------------------
# number helpers

def _num_mode(space: SpaceSpec, values):
    if space.exact:
        return [v if isinstance(v, surd.Surd) else surd.to_exact(v) for v in values]
    return [float(v) for v in values]


def _num_mode_items(space: SpaceSpec, v: CoeffVector):
    vals = _num_mode(space, v.values())
    return list(zip(v.support(), vals))


def _sqrt(x, exact: bool):
    return surd.sqrt(x) if exact else math.sqrt(x)


def _coupling_weights(tag: str, n: int, exact: bool):
    if tag == "prop5_space":
        tail = 1
    else:
        tail = 1 / surd.sqrt(n) if exact else 1 / math.sqrt(n)
    return [1] * n + [tail] * n


def _concave_steps(n: int, exact: bool):
    # sqrt(i) - sqrt(i-1), the extreme majorization profile
    if exact:
        return [surd.sqrt(i) - surd.sqrt(i - 1) for i in range(1, n + 1)]
    r = np.sqrt(np.arange(n + 1, dtype=float))
    return list(np.diff(r))


# ---------------------------------------------------------------------------
# norms

def norm(space: SpaceSpec, v: CoeffVector):
    """Quasi-norm of the element with coefficient vector ``v``."""
    if not v:
        return Fraction(0) if space.exact else 0.0
    return norm_dense(space, _num_mode(space, v.dense()))


def norm_dense(space: SpaceSpec, vals: Sequence):
    """Quasi-norm of the dense coefficient list ``vals`` (``vals[0]`` is index 1).

    The caller chooses the number type; no conversion happens here.
    """
    kind = space.kind
    if kind == "c0_sup":
        return max((abs(a) for a in vals), default=0)
    if kind == "c0_summing":
        best = s = 0
        for a in reversed(vals):
            if a:
                s = s + a
            if abs(s) > best:
                best = abs(s)
        return best
    if kind == "lp_quasi":
        if space.p == 1:
            s = 0
            for a in vals:
                if a:
                    s = s + abs(a)
            return s
        if space.exact:
            if space.p != Fraction(1, 2):
                raise SpaceError("exact lp_quasi supports p = 1/2 only besides p = 1")
            s = 0
            for a in vals:
                if a:
                    s = s + surd.sqrt(abs(a))
            return s * s
        p = float(space.p)
        s = math.fsum(abs(float(a)) ** p for a in vals if a)
        return s ** (1 / p)
    best = max((abs(a) for a in vals), default=0)
    for k in range(1, len(space.scales) + 1):
        d = _d_best(space, k, vals)[0]
        if d > best:
            best = d
        q = _q_dual(space, k, vals)[0]
        if q > best:
            best = q
    return best


def higher_scale_cap(space: SpaceSpec, v: CoeffVector):
    """Bound on the contribution of any unmaterialized scale ``l > K_max``.

    Any admissible continuation has ``n_{K+1} > m_{K+1} > 2 n_K``.  For ``v``
    supported in ``I_{4 n_K}`` this gives ``D_l(v) = 0`` (its indices exceed
    ``2 n_l > 4 n_K``) and ``Q_l(v) <= ||v||_1 / m_l < ||v||_1 / (2 n_K)``.
    Returns ``None`` when ``v`` leaves that window.
    """
    if space.kind not in CONSTRUCTED:
        raise SpaceError("only constructed spaces have scales")
    w = space.scale_window
    if v.max_index() > 2 * w:
        return None
    vals = _num_mode(space, v.values())
    s = 0
    for a in vals:
        s = s + abs(a)
    return s / w if space.exact else float(s) / w


# ---------------------------------------------------------------------------
# D_k

def _scale(space, k):
    if not 1 <= k <= len(space.scales):
        raise SpaceError(f"scale index {k} outside 1..{len(space.scales)}")
    return space.scales[k - 1]


def _d_best(space: SpaceSpec, k: int, vals: Sequence):
    """``(value, indices, signs)`` of the maximizing D_k functional."""
    n, m = _scale(space, k)
    tail = [(abs(a), i + 1, a) for i, a in enumerate(vals[2 * n:], start=2 * n) if a]
    if not tail:
        return 0, (), ()
    if not space.exact and len(tail) > 64:
        mags = np.array([float(t[0]) for t in tail])
        order = np.argsort(-mags, kind="stable")
        take = order[:n]
        csum = np.cumsum(mags[take])
        ratios = csum / np.sqrt(np.arange(1, len(take) + 1))
        r = int(np.argmax(ratios)) + 1
        chosen = [tail[j] for j in take[:r]]
        return float(ratios[r - 1]) / m, tuple(c[1] for c in chosen), tuple(sign(c[2]) for c in chosen)
    tail.sort(key=_ExactKey)
    best_r, best_sq, s = 1, None, 0
    sums = []
    for r, (mag, _, _) in enumerate(tail[:n], start=1):
        s = s + mag
        sums.append(s)
        sq = s * s / r
        if best_sq is None or sq > best_sq:
            best_sq, best_r = sq, r
    chosen = tail[:best_r]
    val = sums[best_r - 1] / _sqrt(best_r, space.exact) / m
    return val, tuple(c[1] for c in chosen), tuple(sign(c[2]) for c in chosen)


class _ExactKey:
    """Sort key: decreasing magnitude, then increasing index (exact compare)."""

    __slots__ = ("mag", "idx")

    def __init__(self, t):
        self.mag, self.idx = t[0], t[1]

    def __lt__(self, other):
        if self.mag != other.mag:
            return self.mag > other.mag
        return self.idx < other.idx


def eval_D(space: SpaceSpec, k: int, v: CoeffVector):
    """``D_k(v) = (1/m_k) max_{1<=r<=n_k} (sum of r largest |a_n|, n > 2n_k) / sqrt(r)``."""
    if space.kind not in CONSTRUCTED:
        raise SpaceError("D_k is defined on constructed spaces only")
    if not v:
        return Fraction(0) if space.exact else 0.0
    return _d_best(space, k, _num_mode(space, v.dense()))[0]


# ---------------------------------------------------------------------------
# Q_k

@dataclass
class QCertificate:
    """Primal-dual certificate for ``Q_k``.

    ``delta`` is a feasible point of Delta_k attaining ``m_k * value``; the
    multiplier ``t`` of the coupling constraint certifies the upper bound
    ``sup <= h_C(a - t w) + |t|``.
    """

    value: object
    delta: list = field(default_factory=list)
    t: object = 0
    method: str = "dual"


def _variant_of(space: SpaceSpec, variant):
    if variant is None:
        return space.kind
    tag = {"prop5": "prop5_space", "prop6": "prop6_space"}.get(variant, variant)
    if tag not in CONSTRUCTED:
        raise SpaceError(f"unknown Delta_k variant {variant!r}")
    return tag


def _block(vals, n, exact):
    a = list(vals[: 2 * n]) + [0] * max(0, 2 * n - len(vals))
    if exact:
        return [x if isinstance(x, surd.Surd) else Fraction(x) for x in a]
    return [float(x) for x in a]


class _Phi:
    """Dual objective ``phi(t) = h_C(a - t w) + |t|`` for one scale."""

    def __init__(self, a, w, n, exact):
        self.n, self.exact = n, exact
        self.a1, self.a2 = a[:n], a[n:]
        self.w2 = w[n:]
        self.c = _concave_steps(n, exact)
        if not exact:
            self.np_a1 = np.array(self.a1)
            self.np_a2 = np.array(self.a2)
            self.np_w2 = np.array([float(x) for x in self.w2])
            self.np_c = np.array(self.c)
        self.cache = {}

    def __call__(self, t):
        key = t
        if key in self.cache:
            return self.cache[key]
        if self.exact:
            mags = sorted((abs(x - t) for x in self.a1), reverse=True)
            val = abs(t)
            for ci, bi in zip(self.c, mags):
                if bi:
                    val = val + ci * bi
            for x, wj in zip(self.a2, self.w2):
                d = x - t * wj
                if d:
                    val = val + abs(d)
        else:
            mags = np.sort(np.abs(self.np_a1 - t))[::-1]
            val = float(mags @ self.np_c + np.abs(self.np_a2 - t * self.np_w2).sum() + abs(t))
        self.cache[key] = val
        return val

    def candidates(self):
        pts = {0}
        distinct = set(self.a1)
        pts.update(distinct)
        for x, wj in zip(self.a2, self.w2):
            if x:
                pts.add(x / wj)
        dl = sorted(distinct) if not self.exact else sorted(distinct, key=_Cmp)
        if not self.exact and len(dl) > 400:
            return None
        for i in range(len(dl)):
            for j in range(i + 1, len(dl)):
                pts.add((dl[i] + dl[j]) / 2)
        if self.exact:
            return sorted(pts, key=_Cmp)
        return sorted(pts)

    def vertex(self, t):
        """Maximizer of ``(a - t w) . delta`` over the box-majorization set."""
        n = self.n
        b1 = [x - t for x in self.a1]
        order = sorted(range(n), key=lambda j: _MagKey(b1[j], j))
        delta = [0] * (2 * n)
        for ci, j in zip(self.c, order):
            delta[j] = ci if b1[j] >= 0 else -ci
        for j, (x, wj) in enumerate(zip(self.a2, self.w2)):
            delta[n + j] = 1 if x - t * wj >= 0 else -1
        return delta


class _Cmp:
    __slots__ = ("x",)

    def __init__(self, x):
        self.x = x

    def __lt__(self, other):
        return self.x < other.x


class _MagKey:
    __slots__ = ("m", "j")

    def __init__(self, b, j):
        self.m, self.j = abs(b), j

    def __lt__(self, other):
        if self.m != other.m:
            return self.m > other.m
        return self.j < other.j


def _golden_min(phi, lo, hi, iters=200):
    g = (math.sqrt(5) - 1) / 2
    x1, x2 = hi - g * (hi - lo), lo + g * (hi - lo)
    f1, f2 = phi(x1), phi(x2)
    for _ in range(iters):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - g * (hi - lo)
            f1 = phi(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + g * (hi - lo)
            f2 = phi(x2)
        if hi - lo <= 1e-15 * max(1.0, abs(lo)):
            break
    return (x1, f1) if f1 <= f2 else (x2, f2)


def _q_dual(space: SpaceSpec, k: int, vals: Sequence, variant=None, want_delta=False):
    n, m = _scale(space, k)
    exact = space.exact
    a = _block(vals, n, exact)
    if not any(a):
        zero = Fraction(0) if exact else 0.0
        return zero, ([0] * (2 * n) if want_delta else None), zero
    w = _coupling_weights(_variant_of(space, variant), n, exact)
    phi = _Phi(a, w, n, exact)
    cands = phi.candidates()
    if cands is None:
        # phi(t) >= |t| and phi(t*) <= phi(0)
        bound = phi(0.0) + 1.0
        t_star, best = _golden_min(phi, -bound, bound)
        left, right = t_star - 1e-9 * (1 + abs(t_star)), t_star + 1e-9 * (1 + abs(t_star))
    else:
        lo, hi = 0, len(cands) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if phi(cands[mid]) <= phi(cands[mid + 1]):
                hi = mid
            else:
                lo = mid + 1
        t_star, best = cands[lo], phi(cands[lo])
        left = (cands[lo - 1] + t_star) / 2 if lo > 0 else t_star - 1
        right = (cands[lo + 1] + t_star) / 2 if lo + 1 < len(cands) else t_star + 1
    value = best / m
    if not want_delta:
        return value, None, t_star
    d_minus, d_plus = phi.vertex(left), phi.vertex(right)
    g_minus = _dot(w, d_minus)
    g_plus = _dot(w, d_plus)
    if t_star > 0:
        target = 1
    elif t_star < 0:
        target = -1
    elif -1 <= g_plus <= 1:
        target = g_plus
    elif -1 <= g_minus <= 1:
        target = g_minus
    else:
        target = 0
    if g_minus == g_plus:
        lam = 0
    else:
        lam = (target - g_plus) / (g_minus - g_plus)
        if not exact:
            lam = min(1.0, max(0.0, lam))
    delta = [lam * x + (1 - lam) * y for x, y in zip(d_minus, d_plus)]
    return value, delta, t_star


def _dot(u, v):
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def _q_lp(space: SpaceSpec, k: int, vals: Sequence, variant=None):
    """Q_k by the simplex, majorization encoded with per-r budget variables.

    Variables: d+_j, d-_j (2n each), theta_r (n), u_{r,j} (n*n); the r-th
    majorization constraint reads ``r theta_r + sum_j u_{r,j} <= sqrt(r)`` with
    ``u_{r,j} >= |delta_j| - theta_r`` for the first block.
    """
    n, m = _scale(space, k)
    exact = space.exact
    a = _block(vals, n, exact)
    w = _coupling_weights(_variant_of(space, variant), n, exact)
    N2 = 2 * n
    nv = 2 * N2 + n + n * n
    zero = 0 if exact else 0.0
    dp = lambda j: j  # noqa: E731
    dm = lambda j: N2 + j  # noqa: E731
    th = lambda r: 2 * N2 + r  # noqa: E731
    uu = lambda r, j: 2 * N2 + n + r * n + j  # noqa: E731
    c = [zero] * nv
    for j in range(N2):
        c[dp(j)] = a[j]
        c[dm(j)] = -a[j]
    rows = []
    for j in range(N2):
        row = [zero] * nv
        row[dp(j)] = 1
        row[dm(j)] = 1
        rows.append((row, "<=", 1))
    for r in range(n):
        for j in range(n):
            row = [zero] * nv
            row[dp(j)] = 1
            row[dm(j)] = 1
            row[th(r)] = -1
            row[uu(r, j)] = -1
            rows.append((row, "<=", 0))
        row = [zero] * nv
        row[th(r)] = r + 1
        for j in range(n):
            row[uu(r, j)] = 1
        rows.append((row, "<=", _sqrt(r + 1, exact)))
    up = [zero] * nv
    for j in range(N2):
        up[dp(j)] = w[j]
        up[dm(j)] = -w[j]
    rows.append((up, "<=", 1))
    rows.append(([-x for x in up], "<=", 1))
    res = linprog_max(c, rows, exact=exact)
    if res.status != "optimal":
        raise RuntimeError(f"Q_k LP ended with status {res.status}")
    delta = [res.x[dp(j)] - res.x[dm(j)] for j in range(N2)]
    return res.value / m, delta


def eval_Q(space: SpaceSpec, k: int, v: CoeffVector, variant=None, method: str = "dual"):
    """``Q_k(v) = (1/m_k) sup_{delta in Delta_k} sum_{n <= 2n_k} delta_n a_n``.

    ``method="dual"`` minimizes the one-dimensional dual over its breakpoints
    (exact); ``method="lp"`` solves the primal with the simplex.
    """
    if space.kind not in CONSTRUCTED:
        raise SpaceError("Q_k is defined on constructed spaces only")
    vals = _num_mode(space, v.dense()) if v else []
    if method == "dual":
        return _q_dual(space, k, vals, variant)[0]
    if method == "lp":
        return _q_lp(space, k, vals, variant)[0]
    raise ValueError(f"unknown method {method!r}")


def q_certificate(space: SpaceSpec, k: int, v: CoeffVector, variant=None,
                  method: str = "dual") -> QCertificate:
    """Value of ``Q_k(v)`` together with an optimal ``delta``."""
    vals = _num_mode(space, v.dense()) if v else []
    if method == "lp":
        val, delta = _q_lp(space, k, vals, variant)
        return QCertificate(val, delta, None, "lp")
    val, delta, t = _q_dual(space, k, vals, variant, want_delta=True)
    return QCertificate(val, delta, t, "dual")


def delta_feasible(delta: Sequence, space: SpaceSpec, k: int, variant=None) -> bool:
    """Membership test for ``Delta_k`` (exact for exact entries, else 1e-9)."""
    n, _ = _scale(space, k)
    if len(delta) != 2 * n:
        raise ValueError(f"delta must have length {2 * n}")
    exact = all(surd.is_exact(x) for x in delta)
    tol = 0 if exact else FLOAT_TOL
    d = list(delta) if exact else [float(x) for x in delta]
    if any(abs(x) > 1 + tol for x in d):
        return False
    mags = sorted((abs(x) for x in d[:n]), key=_Cmp, reverse=True) if exact else sorted(
        (abs(x) for x in d[:n]), reverse=True)
    s = 0
    for r, x in enumerate(mags, start=1):
        s = s + x
        if exact:
            if s * s > r:
                return False
        elif s > math.sqrt(r) + tol:
            return False
    w = _coupling_weights(_variant_of(space, variant), n, exact)
    cpl = _dot(w, d)
    return abs(cpl) <= 1 + tol


def _proof_deltas(space: SpaceSpec, k: int, vals: Sequence, variant=None):
    n, _ = _scale(space, k)
    exact = space.exact
    a = _block(vals, n, exact)
    tag = _variant_of(space, variant)
    rn = _sqrt(n, exact)
    out = []
    supp1 = [j for j in range(n) if a[j]]
    supp2 = [j for j in range(n, 2 * n) if a[j]]
    if tag == "prop5_space":
        free = [j for j in range(n, 2 * n) if not a[j]]
        if supp2 and len(free) >= len(supp2):
            d = [0] * (2 * n)
            for j, b in zip(supp2, free):
                d[j] = sign(a[j])
                d[b] = -sign(a[j])
            out.append(d)
        if supp1:
            d = [0] * (2 * n)
            for j in supp1:
                d[j] = sign(a[j]) / rn
                d[j + n] = -sign(a[j]) / rn
            out.append(d)
    else:
        if supp2:
            d = [0] * (2 * n)
            for j in supp2:
                d[j] = sign(a[j])
                d[j - n] = -sign(a[j]) / rn
            out.append(d)
        if supp1:
            d = [0] * (2 * n)
            for j in supp1:
                d[j] = sign(a[j]) / rn
                d[j + n] = -sign(a[j])
            out.append(d)
    return [d for d in out if delta_feasible(d, space, k, variant)]


def q_proof_lower_bound(space: SpaceSpec, k: int, v: CoeffVector, variant=None):
    """Lower bound for ``Q_k(v)`` from the explicit sign constructions.

    Tries the block-2 sign pattern balanced inside block 2 (or against block 1
    for the coupled variant) and the ``1/sqrt(n_k)`` block-1 pattern; every
    candidate is checked for membership before use.
    """
    n, m = _scale(space, k)
    vals = _num_mode(space, v.dense()) if v else []
    a = _block(vals, n, space.exact)
    best = Fraction(0) if space.exact else 0.0
    for d in _proof_deltas(space, k, vals, variant):
        val = _dot(d, a) / m
        if val > best:
            best = val
    return best


# ---------------------------------------------------------------------------
# dual functionals

def dual_functional_norm(space: SpaceSpec, n: int, N: int):
    """``sup { |a_n| : ||v|| <= 1, supp(v) in I_N }`` (a lower bound of ``||x_n^*||``)."""
    if not 1 <= n <= N:
        raise ValueError("need 1 <= n <= N")
    if space.kind == "lp_quasi" or space.kind == "c0_sup":
        # |a_n| <= ||v||_infty <= ||v||; e_n attains it
        return Fraction(1) if space.exact else 1.0
    from .chebyshev import maximize_coordinate

    return maximize_coordinate(space, n, N)


# ---------------------------------------------------------------------------
# configuration

def space_from_dict(d: dict) -> SpaceSpec:
    unknown = set(d) - {"kind", "p", "scales", "strict_growth", "exact"}
    if unknown:
        raise SpaceError(f"unknown space keys: {sorted(unknown)}")
    if "kind" not in d:
        raise SpaceError("space description needs a 'kind'")
    kind = d["kind"]
    default_strict = kind in CONSTRUCTED
    return SpaceSpec(
        kind,
        Fraction(str(d.get("p", 1))),
        tuple(tuple(s) for s in d.get("scales", ())),
        bool(d.get("strict_growth", default_strict)),
        bool(d.get("exact", False)),
    )


def load_space(path) -> SpaceSpec:
    """Load a JSON space description (keys: kind, p, scales, strict_growth, exact)."""
    data = json.loads(Path(path).read_text())
    if "space" in data and isinstance(data["space"], dict):
        data = data["space"]
    return space_from_dict(data)


def parse_space(text: str, exact: bool = False) -> SpaceSpec:
    """Parse ``kind[:arg[:loose]]`` or a path to a JSON description.

    Examples: ``c0_summing``, ``lp_quasi:1/2``, ``prop6_space:1297x6``,
    ``prop5_space:4x6:loose``.
    """
    path = Path(text)
    if path.suffix == ".json" and path.exists():
        sp = load_space(path)
        return sp.with_exact(exact or sp.exact)
    parts = text.split(":")
    kind = parts[0]
    if kind == "lp_quasi":
        p = Fraction(parts[1]) if len(parts) > 1 else Fraction(1)
        return lp_quasi(p, exact=exact)
    if kind in ("c0_sup", "c0_summing"):
        return SpaceSpec(kind, exact=exact)
    if kind in CONSTRUCTED:
        if len(parts) < 2:
            raise SpaceError(f"{kind} needs scales, e.g. {kind}:1297x6")
        scales = tuple(tuple(int(x) for x in s.split("x")) for s in parts[1].split(","))
        strict = not (len(parts) > 2 and parts[2] == "loose")
        return SpaceSpec(kind, 1, scales, strict, exact)
    raise SpaceError(f"unknown space {text!r}")
