"""Lebesgue-type parameters as suprema of ratios over witness instances.

Each parameter kind has one admissibility predicate and one ratio.  Two
estimators are provided:

* :func:`estimate` searches seeded pools (structured families plus random
  instances) and returns a certified lower bound;
* :class:`WindowedEngine` enumerates every admissible instance whose vectors
  use coefficients from a finite grid inside ``{1..N}``, which gives the exact
  value of the restricted supremum (and again a lower bound of the true one).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from . import spaces as sp
from . import surd
from .chebyshev import best_sparse_residual, residual_value
from .coeffspace import (CoeffVector, format_vector, index_set, indicator,
                         initial_projection, parse_vector, project, sign)
from .greedy import BudgetError, greedy_sets, is_greedy_set

__all__ = [
    "ParamKind",
    "WitnessInstance",
    "ParamEstimate",
    "SearchConfig",
    "InadmissibleInstance",
    "UnboundedWitness",
    "admissibility_error",
    "ratio_parts",
    "ratio_eval",
    "omega_induced_ls",
    "estimate",
    "WindowedEngine",
    "windowed_exact",
    "basis_constant",
]


class ParamKind(str, Enum):
    G = "g"
    G_C = "g_c"
    K_UNCOND = "k_uncond"
    MU = "mu"
    MU_D = "mu_d"
    MU_T = "mu_t"
    MU_T_D = "mu_t_d"
    LAMBDA = "lambda"
    LAMBDA_C = "lambda_c"
    LAMBDA_D = "lambda_d"
    NU = "nu"
    NU_D = "nu_d"
    OMEGA = "omega"
    R_TRUNC = "r_trunc"
    L = "L"
    L_A = "L_a"
    L_S = "L_s"
    L_CH = "L_ch"
    D_CONS = "D_cons"
    K_BASIS = "K_basis"

    def __str__(self):
        return self.value


_USES_EPS = {"mu_t", "mu_t_d", "lambda", "lambda_c", "lambda_d", "nu", "nu_d", "omega"}
_USES_ETA = {"mu_t", "mu_t_d", "nu", "nu_d", "omega"}


class InadmissibleInstance(ValueError):
    """The instance violates its kind's admissibility predicate."""


class UnboundedWitness(ArithmeticError):
    """Zero denominator with a positive numerator: the parameter is infinite."""

    def __init__(self, inst):
        super().__init__(f"unbounded witness for {inst.kind}: {inst.to_dict()}")
        self.instance = inst


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


@dataclass(frozen=True)
class WitnessInstance:
    """One tuple from a parameter's defining family.

    ``k`` is the partial-sum index for K_basis; ``t`` the scalar of omega;
    ``window`` bounds the supports of the benchmark infimum for L and L_ch.
    Empty sign patterns on kinds that use signs mean all ones.
    """

    kind: ParamKind
    m: int
    f: CoeffVector = field(default_factory=CoeffVector)
    A: tuple = ()
    B: tuple = ()
    eps: tuple = ()
    eta: tuple = ()
    k: int = 0
    t: object = None
    window: int | None = None

    def __post_init__(self):
        kind = ParamKind(self.kind)
        object.__setattr__(self, "kind", kind)
        A, B = index_set(self.A), index_set(self.B)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        eps, eta = tuple(self.eps), tuple(self.eta)
        if kind.value in _USES_EPS and not eps:
            eps = (1,) * len(A)
        if kind.value in _USES_ETA and not eta:
            eta = (1,) * len(B)
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "eta", eta)

    def sort_key(self) -> tuple:
        """Tie-break key: smaller keys win among equal ratios."""
        t = Fraction(0) if self.t is None else surd.to_exact(self.t)
        return (tuple((n, surd.to_exact(a)) for n, a in self.f), self.A, self.B,
                self.eps, self.eta, self.k, float(t))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "m": self.m,
            "f": format_vector(self.f),
            "A": list(self.A),
            "B": list(self.B),
            "eps": list(self.eps),
            "eta": list(self.eta),
            "k": self.k,
            "t": _fmt(self.t),
            "window": self.window,
        }

    @classmethod
    def from_dict(cls, d: dict, exact: bool = True) -> "WitnessInstance":
        t = d.get("t") or None
        if t is not None:
            t = Fraction(t) if exact else float(Fraction(t)) if "/" in t else float(t)
        return cls(d["kind"], int(d["m"]), parse_vector(d.get("f", ""), exact),
                   tuple(d.get("A", ())), tuple(d.get("B", ())), tuple(d.get("eps", ())),
                   tuple(d.get("eta", ())), int(d.get("k", 0)), t, d.get("window"))


# ---------------------------------------------------------------------------
# admissibility

def _bad_signs(pattern, S) -> bool:
    return len(pattern) != len(S) or any(e not in (1, -1) for e in pattern)


def admissibility_error(inst: WitnessInstance, *, omega_strict: bool = True) -> str | None:
    """Reason why ``inst`` is inadmissible, or ``None``.

    ``omega_strict`` reads omega's ``A < m`` as ``max A < m`` (default);
    ``False`` relaxes it to ``max A <= m``.
    """
    kind, m, f, A, B = inst.kind.value, inst.m, inst.f, inst.A, inst.B
    if m < 0:
        return "m must be nonnegative"
    if kind in _USES_EPS:
        if _bad_signs(inst.eps, A):
            return "eps must be a +-1 pattern on A"
    elif inst.eps:
        return f"{kind} takes no sign pattern on A"
    if kind in _USES_ETA:
        if _bad_signs(inst.eta, B):
            return "eta must be a +-1 pattern on B"
    elif inst.eta:
        return f"{kind} takes no sign pattern on B"
    supp = set(f.support())

    if kind in ("g", "g_c", "r_trunc", "L", "L_a", "L_s", "L_ch"):
        if len(A) > m:
            return "|A| exceeds m"
        if not is_greedy_set(f, A):
            return "A is not a greedy set of f"
        if kind == "g_c" and m == 0:
            return "g_c is 0 at m = 0 by convention"
        if kind == "r_trunc":
            if not A:
                return "r_trunc needs a nonempty greedy set"
            if not f:
                return "r_trunc needs f != 0"
        if kind == "L_ch" and len(A) != m:
            return "L_ch uses greedy sets of order exactly m"
        if kind in ("L", "L_ch") and inst.window is not None:
            if max(f.max_index(), A[-1] if A else 0) > inst.window:
                return "f and A must lie in the benchmark window"
        return None
    if kind == "k_uncond":
        return "|A| exceeds m" if len(A) > m else None
    if kind in ("mu", "mu_d", "mu_t", "mu_t_d"):
        if len(A) != len(B) or len(A) > m:
            return "need |A| = |B| <= m"
        if kind.endswith("_d") and set(A) & set(B):
            return "A and B must be disjoint"
        return None
    if kind in ("lambda", "lambda_d"):
        if len(A) != len(B) or not 1 <= len(B) <= m:
            return "need 1 <= |A| = |B| <= m"
        if not is_greedy_set(f, B):
            return "B is not a greedy set of f"
        if kind == "lambda_d" and set(A) & supp:
            return "A must be disjoint from supp f"
        return None
    if kind == "lambda_c":
        if not 1 <= len(B) <= m or len(A) > len(B):
            return "need |A| <= |B| <= m and B nonempty"
        if A and A[-1] > m:
            return "A <= m fails"
        if A and supp and A[-1] >= min(supp):
            return "A < supp f fails"
        if not is_greedy_set(f, B):
            return "B is not a greedy set of f"
        return None
    if kind in ("nu", "nu_d"):
        if len(A) != len(B) or len(A) > m:
            return "need |A| = |B| <= m"
        if f.max_abs() > 1:
            return "max |a_n| <= 1 fails"
        if supp & (set(A) | set(B)):
            return "supp f must avoid A and B"
        if kind == "nu_d" and set(A) & set(B):
            return "A and B must be disjoint"
        return None
    if kind == "omega":
        if not len(A) <= len(B) <= m:
            return "need |A| <= |B| <= m"
        if A:
            if omega_strict and A[-1] >= m:
                return "A < m fails"
            if not omega_strict and A[-1] > m:
                return "A <= m fails"
            rest = supp | set(B)
            if rest and A[-1] >= min(rest):
                return "A < supp f u B fails"
        if supp & set(B):
            return "supp f must avoid B"
        if inst.t is None or abs(inst.t) < f.max_abs() or inst.t == 0:
            return "need |t| >= max |a_n| and t != 0"
        return None
    if kind == "D_cons":
        if not len(A) <= len(B) <= m:
            return "need |A| <= |B| <= m"
        if A and B and A[-1] >= B[0]:
            return "A < B fails"
        return None
    if kind == "K_basis":
        return "k must be nonnegative" if inst.k < 0 else None
    return f"unknown kind {kind}"


# ---------------------------------------------------------------------------
# ratios

def _num(space, x):
    if space.exact:
        return surd.to_exact(x)
    return float(x)


def _min_abs(f: CoeffVector, S):
    return min((abs(f[n]) for n in S), default=0)


def _signed(S, signs, scale=1):
    return indicator(S, signs, scale)


def _benchmark_window(inst: WitnessInstance) -> int:
    if inst.window is not None:
        return inst.window
    return max(inst.f.max_index(), inst.A[-1] if inst.A else 0, 1)


def _l_a_benchmark(space, f: CoeffVector, s: int, budget: int = 10 ** 6):
    supp = f.support()
    best = sp.norm(space, f)
    count = 0
    for r in range(1, min(s, len(supp)) + 1):
        for B in combinations(supp, r):
            count += 1
            if count > budget:
                raise BudgetError("L_a benchmark enumeration exceeds budget")
            v = sp.norm(space, f - project(f, B))
            if v < best:
                best = v
    return best


def ratio_parts(space: sp.SpaceSpec, inst: WitnessInstance):
    """``(numerator, denominator)`` of the defining ratio (no admissibility check)."""
    kind, f, A, B = inst.kind.value, inst.f, inst.A, inst.B
    nrm = lambda v: sp.norm(space, v)  # noqa: E731
    if kind == "g":
        return nrm(project(f, A)), nrm(f)
    if kind == "k_uncond":
        return nrm(project(f, A)), nrm(f)
    if kind == "g_c":
        return nrm(f - project(f, A)), nrm(f)
    if kind in ("mu", "mu_d", "D_cons"):
        return nrm(indicator(A)), nrm(indicator(B))
    if kind in ("mu_t", "mu_t_d"):
        return nrm(_signed(A, inst.eps)), nrm(_signed(B, inst.eta))
    if kind in ("lambda", "lambda_d", "lambda_c"):
        return _num(space, _min_abs(f, B)) * nrm(_signed(A, inst.eps)), nrm(f)
    if kind in ("nu", "nu_d"):
        return nrm(_signed(A, inst.eps) + f), nrm(_signed(B, inst.eta) + f)
    if kind == "omega":
        t = inst.t
        return nrm(f + _signed(A, inst.eps, t)), nrm(f + _signed(B, inst.eta, t))
    if kind == "r_trunc":
        signs = [sign(f[n]) for n in A]
        return _num(space, _min_abs(f, A)) * nrm(_signed(A, signs)), nrm(f)
    if kind == "L_s":
        res = nrm(f - project(f, A))
        den = min(nrm(f - initial_projection(f, k)) for k in range(len(A) + 1))
        return res, den
    if kind == "L_a":
        return nrm(f - project(f, A)), _l_a_benchmark(space, f, len(A))
    if kind == "L":
        W = _benchmark_window(inst)
        return nrm(f - project(f, A)), best_sparse_residual(space, f, len(A), W)
    if kind == "L_ch":
        W = _benchmark_window(inst)
        return residual_value(space, f, A), best_sparse_residual(space, f, len(A), W)
    if kind == "K_basis":
        return nrm(initial_projection(f, inst.k)), nrm(f)
    raise ValueError(f"unknown kind {kind}")


def _quotient(num, den, inst):
    if den == 0:
        if num == 0:
            return num
        raise UnboundedWitness(inst)
    return num / den


def ratio_eval(space: sp.SpaceSpec, inst: WitnessInstance, *, omega_strict: bool = True):
    """Defining ratio of an admissible instance (``0/0 = 0``)."""
    why = admissibility_error(inst, omega_strict=omega_strict)
    if why is not None:
        raise InadmissibleInstance(why)
    num, den = ratio_parts(space, inst)
    return _quotient(num, den, inst)


def omega_induced_ls(inst: WitnessInstance) -> WitnessInstance:
    """L_s instance dominating an omega instance.

    With ``h = f + t 1_{eps,A} + t 1_{eta,B} + t 1_U`` (``U`` fills
    ``[1, max A] \\ A`` up to ``|B u U| >= max A``) the set ``G = B u U`` is
    greedy for ``h``, ``h - P_G h = f + t 1_{eps,A}`` and
    ``h - P_{max A} h = f + t 1_{eta,B}``.
    """
    if inst.kind is not ParamKind.OMEGA:
        raise ValueError("expected an omega instance")
    A, B, t = inst.A, inst.B, inst.t
    top = A[-1] if A else 0
    need = max(0, top - len(B))
    U = tuple(n for n in range(1, top + 1) if n not in A)[:need]
    h = inst.f + _signed(A, inst.eps, t) + _signed(B, inst.eta, t) + indicator(U, None, t)
    G = index_set(B + U)
    return WitnessInstance(ParamKind.L_S, max(len(G), 1), h, G)


# ---------------------------------------------------------------------------
# estimates

@dataclass(frozen=True)
class ParamEstimate:
    kind: ParamKind
    m: int
    value: object
    mode: str  # witness_lower_bound | windowed_exact
    witness: WitnessInstance | None
    window: int | None = None
    grid: tuple = ()
    count: int = 0

    def to_dict(self) -> dict:
        return {
            "kind": ParamKind(self.kind).value,
            "m": self.m,
            "value": _fmt(self.value),
            "value_float": float(self.value),
            "mode": self.mode,
            "window": self.window,
            "grid": [str(g) for g in self.grid],
            "count": self.count,
            "witness": self.witness.to_dict() if self.witness else None,
        }


@dataclass(frozen=True)
class SearchConfig:
    """Witness-search budget.  ``window`` bounds random supports."""

    pool_size: int = 200
    random_seed: int = 0
    window: int = 8
    grid: tuple = (0, 1, -1, 2, -2, 3, -3)
    m_range: tuple = (1, 6)

    @classmethod
    def from_dict(cls, d: dict) -> "SearchConfig":
        known = {"pool_size", "random_seed", "window", "grid", "m_range"}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown search keys: {sorted(unknown)}")
        kw = dict(d)
        if "grid" in kw:
            kw["grid"] = tuple(Fraction(str(g)) for g in kw["grid"])
        if "m_range" in kw:
            kw["m_range"] = tuple(kw["m_range"])
        return cls(**kw)


class _Best:
    """Running maximum with the instance-key tie-break."""

    def __init__(self):
        self.value = None
        self.inst = None
        self.count = 0

    def offer(self, value, inst: WitnessInstance):
        self.count += 1
        if self.value is None or value > self.value:
            self.value, self.inst = value, inst
        elif value == self.value and inst.sort_key() < self.inst.sort_key():
            self.inst = inst


def _space_window(space: sp.SpaceSpec, cfg: SearchConfig) -> int:
    return max(cfg.window, space.scale_window) if space.scale_window <= 64 else cfg.window


def _structured_vectors(space, W, m, rng_vals):
    """Deterministic families: flat +-1 blocks, geometric decay, alternating."""
    out = []
    for length in range(1, W + 1):
        out.append(CoeffVector.from_dense([1] * length))
        out.append(CoeffVector.from_dense([(-1) ** n for n in range(length)]))
        out.append(CoeffVector.from_dense([Fraction(1, 2 ** n) for n in range(length)]))
        out.append(CoeffVector.from_dense([Fraction(1, 2 ** (length - 1 - n)) for n in range(length)]))
    for L in range(1, m + 1):
        # summing-basis alternating witness on {1..2L}
        if 2 * L <= W:
            out.append(CoeffVector.from_dense([(-1) ** (n + 1) for n in range(2 * L)]))
    for n, _ in space.scales:
        if 2 * n <= W:
            out.append(_prop6_vector(n))
            out.append(indicator(range(1, 2 * n + 1)))
            out.append(indicator(_prop5_set(n)))
    return out


def _prop5_set(n: int) -> tuple:
    """``{n+1..3n/2} u {2n+1..7n/2}`` (n even)."""
    return tuple(range(n + 1, 3 * n // 2 + 1)) + tuple(range(2 * n + 1, 7 * n // 2 + 1))


def _prop6_vector(n: int, exact: bool = True) -> CoeffVector:
    """``1_{I_n} + n^{-1/2} 1_{n+1..2n}``."""
    c = (1 / surd.sqrt(n)) if exact else 1 / math.sqrt(n)
    return CoeffVector(tuple((j, 1) for j in range(1, n + 1))
                       + tuple((j, c) for j in range(n + 1, 2 * n + 1)))


def _random_vector(rng: random.Random, W: int, grid) -> CoeffVector:
    size = rng.randint(1, W)
    idx = sorted(rng.sample(range(1, W + 1), size))
    nz = [g for g in grid if g != 0] or [1]
    return CoeffVector.from_dict({n: Fraction(rng.choice(nz)) for n in idx})


def _random_set(rng, W, size):
    return tuple(sorted(rng.sample(range(1, W + 1), size)))


def _random_signs(rng, size):
    return tuple(rng.choice((1, -1)) for _ in range(size))


def _instances_for(kind: str, f: CoeffVector, m: int, W: int, rng: random.Random,
                   omega_strict: bool):
    """Admissible instances of ``kind`` built around ``f`` (a few per vector)."""
    out = []
    supp = f.support()
    if kind in ("g", "g_c", "r_trunc", "L", "L_a", "L_s", "L_ch"):
        orders = [m] if kind == "L_ch" else range(0 if kind != "r_trunc" else 1, m + 1)
        for j in orders:
            try:
                sets = greedy_sets(f, j, window=max(W, f.max_index(), j), budget=64)
            except (BudgetError, ValueError):
                continue
            for A in sets[:4]:
                out.append(WitnessInstance(kind, m, f, A, window=max(W, f.max_index(), j)
                                           if kind in ("L", "L_ch") else None))
        return out
    if kind == "k_uncond":
        for j in range(1, m + 1):
            if j <= len(supp):
                out.append(WitnessInstance(kind, m, f, tuple(rng.sample(supp, j))))
                out.append(WitnessInstance(kind, m, f, supp[1::2][:j] or supp[:j]))
        return out
    if kind in ("lambda", "lambda_d", "lambda_c"):
        free = [n for n in range(1, W + 1) if n not in set(supp)]
        for j in range(1, min(m, len(supp)) + 1):
            B = greedy_sets(f, j, budget=10 ** 4)[0]
            if kind == "lambda":
                pools = [tuple(range(1, j + 1)), _random_set(rng, W, j)] if j <= W else []
            elif kind == "lambda_d":
                pools = [tuple(free[:j]), tuple(free[-j:])] if len(free) >= j else []
            else:
                lim = min(m, min(supp) - 1)
                pools = [tuple(range(1, min(j, lim) + 1)), tuple(range(max(1, lim - j + 1), lim + 1))] \
                    if lim >= 1 else [()]
            for A in pools:
                for eps in ((1,) * len(A), tuple((-1) ** i for i in range(len(A))),
                            _random_signs(rng, len(A))):
                    out.append(WitnessInstance(kind, m, f, A, B, eps))
        return out
    if kind in ("nu", "nu_d"):
        g = f.map_values(lambda a: max(-1, min(1, a)))
        free = [n for n in range(1, W + 2 * m + 1) if n not in set(g.support())]
        for j in range(1, m + 1):
            if len(free) < 2 * j:
                break
            A = tuple(free[:j])
            Bs = [tuple(free[j:2 * j]), tuple(sorted(rng.sample(free, j)))]
            for B in Bs:
                if kind == "nu_d" and set(A) & set(B):
                    continue
                out.append(WitnessInstance(kind, m, g, A, B, (1,) * j,
                                           tuple((-1) ** i for i in range(j))))
                out.append(WitnessInstance(kind, m, g, A, B, _random_signs(rng, j),
                                           _random_signs(rng, j)))
        return out
    if kind == "omega":
        top = m - 1 if omega_strict else m
        shift = f.max_index() + 1
        g = CoeffVector(tuple((n + top, a) for n, a in f))  # push supp f past A
        mx = g.max_abs()
        ts = [mx, 2 * mx, 10 * mx] if g else [1]
        for j in range(0, min(top, m) + 1):
            A = tuple(range(1, j + 1))
            for size in range(max(j, 1), m + 1):
                B = tuple(range(top + shift, top + shift + size))
                for t in ts:
                    out.append(WitnessInstance(kind, m, g, A, B, _random_signs(rng, j),
                                               _random_signs(rng, size), t=t))
        return out
    raise ValueError(kind)


def _set_instances(kind: str, m: int, W: int, rng: random.Random):
    out = []
    for j in range(1, m + 1):
        if 2 * j > W:
            break
        cand = [tuple(range(1, j + 1)), tuple(range(j + 1, 2 * j + 1)),
                tuple(range(2, 2 * j + 1, 2)), tuple(range(1, 2 * j, 2)), _random_set(rng, W, j)]
        for A in cand:
            for B in cand:
                if kind in ("mu_d", "mu_t_d") and set(A) & set(B):
                    continue
                if kind == "D_cons":
                    continue
                if kind in ("mu_t", "mu_t_d"):
                    for eps in ((1,) * j, tuple((-1) ** i for i in range(j)), _random_signs(rng, j)):
                        for eta in ((1,) * j, tuple((-1) ** i for i in range(j))):
                            out.append(WitnessInstance(kind, m, A=A, B=B, eps=eps, eta=eta))
                else:
                    out.append(WitnessInstance(kind, m, A=A, B=B))
        if kind == "D_cons":
            for a in range(0, j + 1):
                out.append(WitnessInstance(kind, m, A=tuple(range(1, a + 1)),
                                           B=tuple(range(a + 1, a + j + 1))))
                out.append(WitnessInstance(kind, m, A=tuple(range(j - a + 1, j + 1)),
                                           B=tuple(range(j + 1, 2 * j + 1, 1))))
    return out


def _alternating_mu_t(m: int):
    """Summing-basis witness: alternating signs on ``{1..2L}`` vs all ones."""
    out = []
    for j in range(1, m + 1):
        A = tuple(range(1, j + 1))
        out.append(WitnessInstance("mu_t", m, A=A, B=A, eps=tuple((-1) ** i for i in range(j)),
                                   eta=(1,) * j))
        out.append(WitnessInstance("mu_t", m, A=A, B=A, eps=(1,) * j,
                                   eta=tuple((-1) ** i for i in range(j))))
    return out


def _construction_instances(space: sp.SpaceSpec, kind: str, m: int):
    """Explicit witnesses of the two constructions at each materialized scale."""
    out = []
    for n, _ in space.scales:
        if kind in ("mu", "mu_d") and 2 * n <= m and n % 2 == 0:
            out.append(WitnessInstance(kind, m, A=_prop5_set(n), B=tuple(range(1, 2 * n + 1))))
        if kind in ("lambda", "lambda_d") and n <= m:
            x = _prop6_vector(n, exact=space.exact)
            out.append(WitnessInstance(kind, m, x, tuple(range(n + 1, 2 * n + 1)),
                                       tuple(range(1, n + 1))))
    return out


def _pool(space: sp.SpaceSpec, kind: str, m: int, cfg: SearchConfig, omega_strict: bool):
    """Pool for level ``m``; the pool at ``m`` contains the pools at lower levels.

    Level pools past the search window are empty apart from the explicit
    construction witnesses, which are added once for every scale ``<= m``.
    """
    out = _construction_instances(space, kind, m)
    W = _space_window(space, cfg)
    for j in range(1, min(m, W) + 1):
        out.extend(_level_pool(space, kind, j, cfg, omega_strict))
    # instances built for level j are admissible at every m >= j
    return [_lift_level(inst, m) for inst in out]


def _lift_level(inst: WitnessInstance, m: int) -> WitnessInstance:
    if inst.kind is ParamKind.L_CH or inst.m == m:
        return inst
    return WitnessInstance(inst.kind, m, inst.f, inst.A, inst.B, inst.eps, inst.eta,
                           inst.k, inst.t, inst.window)


def _level_pool(space, kind, m, cfg: SearchConfig, omega_strict):
    rng = random.Random(f"{cfg.random_seed}:{kind}:{m}")
    W = _space_window(space, cfg)
    out = []
    if kind == "K_basis":
        vecs = _structured_vectors(space, W, m, None)
        vecs += [_random_vector(rng, W, cfg.grid) for _ in range(cfg.pool_size)]
        for f in vecs:
            for k in range(0, f.max_index() + 1):
                out.append(WitnessInstance(kind, m, f, k=k))
        return out
    if kind in ("mu", "mu_d", "mu_t", "mu_t_d", "D_cons"):
        out += _set_instances(kind, m, W, rng)
        if kind == "mu_t":
            out += _alternating_mu_t(m)
        for _ in range(cfg.pool_size):
            j = rng.randint(1, min(m, W // 2 or 1))
            A = _random_set(rng, W, j)
            if kind in ("mu_d", "mu_t_d"):
                rest = [n for n in range(1, W + 1) if n not in A]
                if len(rest) < j:
                    continue
                B = tuple(sorted(rng.sample(rest, j)))
            elif kind == "D_cons":
                cut = rng.randint(0, W - 1)
                A = tuple(sorted(rng.sample(range(1, cut + 1), min(rng.randint(0, j), cut))))
                B = tuple(range(cut + 1, min(cut + rng.randint(max(len(A), 1), m), W) + 1))
                if len(A) > len(B) or len(B) > m:
                    continue
            else:
                B = _random_set(rng, W, j)
            eps = _random_signs(rng, len(A)) if kind.startswith("mu_t") else ()
            eta = _random_signs(rng, len(B)) if kind.startswith("mu_t") else ()
            out.append(WitnessInstance(kind, m, A=A, B=B, eps=eps, eta=eta))
        return out
    vecs = _structured_vectors(space, W, m, None)
    vecs += [_random_vector(rng, W, cfg.grid) for _ in range(cfg.pool_size)]
    for f in vecs:
        out.extend(_instances_for(kind, f, m, W, rng, omega_strict))
    return out


def estimate(space: sp.SpaceSpec, kind, m: int, budget: SearchConfig | None = None, *,
             omega_strict: bool = True) -> ParamEstimate:
    """Witness-search lower bound of the parameter at level ``m``."""
    kind = ParamKind(kind).value
    cfg = budget or SearchConfig()
    if m < 1:
        raise ValueError("estimate needs m >= 1")
    best = _Best()
    for inst in _pool(space, kind, m, cfg, omega_strict):
        if admissibility_error(inst, omega_strict=omega_strict) is not None:
            continue
        best.offer(ratio_eval(space, inst, omega_strict=omega_strict), inst)
    value = best.value if best.value is not None else (Fraction(0) if space.exact else 0.0)
    return ParamEstimate(ParamKind(kind), m, value, "witness_lower_bound", best.inst,
                         _space_window(space, cfg), tuple(cfg.grid), best.count)


# ---------------------------------------------------------------------------
# windowed exact enumeration

def _batch_norms(space: sp.SpaceSpec, X: np.ndarray, scale: int):
    """Norms of the rows of the integer matrix ``X`` (entries = value * scale).

    Returned in the same scaled units; integer valued (hence exact) for the
    polyhedral classical spaces.
    """
    if X.shape[1] == 0:
        return np.zeros(X.shape[0], dtype=np.int64)
    kind = space.kind
    if kind == "c0_sup":
        return np.abs(X).max(axis=1)
    if kind == "c0_summing":
        return np.abs(np.cumsum(X[:, ::-1], axis=1)).max(axis=1)
    if kind == "lp_quasi":
        if space.p == 1:
            return np.abs(X).sum(axis=1)
        p = float(space.p)
        return (np.abs(X.astype(float)) ** p).sum(axis=1) ** (1 / p)
    fspace = space.with_exact(False)
    out = np.empty(X.shape[0])
    for i, row in enumerate(X):
        out[i] = sp.norm_dense(fspace, [float(a) / scale for a in row]) * scale
    return out


class _Max:
    """Best ``(num/den, key, payload)`` with exact cross-multiplied comparison."""

    __slots__ = ("num", "den", "key", "payload", "count")

    def __init__(self):
        self.num, self.den, self.key, self.payload, self.count = 0, 1, None, None, 0

    def offer(self, num, den, key, payload):
        self.count += 1
        if den == 0:
            if num == 0:
                num, den = 0, 1
            else:
                raise ZeroDivisionError("unbounded windowed witness")
        lhs, rhs = num * self.den, self.num * den
        if self.key is None or lhs > rhs or (lhs == rhs and key < self.key):
            self.num, self.den, self.key, self.payload = num, den, key, payload

    def merge(self, other: "_Max"):
        if other.key is not None:
            c = self.count
            self.offer(other.num, other.den, other.key, other.payload)
            self.count = c + other.count


def _subsets(S: int, m: int):
    out = []
    for j in range(0, min(m, S) + 1):
        out.extend(combinations(range(1, S + 1), j))
    return out


def _mask(A) -> int:
    r = 0
    for n in A:
        r |= 1 << (n - 1)
    return r


def _sign_patterns(j: int):
    return list(product((1, -1), repeat=j))


class WindowedEngine:
    """Exhaustive enumeration over ``grid``-valued vectors supported in ``{1..N}``.

    Every grid vector's norm is computed once (vectorized).  Sets range over
    ``{1..set_window}`` (default ``N``); enlarging the set window for one side
    of a comparison is how proof constructions that need fresh indices are
    kept pointwise valid.
    """

    def __init__(self, space: sp.SpaceSpec, N: int, grid=(0, 1, -1, 2, -2), m_max: int = 4, *,
                 omega_strict: bool = True, budget: int = 2 * 10 ** 6):
        if not 0 <= N <= 12:
            raise ValueError("windowed enumeration needs 0 <= N <= 12")
        grid = sorted({Fraction(str(g)) if isinstance(g, float) else Fraction(g) for g in grid})
        if 0 not in grid:
            raise ValueError("the grid must contain 0")
        G = len(grid)
        if G ** N > budget:
            raise BudgetError(f"{G}^{N} grid vectors exceed budget {budget}")
        self.space, self.N, self.grid, self.m_max = space, N, tuple(grid), m_max
        self.omega_strict = omega_strict
        self.exact = space.polyhedral and space.kind not in sp.CONSTRUCTED
        self.scale = math.lcm(*[g.denominator for g in grid])
        self.ivals = np.array([int(g * self.scale) for g in grid], dtype=np.int64)
        self.G = G
        self.zdigit = grid.index(0)
        self.pow = [G ** i for i in range(N)]
        codes = np.arange(G ** N, dtype=np.int64)
        D = np.empty((G ** N, N), dtype=np.int64)
        for i in range(N):
            D[:, i] = (codes // self.pow[i]) % G
        self.digits = D
        self.V = self.ivals[D] if N else np.zeros((1, 0), dtype=np.int64)
        self.norms = _batch_norms(space, self.V, self.scale)
        self.zero_code = sum(self.zdigit * p for p in self.pow)
        self.mags = np.abs(self.V)
        self._sets = {}
        self._cache = {}

    # -- number handling ---------------------------------------------------
    def _py(self, x):
        return int(x) if self.exact else float(x)

    def _value(self, num, den):
        if den == 0:
            return Fraction(0) if self.exact else 0.0
        return Fraction(num, den) if self.exact else num / den

    def _vec(self, code: int) -> CoeffVector:
        row = self.V[code]
        if self.exact:
            return CoeffVector.from_dense([Fraction(int(a), self.scale) for a in row])
        return CoeffVector.from_dense([Fraction(int(a), self.scale) for a in row]).as_float()

    def _key_f(self, code: int):
        return tuple(int(a) for a in self.V[code])

    def _t(self, x_scaled):
        return Fraction(int(x_scaled), self.scale) if self.exact else float(x_scaled) / self.scale

    # -- set tables -------------------------------------------------------
    def set_table(self, S: int, m: int | None = None):
        """Signed-indicator norms for all ``A`` in ``{1..S}``, ``|A| <= m``."""
        m = self.m_max if m is None else m
        key = (S, m)
        if key in self._sets:
            return self._sets[key]
        sets = _subsets(S, m)
        rows, owner, pats = [], [], []
        for si, A in enumerate(sets):
            for eps in _sign_patterns(len(A)):
                r = np.zeros(S, dtype=np.int64)
                for n, e in zip(A, eps):
                    r[n - 1] = e * self.scale
                rows.append(r)
                owner.append(si)
                pats.append(eps)
        X = np.array(rows, dtype=np.int64).reshape(len(rows), S)
        nr = _batch_norms(self.space, X, self.scale)
        smax, smin, one, amax, amin = {}, {}, {}, {}, {}
        for r_i, si in enumerate(owner):
            A, eps, v = sets[si], pats[r_i], self._py(nr[r_i])
            if A not in smax or v > smax[A]:
                smax[A], amax[A] = v, eps
            if A not in smin or v < smin[A]:
                smin[A], amin[A] = v, eps
            if all(e == 1 for e in eps):
                one[A] = v
        table = {"sets": sets, "smax": smax, "smin": smin, "one": one,
                 "amax": amax, "amin": amin}
        self._sets[key] = table
        return table

    # -- per-vector helpers -------------------------------------------------
    def _greedy(self, code: int, j: int):
        """All greedy sets of order ``j`` (padding inside ``{1..N}``), lexicographic."""
        mags = self.mags[code]
        N = self.N
        order = sorted(range(N), key=lambda i: -mags[i])
        if j == 0:
            return [()]
        if j > N:
            return []
        tau = mags[order[j - 1]]
        strict = [i + 1 for i in range(N) if mags[i] > tau]
        ties = [i + 1 for i in range(N) if mags[i] == tau]
        need = j - len(strict)
        return sorted(tuple(sorted(strict + list(c))) for c in combinations(ties, need))

    def _proj_code(self, code: int, A) -> int:
        """Code of ``P_A f``."""
        d = self.digits[code]
        c = self.zero_code
        for n in A:
            c += (int(d[n - 1]) - self.zdigit) * self.pow[n - 1]
        return c

    def _res_code(self, code: int, A) -> int:
        """Code of ``f - P_A f``."""
        d = self.digits[code]
        c = code
        for n in A:
            c -= (int(d[n - 1]) - self.zdigit) * self.pow[n - 1]
        return c

    def _tail_code(self, code: int, k: int) -> int:
        return self._res_code(code, range(1, k + 1))

    def _nrm(self, code: int):
        return self._py(self.norms[code])

    def _sorted_mags(self, code: int):
        return sorted((int(x) for x in self.mags[code]), reverse=True)

    # -- generic result assembly ------------------------------------------
    def _finish(self, kind, levels, builder, extra=()):
        """``levels[j]`` holds the best candidate requiring level ``j``; prefix max."""
        out = {}
        run = _Max()
        for inst in extra:
            why = admissibility_error(inst, omega_strict=self.omega_strict)
            if why is not None:
                raise InadmissibleInstance(why)
            num, den = ratio_parts(self.space.with_exact(self.exact), inst)
            need = inst.m
            # extras sort after every grid candidate on ties
            levels.setdefault(need, _Max()).offer(num, den, (math.inf, inst.sort_key()),
                                                  ("extra", inst))
        for m in range(0, self.m_max + 1):
            if m in levels:
                run.merge(levels[m])
            payload = run.payload
            if payload is None:
                wit = None
            elif payload[0] == "extra":
                wit = _lift_level(payload[1], max(m, 1))
            else:
                wit = builder(m, payload)
            value = self._value(run.num, run.den) if run.key is not None else self._value(0, 1)
            if not self.exact and extra and isinstance(value, Fraction):
                value = float(value)
            out[m] = ParamEstimate(ParamKind(kind), m, value, "windowed_exact", wit, self.N,
                                   self.grid, run.count)
        return out

    def profile(self, kind, *, set_window: int | None = None, extra=()) -> dict:
        """``{m: ParamEstimate}`` for ``m = 0..m_max``.

        ``extra`` instances (evaluated with :func:`ratio_parts`) join the
        family at their own level; used for proof-induced instances whose
        vectors leave the grid.
        """
        kind = ParamKind(kind).value
        S = self.N if set_window is None else set_window
        ck = (kind, S, tuple(i.sort_key() for i in extra))
        if ck in self._cache:
            return self._cache[ck]
        if kind != "L_s" and extra:
            raise ValueError("extra instances are supported for L_s only")
        fn = getattr(self, "_w_" + kind.lower())
        res = fn(S, extra) if kind == "L_s" else fn(S)
        self._cache[ck] = res
        return res

    # -- kinds over f and greedy sets --------------------------------------
    def _greedy_kind(self, kind, extra=()):
        levels = {}
        G = self.G ** self.N
        m_max = self.m_max
        for code in range(G):
            nf = self._nrm(code)
            if nf == 0:
                continue
            if kind == "L_s":
                tails = [self._nrm(self._tail_code(code, k))
                         for k in range(min(m_max, self.N) + 1)]
                pref = list(tails)
                for k in range(1, len(pref)):
                    pref[k] = min(pref[k], pref[k - 1])
            for j in range(0, min(m_max, self.N) + 1):
                if kind == "r_trunc" and j == 0:
                    continue
                need = max(j, 1)
                for A in self._greedy(code, j):
                    if kind == "g":
                        num, den = self._nrm(self._proj_code(code, A)), nf
                    elif kind == "g_c":
                        num, den = self._nrm(self._res_code(code, A)), nf
                    elif kind == "L_s":
                        num, den = self._nrm(self._res_code(code, A)), pref[j]
                    elif kind == "r_trunc":
                        mags = self.mags[code]
                        t = min(int(mags[n - 1]) for n in A)
                        signs = tuple(1 if self.V[code][n - 1] >= 0 else -1 for n in A)
                        ind = self._signed_norm(self.N, A, signs)
                        num, den = t * ind, self.scale * nf
                    elif kind == "L_a":
                        num = self._nrm(self._res_code(code, A))
                        den = self._l_a_den(code, j)
                    else:
                        raise ValueError(kind)
                    levels.setdefault(need, _Max()).offer(num, den, (code, A), (code, A))
        if kind == "g_c":
            levels.pop(0, None)

        def build(m, payload):
            code, A = payload
            return WitnessInstance(kind, max(m, 1), self._vec(code), A)

        res = self._finish(kind, levels, build, extra)
        if kind == "g_c":
            res[0] = ParamEstimate(ParamKind.G_C, 0, self._value(0, 1), "windowed_exact", None,
                                   self.N, self.grid, 0)
        return res

    def _signed_norm(self, S, A, signs):
        key = ("sig", S, tuple(A), tuple(signs))
        if key not in self._cache:
            r = np.zeros((1, max(S, self.N)), dtype=np.int64)
            for n, e in zip(A, signs):
                r[0, n - 1] = e * self.scale
            self._cache[key] = self._py(_batch_norms(self.space, r, self.scale)[0])
        return self._cache[key]

    def _l_a_den(self, code, s):
        key = ("la", code, s)
        if key in self._cache:
            return self._cache[key]
        supp = [i + 1 for i in range(self.N) if self.V[code][i] != 0]
        best = self._nrm(code)
        for r in range(1, min(s, len(supp)) + 1):
            for B in combinations(supp, r):
                v = self._nrm(self._res_code(code, B))
                if v < best:
                    best = v
        self._cache[key] = best
        return best

    def _w_g(self, S):
        return self._greedy_kind("g")

    def _w_g_c(self, S):
        return self._greedy_kind("g_c")

    def _w_l_s(self, S, extra=()):
        return self._greedy_kind("L_s", extra)

    def _w_l_a(self, S):
        return self._greedy_kind("L_a")

    def _w_r_trunc(self, S):
        return self._greedy_kind("r_trunc")

    def _w_k_uncond(self, S):
        levels = {}
        sets = _subsets(self.N, self.m_max)
        for code in range(self.G ** self.N):
            nf = self._nrm(code)
            if nf == 0:
                continue
            for A in sets:
                num = self._nrm(self._proj_code(code, A))
                levels.setdefault(len(A), _Max()).offer(num, nf, (code, A), (code, A))

        def build(m, payload):
            return WitnessInstance("k_uncond", m, self._vec(payload[0]), payload[1])

        return self._finish("k_uncond", levels, build)

    def _w_k_basis(self, S):
        levels = {0: _Max()}
        best = levels[0]
        for code in range(self.G ** self.N):
            nf = self._nrm(code)
            if nf == 0:
                continue
            for k in range(0, self.N + 1):
                best.offer(self._nrm(self._proj_code(code, range(1, k + 1))),
                           nf, (code, k), (code, k))

        def build(m, payload):
            return WitnessInstance("K_basis", m, self._vec(payload[0]), k=payload[1])

        return self._finish("K_basis", levels, build)

    # -- Chebyshev-based kinds -------------------------------------------------
    def _cheb_space(self):
        return self.space.with_exact(self.exact)

    def _benchmarks(self, space, f):
        """``inf`` over supports of size ``<= j`` inside ``{1..N}``, for every ``j``."""
        top = min(self.m_max, self.N)
        if space.kind != "c0_summing":
            return {j: best_sparse_residual(space, f, j, self.N) for j in range(top + 1)}
        best = {}
        for S in _subsets(self.N, top):
            v = residual_value(space, f, S)
            j = len(S)
            if j not in best or v < best[j]:
                best[j] = v
        for j in range(1, top + 1):
            best[j] = min(best[j], best[j - 1])
        return best

    def _w_l(self, S):
        return self._cheb_kind("L")

    def _w_l_ch(self, S):
        return self._cheb_kind("L_ch")

    def _cheb_kind(self, kind):
        space = self._cheb_space()
        N = self.N
        levels = {}
        per_level = {}
        for code in range(self.G ** N):
            if self._nrm(code) == 0:
                continue
            f = self._vec(code)
            bench = self._benchmarks(space, f)
            for j in range(0, min(self.m_max, N) + 1):
                for A in self._greedy(code, j):
                    if kind == "L":
                        num = sp.norm(space, f - project(f, A))
                        levels.setdefault(max(j, 1), _Max()).offer(
                            *_frac_pair(num, bench[j], self.exact), (code, A), (code, A))
                    else:
                        num = residual_value(space, f, A)
                        per_level.setdefault(j, _Max()).offer(
                            *_frac_pair(num, bench[j], self.exact), (code, A), (code, A))

        def build(m, payload):
            return WitnessInstance(kind, m, self._vec(payload[0]), payload[1], window=N)

        if kind == "L":
            return self._finish(kind, levels, build)
        out = {}
        for m in range(0, self.m_max + 1):
            b = per_level.get(m)
            if b is None or b.key is None:
                out[m] = ParamEstimate(ParamKind.L_CH, m, self._value(0, 1), "windowed_exact",
                                       None, N, self.grid, 0)
                continue
            out[m] = ParamEstimate(ParamKind.L_CH, m, _ratio_value(b.num, b.den, self.exact),
                                   "windowed_exact", build(m, b.payload), N, self.grid, b.count)
        return out

    # -- squeeze symmetry ---------------------------------------------------
    def _lambda_kind(self, kind, S):
        tab = self.set_table(S)
        sets, smax = tab["sets"], tab["smax"]
        N, m_max = self.N, self.m_max
        best_size = {}
        for A in sets:
            j = len(A)
            if j and (j not in best_size or smax[A] > smax[best_size[j]]):
                best_size[j] = A
        disjoint = {}
        if kind == "lambda_d":
            for mask in range(1 << N):
                for A in sets:
                    if A and not (_mask(A) & mask):
                        j = len(A)
                        cur = disjoint.get((mask, j))
                        if cur is None or smax[A] > smax[cur]:
                            disjoint[(mask, j)] = A
        lc_sets = [A for A in sets if not A or A[-1] <= m_max]
        levels = {}
        for code in range(self.G ** N):
            nf = self._nrm(code)
            if nf == 0:
                continue
            mags = self._sorted_mags(code)
            row = self.V[code]
            supp = [i + 1 for i in range(N) if row[i] != 0]
            smask = _mask(supp)
            for j in range(1, min(m_max, N) + 1):
                t = mags[j - 1]
                if t == 0:
                    break
                B = self._greedy(code, j)[0]
                if kind == "lambda":
                    cands = [(best_size.get(j), j)]
                elif kind == "lambda_d":
                    cands = [(disjoint.get((smask, j)), j)]
                else:
                    lo = supp[0]
                    cands = []
                    for A in lc_sets:
                        if len(A) <= j and (not A or A[-1] < lo):
                            cands.append((A, max(j, A[-1] if A else 0)))
                for A, need in cands:
                    if A is None:
                        continue
                    v = smax[A] if A else 0
                    levels.setdefault(need, _Max()).offer(
                        t * v, self.scale * nf, (code, A, B), (code, A, B))

        def build(m, payload):
            code, A, B = payload
            return WitnessInstance(kind, m, self._vec(code), A, B, tab["amax"].get(A, ()))

        return self._finish(kind, levels, build)

    def _w_lambda(self, S):
        return self._lambda_kind("lambda", S)

    def _w_lambda_d(self, S):
        return self._lambda_kind("lambda_d", S)

    def _w_lambda_c(self, S):
        return self._lambda_kind("lambda_c", S)

    # -- set-only kinds -----------------------------------------------------
    def _set_kind(self, kind, S):
        tab = self.set_table(S)
        sets = tab["sets"]
        by_size = {}
        for A in sets:
            by_size.setdefault(len(A), []).append(A)
        if kind in ("mu", "mu_d", "D_cons"):
            num_t, den_t, num_p, den_p = tab["one"], tab["one"], None, None
        else:
            num_t, den_t, num_p, den_p = tab["smax"], tab["smin"], tab["amax"], tab["amin"]
        levels = {}
        for j, group in by_size.items():
            if j == 0:
                continue
            if kind == "D_cons":
                for B in group:
                    for A in sets:
                        if len(A) <= j and (not A or A[-1] < B[0]):
                            levels.setdefault(j, _Max()).offer(num_t[A], den_t[B], (A, B), (A, B))
                continue
            for A in group:
                for B in group:
                    if kind.endswith("_d") and set(A) & set(B):
                        continue
                    levels.setdefault(j, _Max()).offer(num_t[A], den_t[B], (A, B), (A, B))

        def build(m, payload):
            A, B = payload
            if num_p is None:
                return WitnessInstance(kind, m, A=A, B=B)
            return WitnessInstance(kind, m, A=A, B=B, eps=num_p[A], eta=den_p[B])

        return self._finish(kind, levels, build)

    def _w_mu(self, S):
        return self._set_kind("mu", S)

    def _w_mu_d(self, S):
        return self._set_kind("mu_d", S)

    def _w_mu_t(self, S):
        return self._set_kind("mu_t", S)

    def _w_mu_t_d(self, S):
        return self._set_kind("mu_t_d", S)

    def _w_d_cons(self, S):
        return self._set_kind("D_cons", S)

    # -- nu -------------------------------------------------------------------
    def _nu_kind(self, kind, S):
        N, m_max = self.N, self.m_max
        S = max(S, N)
        one = self.scale
        ok_digits = [d for d in range(self.G) if abs(self.ivals[d]) <= one]
        sets = [A for A in _subsets(S, m_max) if A]
        pats = {j: _sign_patterns(j) for j in range(1, m_max + 1)}
        levels = {}
        for digs in product(ok_digits, repeat=N):
            code = sum(d * p for d, p in zip(digs, self.pow))
            row = np.zeros(S, dtype=np.int64)
            row[:N] = self.V[code]
            supp = _mask([i + 1 for i in range(N) if row[i] != 0])
            free = [A for A in sets if not (_mask(A) & supp)]
            rows, owner, signs = [], [], []
            for ai, A in enumerate(free):
                for eps in pats[len(A)]:
                    r = row.copy()
                    for n, e in zip(A, eps):
                        r[n - 1] = e * one
                    rows.append(r)
                    owner.append(ai)
                    signs.append(eps)
            if not rows:
                continue
            nr = _batch_norms(self.space, np.array(rows), self.scale)
            hi, lo, ahi, alo = {}, {}, {}, {}
            for r_i, ai in enumerate(owner):
                v = self._py(nr[r_i])
                if ai not in hi or v > hi[ai]:
                    hi[ai], ahi[ai] = v, signs[r_i]
                if ai not in lo or v < lo[ai]:
                    lo[ai], alo[ai] = v, signs[r_i]
            by_size = {}
            for ai, A in enumerate(free):
                by_size.setdefault(len(A), []).append(ai)
            for j, group in by_size.items():
                best = levels.setdefault(j, _Max())
                if kind == "nu":
                    a = min(group, key=lambda i: (-hi[i], free[i]))
                    b = min(group, key=lambda i: (lo[i], free[i]))
                    best.offer(hi[a], lo[b], (code, free[a], free[b]),
                               (code, free[a], free[b], ahi[a], alo[b]))
                else:
                    order_a = sorted(group, key=lambda i: (-hi[i], free[i]))
                    order_b = sorted(group, key=lambda i: (lo[i], free[i]))
                    for b in order_b:
                        mb = _mask(free[b])
                        for a in order_a:
                            if not (_mask(free[a]) & mb):
                                best.offer(hi[a], lo[b], (code, free[a], free[b]),
                                           (code, free[a], free[b], ahi[a], alo[b]))
                                break

        def build(m, payload):
            code, A, B, eps, eta = payload
            return WitnessInstance(kind, m, self._vec(code), A, B, eps, eta)

        return self._finish(kind, levels, build)

    def _w_nu(self, S):
        return self._nu_kind("nu", S)

    def _w_nu_d(self, S):
        return self._nu_kind("nu_d", S)

    # -- omega --------------------------------------------------------------
    def _w_omega(self, S):
        """t ranges over ``{max|f|, 2 max|f|, 10 max|f|}`` (``t = 1`` for ``f = 0``)."""
        N, m_max, one = self.N, self.m_max, self.scale
        top = m_max - 1 if self.omega_strict else m_max
        Bsets = [B for B in _subsets(N, m_max)]
        Asets = [A for A in _subsets(min(top, N), m_max)]
        patsB = [(bi, eta) for bi, B in enumerate(Bsets) for eta in _sign_patterns(len(B))]
        patsA = [(ai, eps) for ai, A in enumerate(Asets) for eps in _sign_patterns(len(A))]
        Bmask = [_mask(B) for B in Bsets]
        levels = {}
        for code in range(self.G ** N):
            row = self.V[code]
            supp = [i + 1 for i in range(N) if row[i] != 0]
            smask = _mask(supp)
            mx = int(np.abs(row).max()) if N else 0
            lo_f = supp[0] if supp else N + 1
            ts = [mx, 2 * mx, 10 * mx] if mx else [one]
            rowsB = [(bi, eta) for bi, eta in patsB if not (Bmask[bi] & smask)]
            rowsA = [(ai, eps) for ai, eps in patsA
                     if not Asets[ai] or Asets[ai][-1] < lo_f]
            for t in ts:
                XB = np.tile(row, (len(rowsB), 1))
                for r_i, (bi, eta) in enumerate(rowsB):
                    for n, e in zip(Bsets[bi], eta):
                        XB[r_i, n - 1] = e * t
                XA = np.tile(row, (len(rowsA), 1))
                for r_i, (ai, eps) in enumerate(rowsA):
                    for n, e in zip(Asets[ai], eps):
                        XA[r_i, n - 1] = e * t
                nB = _batch_norms(self.space, XB, one)
                nA = _batch_norms(self.space, XA, one)
                den, aden = {}, {}
                for r_i, (bi, eta) in enumerate(rowsB):
                    v = self._py(nB[r_i])
                    if bi not in den or v < den[bi]:
                        den[bi], aden[bi] = v, eta
                num, anum = {}, {}
                for r_i, (ai, eps) in enumerate(rowsA):
                    v = self._py(nA[r_i])
                    if ai not in num or v > num[ai]:
                        num[ai], anum[ai] = v, eps
                for bi in den:
                    B = Bsets[bi]
                    lo = min(lo_f, B[0]) if B else lo_f
                    for ai in num:
                        A = Asets[ai]
                        if len(A) > len(B) or (A and A[-1] >= lo):
                            continue
                        need = max(len(B), (A[-1] + 1) if (A and self.omega_strict) else
                                   (A[-1] if A else 0), 1)
                        levels.setdefault(need, _Max()).offer(
                            num[ai], den[bi], (code, t, A, B),
                            (code, t, A, B, anum[ai], aden[bi]))

        def build(m, payload):
            code, t, A, B, eps, eta = payload
            return WitnessInstance("omega", m, self._vec(code), A, B, eps, eta, t=self._t(t))

        return self._finish("omega", levels, build)


def _frac_pair(num, den, exact):
    if exact:
        return Fraction(num), Fraction(den)
    return float(num), float(den)


def _ratio_value(num, den, exact):
    if den == 0:
        return Fraction(0) if exact else 0.0
    if exact:
        return Fraction(num) / Fraction(den)
    return num / den


def windowed_exact(space: sp.SpaceSpec, kind, m: int, N: int, grid=(0, 1, -1, 2, -2), *,
                   set_window: int | None = None, omega_strict: bool = True,
                   budget: int = 2 * 10 ** 6) -> ParamEstimate:
    """Exact maximum of the defining ratio over the grid window (see :class:`WindowedEngine`)."""
    if ParamKind(kind) is ParamKind.G_C and m == 0:
        return ParamEstimate(ParamKind.G_C, 0, Fraction(0), "windowed_exact", None, N,
                             tuple(sorted(Fraction(g) for g in grid)), 0)
    eng = WindowedEngine(space, N, grid, max(m, 1), omega_strict=omega_strict, budget=budget)
    return eng.profile(kind, set_window=set_window)[m]


def basis_constant(space: sp.SpaceSpec, N: int, grid=(0, 1, -1, 2, -2), *,
                   budget: int = 2 * 10 ** 6) -> ParamEstimate:
    """Windowed ``sup_{n <= N} ||P_n f|| / ||f||`` over the grid."""
    eng = WindowedEngine(space, N, grid, 0, budget=budget)
    return eng.profile("K_basis")[0]
