"""Verification suites tying the modules to the theorems they implement.

Every check belongs to one of three classes:

``exact``
    an inequality or equality that holds per instance (pass/fail);
``windowed``
    a relation between windowed-exact values that the proof makes valid at the
    declared window and grid (pass/fail);
``report_only``
    a comparison between estimates that a supremum estimate cannot certify;
    recorded, never failing.

Reports are deterministic: checks are sorted by id and floats are written
with 17 significant digits.
"""
from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from . import spaces as sp
from . import surd
from .chebyshev import chebyshev_sum
from .coeffspace import CoeffVector, indicator, initial_projection, project
from .greedy import BudgetError, a_p, canonical_order, eta_p, greedy_sets, truncate
from .params import (ParamKind, SearchConfig, WindowedEngine, WitnessInstance, estimate,
                     omega_induced_ls, ratio_eval, _prop5_set, _prop6_vector)

__all__ = [
    "SUITES",
    "SuiteSpec",
    "CheckRecord",
    "VerificationReport",
    "ConfigError",
    "default_spec",
    "run_suite",
    "emit_report",
    "parse_report",
    "ratio_series",
    "RatioSeries",
]

SUITES = (
    "summing_remark",
    "f1_chain",
    "main1_sandwich",
    "cheby_bound",
    "oldbound_compare",
    "quasi_relations",
    "mu_squares",
    "trunc_bound",
    "ctga_dominates",
    "prop5_witness",
    "prop6_witness",
    "t3v3_schauder",
    "lemma_convexity_report",
)

TOL = 1e-9
WINDOWED_SPACES = ("lp_quasi:1", "lp_quasi:1/2", "c0_sup", "c0_summing")


class ConfigError(ValueError):
    """Invalid suite configuration."""


@dataclass(frozen=True)
class SuiteSpec:
    """Suite id plus its bindings.  ``spaces`` holds space strings or JSON paths."""

    suite: str
    spaces: tuple = ()
    m_range: tuple = (1, 4)
    window: int = 6
    grid: tuple = (0, 1, -1, 2, -2)
    samples: int = 200
    seed: int = 0
    budget: int = 2 * 10 ** 6
    exact: bool = True
    omega_strict: bool = True

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        lo, hi = self.m_range
        if not 0 <= lo <= hi:
            raise ConfigError("m_range must satisfy 0 <= lo <= hi")
        if self.window < 1:
            raise ConfigError("window must be positive")
        if self.samples < 0:
            raise ConfigError("samples must be nonnegative")

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteSpec":
        names = {f.name for f in fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ConfigError(f"unknown suite keys: {sorted(unknown)}")
        if "suite" not in d:
            raise ConfigError("config needs a 'suite'")
        base = default_spec(d["suite"])
        kw = {k: (tuple(v) if isinstance(v, list) else v) for k, v in d.items()}
        return replace(base, **kw)

    def space_specs(self):
        try:
            return [sp.parse_space(s, exact=self.exact) for s in self.spaces]
        except sp.SpaceError as e:
            raise ConfigError(str(e)) from e

    def echo(self) -> dict:
        return {
            "suite": self.suite,
            "spaces": [s.to_dict() | {"label": s.label()} for s in self.space_specs()],
            "m_range": list(self.m_range),
            "window": self.window,
            "grid": [str(Fraction(g)) for g in self.grid],
            "samples": self.samples,
            "seed": self.seed,
            "budget": self.budget,
            "exact": self.exact,
            "omega_strict": self.omega_strict,
        }


def default_spec(suite: str) -> SuiteSpec:
    """Desk-scale defaults per suite."""
    if suite == "summing_remark":
        return SuiteSpec(suite, ("c0_summing",), (1, 50))
    if suite in ("f1_chain", "main1_sandwich", "quasi_relations", "mu_squares", "t3v3_schauder"):
        return SuiteSpec(suite, WINDOWED_SPACES, (1, 4), 6, samples=100)
    if suite == "cheby_bound":
        return SuiteSpec(suite, WINDOWED_SPACES, (1, 4), 6, samples=60)
    if suite == "oldbound_compare":
        return SuiteSpec(suite, ("c0_summing",), (1, 4), 6)
    if suite == "trunc_bound":
        return SuiteSpec(suite, WINDOWED_SPACES, (1, 4), 6)
    if suite == "ctga_dominates":
        return SuiteSpec(suite, ("c0_sup", "c0_summing", "lp_quasi:1"), (1, 6), 8, samples=350)
    if suite == "prop5_witness":
        n, m = sp.minimal_strict_scale("prop5_space")
        return SuiteSpec(suite, (f"prop5_space:{n}x{m}",), (1, 1), 1, samples=500, exact=True)
    if suite == "prop6_witness":
        n, m = sp.minimal_strict_scale("prop6_space")
        return SuiteSpec(suite, (f"prop6_space:{n}x{m}",), (1, 1), 1, samples=500, exact=True)
    if suite == "lemma_convexity_report":
        return SuiteSpec(suite, ("lp_quasi:1", "lp_quasi:1/2", "c0_summing"), (1, 4), 6, samples=50)
    raise ConfigError(f"unknown suite {suite!r}")


# ---------------------------------------------------------------------------
# records

def _text(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


@dataclass(frozen=True)
class CheckRecord:
    check_id: str
    check_class: str  # exact | windowed | report_only
    relation: str  # <=, =, >=
    lhs: float
    rhs: float
    constant: str
    status: str  # pass | fail | report
    margin: float  # rhs - lhs (signed for the stated relation)
    lhs_exact: str = ""
    rhs_exact: str = ""
    note: str = ""


def _holds(lhs, rel, rhs, exact: bool) -> bool:
    if exact:
        if rel == "<=":
            return lhs <= rhs
        if rel == ">=":
            return lhs >= rhs
        return lhs == rhs
    a, b = float(lhs), float(rhs)
    slack = TOL * max(1.0, abs(b))
    if rel == "<=":
        return a <= b + slack
    if rel == ">=":
        return a >= b - slack
    return abs(a - b) <= slack


def _record(check_id, cls, lhs, rel, rhs, constant="", *, exact=True, note=""):
    ok = _holds(lhs, rel, rhs, exact)
    if cls == "report_only":
        status = "report"
        note = (note + "; " if note else "") + ("holds" if ok else "violated")
    else:
        status = "pass" if ok else "fail"
    lf, rf = float(lhs), float(rhs)
    margin = rf - lf if rel == "<=" else lf - rf if rel == ">=" else 0.0 - abs(lf - rf)
    return CheckRecord(check_id, cls, rel, lf, rf, str(constant), status, margin,
                       _text(lhs), _text(rhs), note)


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    config: dict
    checks: tuple = ()

    @property
    def failures(self) -> list:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        out = {"pass": 0, "fail": 0, "report": 0}
        for c in self.checks:
            out[c.status] += 1
        return out


_FIELDS = [f.name for f in fields(CheckRecord)]


def _json_value(x) -> str:
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, float):
        if math.isfinite(x):
            s = format(x, ".17g")
            return s if any(c in s for c in ".e") else s + ".0"
        return json.dumps(repr(x))
    if isinstance(x, (int, str)):
        return json.dumps(x)
    if isinstance(x, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(v)}" for k, v in x.items()) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_json_value(v) for v in x) + "]"
    raise TypeError(f"cannot serialize {type(x).__name__}")


def emit_report(report: VerificationReport, fmt: str = "json", path=None) -> str:
    """Serialize ``report``; writes to ``path`` when given.  Output is byte-stable."""
    if fmt == "json":
        body = {
            "suite": report.suite,
            "config": report.config,
            "summary": report.summary(),
            "checks": [{k: getattr(c, k) for k in _FIELDS} for c in report.checks],
        }
        text = _json_value(body) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        buf.write("# suite: " + report.suite + "\n")
        buf.write("# config: " + _json_value(report.config) + "\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(_FIELDS)
        for c in report.checks:
            w.writerow([_text(getattr(c, k)) for k in _FIELDS])
        text = buf.getvalue()
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def _record_from(d: dict) -> CheckRecord:
    kw = dict(d)
    for k in ("lhs", "rhs", "margin"):
        kw[k] = float(kw[k])
    return CheckRecord(**kw)


def parse_report(text: str, fmt: str = "json") -> VerificationReport:
    """Inverse of :func:`emit_report`."""
    if fmt == "json":
        d = json.loads(text)
        return VerificationReport(d["suite"], d["config"], tuple(_record_from(c) for c in d["checks"]))
    if fmt == "csv":
        lines = text.splitlines()
        suite = lines[0].split(": ", 1)[1]
        config = json.loads(lines[1].split(": ", 1)[1])
        rows = list(csv.DictReader(io.StringIO("\n".join(lines[2:]) + "\n")))
        return VerificationReport(suite, config, tuple(_record_from(r) for r in rows))
    raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# shared helpers

@lru_cache(maxsize=64)
def _engine(space: sp.SpaceSpec, N: int, grid: tuple, m_max: int, omega_strict: bool,
            budget: int) -> WindowedEngine:
    return WindowedEngine(space, N, grid, m_max, omega_strict=omega_strict, budget=budget)


def _engines(spec: SuiteSpec, space, m_max=None):
    m_max = spec.m_range[1] if m_max is None else m_max
    for N in range(1, spec.window + 1):
        yield N, _engine(space, N, tuple(spec.grid), m_max, spec.omega_strict, spec.budget)


def _levels(spec: SuiteSpec):
    lo, hi = spec.m_range
    return range(max(lo, 1), hi + 1)


def _rng(spec: SuiteSpec, *tags) -> random.Random:
    return random.Random(":".join([str(spec.seed), spec.suite] + [str(t) for t in tags]))


def _pow(x, p: Fraction, exact: bool):
    if p == 1:
        return x
    return float(x) ** float(p)


def _root(x, p: Fraction, exact: bool):
    if p == 1:
        return x
    return float(x) ** (1 / float(p))


def _ap_p(p: Fraction, exact: bool):
    """``A_p^p = 2^p - 1`` (from the defining formula of ``A_p``)."""
    if p == 1:
        return Fraction(1)
    return 2.0 ** float(p) - 1.0


def _val(space, x, exact):
    return surd.to_exact(x) if exact else float(x)


def _random_grid_vector(rng, W, grid, density=0.7):
    vals = [g for g in grid]
    return CoeffVector.from_dense([Fraction(rng.choice(vals)) if rng.random() < density else 0
                                   for _ in range(W)])


def _max_sign_norm(space, S):
    best, arg = None, None
    for eps in product((1, -1), repeat=len(S)):
        v = sp.norm(space, indicator(S, eps))
        if best is None or v > best:
            best, arg = v, eps
    return best, arg


# ---------------------------------------------------------------------------
# suites

def _suite_summing_remark(spec: SuiteSpec):
    out = []
    space = sp.c0_summing(exact=True)
    for space_ in spec.space_specs():
        if space_.kind != "c0_summing":
            raise ConfigError("summing_remark runs on c0_summing only")
    lo, hi = spec.m_range
    for m in range(max(lo, 1), hi + 1):
        alt = CoeffVector.from_dense([(-1) ** n for n in range(1, 2 * m + 1)])
        ones = indicator(range(1, 2 * m + 1))
        evens = indicator(range(2, 2 * m + 1, 2))
        out.append(_record(f"alternating_norm.m{m:03d}", "exact", sp.norm(space, alt), "=", 1, "1"))
        out.append(_record(f"ones_norm.m{m:03d}", "exact", sp.norm(space, ones), "=", 2 * m, "2m"))
        out.append(_record(f"evens_norm.m{m:03d}", "exact", sp.norm(space, evens), "=", m, "m"))
        # 1 -2 2 ... -2 1: unit norm, the -2 block carries norm 2m
        peak = CoeffVector.from_dense([1] + [2 * (-1) ** (j + 1) for j in range(2, 2 * m + 1)] + [1])
        g_w = ratio_eval(space, WitnessInstance("g", m, peak, tuple(range(2, 2 * m + 1, 2))))
        half = tuple(range(1, m + 1))
        mu_w = ratio_eval(space, WitnessInstance(
            "mu_t", m, A=half, B=half, eps=(1,) * m, eta=tuple((-1) ** i for i in range(m))))
        out.append(_record(f"g_mu_t_witness_product.m{m:03d}", "report_only", g_w * mu_w, ">=",
                           2 * m * m, "2m^2", note="witness product; the bound is asymptotic"))
    return out


def _label(space):
    return space.label()


def _suite_f1_chain(spec):
    out = []
    for space in spec.space_specs():
        lab = _label(space)
        for N, eng in _engines(spec, space):
            ex = eng.exact
            gc, om, g = eng.profile("g_c"), eng.profile("omega"), eng.profile("g")
            extras = tuple(omega_induced_ls(om[m].witness) for m in _levels(spec)
                           if om[m].witness is not None)
            ls = eng.profile("L_s")
            ls_ext = eng.profile("L_s", extra=extras)
            for m in _levels(spec):
                cid = f"{lab}.N{N}.m{m}"
                out.append(_record(f"{cid}.g_c_le_L_s", "windowed", gc[m].value, "<=", ls[m].value,
                                   "1", exact=ex))
                out.append(_record(f"{cid}.omega_le_L_s", "windowed", om[m].value, "<=",
                                   ls_ext[m].value, "1", exact=ex,
                                   note="L_s family includes the omega-induced instance"))
                out.append(_record(f"{cid}.L_s_le_g_omega", "report_only", ls[m].value, "<=",
                                   g[m].value * om[m].value, "1", exact=ex))
    return out


def _main1_constants(p: Fraction):
    if p == 1:
        return Fraction(3), Fraction(2)
    return (1 + 2.0 ** float(p)) ** (1 / float(p)), 2.0 ** (1 / float(p))


def _suite_main1(spec):
    out = []
    for space in spec.space_specs():
        lab = _label(space)
        C1, C2 = _main1_constants(space.p)
        for N, eng in _engines(spec, space):
            ex = eng.exact
            g, lc, ls = eng.profile("g"), eng.profile("lambda_c"), eng.profile("L_s")
            for m in _levels(spec):
                cid = f"{lab}.N{N}.m{m}"
                mx = max(g[m].value, lc[m].value)
                out.append(_record(f"{cid}.L_s_upper", "windowed", ls[m].value, "<=", C1 * mx,
                                   f"(2+A_p^p)^(1/p)={_text(C1)}", exact=ex))
                out.append(_record(f"{cid}.L_s_lower", "windowed", mx, "<=", C2 * ls[m].value,
                                   f"2^(1/p)={_text(C2)}", exact=ex))
        out.extend(_main1_pointwise(spec, space))
    return out


def _main1_pointwise(spec, space):
    """Per instance: the proof's decomposition ``f - P_A f = (h - P_{A\\D} h) + P_{D\\A} f``."""
    out = []
    lab = _label(space)
    rng = _rng(spec, lab, "main1")
    p = space.p
    cls = "exact" if p == 1 else "report_only"
    ex = space.exact
    hi = spec.m_range[1]
    W = max(spec.window, 2)
    for i in range(spec.samples):
        f = _random_grid_vector(rng, W, spec.grid)
        if not f:
            continue
        m = rng.randint(max(spec.m_range[0], 1), hi)
        j = rng.randint(0, min(m, W))
        A = rng.choice(greedy_sets(f, j, window=W))
        k = rng.randint(0, len(A))
        D = set(range(1, k + 1))
        h = f - initial_projection(f, k)
        lhs = sp.norm(space, f - project(f, A))
        AD = tuple(n for n in A if n not in D)
        DA = tuple(n for n in sorted(D) if n not in A)
        nh = sp.norm(space, h)
        if nh == 0:
            out.append(_record(f"{lab}.main1_pointwise.{i:04d}", cls, lhs, "<=", 0, "", exact=ex))
            continue
        gc = ratio_eval(space, WitnessInstance("g_c", m, h, AD))
        rhs_p = _pow(gc * nh, p, ex)
        if AD:
            _, eps = _max_sign_norm(space, DA)
            lc = ratio_eval(space, WitnessInstance("lambda_c", m, h, DA, AD, eps))
            rhs_p = rhs_p + _ap_p(p, ex) * _pow(lc * nh, p, ex)
        out.append(_record(f"{lab}.main1_pointwise.{i:04d}", cls, lhs, "<=", _root(rhs_p, p, ex),
                           "A_p^p=2^p-1", exact=ex))
    return out


def _suite_quasi(spec):
    out = []
    for space in spec.space_specs():
        lab = _label(space)
        p = space.p
        for N, eng in _engines(spec, space):
            ex = eng.exact
            g, gc = eng.profile("g"), eng.profile("g_c")
            for m in _levels(spec):
                cid = f"{lab}.N{N}.m{m}"
                out.append(_record(f"{cid}.g_le", "windowed", g[m].value, "<=",
                                   _root(1 + _pow(gc[m].value, p, ex), p, ex), "(1+g_c^p)^(1/p)",
                                   exact=ex))
                out.append(_record(f"{cid}.g_c_le", "windowed", gc[m].value, "<=",
                                   _root(1 + _pow(g[m].value, p, ex), p, ex), "(1+g^p)^(1/p)",
                                   exact=ex))
    return out


def _suite_mu_squares(spec):
    out = []
    hi = spec.m_range[1]
    for space in spec.space_specs():
        lab = _label(space)
        for N, eng in _engines(spec, space):
            ex = eng.exact
            big = N + hi
            mu, mud = eng.profile("mu"), eng.profile("mu_d")
            mut, mutd = eng.profile("mu_t"), eng.profile("mu_t_d")
            mud_b = eng.profile("mu_d", set_window=big)
            mutd_b = eng.profile("mu_t_d", set_window=big)
            lam = eng.profile("lambda")
            lamd_b = eng.profile("lambda_d", set_window=big)
            for m in _levels(spec):
                cid = f"{lab}.N{N}.m{m}"
                note = f"disjoint side on sets in I_{big}"
                out.append(_record(f"{cid}.mu_d_le_mu", "windowed", mud[m].value, "<=", mu[m].value,
                                   "1", exact=ex))
                out.append(_record(f"{cid}.mu_le_mu_d_sq", "windowed", mu[m].value, "<=",
                                   mud_b[m].value ** 2, "square", exact=ex, note=note))
                out.append(_record(f"{cid}.mu_t_d_le_mu_t", "windowed", mutd[m].value, "<=",
                                   mut[m].value, "1", exact=ex))
                out.append(_record(f"{cid}.mu_t_le_mu_t_d_sq", "windowed", mut[m].value, "<=",
                                   mutd_b[m].value ** 2, "square", exact=ex, note=note))
                out.append(_record(f"{cid}.lambda_le_mu_t_d_lambda_d", "windowed", lam[m].value,
                                   "<=", mutd_b[m].value * lamd_b[m].value, "product", exact=ex,
                                   note=note))
    return out


def _suite_t3v3(spec):
    out = []
    for space in spec.space_specs():
        if not space.schauder:
            raise ConfigError(f"t3v3_schauder needs a Schauder basis, got {space.label()}")
        lab = _label(space)
        p = space.p
        for N, eng in _engines(spec, space):
            ex = eng.exact
            kb = eng.profile("K_basis")[0].value
            lam, lamd = eng.profile("lambda"), eng.profile("lambda_d")
            kbp = _pow(kb, p, ex)
            for m in _levels(spec):
                rhs = _root(_pow(lamd[m].value, p, ex) * (2 * kbp + 1) + 2 * kbp, p, ex)
                out.append(_record(f"{lab}.N{N}.m{m}.lambda_le_t3v3", "windowed", lam[m].value,
                                   "<=", rhs, f"K_b(N)={_text(kb)}", exact=ex))
    return out


def _known_g(space):
    # unconditional with constant 1: ||P_A f|| <= ||f|| with equality at A = supp f
    return 1 if space.kind in ("lp_quasi", "c0_sup") else None


def _suite_trunc(spec):
    out = []
    closed = 3 + 2 * math.sqrt(2)
    out.append(_record("eta.p1.u1.closed_form", "exact", abs(eta_p(1, 1) - closed), "<=", 1e-6,
                       "3+2sqrt2", exact=True))
    out.append(_record("A_p.p1", "exact", a_p(1, exact=True), "=", 1, "1"))
    us = np.logspace(0, 2, 81)
    for p in (Fraction(1), Fraction(1, 2)):
        r = [eta_p(p, float(u)) / float(u) ** (1 / float(p)) for u in us]
        out.append(_record(f"eta.p{p}.band", "exact", max(r) / min(r), "<=", 10, "factor 10",
                           exact=False, note=f"min {min(r):.6g} max {max(r):.6g}"))
    for space in spec.space_specs():
        lab = _label(space)
        p = space.p
        base = _known_g(space)
        for N, eng in _engines(spec, space):
            ex = eng.exact
            r, g = eng.profile("r_trunc"), eng.profile("g")
            for m in _levels(spec):
                cid = f"{lab}.N{N}.m{m}.r_le_g_eta"
                if base is not None:
                    out.append(_record(cid, "windowed", r[m].value, "<=", base * eta_p(p, base),
                                       "g=1 exactly", exact=False))
                else:
                    gv = float(g[m].value)
                    out.append(_record(cid, "report_only", r[m].value, "<=", gv * eta_p(p, gv),
                                       "windowed g", exact=False))
    return out


def _suite_ctga(spec):
    out = []
    for space in spec.space_specs():
        if not space.polyhedral and space.exact:
            space = space.with_exact(False)
        lab = _label(space)
        rng = _rng(spec, lab)
        ex = space.exact
        for i in range(spec.samples):
            W = rng.randint(1, spec.window)
            f = CoeffVector.from_dense([Fraction(rng.randint(-6, 6), rng.choice((1, 1, 2, 3)))
                                        for _ in range(W)])
            m = rng.randint(max(spec.m_range[0], 1), spec.m_range[1])
            A = canonical_order(f, m)
            cheb = chebyshev_sum(space, f, A).residual
            tga = sp.norm(space, f - project(f, A))
            out.append(_record(f"{lab}.{i:04d}", "exact", cheb, "<=", tga, "1", exact=ex,
                               note=f"m={m}"))
    return out


def _suite_cheby(spec):
    """Per instance: the truncation decomposition of the Chebyshev proof."""
    out = []
    hi = spec.m_range[1]
    for space in spec.space_specs():
        lab = _label(space)
        rng = _rng(spec, lab)
        p = space.p
        cls = "exact" if p == 1 else "report_only"
        ex = space.exact
        W = max(spec.window, 2)
        for i in range(spec.samples):
            f = _random_grid_vector(rng, W, spec.grid)
            if not f:
                continue
            m = rng.randint(max(spec.m_range[0], 1), hi)
            A = canonical_order(f, min(m, W))
            ysize = rng.randint(0, m)
            ysupp = sorted(rng.sample(range(1, W + 1), min(ysize, W)))
            y = CoeffVector.from_dict({n: Fraction(rng.choice([g for g in spec.grid if g] or [1]))
                                       for n in ysupp})
            h = f - y
            nh = sp.norm(space, h)
            lhs = chebyshev_sum(space, f, A).residual
            if nh == 0:
                continue
            alpha = max((abs(f[n]) for n in range(1, W + 1) if n not in A), default=0)
            if alpha > 0:
                G = truncate(h, alpha).over
            else:
                G = h.support()
            level = 2 * m
            gcr = ratio_eval(space, WitnessInstance("g_c", level, h, G)) if level else 1
            rr = ratio_eval(space, WitnessInstance("r_trunc", level, h, G)) if G else 0
            rhs_t = _pow(rr * nh, p, ex) + _pow(gcr * nh, p, ex)
            S = tuple(n for n in ysupp if n not in A)
            rhs_s = 0
            if S:
                Dset = canonical_order(h, len(S))
                _, eta = _max_sign_norm(space, S)
                lam = ratio_eval(space, WitnessInstance("lambda", m, h, S, Dset, eta))
                rhs_s = _pow(2 * lam * nh, p, ex) * _ap_p(p, ex)
            out.append(_record(f"{lab}.decomposition.{i:04d}", cls, lhs, "<=",
                               _root(rhs_t + rhs_s, p, ex), "2 A_p", exact=ex))
        for N, eng in _engines(spec, space, m_max=min(hi, 3)):
            if N > 4:
                break
            lch, g, lam = eng.profile("L_ch"), eng.profile("g"), eng.profile("lambda")
            for m in range(max(spec.m_range[0], 1), min(hi, 3) + 1):
                gv = g[m].value if p == 1 else float(g[m].value) ** (1 + 1 / float(p))
                out.append(_record(f"{lab}.N{N}.m{m}.L_ch_vs_max", "report_only", lch[m].value,
                                   "<=", max(gv, lam[m].value), "implicit constant",
                                   exact=eng.exact))
    return out


def _suite_oldbound(spec):
    out = []
    hi = spec.m_range[1]
    for space in spec.space_specs():
        lab = _label(space)
        for N, eng in _engines(spec, space, m_max=2 * hi):
            ex = eng.exact
            g, lam, gc, mut = (eng.profile(k) for k in ("g", "lambda", "g_c", "mu_t"))
            for m in _levels(spec):
                cid = f"{lab}.N{N}.m{m}"
                mx = max(g[m].value, lam[m].value)
                if space.kind == "c0_summing":
                    out.append(_record(f"{cid}.max_g_lambda_le_2m", "windowed", mx, "<=", 2 * m,
                                       "2m", exact=ex))
                old = gc[2 * m].value + 4 * g[m].value * mut[m].value
                out.append(_record(f"{cid}.new_vs_old", "report_only", mx, "<=", old,
                                   "g_c(2m)+4 g mu_t", exact=ex))
    return out


def _strict_space(spec, kind):
    spaces = spec.space_specs()
    if len(spaces) != 1 or spaces[0].kind != kind:
        raise ConfigError(f"{spec.suite} needs exactly one {kind}")
    space = spaces[0]
    if not space.strict_growth:
        raise ConfigError(f"{spec.suite} needs strict scales")
    if len(space.scales) != 1:
        raise ConfigError(f"{spec.suite} runs at K_max = 1")
    return space


def _true_upper(space, v):
    """Upper bound of the norm in every strict continuation of the scale list."""
    fin = sp.norm(space, v)
    cap = sp.higher_scale_cap(space, v)
    if cap is None:
        raise ValueError("vector leaves the cap window")
    return max(fin, cap)


def _sample_x(rng, n, exact, window):
    """Random vectors with block structure on ``I_n``, ``(n, 2n]`` and the tail."""
    blocks = [(1, n), (n + 1, 2 * n), (2 * n + 1, window)]
    entries = {}
    for lo, hi in blocks:
        if rng.random() < 0.75:
            size = min(hi - lo + 1, int(rng.choice([1, 2, 5, 10, 50, n // 4, n]) or 1))
            idx = rng.sample(range(lo, hi + 1), max(1, size))
            style = rng.choice(["flat", "decay", "random"])
            for r, j in enumerate(sorted(idx)):
                if style == "flat":
                    v = Fraction(1)
                elif style == "decay":
                    v = Fraction(1, r + 1)
                else:
                    v = Fraction(rng.randint(1, 20), 20)
                entries[j] = v * rng.choice((1, -1))
    if not entries:
        entries[rng.randint(1, window)] = Fraction(1)
    v = CoeffVector.from_dict(entries)
    return v if exact else v.as_float()


def _suite_prop5(spec):
    space = _strict_space(spec, "prop5_space")
    n, m = space.scales[0]
    out = []
    A = _prop5_set(n)
    num_lb = sp.q_proof_lower_bound(space.with_exact(True), 1, indicator(A))
    den_ub = _true_upper(space.with_exact(True), indicator(range(1, 2 * n + 1)))
    target = Fraction(n, 2 * m * m)
    out.append(_record("mu_witness.lower_bound", "exact", num_lb / den_ub, ">=", target,
                       f"n/(2m^2)={target}", note="explicit delta over the capped 1_{I_2n} norm"))
    fs = space.with_exact(False)
    rs = _rng(spec, "samples")
    root = 5 * math.sqrt(n)
    for i in range(spec.samples):
        x = _sample_x(rs, n, False, 4 * n)
        supp = x.support()
        r = rs.randint(1, min(n, len(supp), 4 * n - len(supp)))
        B = canonical_order(x, r)
        x = x.scale(1 / min(abs(x[j]) for j in B))
        free = [j for j in range(1, 4 * n + 1) if j not in set(supp)]
        mode = rs.random()
        if mode < 0.4:
            pool = [j for j in free if n < j <= 2 * n] or free
        elif mode < 0.7:
            pool = [j for j in free if j > 2 * n] or free
        else:
            pool = free
        Aset = sorted(rs.sample(pool, min(r, len(pool))))
        if len(Aset) < r:
            Aset = sorted(rs.sample(free, r))
        eps = tuple(rs.choice((1, -1)) for _ in Aset)
        lhs = _true_upper(fs, indicator(Aset, eps))
        rhs = root * sp.norm(fs, x)
        out.append(_record(f"lambda_d_pointwise.{i:04d}", "exact", lhs, "<=", rhs, "5 sqrt(n)",
                           exact=False, note=f"|A|={r}"))
    return out


def _suite_prop6(spec):
    space = _strict_space(spec, "prop6_space")
    n, m = space.scales[0]
    out = []
    es = space.with_exact(True)
    x = _prop6_vector(n, exact=True)
    A, B = tuple(range(n + 1, 2 * n + 1)), tuple(range(1, n + 1))
    inst = WitnessInstance("lambda", n, x, A, B)
    num = Fraction(1) * sp.norm(es, indicator(A))  # min_B |x| = 1
    den = _true_upper(es, x)
    target = Fraction(n, m * m)
    ratio = num / den
    out.append(_record("lambda_witness.lower_bound", "exact", ratio, ">=", target,
                       f"n/m^2={target}", note="finite numerator over the capped norm of x"))
    out.append(_record("lambda_witness.ratio_eval", "exact", ratio_eval(es, inst), ">=", target,
                       f"n/m^2={target}"))
    fs = space.with_exact(False)
    rs = _rng(spec, "samples")
    const = 19 * math.sqrt(n) / m
    for i in range(spec.samples):
        x = _sample_x(rs, n, False, 4 * n)
        r = rs.randint(1, min(n, len(x)))
        Bs = _random_greedy(rs, x, r)
        lhs = _true_upper(fs, project(x, Bs))
        rhs = const * sp.norm(fs, x)
        out.append(_record(f"g_pointwise.{i:04d}", "exact", lhs, "<=", rhs, "19 sqrt(n)/m",
                           exact=False, note=f"|B|={r}"))
    return out


def _random_greedy(rng, x, r):
    try:
        return rng.choice(greedy_sets(x, r, budget=64))
    except BudgetError:
        return canonical_order(x, r)


def _suite_lemma(spec):
    out = []
    for space in spec.space_specs():
        lab = _label(space)
        rng = _rng(spec, lab)
        formula = a_p(space.p)
        corrected = 1 / formula if space.p != 1 else 1.0
        fs = space.with_exact(False)
        for i in range(spec.samples):
            size = rng.randint(1, spec.m_range[1])
            S = sorted(rng.sample(range(1, spec.window + 1), min(size, spec.window)))
            coeffs = {j: rng.uniform(-1, 1) for j in S}
            lhs = sp.norm(fs, CoeffVector.from_dict(coeffs))
            sup, _ = _max_sign_norm(fs, S)
            out.append(_record(f"{lab}.formula.{i:04d}", "report_only", lhs, "<=", formula * sup,
                               f"A_p={formula:.6g}", exact=False))
            out.append(_record(f"{lab}.reciprocal.{i:04d}", "report_only", lhs, "<=",
                               corrected * sup, f"1/A_p={corrected:.6g}", exact=False))
    return out


_RUNNERS = {
    "summing_remark": _suite_summing_remark,
    "f1_chain": _suite_f1_chain,
    "main1_sandwich": _suite_main1,
    "cheby_bound": _suite_cheby,
    "oldbound_compare": _suite_oldbound,
    "quasi_relations": _suite_quasi,
    "mu_squares": _suite_mu_squares,
    "trunc_bound": _suite_trunc,
    "ctga_dominates": _suite_ctga,
    "prop5_witness": _suite_prop5,
    "prop6_witness": _suite_prop6,
    "t3v3_schauder": _suite_t3v3,
    "lemma_convexity_report": _suite_lemma,
}


def run_suite(spec: SuiteSpec | str) -> VerificationReport:
    """Evaluate every check of the suite; failures are data, not exceptions."""
    if isinstance(spec, str):
        spec = default_spec(spec)
    checks = _RUNNERS[spec.suite](spec)
    checks = tuple(sorted(checks, key=lambda c: c.check_id))
    ids = [c.check_id for c in checks]
    if len(set(ids)) != len(ids):
        raise RuntimeError("duplicate check ids")
    return VerificationReport(spec.suite, spec.echo(), checks)


# ---------------------------------------------------------------------------
# ratio series

@dataclass(frozen=True)
class RatioSeries:
    """``m -> est(num, m) / est(den, m)^R`` with a fitted log-log slope (exploratory)."""

    num: str
    den: str
    R: float
    mode: str
    rows: tuple  # (m, num value, den value, ratio)
    slope: float | None

    def to_dict(self) -> dict:
        return {
            "num": self.num,
            "den": self.den,
            "R": self.R,
            "mode": self.mode,
            "slope": self.slope,
            "rows": [{"m": m, "num": float(a), "den": float(b), "ratio": r}
                     for m, a, b, r in self.rows],
        }


def ratio_series(space: sp.SpaceSpec, num, den, R: float, m_range=(1, 6),
                 config: SearchConfig | None = None, *, mode: str = "witness", N: int = 6,
                 grid=(0, 1, -1, 2, -2)) -> RatioSeries:
    """Ratio table over ``m``; estimates are lower bounds, so this is exploratory."""
    num, den = ParamKind(num).value, ParamKind(den).value
    lo, hi = m_range
    rows = []
    if mode == "windowed":
        eng = WindowedEngine(space, N, grid, hi)
        pn, pd = eng.profile(num), eng.profile(den)
        vals = [(m, pn[m].value, pd[m].value) for m in range(lo, hi + 1)]
    elif mode == "witness":
        cfg = config or SearchConfig()
        vals = [(m, estimate(space, num, m, cfg).value, estimate(space, den, m, cfg).value)
                for m in range(max(lo, 1), hi + 1)]
    else:
        raise ValueError("mode must be witness or windowed")
    for m, a, b in vals:
        if b == 0:
            raise ZeroDivisionError(f"zero denominator estimate at m={m}")
        rows.append((m, a, b, float(a) / float(b) ** R))
    pts = [(math.log(m), math.log(r)) for m, _, _, r in rows if m > 0 and r > 0]
    slope = None
    if len(pts) >= 2 and len({x for x, _ in pts}) >= 2:
        xs, ys = zip(*pts)
        slope = float(np.polyfit(xs, ys, 1)[0])
    return RatioSeries(num, den, float(R), mode, tuple(rows), slope)
