"""
Constants in the p-Banach setting
=================================

A_p and eta_p carry the quasi-norm exponent through the truncation and
Chebyshev bounds.  eta_p(u) grows like u^(1/p); A_p = (2^p-1)^(1/p) drops
below 1 for p < 1, which the convexity report makes visible.
"""
import numpy as np

from greedy_lebesgue.greedy import a_p, eta_p
from greedy_lebesgue.verify import run_suite

us = np.logspace(0, 2, 9)
for p in (1.0, 0.5):
    ratios = [eta_p(p, u) / u ** (1 / p) for u in us]
    print(f"p={p}: A_p={a_p(p):.4f}  eta_p(u)/u^(1/p) in [{min(ratios):.3f}, {max(ratios):.3f}]")

rep = run_suite("lemma_convexity_report")
for tag in ("formula", "reciprocal"):
    rows = [c for c in rep.checks if tag in c.check_id and "1/2" in c.check_id]
    bad = sum(c.note.endswith("violated") for c in rows)
    print(f"lp_1/2 convexity with the {tag} constant: {bad} of {len(rows)} violated")
