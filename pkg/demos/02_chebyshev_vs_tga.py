"""
Chebyshev greedy versus plain thresholding
==========================================

The Chebyshev step keeps the greedy support but re-fits its coefficients
by exact min-max linear programming, so its residual never exceeds the TGA
residual.  The gap is largest where the basis is far from unconditional.
"""
import random
from fractions import Fraction

import numpy as np

from greedy_lebesgue import CoeffVector, c0_summing, c0_sup, lp_quasi, norm
from greedy_lebesgue.chebyshev import ctga
from greedy_lebesgue.greedy import tga_residual

rng = random.Random(7)
for space in (c0_sup(exact=True), c0_summing(exact=True), lp_quasi(1, exact=True)):
    gaps = []
    for _ in range(200):
        f = CoeffVector.from_dense([Fraction(rng.randint(-5, 5), rng.choice((1, 2)))
                                    for _ in range(rng.randint(2, 7))])
        m = rng.randint(1, 3)
        tga = norm(space, tga_residual(space, f, m))
        cheb = ctga(space, f, m).residual
        assert cheb <= tga
        gaps.append(float(tga - cheb))
    gaps = np.array(gaps)
    print(f"{space.label():12s} mean gap {gaps.mean():.3f}  max gap {gaps.max():.3f}  "
          f"strict improvements {(gaps > 0).mean():.0%}")

# one worked instance: the optimal coefficients and the LP method tag
fit = ctga(c0_summing(exact=True), CoeffVector.from_dense([3, -1, 2, -2]), 2)
print("support", fit.support, "coeffs", {n: str(c) for n, c in fit.coeffs.items()},
      "residual", fit.residual, fit.method)
