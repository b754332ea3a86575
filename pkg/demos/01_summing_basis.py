"""
The summing basis of c0
=======================

With x_n = e_1 + ... + e_n the norm of sum a_n x_n is the largest absolute
tail sum.  Alternating signs cancel, flat blocks add up, and that gap is
what makes the basis far from greedy.
"""
from fractions import Fraction

from greedy_lebesgue import c0_summing, indicator, norm, CoeffVector
from greedy_lebesgue.params import WindowedEngine

S = c0_summing(exact=True)

# alternating signs: every tail sum is 0 or +-1
for m in (1, 5, 25):
    alt = CoeffVector.from_dense([(-1) ** n for n in range(1, 2 * m + 1)])
    print(f"m={m:2d}  |alt|={norm(S, alt)}  |1_(1..2m)|={norm(S, indicator(range(1, 2 * m + 1)))}"
          f"  |1_even|={norm(S, indicator(range(2, 2 * m + 1, 2)))}")

# windowed-exact parameters on {0,+-1,+-2}^5: exact suprema over a finite family
eng = WindowedEngine(S, 5, (0, 1, -1, 2, -2), m_max=3)
for kind in ("g", "k_uncond", "mu_t", "lambda"):
    row = eng.profile(kind)
    print(f"{kind:9s}", "  ".join(f"m={m}: {Fraction(row[m].value)}" for m in (1, 2, 3)))

# the best witness is a concrete, re-checkable instance
print("mu_t witness at m=3:", eng.profile("mu_t")[3].witness.to_dict())
