"""
Constructed norms at the smallest strict scale
==============================================

The two constructed spaces add to the sup norm a block seminorm D_k and a
polytope seminorm Q_k.  At one scale (n, m) the explicit witness vectors
already push the democracy-type and squeeze-type ratios to n/(2m^2) and
n/m^2, and the proof's pointwise bounds can be sampled directly.
"""
from greedy_lebesgue import CoeffVector
from greedy_lebesgue import spaces as sp
from greedy_lebesgue.verify import SuiteSpec, run_suite

for kind in ("prop5_space", "prop6_space"):
    n, m = sp.minimal_strict_scale(kind)
    print(f"{kind}: minimal strict scale n={n}, m={m}")

# a small space makes the seminorms easy to look at
s = sp.prop5_space([(4, 6)], strict_growth=False, exact=True)
v = CoeffVector.from_dict({1: 1, 2: 1, 5: 2, 9: 3, 10: 1})
print("norm", sp.norm(s, v), " D_1", sp.eval_D(s, 1, v), " Q_1", sp.eval_Q(s, 1, v))
cert = sp.q_certificate(s, 1, v)
print("optimal delta", [str(d) for d in cert.delta], "dual multiplier", cert.t)

# full-scale witness checks, with fewer samples than the acceptance run
for suite in ("prop5_witness", "prop6_witness"):
    rep = run_suite(SuiteSpec.from_dict({"suite": suite, "samples": 25}))
    wit = [c for c in rep.checks if "witness" in c.check_id]
    for c in wit:
        print(f"{suite}: {c.check_id} {c.lhs:.4f} >= {c.rhs:.4f} [{c.status}]")
    print(f"{suite}: {rep.summary()}")
