"""Frozen Chebyshev test corpus: (space, coefficients, A) with |A| <= 2."""
import random

SPACES = ("c0_sup", "c0_summing", "lp_quasi:1", "prop5_space:2x6:loose",
          "prop6_space:2x6:loose")


def _build():
    rng = random.Random(20240611)
    out = [
        ("c0_sup", [4, 3, 1], (1,)),
        ("c0_sup", [4, 3, 1], (1, 3)),
        ("lp_quasi:1", [4, 3, 1], (1,)),
        ("c0_summing", [1, 1, 1, 1], (2, 4)),
        ("c0_summing", [1, -1, 1, -1], (1, 2)),
    ]
    for space in SPACES:
        per = 12 if "prop" in space else 24
        for _ in range(per):
            W = rng.randint(1, 6 if "prop" in space else 7)
            f = [rng.choice([0, 1, -1, 2, -2, 3, 0.5, -1.5]) for _ in range(W)]
            size = rng.randint(0, 2)
            A = tuple(sorted(rng.sample(range(1, W + 2), min(size, W + 1))))
            out.append((space, f, A))
    return tuple(out)


CHEBYSHEV_CORPUS = _build()
