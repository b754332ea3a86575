"""Lebesgue-type parameters of greedy algorithms in quasi-Banach sequence spaces."""
from .coeffspace import CoeffVector, indicator, initial_projection, parse_vector, project, support
from .spaces import (
    SpaceSpec,
    c0_sup,
    c0_summing,
    eval_D,
    eval_Q,
    lp_quasi,
    norm,
    prop5_space,
    prop6_space,
)

__all__ = [
    "CoeffVector",
    "SpaceSpec",
    "c0_sup",
    "c0_summing",
    "eval_D",
    "eval_Q",
    "indicator",
    "initial_projection",
    "lp_quasi",
    "norm",
    "parse_vector",
    "project",
    "prop5_space",
    "prop6_space",
    "support",
]
