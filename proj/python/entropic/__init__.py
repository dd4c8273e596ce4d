"""Entropic uncertainty diagrams, Maassen-Uffink equality and frontiers."""

from ._core import (
    EntropicError,
    ObservablePair,
    builtin,
    check_equality,
    d2_exact_curve,
    entropy_pair,
    equality_supports,
    fourier_cyclic,
    optimized_frontier,
    overlap,
    probe_rrs,
    sample_diagram,
    unitary,
)

__all__ = [
    "EntropicError",
    "ObservablePair",
    "builtin",
    "check_equality",
    "d2_exact_curve",
    "entropy_pair",
    "equality_supports",
    "fourier_cyclic",
    "optimized_frontier",
    "overlap",
    "probe_rrs",
    "sample_diagram",
    "unitary",
]
