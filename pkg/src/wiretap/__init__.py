"""Exact secret-key bounds and linear codes for two-layer wiretap networks."""

from .network import (
    NONE_SECURE,
    BoundReport,
    NetworkSpec,
    WiretapPattern,
    WiretapProblem,
    bound_report,
    cutset_bound,
    routing_bound,
    shannon_bound_of,
)

__all__ = [
    "NONE_SECURE",
    "BoundReport",
    "NetworkSpec",
    "WiretapPattern",
    "WiretapProblem",
    "bound_report",
    "cutset_bound",
    "routing_bound",
    "shannon_bound_of",
]
