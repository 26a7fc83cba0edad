"""Maximal-rank certificates for general unions of space curves.

Thin wrapper over the compiled extension: numerical-set combinatorics,
expected Hilbert data, the exceptional table, and seeded Monte Carlo
verification over large prime fields.
"""

import json as _json

from ._maxrank import (
    NumericalSet,
    binom,
    critical_value,
    enumerate_admissible,
    exceptional_lookup,
    expected_hilbert,
    parse,
    rq,
    verify,
    wk,
)

__all__ = [
    "NumericalSet",
    "binom",
    "critical_value",
    "enumerate_admissible",
    "exceptional_lookup",
    "expected_hilbert",
    "parse",
    "rq",
    "verify",
    "verify_report",
    "wk",
]

__version__ = "0.1.0"


def verify_report(eps, t, **kwargs):
    """Like verify() but returns the report as a dict instead of a JSON string."""
    return _json.loads(verify(eps, t, **kwargs))
