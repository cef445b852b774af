"""Sums of k-th powers in upper-triangular matrix algebras over finite fields."""

import json

from ._core import (
    Field,
    Matrix,
    WaringError,
    inverse,
    is_indecomposable,
    kth_root_backsubstitute,
    kth_root_distinct_diag,
    kth_root_sparse,
    min_waring_number,
    parse_presentation,
    verify_decomposition,
)
from . import _core

__all__ = [
    "Field",
    "Matrix",
    "WaringError",
    "bn_conjugate",
    "classify_solutions",
    "decompose",
    "decompose_structured",
    "diagonalize_distinct",
    "error_kind",
    "inverse",
    "is_indecomposable",
    "kth_root_backsubstitute",
    "kth_root_distinct_diag",
    "kth_root_sparse",
    "lang_weil_check",
    "min_waring_number",
    "negative_checks",
    "parse_presentation",
    "verify_decomposition",
]


def error_kind(exc):
    """Name of the error kind carried by a WaringError, e.g. "NotPrime"."""
    return exc.args[1] if len(exc.args) > 1 else None


def classify_solutions(field, lam, k):
    return json.loads(_core._classify(field, lam, k))


def decompose(c, k, parts=2):
    """A^k + B^k (parts=2) or A^k + B^k + D^k (parts=3) as a JSON-shaped dict.

    Class shortages come back under "failure" rather than as an exception.
    """
    if parts not in (2, 3):
        raise ValueError("parts must be 2 or 3")
    return json.loads(_core._decompose(c, k, parts))


def decompose_structured(c, k):
    return json.loads(_core._decompose_structured(c, k))


def diagonalize_distinct(a):
    return json.loads(_core._diagonalize(a))


def bn_conjugate(a, b):
    return json.loads(_core._bn_conjugate(a, b))


def lang_weil_check(field, k, alpha):
    return json.loads(_core._lang_weil(field, k, list(alpha)))


def negative_checks(field, k):
    return json.loads(_core._negative_checks(field, k))
