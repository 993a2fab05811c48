"""Distances between probability vectors and what they certify."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import LengthMismatchError


@dataclass(frozen=True)
class ErrorReport:
    """Distances from an estimate to a reference vector.

    max_rel is None when the reference has a zero entry, since relative
    error is undefined there.
    """

    tv: float
    l1: float
    l2: float
    max_rel: Optional[float]


def error_report(estimate, reference):
    estimate = np.asarray(estimate, dtype=np.float64)
    reference = np.asarray(reference, dtype=np.float64)
    if estimate.shape != reference.shape:
        raise LengthMismatchError(
            f"shape mismatch: {estimate.shape} vs {reference.shape}"
        )
    diff = np.abs(estimate - reference)
    l1 = float(np.sum(diff))
    l2 = float(np.sqrt(np.sum(diff * diff)))
    if np.any(reference == 0.0):
        max_rel = None
    else:
        max_rel = float(np.max(diff / reference))
    return ErrorReport(tv=0.5 * l1, l1=l1, l2=l2, max_rel=max_rel)


def weak_convergence_bound(report):
    """Bound on |E_estimate f - E_reference f| over test functions with sup norm 1."""
    return 2.0 * report.tv
