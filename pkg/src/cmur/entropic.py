"""Entropy consequences of the measurement bounds.

All entropies are in nats.  ``entropy_report`` packages the three curves
plotted against each other in practice: the bare entropy sum H(X) + H(Y)
on the reduced state, the entropy of the combined bound s (a floor on the
memory-assisted entropy sum), and the overlap-based baseline
log(1/c) + S(A|B).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeError
from .majorization import UncertaintyVec, combine
from .qcore import DensityMatrix, ProjectiveMeasurement, partial_trace

_EIG_FLOOR = 1e-14


def _entropy_of(values: np.ndarray) -> float:
    vals = values[values > _EIG_FLOOR]
    return float(-(vals * np.log(vals)).sum())


@dataclass(frozen=True)
class EntropyReport:
    """Entropy floors and baseline for one state and measurement pair."""

    h_sum: float
    cmur_lb: float
    berta_lb: float
    c: float
    s_ab: float

    def __post_init__(self):
        if self.h_sum < -1e-12:
            raise DomainError("h_sum must be nonnegative")
        if self.cmur_lb < -1e-12:
            raise DomainError("cmur_lb must be nonnegative")
        if not 0.0 < self.c <= 1.0 + 1e-12:
            raise DomainError(f"overlap c = {self.c!r} outside (0, 1]")

    def to_json_dict(self) -> dict:
        return {
            "h_sum": self.h_sum,
            "cmur_lb": self.cmur_lb,
            "berta_lb": self.berta_lb,
            "c": self.c,
            "s_ab": self.s_ab,
        }


def shannon_entropy(v: UncertaintyVec) -> float:
    """Shannon entropy -sum v_i ln v_i of a weight-1 vector, in nats."""
    if abs(v.weight - 1.0) > 1e-9:
        raise DomainError(f"entropy needs weight 1, got {v.weight!r}")
    return _entropy_of(v.components)


def conditional_vn_entropy(rho: DensityMatrix) -> float:
    """Conditional von Neumann entropy S(AB) - S(B), in nats.

    Negative values are meaningful and indicate entanglement.
    """
    if not rho.is_bipartite:
        raise ShapeError("conditional entropy requires a bipartite state")
    s_ab = _entropy_of(rho.eigenvalues())
    s_b = _entropy_of(partial_trace(rho, "B").eigenvalues())
    return s_ab - s_b


def max_overlap_c(x: ProjectiveMeasurement, y: ProjectiveMeasurement) -> float:
    """Largest squared overlap between basis vectors of the two measurements."""
    if x.dim != y.dim:
        raise ShapeError(f"dimension mismatch: {x.dim} vs {y.dim}")
    overlaps = np.abs(x.vectors.conj().T @ y.vectors) ** 2
    return float(overlaps.max())


def _measurement_probs(rho_entries: np.ndarray, meas: ProjectiveMeasurement) -> np.ndarray:
    return np.einsum(
        "ai,ab,bi->i", meas.vectors.conj(), rho_entries, meas.vectors
    ).real


def entropy_report(
    rho: DensityMatrix,
    x: ProjectiveMeasurement,
    y: ProjectiveMeasurement,
    sx: UncertaintyVec,
    sy: UncertaintyVec,
) -> EntropyReport:
    """Entropy floors for measuring X and Y on A with helper system B.

    ``sx`` and ``sy`` are the conditional bounds for the two measurements;
    their product-combination entropy is additive, so the floor equals
    H(sx) + H(sy).  The baseline combines the basis overlap c with the
    conditional von Neumann entropy.
    """
    if not rho.is_bipartite:
        raise ShapeError("entropy report requires a bipartite state")
    rho_a = partial_trace(rho, "A").entries
    h_sum = _entropy_of(_measurement_probs(rho_a, x)) + _entropy_of(
        _measurement_probs(rho_a, y)
    )
    cmur_lb = shannon_entropy(combine(sx, sy, "direct_product"))
    c = max_overlap_c(x, y)
    s_ab = conditional_vn_entropy(rho)
    berta_lb = math.log(1.0 / c) + s_ab
    return EntropyReport(h_sum=h_sum, cmur_lb=cmur_lb, berta_lb=berta_lb, c=c, s_ab=s_ab)
