"""Uncertainty-vector algebra on the majorization lattice.

An :class:`UncertaintyVec` is a multiset of nonnegative reals kept in
canonical descending order.  ``majorizes(a, b)`` decides ``a < b`` in the
majorization order (``b`` is the upper bound), ``combine`` implements the
order-preserving binary operations, and ``lattice_join`` computes the least
upper bound via prefix maxima followed by the least concave majorant.

All comparisons use a single tolerance of 1e-9 on prefix sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

CMP_TOL = 1e-9
_NEG_TOL = 1e-12

COMBINERS = ("direct_sum", "direct_product", "vector_sum", "hadamard")


@dataclass(frozen=True)
class UncertaintyVec:
    """Nonnegative components in descending order; weight is their sum."""

    components: np.ndarray

    def __post_init__(self):
        comps = np.asarray(self.components, dtype=float).ravel()
        if comps.size == 0:
            raise DomainError("uncertainty vector must have at least one component")
        if comps.min() < -_NEG_TOL:
            raise DomainError(f"negative component {comps.min():.3e}")
        comps = np.clip(comps, 0.0, None)
        comps = np.sort(comps, kind="stable")[::-1]
        comps = np.ascontiguousarray(comps)
        comps.setflags(write=False)
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, values: Iterable[float]) -> "UncertaintyVec":
        return cls(np.asarray(list(values), dtype=float))

    @property
    def weight(self) -> float:
        return float(self.components.sum())

    def __len__(self) -> int:
        return self.components.size

    def padded(self, n: int) -> np.ndarray:
        """Components zero-padded on the right to length ``n``."""
        if n < len(self):
            raise DomainError("cannot pad to a shorter length")
        out = np.zeros(n)
        out[: len(self)] = self.components
        return out

    def prefix_sums(self, n: int | None = None) -> np.ndarray:
        """Cumulative sums ``(0, c1, c1+c2, ...)`` of length n+1."""
        comps = self.padded(n) if n is not None else self.components
        return np.concatenate(([0.0], np.cumsum(comps)))

    def to_json(self) -> list[float]:
        return [float(c) for c in self.components]


@dataclass(frozen=True)
class LorenzCurve:
    """Prefix-sum polyline of a canonical vector, from (0, 0) to (n, weight)."""

    points: tuple[tuple[int, float], ...]

    def __post_init__(self):
        cums = np.array([c for _, c in self.points])
        if np.any(np.diff(cums) < -_NEG_TOL):
            raise DomainError("Lorenz curve must be nondecreasing")
        incs = np.diff(cums)
        if np.any(np.diff(incs) > 1e-9):
            raise DomainError("Lorenz curve increments must be nonincreasing")

    def cumulative(self) -> np.ndarray:
        return np.array([c for _, c in self.points])

    def to_json(self) -> list[list[float]]:
        return [[int(k), float(c)] for k, c in self.points]

    def to_csv(self) -> str:
        lines = ["k,cumulative"]
        lines += [f"{k},{c:.12g}" for k, c in self.points]
        return "\n".join(lines) + "\n"


def majorizes(a: UncertaintyVec, b: UncertaintyVec, mode: str = "strict_sum") -> bool:
    """Whether ``a < b`` holds (``b`` majorizes ``a``).

    ``strict_sum`` additionally requires equal weights within 1e-9; ``weak``
    checks the prefix-sum inequalities only.  Shorter vectors are
    zero-padded before comparison.
    """
    if mode not in ("strict_sum", "weak"):
        raise DomainError(f"unknown mode {mode!r}")
    n = max(len(a), len(b))
    pa = np.cumsum(a.padded(n))
    pb = np.cumsum(b.padded(n))
    if mode == "strict_sum" and abs(a.weight - b.weight) > CMP_TOL:
        return False
    return bool(np.all(pa <= pb + CMP_TOL))


def combine(a: UncertaintyVec, b: UncertaintyVec, op: str) -> UncertaintyVec:
    """Apply one of the order-preserving binary operations.

    direct_sum      concatenate and re-sort
    direct_product  all pairwise products, re-sorted
    vector_sum      componentwise sum of the descending forms
    hadamard        componentwise product of the descending forms
    """
    if op == "direct_sum":
        return UncertaintyVec(np.concatenate([a.components, b.components]))
    if op == "direct_product":
        return UncertaintyVec(np.outer(a.components, b.components).ravel())
    n = max(len(a), len(b))
    if op == "vector_sum":
        return UncertaintyVec(a.padded(n) + b.padded(n))
    if op == "hadamard":
        return UncertaintyVec(a.padded(n) * b.padded(n))
    raise DomainError(f"unknown combiner {op!r}")


def least_concave_majorant(values: np.ndarray) -> np.ndarray:
    """Upper concave envelope of ``(i, values[i])`` sampled at integers.

    Monotone-chain upper hull over the integer-indexed points; exact in
    O(n).  ``values`` is any sequence with ``values[0] == 0``.
    """
    n = len(values) - 1
    hull_x = [0]
    hull_y = [float(values[0])]
    for i in range(1, n + 1):
        xi, yi = float(i), float(values[i])
        while len(hull_x) >= 2:
            x1, y1 = hull_x[-2], hull_y[-2]
            x2, y2 = hull_x[-1], hull_y[-1]
            # Pop while the middle vertex lies on or below chord (x1,y1)-(xi,yi).
            if (x2 - x1) * (yi - y1) - (y2 - y1) * (xi - x1) >= 0.0:
                hull_x.pop()
                hull_y.pop()
            else:
                break
        hull_x.append(i)
        hull_y.append(yi)
    return np.interp(np.arange(n + 1), hull_x, hull_y)


def lattice_join(vs: Sequence[UncertaintyVec]) -> UncertaintyVec:
    """Least upper bound of ``vs`` in the majorization order.

    Pointwise maximum of the prefix-sum sequences, replaced by its least
    concave majorant, then first differences.  All inputs must share one
    weight within 1e-9.
    """
    vs = list(vs)
    if not vs:
        raise DomainError("join of an empty collection is undefined")
    w = vs[0].weight
    for v in vs[1:]:
        if abs(v.weight - w) > CMP_TOL:
            raise DomainError(f"weight mismatch in join: {v.weight!r} vs {w!r}")
    n = max(len(v) for v in vs)
    prefix_max = np.max([v.prefix_sums(n) for v in vs], axis=0)
    envelope = least_concave_majorant(prefix_max)
    return UncertaintyVec(np.clip(np.diff(envelope), 0.0, None))


def aggregate(s: UncertaintyVec, n_sections: int, block: int) -> UncertaintyVec:
    """Block sums of a descending vector: eps_i = sum of block i of length ``block``."""
    if n_sections < 1 or block < 1:
        raise DomainError("n_sections and block must be positive")
    if len(s) != n_sections * block:
        raise DomainError(
            f"length {len(s)} does not equal n_sections*block = {n_sections * block}"
        )
    sums = s.components.reshape(n_sections, block).sum(axis=1)
    return UncertaintyVec(sums)


def lorenz_samples(v: UncertaintyVec) -> LorenzCurve:
    """Lorenz curve (k, sum of the k largest components) for k = 0..n."""
    cums = v.prefix_sums()
    return LorenzCurve(tuple((k, float(c)) for k, c in enumerate(cums)))
