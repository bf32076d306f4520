"""Memory-assisted uncertainty bounds for projective measurements.

Given a bipartite state and a measurement X on A, a helper measuring X' on
B can sort the joint outcomes so that the conditional distribution of X is
as concentrated as possible.  ``majorized_marginal`` quantifies one such
arrangement; ``conditional_bound`` computes the least upper bound s over
all choices of X' by maximizing, for each k, the sum of the k largest
column contributions and joining the resulting vectors on the majorization
lattice.  Closed forms for the two named qubit families are provided for
cross-checking the numeric search, together with the single-particle
comparison bound and a violation report against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize

from ._kernels import qubit_k1_search
from .errors import DomainError, ShapeError
from .majorization import (
    CMP_TOL,
    LorenzCurve,
    UncertaintyVec,
    combine,
    lattice_join,
    lorenz_samples,
    majorizes,
)
from .qcore import (
    DensityMatrix,
    JointDistribution,
    ProjectiveMeasurement,
    assemblage,
    joint_distribution,
)

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for the multi-start measurement search.

    ``starts`` local refinements are run per subproblem from directions
    drawn with ``numpy.random.default_rng(seed)``, so results are
    deterministic for a fixed config.
    """

    starts: int = 32
    max_iters: int = 200
    tol: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.starts < 1:
            raise DomainError("starts must be at least 1")
        if self.max_iters < 1:
            raise DomainError("max_iters must be at least 1")
        if not self.tol > 0.0:
            raise DomainError("tol must be positive")

    def to_json_dict(self) -> dict:
        return {
            "starts": self.starts,
            "max_iters": self.max_iters,
            "tol": self.tol,
            "seed": self.seed,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SearchConfig":
        unknown = sorted(set(data) - {"starts", "max_iters", "tol", "seed"})
        if unknown:
            raise DomainError(f"unknown search config keys: {', '.join(unknown)}")
        merged = {**cls().to_json_dict(), **data}
        return cls(
            starts=int(merged["starts"]),
            max_iters=int(merged["max_iters"]),
            tol=float(merged["tol"]),
            seed=int(merged["seed"]),
        )


@dataclass(frozen=True)
class MajorizedMarginal:
    """Conditional uncertainty vector of X given X', with its provenance."""

    vec: UncertaintyVec
    x_label: str
    xp_label: str

    def __post_init__(self):
        if abs(self.vec.weight - 1.0) > 1e-10:
            raise DomainError(f"majorized marginal weight {self.vec.weight!r} is not 1")


@dataclass(frozen=True)
class KthResult:
    """Best helper measurement for one prefix length k."""

    k: int
    measurement: ProjectiveMeasurement
    wp_k: float
    vec: UncertaintyVec
    converged: bool

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "measurement": self.measurement.to_json_dict(),
            "wp_k": self.wp_k,
            "vec": self.vec.to_json(),
            "converged": self.converged,
        }


@dataclass(frozen=True)
class StrategyResult:
    """Per-k optima and their lattice join, the bound s."""

    per_k: tuple[KthResult, ...]
    bound: UncertaintyVec

    def to_json_dict(self) -> dict:
        return {
            "bound": self.bound.to_json(),
            "per_k": [r.to_json_dict() for r in self.per_k],
        }


@dataclass(frozen=True)
class ClosedFormResult:
    """Closed-form bound with the optimal helper angles.

    ``optimal_angles is None`` means any helper measurement attains the
    bound ("arbitrary").
    """

    s_vec: UncertaintyVec
    optimal_angles: tuple[float, float] | None

    def to_json_dict(self) -> dict:
        angles = self.optimal_angles
        return {
            "s_vec": self.s_vec.to_json(),
            "optimal_angles": "arbitrary" if angles is None else list(angles),
        }


@dataclass(frozen=True)
class ViolationReport:
    """Comparison of a memory-assisted bound against the single-particle one."""

    violated: bool
    crossing_indices: tuple[int, ...]
    lorenz_pair: tuple[LorenzCurve, LorenzCurve]

    def to_json_dict(self) -> dict:
        return {
            "violated": self.violated,
            "crossing_indices": list(self.crossing_indices),
            "lorenz_pair": [c.to_json() for c in self.lorenz_pair],
        }


def majorized_marginal(p: JointDistribution) -> MajorizedMarginal:
    """Componentwise sum of the descending-sorted columns of ``p``.

    Each column is the conditional slice for one X' outcome; sorting before
    summing realizes the relabeling that concentrates X given X'.
    """
    cols = np.sort(p.entries, axis=0)[::-1, :]
    vec = UncertaintyVec(cols.sum(axis=1))
    return MajorizedMarginal(vec=vec, x_label=p.x_label, xp_label=p.xp_label)


def _sphere_starts(rng: np.random.Generator, n: int) -> np.ndarray:
    """Area-uniform (theta, phi) start points on the sphere."""
    theta = np.arccos(1.0 - 2.0 * rng.random(n))
    phi = _TWO_PI * rng.random(n)
    return np.column_stack([theta, phi])


def _qubit_k1(rho: DensityMatrix, x: ProjectiveMeasurement, search: SearchConfig):
    w, v = assemblage(rho, x).bloch_decomposition()
    rng = np.random.default_rng(search.seed)
    starts = _sphere_starts(rng, search.starts)
    val, theta, phi, a, b, conv = qubit_k1_search(
        np.ascontiguousarray(w),
        np.ascontiguousarray(v),
        starts,
        search.max_iters,
        search.tol,
    )
    if a > b:
        # Swapped assignment is the antipodal measurement with outcomes relabeled.
        theta = math.pi - theta
        phi = (phi + math.pi) % _TWO_PI
    meas = ProjectiveMeasurement.from_bloch_angles(theta, phi)
    return float(val), meas, bool(conv)


def _hermitian_from_params(params: np.ndarray, n: int) -> np.ndarray:
    h = np.zeros((n, n), dtype=complex)
    idx = 0
    for i in range(n):
        h[i, i] = params[idx]
        idx += 1
    for i in range(n):
        for j in range(i + 1, n):
            h[i, j] = params[idx] + 1j * params[idx + 1]
            h[j, i] = params[idx] - 1j * params[idx + 1]
            idx += 2
    return h


def _generic_k(rho: DensityMatrix, x: ProjectiveMeasurement, k: int, search: SearchConfig):
    """Search over parameterized helper bases for arbitrary B dimension.

    The k largest entries of each probability column are selected inside
    the objective, which is exactly the best index assignment for the
    candidate basis; no separate enumeration is needed.
    """
    members = assemblage(rho, x).members
    db = rho.dim_b
    n_params = db * db

    def value(params: np.ndarray) -> float:
        u = expm(1j * _hermitian_from_params(params, db))
        p = np.empty((x.dim, db))
        for j in range(db):
            col = u[:, j]
            for i in range(x.dim):
                p[i, j] = np.real(np.vdot(col, members[i] @ col))
        cols = np.sort(p, axis=0)[::-1, :]
        return float(cols[:k].sum())

    rng = np.random.default_rng(search.seed)
    best_val = -np.inf
    best_params = np.zeros(n_params)
    best_ok = False
    for _ in range(search.starts):
        x0 = rng.normal(0.0, 1.5, n_params)
        res = minimize(
            lambda q: -value(q),
            x0,
            method="Nelder-Mead",
            options={
                "maxiter": search.max_iters * n_params,
                "fatol": search.tol,
                "xatol": 1e-8,
            },
        )
        if -res.fun > best_val:
            best_val = -res.fun
            best_params = res.x
            best_ok = bool(res.success)
    u = expm(1j * _hermitian_from_params(best_params, db))
    meas = ProjectiveMeasurement.from_basis(u)
    return float(best_val), meas, best_ok


def optimal_kth_measurement(
    rho: DensityMatrix,
    x: ProjectiveMeasurement,
    k: int,
    search: SearchConfig = SearchConfig(),
) -> KthResult:
    """Helper measurement maximizing the k-th prefix of the majorized marginal.

    Maximizes, over projective bases X' on B, the sum over X' outcomes of
    the k largest joint probabilities in each column.  Deterministic for a
    fixed ``search``; non-convergence is reported on the result, not
    raised.
    """
    if not rho.is_bipartite:
        raise ShapeError("memory-assisted bounds require a bipartite state")
    if x.dim != rho.dim_a:
        raise ShapeError(f"measurement dim {x.dim} does not match dim_a {rho.dim_a}")
    n = x.dim
    if not 1 <= k <= n:
        raise DomainError(f"k must lie in 1..{n}, got {k}")
    if k == n:
        # Every helper basis collects the full weight; use the computational one.
        meas = ProjectiveMeasurement.from_basis(np.eye(rho.dim_b, dtype=complex))
        vec = majorized_marginal(joint_distribution(rho, x, meas)).vec
        return KthResult(k=k, measurement=meas, wp_k=1.0, vec=vec, converged=True)
    if rho.dim_a == 2 and rho.dim_b == 2:
        val, meas, conv = _qubit_k1(rho, x, search)
    else:
        val, meas, conv = _generic_k(rho, x, k, search)
    vec = majorized_marginal(joint_distribution(rho, x, meas)).vec
    return KthResult(k=k, measurement=meas, wp_k=val, vec=vec, converged=conv)


def conditional_bound(
    rho: DensityMatrix,
    x: ProjectiveMeasurement,
    search: SearchConfig = SearchConfig(),
) -> StrategyResult:
    """Least upper bound s on the majorized marginals over all helper bases.

    Runs the per-k search for k = 1..N and joins the optimal vectors on the
    majorization lattice.  Every majorized marginal of ``rho`` under ``x``
    precedes the result in the majorization order.
    """
    per_k = tuple(
        optimal_kth_measurement(rho, x, k, search) for k in range(1, x.dim + 1)
    )
    bound = lattice_join([r.vec for r in per_k])
    return StrategyResult(per_k=per_k, bound=bound)


def _check_angles(theta: float, xi: float, p: float | None, need_p: bool) -> None:
    if not 0.0 <= xi <= math.pi / 4 + 1e-12:
        raise DomainError("xi must lie in [0, pi/4]")
    if not 0.0 <= theta <= math.pi + 1e-12:
        raise DomainError("theta must lie in [0, pi]")
    if need_p:
        if p is None or not 0.0 <= p <= 1.0:
            raise DomainError("p must lie in [0, 1]")


def _helper_angles(theta: float, phi: float, xi: float) -> tuple[float, float] | None:
    """Optimal helper direction: tan(theta') = tan(theta) sin(2 xi), phi' = phi."""
    s2 = math.sin(2.0 * xi)
    if math.hypot(math.cos(theta), math.sin(theta) * s2) < 1e-12:
        return None
    if abs(math.sin(theta)) < 1e-12:
        # Degenerate polar measurement: helper along z, phi arbitrary.
        return (0.0, 0.0)
    return (math.atan2(math.sin(theta) * s2, math.cos(theta)), phi % _TWO_PI)


def qubit_closed_form(
    family: str,
    x_angles: tuple[float, float],
    *,
    xi: float,
    p: float | None = None,
    direction: str = "reduce_A_by_B",
) -> ClosedFormResult:
    """Analytic bound s and optimal helper angles for the named families.

    ``psi_xi``
        s1 = (1 + sqrt(cos^2 t + sin^2 t sin^2 2xi)) / 2 for X = sigma(t, phi)
        on either side, helper at tan t' = tan t sin 2xi, phi' = phi.
    ``rho_xi``, ``reduce_A_by_B``
        X on A; s1 is the larger of the unassisted branch
        (1 + cos 2xi |cos t|) / 2 (helper arbitrary) and the entangled
        branch (1 + p sqrt(cos^2 t + sin^2 t sin^2 2xi)) / 2.
    ``rho_xi``, ``reduce_B_by_A``
        X on B; the entangled branch alone, with the helper on A at
        tan t' = tan t sin 2xi.
    """
    theta, phi = float(x_angles[0]), float(x_angles[1])
    if direction not in ("reduce_A_by_B", "reduce_B_by_A"):
        raise DomainError(f"unknown direction {direction!r}")
    if family == "psi_xi":
        _check_angles(theta, xi, p, need_p=False)
        r = math.hypot(math.cos(theta), math.sin(theta) * math.sin(2.0 * xi))
        s_vec = UncertaintyVec.of([(1.0 + r) / 2.0, (1.0 - r) / 2.0])
        return ClosedFormResult(s_vec=s_vec, optimal_angles=_helper_angles(theta, phi, xi))
    if family != "rho_xi":
        raise DomainError(f"unknown family {family!r}")
    _check_angles(theta, xi, p, need_p=True)
    assisted = (1.0 + p * math.hypot(math.cos(theta), math.sin(theta) * math.sin(2.0 * xi))) / 2.0
    if direction == "reduce_A_by_B":
        plain = (1.0 + math.cos(2.0 * xi) * abs(math.cos(theta))) / 2.0
        if plain > assisted:
            s1 = plain
            angles = None
        else:
            s1 = assisted
            angles = _helper_angles(theta, phi, xi)
    else:
        s1 = assisted
        angles = _helper_angles(theta, phi, xi)
    s_vec = UncertaintyVec.of([s1, 1.0 - s1])
    return ClosedFormResult(s_vec=s_vec, optimal_angles=angles)


def cmur_bound(bounds: list[UncertaintyVec], op: str) -> UncertaintyVec:
    """Fold ``combine`` over per-measurement bounds.

    The result bounds the correspondingly combined majorized marginals for
    any number of measurements (weak majorization for ``hadamard``).
    """
    if not bounds:
        raise DomainError("cmur_bound needs at least one vector")
    out = bounds[0]
    for b in bounds[1:]:
        out = combine(out, b, op)
    return out


def _plane_pair_angle(x: ProjectiveMeasurement, y: ProjectiveMeasurement) -> float:
    if x.bloch_angles is None or y.bloch_angles is None:
        raise DomainError(
            "closed-form single-particle bound needs Bloch-angle measurements"
        )
    tx, px = x.bloch_angles
    ty, py = y.bloch_angles
    if abs(tx - ty) > 1e-12 or abs(px) > 1e-12 or abs((py - math.pi)) > 1e-12:
        raise DomainError(
            "closed form requires the pair sigma(theta, 0), sigma(theta, pi)"
        )
    if tx > math.pi / 2 + 1e-12:
        # Beyond pi/2 the printed bound leaves the probability simplex.
        raise DomainError("closed form requires theta in [0, pi/2]")
    return tx


def single_particle_bound(
    x: ProjectiveMeasurement,
    y: ProjectiveMeasurement,
    method: str = "qubit_closed_form",
    *,
    samples: int = 4096,
    seed: int = 0,
) -> UncertaintyVec:
    """No-memory bound on sorted p(x) (+) sorted p(y) over single-qubit states.

    ``qubit_closed_form`` evaluates (1, cos t, 2 sin^2(t/2), 0) for the
    plane pair sigma(t, 0), sigma(t, pi) with t in [0, pi/2].  ``numeric``
    joins a seeded sample of pure states; it approaches the optimal bound
    from below (an inner approximation), so it may be slightly loose.
    """
    if method == "qubit_closed_form":
        t = _plane_pair_angle(x, y)
        return UncertaintyVec.of(
            [1.0, math.cos(t), 2.0 * math.sin(t / 2.0) ** 2, 0.0]
        )
    if method != "numeric":
        raise DomainError(f"unknown method {method!r}")
    if x.dim != y.dim:
        raise ShapeError("measurement dimensions must match")
    rng = np.random.default_rng(seed)
    dim = x.dim
    vecs = []
    for _ in range(samples):
        psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        psi /= np.linalg.norm(psi)
        px = np.abs(x.vectors.conj().T @ psi) ** 2
        py = np.abs(y.vectors.conj().T @ psi) ** 2
        vecs.append(UncertaintyVec(np.concatenate([px, py])))
    return lattice_join(vecs)


def violation_report(s_mem: UncertaintyVec, s_single: UncertaintyVec) -> ViolationReport:
    """Where the memory-assisted bound escapes the single-particle one.

    ``violated`` is true when ``s_mem`` is not majorized by ``s_single``;
    ``crossing_indices`` lists each prefix length whose cumulative sum
    exceeds the single-particle curve by more than 1e-9.
    """
    if abs(s_mem.weight - s_single.weight) > CMP_TOL:
        raise DomainError(
            f"weight mismatch: {s_mem.weight!r} vs {s_single.weight!r}"
        )
    n = max(len(s_mem), len(s_single))
    pm = s_mem.prefix_sums(n)[1:]
    ps = s_single.prefix_sums(n)[1:]
    crossings = tuple(int(k + 1) for k in range(n) if pm[k] > ps[k] + CMP_TOL)
    pair = (
        lorenz_samples(UncertaintyVec(s_mem.padded(n))),
        lorenz_samples(UncertaintyVec(s_single.padded(n))),
    )
    return ViolationReport(
        violated=not majorizes(s_mem, s_single),
        crossing_indices=crossings,
        lorenz_pair=pair,
    )
