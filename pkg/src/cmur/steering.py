"""Steering witnesses built on the infinite-setting uncertainty bound.

A non-steerable two-qubit state obeys R_G(tau3^2, tau2^2, tau1^2) <= 1/2
for the correlation-matrix singular values tau; violation therefore
witnesses steerability (non-violation is inconclusive).  Finite two- and
three-setting criteria and a (xi, p) region scan reproduce the threshold
curves; ``hemisphere_functional`` checks the infinite-setting average
directly against its closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._kernels import carlson_rd, carlson_rf, hemisphere_mean
from .errors import DomainError, UnsupportedDimensionError
from .qcore import DensityMatrix, build_state, correlation_data

_VERDICT_TOL = 1e-9


@dataclass(frozen=True)
class SteeringVerdict:
    """Witness values and verdicts for one state."""

    rg_value: float
    infinite_violated: bool
    two_setting_violated: bool
    three_setting_violated: bool
    taus: tuple[float, float, float]

    def __post_init__(self):
        if self.rg_value < -1e-12:
            raise DomainError("rg_value must be nonnegative")

    def to_json_dict(self) -> dict:
        return {
            "rg_value": self.rg_value,
            "infinite_violated": self.infinite_violated,
            "two_setting_violated": self.two_setting_violated,
            "three_setting_violated": self.three_setting_violated,
            "taus": list(self.taus),
        }


@dataclass(frozen=True)
class HemisphereResult:
    """Sampled and analytic hemisphere averages of the leading bound component."""

    finite_sum_avg: float
    analytic_avg: float
    benchmark_avg: float


@dataclass(frozen=True)
class RegionRow:
    """One (xi, p) grid point of the steerability region scan."""

    xi: float
    p: float
    rg_value: float
    v_two: bool
    v_three: bool
    v_inf: bool


def carlson_rg(
    x: float,
    y: float,
    z: float,
    method: str = "duplication",
    *,
    n_theta: int = 64,
    n_phi: int = 128,
) -> float:
    """Symmetric elliptic integral R_G, the spherical quadratic-form average.

    R_G(x, y, z) = (1/4pi) Int sqrt(x sin^2 t cos^2 p + y sin^2 t sin^2 p
    + z cos^2 t) dOmega.  ``duplication`` runs Carlson's iteration to
    machine accuracy; ``quadrature`` is an independent product
    Gauss-Legendre rule used as an oracle.
    """
    if x < 0.0 or y < 0.0 or z < 0.0:
        raise DomainError("arguments must be nonnegative")
    if method == "duplication":
        a, b, c = sorted((float(x), float(y), float(z)))
        if c == 0.0:
            return 0.0
        if b == 0.0:
            return math.sqrt(c) / 2.0
        # 2 R_G = z R_F - (x-z)(y-z)/3 R_D + sqrt(xy/z), pivoting on the
        # largest argument so R_D stays in its convergence domain.
        return 0.5 * (
            c * carlson_rf(a, b, c)
            - (a - c) * (b - c) / 3.0 * carlson_rd(a, b, c)
            + math.sqrt(a * b / c)
        )
    if method != "quadrature":
        raise DomainError(f"unknown method {method!r}")
    # Small arguments push a branch point of sqrt(form) toward the real
    # domain and kill the spectral rate, so double the rule until two
    # successive levels agree.  theta enters through u = cos(theta), which
    # handles the surface measure exactly.
    prev = _rg_gauss_level(x, y, z, n_theta, n_phi)
    for level in range(1, 6):
        curr = _rg_gauss_level(x, y, z, n_theta << level, n_phi << level)
        if abs(curr - prev) <= 1e-10:
            return curr
        prev = curr
    return prev


@lru_cache(maxsize=32)
def _gauss_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


@lru_cache(maxsize=32)
def _rg_grid(n_u: int, n_phi: int):
    # Composite rule: u panels split at 0 and phi panels at multiples of
    # pi/2, so the integrand's non-smooth loci land on panel boundaries.
    base_u, base_wu = _gauss_nodes(max(n_u // 2, 4))
    uu = np.concatenate([0.5 * (base_u - 1.0), 0.5 * (base_u + 1.0)])
    wu = np.concatenate([0.5 * base_wu, 0.5 * base_wu])
    base_p, base_wp = _gauss_nodes(max(n_phi // 4, 4))
    quarter = 0.25 * math.pi * (base_p + 1.0)
    phi = np.concatenate([quarter + k * 0.5 * math.pi for k in range(4)])
    wp = np.tile(0.25 * math.pi * base_wp, 4)
    return uu, wu, phi, wp


def _rg_gauss_level(x: float, y: float, z: float, n_u: int, n_phi: int) -> float:
    uu, wu, phi, wp = _rg_grid(n_u, n_phi)
    s2 = (1.0 - uu * uu)[:, None]
    form = (
        x * s2 * np.cos(phi)[None, :] ** 2
        + y * s2 * np.sin(phi)[None, :] ** 2
        + z * (uu * uu)[:, None]
    )
    return float(wu @ np.sqrt(form) @ wp / (4.0 * math.pi))


def steering_witness(rho: DensityMatrix) -> SteeringVerdict:
    """Evaluate the infinite-, three-, and two-setting criteria on a state.

    Violation of any criterion witnesses that B can steer A; none of them
    is necessary for steerability, so false means inconclusive.
    """
    if (rho.dim_a, rho.dim_b) != (2, 2):
        raise UnsupportedDimensionError("steering witness is defined for two qubits")
    taus = correlation_data(rho).singular_values
    t1, t2, t3 = float(taus[0]), float(taus[1]), float(taus[2])
    rg = carlson_rg(t3 * t3, t2 * t2, t1 * t1)
    return SteeringVerdict(
        rg_value=rg,
        infinite_violated=rg > 0.5 + _VERDICT_TOL,
        two_setting_violated=t1 * t1 + t2 * t2 > 1.0 + _VERDICT_TOL,
        three_setting_violated=t1 * t1 + t2 * t2 + t3 * t3 > 1.0 + _VERDICT_TOL,
        taus=(t1, t2, t3),
    )


def finite_setting_criterion(xi: float, p: float, settings: str) -> bool:
    """Closed-form two- or three-setting steering test for the rho_xi family."""
    if not 0.0 <= xi <= math.pi / 4 + 1e-12:
        raise DomainError("xi must lie in [0, pi/4]")
    if not 0.0 <= p <= 1.0:
        raise DomainError("p must lie in [0, 1]")
    s2 = math.sin(2.0 * xi) ** 2
    if settings == "two":
        return p > (1.0 + s2) ** -0.5
    if settings == "three":
        return p > (1.0 + 2.0 * s2) ** -0.5
    raise DomainError(f"unknown settings {settings!r}")


def fibonacci_hemisphere(m: int) -> np.ndarray:
    """Deterministic quasi-uniform unit vectors with z > 0, one per row."""
    if m < 1:
        raise DomainError("m must be at least 1")
    i = np.arange(m)
    z = 1.0 - (i + 0.5) / m
    golden = (1.0 + math.sqrt(5.0)) / 2.0
    phi = 2.0 * math.pi * i / golden
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def uniform_hemisphere(m: int, seed: int) -> np.ndarray:
    """Seeded uniform unit vectors with z >= 0, one per row."""
    if m < 1:
        raise DomainError("m must be at least 1")
    rng = np.random.default_rng(seed)
    z = rng.random(m)
    phi = 2.0 * math.pi * rng.random(m)
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def hemisphere_functional(
    rho: DensityMatrix,
    m_points: int,
    seed: int = 0,
    sampler: str = "fibonacci",
) -> HemisphereResult:
    """Hemisphere average of the leading bound component s1(r).

    For measurement direction r the leading component is
    (1 + sqrt(r . diag(tau^2) r)) / 2 in the correlation principal frame;
    averaging over the upper hemisphere gives (1 + R_G(tau^2)) / 2.  The
    no-memory benchmark for the same average is exactly 3/4.
    """
    if m_points < 1:
        raise DomainError("m_points must be at least 1")
    if (rho.dim_a, rho.dim_b) != (2, 2):
        raise UnsupportedDimensionError("hemisphere functional is defined for two qubits")
    if sampler == "fibonacci":
        dirs = fibonacci_hemisphere(m_points)
    elif sampler == "uniform":
        dirs = uniform_hemisphere(m_points, seed)
    else:
        raise DomainError(f"unknown sampler {sampler!r}")
    taus = correlation_data(rho).singular_values
    tau_sq = np.ascontiguousarray(taus * taus)
    finite = float(hemisphere_mean(np.ascontiguousarray(dirs), tau_sq))
    analytic = 0.5 * (1.0 + carlson_rg(tau_sq[0], tau_sq[1], tau_sq[2]))
    return HemisphereResult(
        finite_sum_avg=finite,
        analytic_avg=analytic,
        benchmark_avg=0.75,
    )


def region_scan(xi_steps: int, p_steps: int) -> list[RegionRow]:
    """Witness verdicts over the (xi, p) grid of the rho_xi family.

    Rows are ordered xi-major; both axes are inclusive linspace grids.
    """
    if xi_steps < 2 or p_steps < 2:
        raise DomainError("grid steps must be at least 2")
    rows = []
    for xi in np.linspace(0.0, math.pi / 4, xi_steps):
        for p in np.linspace(0.0, 1.0, p_steps):
            verdict = steering_witness(build_state("rho_xi", xi=float(xi), p=float(p)))
            rows.append(
                RegionRow(
                    xi=float(xi),
                    p=float(p),
                    rg_value=verdict.rg_value,
                    v_two=verdict.two_setting_violated,
                    v_three=verdict.three_setting_violated,
                    v_inf=verdict.infinite_violated,
                )
            )
    return rows
