"""Majorization-based uncertainty bounds with quantum side information.

The package computes, for a bipartite state and a projective measurement,
the least upper bound on the conditional outcome distribution achievable
with an optimally chosen helper measurement, together with its entropy
consequences and the steering witnesses it induces.
"""

from ._backend import HAVE_NUMBA, USING_NUMBA
from .bounds import (
    ClosedFormResult,
    KthResult,
    MajorizedMarginal,
    SearchConfig,
    StrategyResult,
    ViolationReport,
    cmur_bound,
    conditional_bound,
    majorized_marginal,
    optimal_kth_measurement,
    qubit_closed_form,
    single_particle_bound,
    violation_report,
)
from .entropic import (
    EntropyReport,
    conditional_vn_entropy,
    entropy_report,
    max_overlap_c,
    shannon_entropy,
)
from .errors import (
    CmurError,
    ConfigError,
    DomainError,
    ShapeError,
    UnsupportedDimensionError,
)
from .majorization import (
    COMBINERS,
    LorenzCurve,
    UncertaintyVec,
    aggregate,
    combine,
    lattice_join,
    least_concave_majorant,
    lorenz_samples,
    majorizes,
)
from .qcore import (
    Assemblage,
    CorrelationData,
    DensityMatrix,
    JointDistribution,
    ProjectiveMeasurement,
    assemblage,
    bloch_direction,
    build_state,
    correlation_data,
    joint_distribution,
    partial_trace,
    sigma,
)
from .steering import (
    HemisphereResult,
    RegionRow,
    SteeringVerdict,
    carlson_rg,
    fibonacci_hemisphere,
    finite_setting_criterion,
    hemisphere_functional,
    region_scan,
    steering_witness,
    uniform_hemisphere,
)

__version__ = "0.1.0"

__all__ = [
    "HAVE_NUMBA",
    "USING_NUMBA",
    "COMBINERS",
    "Assemblage",
    "ClosedFormResult",
    "CmurError",
    "ConfigError",
    "CorrelationData",
    "DensityMatrix",
    "DomainError",
    "EntropyReport",
    "HemisphereResult",
    "JointDistribution",
    "KthResult",
    "LorenzCurve",
    "MajorizedMarginal",
    "ProjectiveMeasurement",
    "RegionRow",
    "SearchConfig",
    "ShapeError",
    "SteeringVerdict",
    "StrategyResult",
    "UncertaintyVec",
    "UnsupportedDimensionError",
    "ViolationReport",
    "aggregate",
    "assemblage",
    "bloch_direction",
    "build_state",
    "carlson_rg",
    "cmur_bound",
    "combine",
    "conditional_bound",
    "conditional_vn_entropy",
    "correlation_data",
    "entropy_report",
    "fibonacci_hemisphere",
    "finite_setting_criterion",
    "hemisphere_functional",
    "joint_distribution",
    "lattice_join",
    "least_concave_majorant",
    "lorenz_samples",
    "majorized_marginal",
    "majorizes",
    "max_overlap_c",
    "optimal_kth_measurement",
    "partial_trace",
    "qubit_closed_form",
    "region_scan",
    "shannon_entropy",
    "sigma",
    "single_particle_bound",
    "steering_witness",
    "uniform_hemisphere",
    "violation_report",
]
