"""Bipartite states, projective measurements, and Born-rule statistics.

Everything in this module is plain dense linear algebra on small matrices.
Values are immutable after construction and may be shared freely.

Conventions
-----------
* Subsystem A is the left tensor factor; basis index ``(i_a, i_b)`` flattens
  to ``i_a * dim_b + i_b`` (numpy ``kron`` ordering).
* Measurement outcome ``i`` corresponds to basis vector ``i``; for qubits,
  outcome 1 is the +1 eigenvector of ``sigma(theta, phi)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ShapeError, UnsupportedDimensionError

HERM_TOL = 1e-12
TRACE_TOL = 1e-12
EIG_TOL = 1e-10
ORTHO_TOL = 1e-12
PROB_NEG_TOL = 1e-12
DIST_SUM_TOL = 1e-10

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)
IDENTITY_2 = np.eye(2, dtype=complex)


def sigma(theta: float, phi: float) -> np.ndarray:
    """Spin observable along the Bloch direction (theta, phi)."""
    return (
        np.cos(theta) * SIGMA_Z
        + np.sin(theta) * np.cos(phi) * SIGMA_X
        + np.sin(theta) * np.sin(phi) * SIGMA_Y
    )


def bloch_direction(theta: float, phi: float) -> np.ndarray:
    """Unit vector (sin t cos p, sin t sin p, cos t)."""
    st = np.sin(theta)
    return np.array([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace operator.

    Parameters
    ----------
    dim_a, dim_b : int
        Subsystem dimensions; ``dim_b == 1`` marks a single system.
    entries : ndarray
        Complex matrix of size ``(dim_a * dim_b, dim_a * dim_b)``.

    Eigenvalues in ``[-1e-10, 0)`` are tolerated as floating-point noise;
    anything more negative is rejected.
    """

    dim_a: int
    dim_b: int
    entries: np.ndarray

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise DomainError("subsystem dimensions must be positive")
        dim = self.dim_a * self.dim_b
        mat = np.asarray(self.entries, dtype=complex)
        if mat.shape != (dim, dim):
            raise ShapeError(
                f"expected a {dim}x{dim} matrix for dims ({self.dim_a}, {self.dim_b}), "
                f"got shape {mat.shape}"
            )
        if not np.allclose(mat, mat.conj().T, atol=HERM_TOL, rtol=0.0):
            raise DomainError("density matrix is not Hermitian within tolerance")
        tr = np.trace(mat).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise DomainError(f"trace must be 1, got {tr!r}")
        evals = np.linalg.eigvalsh(mat)
        if evals.min() < -EIG_TOL:
            raise DomainError(f"negative eigenvalue {evals.min():.3e} below tolerance")
        object.__setattr__(self, "entries", _frozen(mat))

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    @property
    def is_bipartite(self) -> bool:
        return self.dim_a > 1 and self.dim_b > 1

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues clamped into [0, 1], ascending."""
        return np.clip(np.linalg.eigvalsh(self.entries), 0.0, None)

    def to_json_dict(self) -> dict:
        return {
            "dim_a": self.dim_a,
            "dim_b": self.dim_b,
            "entries": [[[z.real, z.imag] for z in row] for row in self.entries],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "DensityMatrix":
        entries = np.array(
            [[complex(re, im) for re, im in row] for row in data["entries"]],
            dtype=complex,
        )
        return cls(int(data["dim_a"]), int(data["dim_b"]), entries)


@dataclass(frozen=True)
class ProjectiveMeasurement:
    """Orthonormal rank-1 measurement basis.

    ``vectors[:, j]`` is the state associated with outcome ``j``.  For
    qubits built from Bloch angles, column 0 is the +1 eigenvector of
    ``sigma(theta, phi)`` and column 1 the -1 eigenvector.
    """

    dim: int
    vectors: np.ndarray
    bloch_angles: tuple[float, float] | None = None

    def __post_init__(self):
        mat = np.asarray(self.vectors, dtype=complex)
        if mat.shape != (self.dim, self.dim):
            raise ShapeError(f"expected {self.dim} basis vectors of length {self.dim}")
        gram = mat.conj().T @ mat
        if not np.allclose(gram, np.eye(self.dim), atol=10 * ORTHO_TOL, rtol=0.0):
            raise DomainError("basis vectors are not orthonormal within tolerance")
        if self.bloch_angles is not None:
            if self.dim != 2:
                raise DomainError("bloch_angles only apply to qubit measurements")
            theta, phi = self.bloch_angles
            if not (0.0 <= theta <= np.pi + 1e-12):
                raise DomainError("theta must lie in [0, pi]")
            expected = _bloch_basis(theta, phi)
            # Columns may differ by a global phase only.
            for j in range(2):
                overlap = abs(np.vdot(expected[:, j], mat[:, j]))
                if abs(overlap - 1.0) > 1e-9:
                    raise DomainError("basis does not match sigma(theta, phi) eigenvectors")
            object.__setattr__(self, "bloch_angles", (float(theta), float(phi) % (2 * np.pi)))
        object.__setattr__(self, "vectors", _frozen(mat))

    @classmethod
    def from_basis(cls, vectors: np.ndarray) -> "ProjectiveMeasurement":
        vectors = np.asarray(vectors, dtype=complex)
        return cls(vectors.shape[0], vectors)

    @classmethod
    def from_bloch_angles(cls, theta: float, phi: float) -> "ProjectiveMeasurement":
        return cls(2, _bloch_basis(theta, phi), bloch_angles=(theta, phi))

    def vector(self, j: int) -> np.ndarray:
        return self.vectors[:, j]

    def projector(self, j: int) -> np.ndarray:
        v = self.vectors[:, j]
        return np.outer(v, v.conj())

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "basis": [
                [[z.real, z.imag] for z in self.vectors[:, j]] for j in range(self.dim)
            ],
            "bloch_angles": list(self.bloch_angles) if self.bloch_angles else None,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ProjectiveMeasurement":
        dim = int(data["dim"])
        cols = [
            np.array([complex(re, im) for re, im in vec], dtype=complex)
            for vec in data["basis"]
        ]
        vectors = np.stack(cols, axis=1)
        angles = data.get("bloch_angles")
        return cls(dim, vectors, bloch_angles=tuple(angles) if angles else None)


def _bloch_basis(theta: float, phi: float) -> np.ndarray:
    """Eigenvector columns (+1 then -1) of sigma(theta, phi)."""
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    ph = np.exp(1j * phi)
    plus = np.array([c, ph * s], dtype=complex)
    minus = np.array([-s, ph * c], dtype=complex)
    return np.stack([plus, minus], axis=1)


@dataclass(frozen=True)
class Assemblage:
    """Subnormalized conditional states left on B after A measures X."""

    members: tuple[np.ndarray, ...]
    weights: np.ndarray

    def __post_init__(self):
        members = tuple(_frozen(np.asarray(m, dtype=complex)) for m in self.members)
        weights = np.asarray(self.weights, dtype=float)
        for m, w in zip(members, weights):
            if not np.allclose(m, m.conj().T, atol=1e-10, rtol=0.0):
                raise DomainError("assemblage member is not Hermitian")
            if np.linalg.eigvalsh(m).min() < -EIG_TOL:
                raise DomainError("assemblage member is not positive semidefinite")
            if abs(np.trace(m).real - w) > 1e-10:
                raise DomainError("assemblage weight does not match member trace")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "weights", _frozen(weights))

    def bloch_decomposition(self) -> tuple[np.ndarray, np.ndarray]:
        """Qubit members as (weights w_i, unnormalized Bloch rows v_i).

        Each member equals ``(w_i * I + v_i . sigma) / 2``.
        """
        if self.members[0].shape != (2, 2):
            raise UnsupportedDimensionError("Bloch decomposition needs qubit members")
        vs = np.empty((len(self.members), 3))
        for i, m in enumerate(self.members):
            for mu, pauli in enumerate(PAULIS):
                vs[i, mu] = np.trace(m @ pauli).real
        return np.asarray(self.weights, dtype=float), vs


@dataclass(frozen=True)
class JointDistribution:
    """Outcome probabilities P(X, X'); rows index X on A, columns X' on B."""

    entries: np.ndarray
    x_label: str = field(default="X", compare=False)
    xp_label: str = field(default="X'", compare=False)

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        if entries.ndim != 2:
            raise ShapeError("joint distribution must be a matrix")
        if entries.min() < -PROB_NEG_TOL:
            raise DomainError(f"negative probability {entries.min():.3e}")
        entries = np.clip(entries, 0.0, None)
        if abs(entries.sum() - 1.0) > DIST_SUM_TOL:
            raise DomainError(f"probabilities sum to {entries.sum()!r}, expected 1")
        object.__setattr__(self, "entries", _frozen(entries))

    def row_marginal(self) -> np.ndarray:
        return self.entries.sum(axis=1)

    def column_marginal(self) -> np.ndarray:
        return self.entries.sum(axis=0)


@dataclass(frozen=True)
class CorrelationData:
    """Local Bloch vectors and Pauli-Pauli correlation matrix of a 2-qubit state."""

    a_vec: np.ndarray
    b_vec: np.ndarray
    t_matrix: np.ndarray
    singular_values: np.ndarray

    def __post_init__(self):
        for name in ("a_vec", "b_vec", "t_matrix", "singular_values"):
            object.__setattr__(self, name, _frozen(np.asarray(getattr(self, name), dtype=float)))
        taus = self.singular_values
        if np.any(np.diff(taus) > 1e-12) or taus.min() < -1e-12:
            raise DomainError("singular values must be nonnegative and descending")
        if taus.max() > 1.0 + 1e-9:
            raise DomainError(f"singular value {taus.max()!r} exceeds 1")


def build_state(
    family: str,
    *,
    xi: float | None = None,
    p: float | None = None,
    seed: int = 0,
    dims: tuple[int, int] = (2, 2),
) -> DensityMatrix:
    """Construct one of the named state families.

    ``psi_xi``
        Pure state cos(xi)|00> + sin(xi)|11>, xi in [0, pi/4].
    ``rho_xi``
        Mixture (1-p)/2 * rho_A(xi) (x) I + p |psi_xi><psi_xi|, p in [0, 1].
    ``random_pure`` / ``random_mixed``
        Seeded Haar-like pure state (normalized complex Gaussian vector) or
        normalized Wishart matrix G G+ on the given ``dims``.
    """
    if family in ("psi_xi", "rho_xi"):
        if xi is None or not (0.0 <= xi <= np.pi / 4 + 1e-12):
            raise DomainError("xi must lie in [0, pi/4]")
        c, s = np.cos(xi), np.sin(xi)
        psi = np.array([c, 0.0, 0.0, s], dtype=complex)
        pure = np.outer(psi, psi.conj())
        if family == "psi_xi":
            return DensityMatrix(2, 2, pure)
        if p is None or not (0.0 <= p <= 1.0):
            raise DomainError("p must lie in [0, 1]")
        rho_a = np.diag([c**2, s**2]).astype(complex)
        mixed = 0.5 * (1.0 - p) * np.kron(rho_a, IDENTITY_2) + p * pure
        return DensityMatrix(2, 2, mixed)

    da, db = dims
    dim = da * db
    rng = np.random.default_rng(seed)
    if family == "random_pure":
        vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        vec /= np.linalg.norm(vec)
        return DensityMatrix(da, db, np.outer(vec, vec.conj()))
    if family == "random_mixed":
        g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        w = g @ g.conj().T
        return DensityMatrix(da, db, w / np.trace(w).real)
    raise DomainError(f"unknown state family {family!r}")


def partial_trace(rho: DensityMatrix, keep: str) -> DensityMatrix:
    """Reduced state of subsystem ``keep`` ("A" or "B")."""
    if not rho.is_bipartite:
        raise ShapeError("partial trace requires a bipartite state")
    da, db = rho.dim_a, rho.dim_b
    t = rho.entries.reshape(da, db, da, db)
    if keep == "A":
        return DensityMatrix(da, 1, np.einsum("ibkb->ik", t))
    if keep == "B":
        return DensityMatrix(db, 1, np.einsum("aiaj->ij", t))
    raise DomainError("keep must be 'A' or 'B'")


def joint_distribution(
    rho: DensityMatrix,
    x: ProjectiveMeasurement,
    xp: ProjectiveMeasurement,
) -> JointDistribution:
    """Born-rule joint distribution of X on A and X' on B.

    ``P_ij = Tr[rho (|x_i><x_i| (x) |x'_j><x'_j|)]``, with tiny negative
    round-off clamped to zero.
    """
    if not rho.is_bipartite:
        raise ShapeError("joint distribution requires a bipartite state")
    if x.dim != rho.dim_a or xp.dim != rho.dim_b:
        raise ShapeError(
            f"measurement dims ({x.dim}, {xp.dim}) do not match state dims "
            f"({rho.dim_a}, {rho.dim_b})"
        )
    w = np.kron(x.vectors, xp.vectors)
    probs = np.einsum("ai,ab,bi->i", w.conj(), rho.entries, w).real
    return JointDistribution(probs.reshape(x.dim, xp.dim))


def assemblage(rho: DensityMatrix, x: ProjectiveMeasurement) -> Assemblage:
    """Conditional (subnormalized) states on B after measuring X on A."""
    if not rho.is_bipartite:
        raise ShapeError("assemblage requires a bipartite state")
    if x.dim != rho.dim_a:
        raise ShapeError(f"measurement dim {x.dim} does not match dim_a {rho.dim_a}")
    da, db = rho.dim_a, rho.dim_b
    t = rho.entries.reshape(da, db, da, db)
    members = []
    for i in range(x.dim):
        v = x.vector(i)
        members.append(np.einsum("a,abcd,c->bd", v.conj(), t, v))
    weights = np.array([np.trace(m).real for m in members])
    rho_b = partial_trace(rho, "B").entries
    if not np.allclose(sum(members), rho_b, atol=1e-10, rtol=0.0):
        raise DomainError("assemblage members do not sum to the reduced state")
    return Assemblage(tuple(members), weights)


def correlation_data(rho: DensityMatrix) -> CorrelationData:
    """Bloch vectors a, b and correlation matrix T_ij = Tr[rho sigma_i (x) sigma_j]."""
    if (rho.dim_a, rho.dim_b) != (2, 2):
        raise UnsupportedDimensionError("correlation data is defined for two qubits")
    a = np.array([np.trace(rho.entries @ np.kron(s, IDENTITY_2)).real for s in PAULIS])
    b = np.array([np.trace(rho.entries @ np.kron(IDENTITY_2, s)).real for s in PAULIS])
    t = np.array(
        [
            [np.trace(rho.entries @ np.kron(si, sj)).real for sj in PAULIS]
            for si in PAULIS
        ]
    )
    taus = np.linalg.svd(t, compute_uv=False)
    return CorrelationData(a, b, t, taus)
