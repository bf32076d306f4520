"""Property-check routines shared by the unit tests and the acceptance gate.

Each check runs a seeded randomized sweep at a caller-chosen scale and
returns (ok, detail); the unit tests call them at moderate scale, the
acceptance suite at the mandated scale.
"""

from __future__ import annotations

import numpy as np

from cmur import (
    DensityMatrix,
    ProjectiveMeasurement,
    UncertaintyVec,
    build_state,
    combine,
    joint_distribution,
    lattice_join,
    majorized_marginal,
    majorizes,
)

from oracles import lcm_chords, random_majorization_pair, random_psd

TOL = 1e-9


def _vec(values) -> UncertaintyVec:
    return UncertaintyVec.of(values)


def check_partial_order_laws(seed: int, n_cases: int):
    """Reflexivity, antisymmetry, and transitivity of the majorization order."""
    rng = np.random.default_rng(seed)
    for trial in range(n_cases):
        n = int(rng.integers(2, 7))
        a = _vec((random_majorization_pair(rng, n))[0])
        b = _vec(rng.dirichlet(np.ones(n)))
        c = _vec(rng.dirichlet(np.ones(n)))
        if not majorizes(a, a):
            return False, f"reflexivity failed at trial {trial}"
        if majorizes(a, b) and majorizes(b, a):
            if np.max(np.abs(a.prefix_sums(n) - b.prefix_sums(n))) > 3 * TOL:
                return False, f"antisymmetry failed at trial {trial}"
        if majorizes(a, b) and majorizes(b, c) and not majorizes(a, c):
            # Tolerances could stack; allow double slack before failing.
            pa, pc = a.prefix_sums(n), c.prefix_sums(n)
            if np.any(pa > pc + 2 * TOL):
                return False, f"transitivity failed at trial {trial}"
    return True, f"{n_cases} partial-order cases"


def check_join_lub(seed: int, n_cases: int, n_upper: int = 40):
    """Join upper-bounds its inputs, matches the chord oracle, and is least."""
    rng = np.random.default_rng(seed)
    hits = 0
    for trial in range(n_cases):
        n = int(rng.integers(2, 6))
        count = int(rng.integers(2, 5))
        flat = np.ones(n)
        members = [_vec(random_majorization_pair(rng, n)[0]) for _ in range(count)]
        join = lattice_join(members)
        for v in members:
            if not majorizes(v, join):
                return False, f"join is not an upper bound at trial {trial}"
        prefix_max = np.max([v.prefix_sums(n) for v in members], axis=0)
        oracle = lcm_chords(prefix_max)
        if np.max(np.abs(join.prefix_sums(n) - oracle)) > 1e-10:
            return False, f"join prefix differs from chord oracle at trial {trial}"
        for _ in range(n_upper):
            cand = _vec(rng.dirichlet(0.3 * flat))
            if all(majorizes(v, cand) for v in members):
                hits += 1
                if not majorizes(join, cand):
                    return False, f"join not least at trial {trial}"
    if hits < n_cases:
        return False, f"too few upper-bound candidates hit ({hits})"
    return True, f"{n_cases} join cases, {hits} minimality hits"


def check_combiner_monotonicity(seed: int, n_cases: int):
    """a < b and c < d imply combine(a, c) < combine(b, d) per combiner."""
    rng = np.random.default_rng(seed)
    for trial in range(n_cases):
        n = int(rng.integers(2, 6))
        m = int(rng.integers(2, 6))
        a_raw, b_raw = random_majorization_pair(rng, n)
        c_raw, d_raw = random_majorization_pair(rng, m)
        a, b, c, d = _vec(a_raw), _vec(b_raw), _vec(c_raw), _vec(d_raw)
        for op in ("direct_sum", "direct_product", "vector_sum"):
            if not majorizes(combine(a, c, op), combine(b, d, op)):
                return False, f"{op} monotonicity failed at trial {trial}"
        if not majorizes(combine(a, c, "hadamard"), combine(b, d, "hadamard"), mode="weak"):
            return False, f"hadamard weak monotonicity failed at trial {trial}"
    return True, f"{n_cases} monotonicity quadruples"


def check_conditioning(seed: int, n_states: int):
    """Side information never hurts: sorted p(x) < majorized marginal."""
    rng = np.random.default_rng(seed)
    for trial in range(n_states):
        if trial % 2 == 0:
            rho = build_state("random_pure", seed=seed + trial)
        else:
            rho = build_state("random_mixed", seed=seed + trial)
        x = ProjectiveMeasurement.from_bloch_angles(
            float(np.arccos(1 - 2 * rng.random())), float(2 * np.pi * rng.random())
        )
        xp = ProjectiveMeasurement.from_bloch_angles(
            float(np.arccos(1 - 2 * rng.random())), float(2 * np.pi * rng.random())
        )
        joint = joint_distribution(rho, x, xp)
        marginal = _vec(joint.row_marginal())
        conditioned = majorized_marginal(joint).vec
        if abs(conditioned.weight - 1.0) > 1e-10:
            return False, f"marginal weight off at trial {trial}"
        if not majorizes(marginal, conditioned):
            return False, f"conditioning helped negatively at trial {trial}"
    return True, f"{n_states} states"


def check_matrix_oracles(seed: int, n_pairs: int):
    """Spectral majorization facts on random PSD pairs.

    diagonal < spectrum; spectrum of a sum < summed sorted spectra; and for
    the Hadamard product both the diagonal-vs-spectrum law and the weak
    bound of its singular values by the sorted spectra product.
    """
    rng = np.random.default_rng(seed)
    for trial in range(n_pairs):
        n = int(rng.integers(2, 6))
        xm = random_psd(rng, n)
        ym = random_psd(rng, n)
        scale = np.trace(xm).real
        xm /= scale
        ym /= np.trace(ym).real
        ex = np.linalg.eigvalsh(xm)
        ey = np.linalg.eigvalsh(ym)
        if not majorizes(_vec(np.diag(xm).real), _vec(ex)):
            return False, f"diagonal-vs-spectrum failed at trial {trial}"
        es = np.linalg.eigvalsh(xm + ym)
        if not majorizes(_vec(es), _vec(ex[::-1] + ey[::-1])):
            return False, f"spectrum-of-sum failed at trial {trial}"
        had = xm * ym
        eh = np.linalg.eigvalsh(had)
        if eh.min() < -1e-12:
            return False, f"hadamard product not PSD at trial {trial}"
        if not majorizes(_vec(np.diag(had).real), _vec(np.clip(eh, 0, None))):
            return False, f"hadamard diagonal law failed at trial {trial}"
        sv = np.linalg.svd(had, compute_uv=False)
        if not majorizes(_vec(sv), _vec(ex[::-1] * ey[::-1]), mode="weak"):
            return False, f"hadamard singular-value law failed at trial {trial}"
    return True, f"{n_pairs} PSD pairs"
