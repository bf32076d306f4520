"""Hot numeric kernels with numba-compiled and pure-Python/numpy twins.

Each kernel is written once in nopython-compatible style.  The module-level
name (``qubit_k1_search``, ``carlson_rf``, ...) is the active implementation
selected by :mod:`cmur._backend`; the ``*_py`` twin always runs uncompiled
and is used by the backend-agreement tests and the benchmark script.
"""

from __future__ import annotations

import math

import numpy as np

from ._backend import USING_NUMBA, maybe_njit

_EPS = np.finfo(np.float64).eps


def carlson_rf_py(x: float, y: float, z: float) -> float:
    """Carlson symmetric integral R_F by the duplication algorithm.

    Arguments must be nonnegative with at most one zero.  Converges to
    machine accuracy; the Taylor tail matches the standard seventh-order
    expansion.
    """
    a0 = (x + y + z) / 3.0
    q = (3.0 * _EPS) ** (-0.125) * max(abs(a0 - x), abs(a0 - y), abs(a0 - z))
    a = a0
    f = 1.0
    xm, ym, zm = x, y, z
    while q >= abs(a) * f:
        sx = math.sqrt(xm)
        sy = math.sqrt(ym)
        sz = math.sqrt(zm)
        lam = sx * sy + sx * sz + sy * sz
        xm = (xm + lam) / 4.0
        ym = (ym + lam) / 4.0
        zm = (zm + lam) / 4.0
        a = (a + lam) / 4.0
        f *= 4.0
    ex = (a0 - x) / (a * f)
    ey = (a0 - y) / (a * f)
    ez = -(ex + ey)
    e2 = ex * ey - ez * ez
    e3 = ex * ey * ez
    series = (
        1.0
        + e3 * (1.0 / 14.0 + 3.0 * e3 / 104.0)
        + e2
        * (-0.1 + e2 / 24.0 - 3.0 * e3 / 44.0 - 5.0 * e2 * e2 / 208.0 + e2 * e3 / 16.0)
    )
    return series / math.sqrt(a)


def carlson_rd_py(x: float, y: float, z: float) -> float:
    """Carlson symmetric integral R_D by the duplication algorithm.

    Requires ``z > 0`` and ``x + y > 0``.
    """
    a0 = (x + y + 3.0 * z) / 5.0
    q = (0.25 * _EPS) ** (-1.0 / 6.0) * max(abs(a0 - x), abs(a0 - y), abs(a0 - z))
    a = a0
    f = 1.0
    xm, ym, zm = x, y, z
    acc = 0.0
    while q >= abs(a) * f:
        sx = math.sqrt(xm)
        sy = math.sqrt(ym)
        sz = math.sqrt(zm)
        lam = sx * sy + sx * sz + sy * sz
        acc += 1.0 / (f * sz * (zm + lam))
        xm = (xm + lam) / 4.0
        ym = (ym + lam) / 4.0
        zm = (zm + lam) / 4.0
        a = (a + lam) / 4.0
        f *= 4.0
    ex = (a0 - x) / (a * f)
    ey = (a0 - y) / (a * f)
    ez = -(ex + ey) / 3.0
    e2 = ex * ey - 6.0 * ez * ez
    e3 = (3.0 * ex * ey - 8.0 * ez * ez) * ez
    e4 = 3.0 * (ex * ey - ez * ez) * ez * ez
    e5 = ex * ey * ez * ez * ez
    series = (
        1.0
        - 3.0 * e2 / 14.0
        + e3 / 6.0
        + 9.0 * e2 * e2 / 88.0
        - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0
    )
    return 3.0 * acc + series / (f * a * math.sqrt(a))


def qubit_k1_search_py(
    w: np.ndarray,
    v: np.ndarray,
    starts: np.ndarray,
    max_iter: int,
    ftol: float,
):
    """Maximize the leading component of the majorized marginal for a qubit.

    ``w[i]`` and ``v[i]`` are the trace and unnormalized Bloch vector of the
    conditional state left on B by outcome ``i`` of the A-side measurement,
    so ``P_ij = (w[i] + (-1)^j v[i].t) / 2`` for the B basis along ``t``.
    For every index assignment (a, b) the objective is the exact Born value
    ``P_a0 + P_b1``; assignments with ``a != b`` are refined by multi-start
    Nelder-Mead over the Bloch angles (theta_t, phi_t) of ``t``.

    Returns ``(value, theta, phi, a, b, converged)`` with ties broken toward
    the smallest theta.
    """
    two_pi = 2.0 * math.pi
    best_val = -1.0
    best_theta = 0.0
    best_phi = 0.0
    best_a = 0
    best_b = 0
    best_conv = True
    st = np.empty(3)
    sp = np.empty(3)
    fv = np.empty(3)
    for a in range(2):
        for b in range(2):
            if a == b:
                cand_val = w[a]
                cand_theta = 0.0
                cand_phi = 0.0
                cand_conv = True
            else:
                c0 = 0.5 * (w[a] + w[b])
                d0 = 0.5 * (v[a, 0] - v[b, 0])
                d1 = 0.5 * (v[a, 1] - v[b, 1])
                d2 = 0.5 * (v[a, 2] - v[b, 2])
                cand_val = -1.0
                cand_theta = 0.0
                cand_phi = 0.0
                cand_conv = False
                for s_i in range(starts.shape[0]):
                    # Nelder-Mead minimizing -(c0 + d . t(theta, phi)).
                    st[0] = starts[s_i, 0]
                    sp[0] = starts[s_i, 1]
                    st[1] = st[0] + 0.35
                    sp[1] = sp[0]
                    st[2] = st[0]
                    sp[2] = sp[0] + 0.35
                    for i in range(3):
                        sth = math.sin(st[i])
                        fv[i] = -(
                            c0
                            + d0 * sth * math.cos(sp[i])
                            + d1 * sth * math.sin(sp[i])
                            + d2 * math.cos(st[i])
                        )
                    conv = False
                    for _ in range(max_iter):
                        hi = 0
                        lo = 0
                        for i in range(1, 3):
                            if fv[i] > fv[hi]:
                                hi = i
                            if fv[i] < fv[lo]:
                                lo = i
                        if fv[hi] - fv[lo] < ftol:
                            conv = True
                            break
                        mid = 3 - hi - lo if hi != lo else 1
                        ct = 0.5 * (st[lo] + st[mid])
                        cp = 0.5 * (sp[lo] + sp[mid])
                        rt = ct + (ct - st[hi])
                        rp = cp + (cp - sp[hi])
                        sth = math.sin(rt)
                        fr = -(
                            c0
                            + d0 * sth * math.cos(rp)
                            + d1 * sth * math.sin(rp)
                            + d2 * math.cos(rt)
                        )
                        if fr < fv[lo]:
                            et = ct + 2.0 * (ct - st[hi])
                            ep = cp + 2.0 * (cp - sp[hi])
                            sth = math.sin(et)
                            fe = -(
                                c0
                                + d0 * sth * math.cos(ep)
                                + d1 * sth * math.sin(ep)
                                + d2 * math.cos(et)
                            )
                            if fe < fr:
                                st[hi] = et
                                sp[hi] = ep
                                fv[hi] = fe
                            else:
                                st[hi] = rt
                                sp[hi] = rp
                                fv[hi] = fr
                        elif fr < fv[mid]:
                            st[hi] = rt
                            sp[hi] = rp
                            fv[hi] = fr
                        else:
                            qt = ct + 0.5 * (st[hi] - ct)
                            qp = cp + 0.5 * (sp[hi] - cp)
                            sth = math.sin(qt)
                            fq = -(
                                c0
                                + d0 * sth * math.cos(qp)
                                + d1 * sth * math.sin(qp)
                                + d2 * math.cos(qt)
                            )
                            if fq < fv[hi]:
                                st[hi] = qt
                                sp[hi] = qp
                                fv[hi] = fq
                            else:
                                for i in range(3):
                                    if i != lo:
                                        st[i] = st[lo] + 0.5 * (st[i] - st[lo])
                                        sp[i] = sp[lo] + 0.5 * (sp[i] - sp[lo])
                                        sth = math.sin(st[i])
                                        fv[i] = -(
                                            c0
                                            + d0 * sth * math.cos(sp[i])
                                            + d1 * sth * math.sin(sp[i])
                                            + d2 * math.cos(st[i])
                                        )
                    lo = 0
                    for i in range(1, 3):
                        if fv[i] < fv[lo]:
                            lo = i
                    val = -fv[lo]
                    theta = st[lo] % two_pi
                    phi = sp[lo]
                    if theta > math.pi:
                        theta = two_pi - theta
                        phi += math.pi
                    phi = phi % two_pi
                    if val > cand_val + 1e-12 or (
                        val > cand_val - 1e-12 and theta < cand_theta - 1e-12
                    ):
                        cand_val = val
                        cand_theta = theta
                        cand_phi = phi
                        cand_conv = conv
            if cand_val > best_val + 1e-12 or (
                cand_val > best_val - 1e-12 and cand_theta < best_theta - 1e-12
            ):
                best_val = cand_val
                best_theta = cand_theta
                best_phi = cand_phi
                best_a = a
                best_b = b
                best_conv = cand_conv
    return best_val, best_theta, best_phi, best_a, best_b, best_conv


def hemisphere_mean_py(dirs: np.ndarray, tau_sq: np.ndarray) -> float:
    """Average of (1 + sqrt(sum_i tau_i^2 r_i^2)) / 2 over unit rows of ``dirs``."""
    acc = 0.0
    for i in range(dirs.shape[0]):
        q = (
            tau_sq[0] * dirs[i, 0] * dirs[i, 0]
            + tau_sq[1] * dirs[i, 1] * dirs[i, 1]
            + tau_sq[2] * dirs[i, 2] * dirs[i, 2]
        )
        acc += 0.5 * (1.0 + math.sqrt(q))
    return acc / dirs.shape[0]


def hemisphere_mean_numpy(dirs: np.ndarray, tau_sq: np.ndarray) -> float:
    """Vectorized twin of :func:`hemisphere_mean_py`."""
    q = (dirs * dirs) @ np.asarray(tau_sq)
    return float(np.mean(0.5 * (1.0 + np.sqrt(q))))


carlson_rf = maybe_njit(carlson_rf_py)
carlson_rd = maybe_njit(carlson_rd_py)
qubit_k1_search = maybe_njit(qubit_k1_search_py)
hemisphere_mean = maybe_njit(hemisphere_mean_py) if USING_NUMBA else hemisphere_mean_numpy
