"""Normal-mode transformation and Gaussian vacuum state at a stable point.

The vacuum of the normal modes is fully characterized by the ladder-basis
covariance matrix Theta = T T^dag / 2, where T is the indefinite-metric
(Bogoliubov) transformation diagonalizing the quadratic form.  All routines
are dimension-generic (any even size with metric diag(+1,-1,...)); the
physical model uses the 10-slot Psi basis with mode blocks
(b_R, b_L, m, k, s).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (MaglevError, NonPositiveBlockDeterminant, NotStable,
                     ZeroNormVector)
from .hamiltonian import MODE_NAMES, QuadraticModel, build_model
from .params import PhysicalConstants, SystemParams, derive_quantities
from .stability import DEFAULT_TOL, Classification, classify_point


@dataclass(frozen=True)
class BogoliubovTransform:
    """Normal-mode transformation for one stable point.

    Columns of T are (v_1, u_1, ..., v_n, u_n): the positive-norm
    eigenvectors of K_T interleaved with their particle-hole conjugates, so
    that T^dag G T = G and T^dag M_T T = diag(w_1, w_1, ..., w_n, w_n).

    The paired diagonal entries ``omegas`` are the normal frequencies with
    their energetic sign: a negative entry marks a dynamically stable mode
    whose quadratic energy is inverted (the quadratic form here is always
    indefinite, so exactly the modes carrying negative values sit on the
    negative directions of M_T).
    """

    T: np.ndarray
    omegas: np.ndarray


@dataclass(frozen=True)
class CovarianceMatrix:
    """Ladder-basis second moments Theta_ij = <Psi_i Psi_j^dag + Psi_j^dag Psi_i>/2."""

    Theta: np.ndarray


@dataclass(frozen=True)
class StateMetrics:
    purities: np.ndarray      # per physical mode, order (b_R, b_L, m, k, s)
    entanglement: float       # n_modes - sum of purities
    squeezing: float          # 1/sqrt(2 * min eigenvalue of Theta)


def _metric(n_slots: int) -> np.ndarray:
    return np.array([1.0, -1.0] * (n_slots // 2))


def _swap_conj(vec: np.ndarray) -> np.ndarray:
    out = np.conj(vec).copy()
    out[0::2], out[1::2] = np.conj(vec)[1::2], np.conj(vec)[0::2]
    return out


def bogoliubov_from_form(MT: np.ndarray, tol: float = DEFAULT_TOL) -> BogoliubovTransform:
    """Construct T from any Hermitian, particle-hole-symmetric form.

    Eigenvectors of K = G M_T with positive indefinite norm v^dag G v are
    normalized to +1, sorted by ascending eigenvalue, cleaned by one
    G-weighted Gram-Schmidt pass (a no-op away from near-degeneracies), and
    interleaved with their particle-hole conjugates.

    Degenerate normal frequencies are fine as long as K stays diagonalizable
    (each eigenspace then splits into definite-norm directions), so there is
    no degeneracy pre-gate; instead the assembled T is verified against
    T^dag G T = G, which fails exactly when the spectrum is defective or a
    norm collapses at the stability boundary.

    Raises NotStable for complex spectra or failed verification and
    ZeroNormVector when an eigenvector's G-norm magnitude falls below ``tol``.
    """
    MT = np.asarray(MT)
    n_slots = MT.shape[0]
    g = _metric(n_slots)
    scale = float(np.abs(MT).max())
    K = (g[:, None] * MT) / scale

    ev, V = np.linalg.eig(K)
    if np.abs(ev.imag).max() > tol:
        raise NotStable(f"complex spectrum, max scaled |Im| = {np.abs(ev.imag).max():.3e}")
    nu = ev.real

    norms = np.real(np.einsum("ij,i,ij->j", V.conj(), g, V))
    if np.abs(norms).min() < tol:
        raise ZeroNormVector(
            f"eigenvector G-norm {np.abs(norms).min():.3e} below tolerance"
        )
    pos = np.where(norms > 0)[0]
    if len(pos) != n_slots // 2:
        raise NotStable(f"{len(pos)} positive-norm eigenvectors, "
                        f"expected {n_slots // 2}")
    pos = pos[np.argsort(nu[pos])]

    vs = []
    for idx in pos:
        v = V[:, idx] / np.sqrt(norms[idx])
        for w in vs:  # indefinite Gram-Schmidt against the already-kept set
            v = v - w * (np.vdot(w, g * v))
        nrm = np.real(np.vdot(v, g * v))
        if nrm < tol:
            raise ZeroNormVector("G-norm lost during orthogonalization")
        vs.append(v / np.sqrt(nrm))

    cols = []
    for v in vs:
        cols.append(v)
        cols.append(_swap_conj(v))
    T = np.array(cols).T

    resid = np.abs(T.conj().T @ (g[:, None] * T) - np.diag(g)).max()
    if resid > 1e-6:
        raise NotStable(f"transformation failed verification, "
                        f"|T^dag G T - G| = {resid:.3e}")

    D = T.conj().T @ MT @ T
    diag = np.real(np.diag(D))
    omegas = 0.5 * (diag[0::2] + diag[1::2])
    return BogoliubovTransform(T=T, omegas=omegas)


def bogoliubov_transform(model: QuadraticModel,
                         tol: float = DEFAULT_TOL) -> BogoliubovTransform:
    """Normal-mode transformation of a model's transverse form."""
    return bogoliubov_from_form(model.MT, tol)


def covariance(transform: BogoliubovTransform) -> CovarianceMatrix:
    """Vacuum covariance of the original modes: Theta = T T^dag / 2."""
    if isinstance(transform, BogoliubovTransform):
        Tm = transform.T
    else:
        Tm = np.asarray(transform)
    return CovarianceMatrix(Theta=Tm @ Tm.conj().T / 2.0)


def mode_metrics(theta: CovarianceMatrix) -> StateMetrics:
    """Per-mode purities, the entanglement measure, and the squeezing parameter.

    The purity of mode a is [2 sqrt(det Sigma_a)]^-1 with Sigma_a the 2x2
    diagonal block of Theta; the entanglement measure is the number of modes
    minus the purity sum (zero iff the vacuum factorizes); squeezing is
    1/sqrt(2 min_k theta_k) over the eigenvalues of Theta.
    """
    Theta = np.asarray(theta.Theta if isinstance(theta, CovarianceMatrix) else theta)
    n_modes = Theta.shape[0] // 2
    purities = np.empty(n_modes)
    for a in range(n_modes):
        block = Theta[2 * a:2 * a + 2, 2 * a:2 * a + 2]
        det = np.real(np.linalg.det(block))
        if det <= 0:
            raise NonPositiveBlockDeterminant(
                f"mode {MODE_NAMES[a] if n_modes == 5 else a}: det = {det:.3e}"
            )
        purities[a] = 1.0 / (2.0 * np.sqrt(det))
    theta_min = float(np.linalg.eigvalsh(Theta).min())
    if theta_min <= 0:
        raise NonPositiveBlockDeterminant(
            f"covariance not positive definite: min eigenvalue {theta_min:.3e}"
        )
    return StateMetrics(
        purities=purities,
        entanglement=float(n_modes - purities.sum()),
        squeezing=float(1.0 / np.sqrt(2.0 * theta_min)),
    )


@dataclass(frozen=True)
class StateScanRow:
    B0: float
    stable: bool
    purities: np.ndarray      # NaN for unstable points
    entanglement: float
    squeezing: float


def state_scan(c: PhysicalConstants, p_template: SystemParams, R_fixed: float,
               B0_list, tol: float = DEFAULT_TOL) -> list[StateScanRow]:
    """Quantum-state metrics along a bias scan at fixed radius.

    One row per requested B0, in input order; points that do not classify as
    stable yield gap rows with NaN metrics.
    """
    nan5 = np.full(5, np.nan)
    rows = []
    for B0 in B0_list:
        p = SystemParams(rho_M=p_template.rho_M, rho_mu=p_template.rho_mu,
                         k_a=p_template.k_a, R=R_fixed, B0=B0,
                         Bp=p_template.Bp, Bpp=p_template.Bpp,
                         omega_S=p_template.omega_S)
        try:
            d = derive_quantities(c, p)
            model = build_model(d)
            verdict = classify_point(d, model, tol)
            if verdict.classification not in (Classification.STABLE_EDH,
                                              Classification.STABLE_A):
                raise NotStable(verdict.classification.name)
            metrics = mode_metrics(covariance(bogoliubov_transform(model, tol)))
            rows.append(StateScanRow(B0=B0, stable=True,
                                     purities=metrics.purities,
                                     entanglement=metrics.entanglement,
                                     squeezing=metrics.squeezing))
        except (MaglevError, np.linalg.LinAlgError):
            rows.append(StateScanRow(B0=B0, stable=False, purities=nan5,
                                     entanglement=float("nan"),
                                     squeezing=float("nan")))
    return rows
