"""Coupling matrix, quadratic forms, and dynamical matrices.

Basis conventions used everywhere downstream:

* psi  = (b_R^dag, k^dag, b_L, m, s)                       -- 5 entries
* Psi  = (b_R, b_R^dag, b_L, b_L^dag, m, m^dag, k, k^dag, s, s^dag) -- 10 slots
* G    = diag(+1, -1, +1, -1, ...)  (annihilation slots carry +1)
* particle-hole conjugation = pairwise slot swap (0<->1, 2<->3, ...)

Mode blocks of Psi in order: b_R, b_L, m, k, s.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AsymmetricInput
from .params import DerivedQuantities

MODE_NAMES = ("b_R", "b_L", "m", "k", "s")

# slot of each psi component in Psi (psi = b_R^dag, k^dag, b_L, m, s)
_PSI_SLOT = (1, 7, 2, 4, 8)

# particle-hole slot swap
_SWAP = np.array([1, 0, 3, 2, 5, 4, 7, 6, 9, 8])

G_DIAG = np.array([1.0, -1.0] * 5)


@dataclass(frozen=True)
class CouplingMatrixC:
    """Symmetric 5x5 coupling matrix in the psi basis (rad/s)."""

    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=float)
        if e.shape != (5, 5):
            raise AsymmetricInput("C must be 5x5")
        object.__setattr__(self, "entries", e)


@dataclass(frozen=True)
class QuadraticModel:
    """Quadratic-form and dynamical matrices for one parameter point.

    MZ = omega_Z * I_2 (axial sector), MT the 10x10 Hermitian transverse
    form, G the metric, KT = G @ MT, KZ = sigma_z @ MZ.  ``omega_scale`` is
    the max absolute entry of MT, used to nondimensionalize eigensolves.
    """

    MZ: np.ndarray
    MT: np.ndarray
    G: np.ndarray
    KT: np.ndarray
    KZ: np.ndarray
    omega_scale: float


def build_C(d: DerivedQuantities) -> CouplingMatrixC:
    """Assemble the coupling matrix from the derived frequencies.

    For a non-rotating particle (omega_S = 0) the entries are

        (w_-   g     -w_+   -g     g   )
        (g     w_k   g      w_L    w_k )
        (-w_+  g     w_-    -g     g   )
        (-g    w_L   -g     -w_L   w_L )
        (g     w_k   g      w_L    w_mu)

    with w_k = omega_I - omega_L.  Rotation enters through slow-rotation
    (Coriolis-type) shifts of the k/m/s sector, exact to first order in
    omega_S/omega_I: the k diagonal becomes omega_I + omega_S - omega_L, the
    k-m and m-s couplings become omega_L - omega_S/2, and the k-s coupling
    becomes omega_I - omega_L + omega_S/2.  This form is cross-validated
    against the characteristic-polynomial route by the stability module.
    """
    wL, wS, wI = d.omega_L, d.omega_S, d.omega_I
    g = d.g_coupling
    wp, wm, wmu = d.omega_plus, d.omega_minus, d.omega_mu
    wk = wI + wS - wL
    wkm = wL - wS / 2.0           # k-m and m-s coupling
    wks = wI - wL + wS / 2.0      # k-s coupling
    C = np.array([
        [wm,   g,    -wp,  -g,   g],
        [g,    wk,   g,    wkm,  wks],
        [-wp,  g,    wm,   -g,   g],
        [-g,   wkm,  -g,   -wL,  wkm],
        [g,    wks,  g,    wkm,  wmu],
    ])
    return CouplingMatrixC(entries=C)


def build_MT(C: CouplingMatrixC) -> np.ndarray:
    """Expand the psi-basis form into the Hermitian 10x10 Psi-basis form.

    Each bilinear psi_i^dag C_ij psi_j is a product of two ladder operators,
    hence a single entry of the Psi quadratic form; the Hermitian conjugate
    doubles the accumulation, and the particle-hole symmetrization
    MT <- (MT + Sigma MT* Sigma)/2 redistributes weight onto the conjugate
    slots (operator-ordering scalars are dropped).
    """
    e = np.asarray(C.entries, dtype=float)
    if not np.array_equal(e, e.T):
        raise AsymmetricInput("coupling matrix must be symmetric")
    A = np.zeros((10, 10))
    for i in range(5):
        for j in range(5):
            A[_PSI_SLOT[i], _PSI_SLOT[j]] += 2.0 * e[i, j]
    MT = (A + A[np.ix_(_SWAP, _SWAP)]) / 2.0
    return MT


def build_model(d: DerivedQuantities) -> QuadraticModel:
    """Build all quadratic-form and dynamical matrices for one point.

    With Bpp <= 0 the axial frequency is imaginary; MZ and KZ then carry NaN
    and the axial verdict is decided by the sign test in the stability
    module, never by these matrices.
    """
    MT = build_MT(build_C(d))
    G = np.diag(G_DIAG)
    KT = G @ MT
    MZ = d.omega_Z * np.eye(2)
    KZ = np.diag([1.0, -1.0]) @ MZ
    return QuadraticModel(
        MZ=MZ, MT=MT, G=G, KT=KT, KZ=KZ,
        omega_scale=float(np.abs(MT).max()),
    )


def particle_hole_conjugate(vec: np.ndarray) -> np.ndarray:
    """Pairwise slot swap of the complex conjugate of a Psi-basis vector."""
    return np.conj(vec)[_SWAP]
