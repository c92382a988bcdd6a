"""Physical constants, raw inputs, and derived quantities.

Every frequency or coupling used by the downstream matrix builders is computed
here exactly once.  SI units throughout: lengths in m, fields in T, field
gradient in T/m, curvature in T/m^2, frequencies in rad/s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import NegativeJ, NonPositiveInput, TransverseTrapUndefined


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants; defaults are CODATA-2018 values.

    gamma0 defaults to the free-electron gyromagnetic ratio.  All fields are
    overridable through the config file's ``constants`` block.
    """

    hbar: float = 1.054571817e-34      # J*s
    mu_B: float = 9.2740100783e-24     # J/T
    amu: float = 1.66053906660e-27     # kg
    gamma0: float = 1.760859630e11     # rad/(s*T)
    g_grav: float = 9.81               # m/s^2

    def __post_init__(self):
        for name in ("hbar", "mu_B", "amu", "gamma0", "g_grav"):
            if not getattr(self, name) > 0:
                raise NonPositiveInput(f"constant {name} must be > 0")


@dataclass(frozen=True)
class SystemParams:
    """Raw physical inputs: material, trap, geometry, rotation."""

    rho_M: float          # mass density, kg/m^3
    rho_mu: float         # magnetization (moment per volume), A/m = J/(T*m^3)
    k_a: float            # uniaxial anisotropy constant, J/m^3
    R: float              # sphere radius, m
    B0: float             # field bias, T
    Bp: float             # field gradient B', T/m
    Bpp: float            # field curvature B'', T/m^2
    omega_S: float = 0.0  # rotation frequency about the magnetization axis, rad/s

    def __post_init__(self):
        for name in ("rho_M", "rho_mu", "k_a", "R", "B0"):
            if not getattr(self, name) > 0:
                raise NonPositiveInput(f"parameter {name} must be > 0")
        if self.Bp < 0:
            raise NonPositiveInput("parameter Bp must be >= 0")


@dataclass(frozen=True)
class DerivedQuantities:
    """All quantities derived from (constants, params).

    ``omega_Z`` and ``z0`` are NaN when Bpp <= 0 (the z-trap does not
    confine); the signed square ``omega_Z_sq`` is always populated and is what
    enters the transverse-sector formulas.
    """

    V: float              # volume, m^3
    M: float              # mass, kg
    I: float              # moment of inertia (2/5)MR^2, kg*m^2
    mu: float             # total magnetic moment, J/T
    S: float              # macrospin magnitude, dimensionless
    J: float              # total angular momentum scale, dimensionless
    eta: float            # sqrt(S/J)
    D: float              # anisotropy parameter, 1/(s*J*...) per definition below
    omega_L: float        # Larmor frequency gamma0*B0
    omega_D: float        # anisotropy frequency hbar*D*S
    omega_I: float        # Einstein-de Haas frequency hbar*S/I
    omega_Z: float        # axial trap frequency (NaN if Bpp <= 0)
    omega_Z_sq: float     # signed omega_Z^2 = hbar*gamma0*Bpp*S/M
    omega_T: float        # transverse trap frequency
    omega_plus: float     # (omega_T + omega_Z_sq/(2*omega_T))/2
    omega_minus: float    # (omega_T - omega_Z_sq/(2*omega_T))/2
    omega_k: float        # omega_I + omega_S - omega_L*eta^2
    omega_mu: float       # omega_I + 2*omega_D - omega_L
    omega_S: float        # rotation frequency (echoed input)
    g_coupling: float     # spin/center-of-mass coupling rate
    z0: float             # axial zero-point length (NaN if Bpp <= 0)
    r0: float             # transverse zero-point length

    constants: PhysicalConstants = field(repr=False, default=PhysicalConstants())
    params: SystemParams = field(repr=False, default=None)


@dataclass(frozen=True)
class RegimeReport:
    """Validity flags for the approximations behind the model.

    Reports, never raises.  ``gravity_ratio`` compares the gravitational sag
    scale Mg/(mu*B'') against min{sqrt(B0/B''), B'/B''}; values below 0.1
    (one order of magnitude) count as negligible.  The same 0.1 threshold is
    applied to the slow-rotation ratio |I*omega_S/hbar|/S.
    """

    gravity_ratio: float
    gravity_ok: bool
    slow_rotation_ratio: float
    slow_rotation_ok: bool
    macrospin_ok: bool
    omega_T_real: bool
    trap_z_confining: bool


_GRAVITY_THRESHOLD = 0.1
_SLOW_ROTATION_THRESHOLD = 0.1
_MACROSPIN_MIN = 1e2


def derive_quantities(c: PhysicalConstants, p: SystemParams) -> DerivedQuantities:
    """Compute every derived quantity from the raw inputs.

    The anisotropy frequency is evaluated twice, as hbar*D*S and as
    k_a*gamma0/rho_mu; the two routes agree identically by construction and
    are asserted to 1e-12 relative as a guard against regressions.

    The coupling rate is g = gamma0 * B' * sigma_T with the collective
    transverse length sigma_T = sqrt(S) * r0; equivalently
    g^2 = omega_L*(omega_T^2 + omega_Z_sq/2)/(2*omega_T).

    Raises TransverseTrapUndefined when B'^2 <= B0*B''/2 and NegativeJ when
    I*omega_S/hbar <= -S.
    """
    V = 4.0 / 3.0 * math.pi * p.R**3
    M = p.rho_M * V
    I = 0.4 * M * p.R**2
    mu = p.rho_mu * V
    S = mu / (c.hbar * c.gamma0)
    D = 4.0 * math.pi * p.R**3 * p.k_a / (3.0 * c.hbar**2 * S**2)

    J = I * p.omega_S / c.hbar + S
    if not J > 0:
        raise NegativeJ(
            f"I*omega_S/hbar = {I * p.omega_S / c.hbar:.6e} must exceed -S = {-S:.6e}"
        )
    eta = math.sqrt(S / J)

    omega_L = c.gamma0 * p.B0
    omega_D = c.hbar * D * S
    omega_D_alt = p.k_a * c.gamma0 / p.rho_mu
    if abs(omega_D - omega_D_alt) > 1e-12 * abs(omega_D):
        raise AssertionError("dual-route omega_D evaluations disagree")
    omega_I = c.hbar * S / I

    omega_Z_sq = c.hbar * c.gamma0 * p.Bpp * S / M
    trans = p.Bp**2 - p.B0 * p.Bpp / 2.0
    if not trans > 0:
        raise TransverseTrapUndefined(
            f"B'^2 - B0*B''/2 = {trans:.6e} must be > 0"
        )
    omega_T = math.sqrt(c.hbar * c.gamma0 * S * trans / (M * p.B0))

    if omega_Z_sq > 0:
        omega_Z = math.sqrt(omega_Z_sq)
        z0 = math.sqrt(c.hbar / (2.0 * M * omega_Z))
    else:
        omega_Z = float("nan")
        z0 = float("nan")
    r0 = math.sqrt(c.hbar / (2.0 * M * omega_T))

    omega_plus = (omega_T + omega_Z_sq / (2.0 * omega_T)) / 2.0
    omega_minus = (omega_T - omega_Z_sq / (2.0 * omega_T)) / 2.0
    omega_k = omega_I + p.omega_S - omega_L * eta**2
    omega_mu = omega_I + 2.0 * omega_D - omega_L
    g_coupling = c.gamma0 * p.Bp * math.sqrt(S) * r0

    return DerivedQuantities(
        V=V, M=M, I=I, mu=mu, S=S, J=J, eta=eta, D=D,
        omega_L=omega_L, omega_D=omega_D, omega_I=omega_I,
        omega_Z=omega_Z, omega_Z_sq=omega_Z_sq, omega_T=omega_T,
        omega_plus=omega_plus, omega_minus=omega_minus,
        omega_k=omega_k, omega_mu=omega_mu, omega_S=p.omega_S,
        g_coupling=g_coupling, z0=z0, r0=r0,
        constants=c, params=p,
    )


def validate_regime(c: PhysicalConstants, p: SystemParams,
                    d: DerivedQuantities) -> RegimeReport:
    """Check the regime-validity conditions for (c, p, d).

    Never raises; every check is reported as a ratio plus a flag so callers
    can apply stricter cuts.  With Bpp <= 0 the gravity bound is undefined
    and gravity_ok is False.
    """
    if p.Bpp > 0:
        num = d.M * c.g_grav / (d.mu * p.Bpp)
        bound = min(math.sqrt(p.B0 / p.Bpp), p.Bp / p.Bpp)
        gravity_ratio = num / bound if bound > 0 else float("inf")
    else:
        gravity_ratio = float("nan")
    gravity_ok = gravity_ratio < _GRAVITY_THRESHOLD  # False for NaN

    slow_ratio = abs(d.I * p.omega_S / c.hbar) / d.S
    return RegimeReport(
        gravity_ratio=gravity_ratio,
        gravity_ok=bool(gravity_ok),
        slow_rotation_ratio=slow_ratio,
        slow_rotation_ok=slow_ratio < _SLOW_ROTATION_THRESHOLD,
        macrospin_ok=d.S >= _MACROSPIN_MIN,
        omega_T_real=p.Bp**2 - p.B0 * p.Bpp / 2.0 > 0,
        trap_z_confining=p.Bpp > 0,
    )
