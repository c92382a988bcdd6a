"""Stability classification, phase borders, and parameter sweeps.

Two independent routes decide transverse stability and are cross-checked:
the quintic characteristic polynomial evaluated from closed-form
coefficients, and the eigenvalues of the dynamical matrix K_T built by the
hamiltonian module.  Linear stability requires all polynomial roots nu to be
real (the corresponding dynamical eigenvalues i*nu then lie on the imaginary
axis) and non-degenerate.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Callable

import numpy as np

from .errors import NoSignChange, RootSolverFailure
from .hamiltonian import QuadraticModel, build_model
from .params import DerivedQuantities, PhysicalConstants, SystemParams, derive_quantities

DEFAULT_TOL = 1e-8
_MARGINAL_FACTOR = 10.0


class Classification(IntEnum):
    UNSTABLE = 0
    STABLE_EDH = 1
    STABLE_A = 2
    MARGINAL = 3


@dataclass(frozen=True)
class CharPolyT:
    """Transverse characteristic polynomial.

    ``a`` holds the six complex coefficients a_0..a_5 of P_T(lambda)
    (ascending powers, a_5 = -i); ``q`` holds the six real ascending
    coefficients of the monic real quintic q(nu) = P_T(i*nu).
    """

    a: np.ndarray
    q: np.ndarray


@dataclass(frozen=True)
class StabilityVerdict:
    z_stable: bool
    roots_nu: np.ndarray          # the 5 roots of q, rad/s
    t_stable: bool
    classification: Classification
    max_offaxis: float            # max|Im x| over scaled roots x
    degeneracy_margin: float      # min pairwise |x_i - x_j| over scaled roots
    note: str = ""


@dataclass(frozen=True)
class Borders:
    B_c1: float
    B_c2: float
    R_c: Callable[[float], float]


@dataclass(frozen=True)
class PhaseDiagram:
    B0_axis: np.ndarray
    R_axis: np.ndarray
    cells: np.ndarray             # (len(R_axis), len(B0_axis)) of Classification ints
    max_offaxis: np.ndarray       # same shape, scaled off-axis residuals
    borders: Borders
    notes: dict = field(default_factory=dict)   # (i_R, j_B0) -> error message


def pt_coefficients(d: DerivedQuantities) -> CharPolyT:
    """Closed-form coefficients of the transverse characteristic polynomial."""
    wL, wD, wI, wS = d.omega_L, d.omega_D, d.omega_I, d.omega_S
    wZ2, wT2 = d.omega_Z_sq, d.omega_T**2
    a0 = -2.0 * wD * wI * wL * wT2
    alpha1 = wD * wZ2 * (wS + wI) + wS * wL * wT2
    a2 = -2.0 * wD * wI * wL - 0.5 * (2.0 * wD - wS) * wZ2 - wL * wT2
    alpha3 = -2.0 * wD * (wS + wI) + wS * wL + 0.5 * wZ2
    a4 = 2.0 * wD - wS - wL
    a = np.array([a0, 1j * alpha1, a2, 1j * alpha3, a4, -1j], dtype=complex)
    q = np.array([a0, -alpha1, -a2, alpha3, a4, 1.0], dtype=float)
    return CharPolyT(a=a, q=q)


def _poly_scale(q: np.ndarray) -> float:
    """Root-magnitude scale for a monic ascending quintic (Cauchy-style)."""
    vals = [abs(q[k]) ** (1.0 / (5 - k)) for k in range(5) if q[k] != 0.0]
    return max(vals) if vals else 1.0


def _scaled_roots(q: np.ndarray, scale: float) -> np.ndarray:
    """Roots of the scaled monic quintic via companion-matrix eigenvalues."""
    qs = np.array([q[k] / scale ** (5 - k) for k in range(6)])
    try:
        return np.roots(qs[::-1])
    except np.linalg.LinAlgError as exc:
        raise RootSolverFailure(str(exc)) from exc


def classify_point(d: DerivedQuantities, model: QuadraticModel,
                   tol: float = DEFAULT_TOL) -> StabilityVerdict:
    """Classify one parameter point.

    The axial test is the exact sign of B'' (omega_Z_sq).  Transverse roots
    come from the companion matrix of q after nondimensionalizing by the
    model's omega_scale; a root counts as real when
    |Im x| <= tol * max(1, |x|) in scaled units, and the spectrum counts as
    non-degenerate when the minimum pairwise distance exceeds tol.  Points
    within a factor 10 of either threshold are flagged MARGINAL rather than
    binned; a degenerate real spectrum is MARGINAL, never stable.
    """
    if not 0 < tol < 1e-4:
        raise ValueError("tol must lie in (0, 1e-4)")
    scale = model.omega_scale if model is not None else None
    poly = pt_coefficients(d)
    if not scale or not np.isfinite(scale):
        scale = _poly_scale(poly.q)
    x = _scaled_roots(poly.q, scale)
    m_real = float(max(abs(r.imag) / max(1.0, abs(r)) for r in x))
    dists = [abs(x[i] - x[j]) for i in range(5) for j in range(i + 1, 5)]
    m_deg = float(min(dists))

    z_stable = d.omega_Z_sq > 0
    t_stable = m_real <= tol and m_deg > tol

    if not z_stable:
        cls = Classification.UNSTABLE
    elif m_real <= tol:
        if m_deg >= _MARGINAL_FACTOR * tol:
            cls = (Classification.STABLE_EDH if d.omega_D > d.omega_L
                   else Classification.STABLE_A)
        else:
            cls = Classification.MARGINAL
    elif m_real <= _MARGINAL_FACTOR * tol:
        cls = Classification.MARGINAL
    else:
        cls = Classification.UNSTABLE

    roots = np.sort_complex(x * scale)
    return StabilityVerdict(
        z_stable=bool(z_stable), roots_nu=roots, t_stable=bool(t_stable),
        classification=cls, max_offaxis=m_real, degeneracy_margin=m_deg,
    )


def classify_params(c: PhysicalConstants, p: SystemParams,
                    tol: float = DEFAULT_TOL) -> StabilityVerdict:
    """Convenience: derive, build the model, classify."""
    d = derive_quantities(c, p)
    return classify_point(d, build_model(d), tol)


def analytic_borders(c: PhysicalConstants, p: SystemParams) -> Borders:
    """Closed-form approximate phase borders in the (B0, R) plane.

    B_c1 and the curve R_c(B0) delimit the low-field stable region; B_c2 is
    the quoted scale for the onset of the high-field region (see the sweep
    itself for the numerically exact boundaries).
    """
    B_c1 = 3.0 * (c.hbar * p.rho_mu * p.Bp**2
                  / (4.0 * c.mu_B * c.gamma0 * p.rho_M)) ** (1.0 / 3.0)
    B_c2 = 2.0 * p.k_a * c.mu_B / (c.hbar * c.gamma0 * p.rho_mu)

    def R_c(B0: float) -> float:
        return math.sqrt(5.0 * p.rho_mu / (8.0 * c.gamma0**2 * B0 * p.rho_M))

    return Borders(B_c1=B_c1, B_c2=B_c2, R_c=R_c)


def _replace_geometry(p: SystemParams, R: float, B0: float) -> SystemParams:
    return SystemParams(rho_M=p.rho_M, rho_mu=p.rho_mu, k_a=p.k_a,
                        R=R, B0=B0, Bp=p.Bp, Bpp=p.Bpp, omega_S=p.omega_S)


def _sweep_row(args):
    c, p_template, R, B0_values, tol = args
    out = []
    for B0 in B0_values:
        try:
            v = classify_params(c, _replace_geometry(p_template, R, B0), tol)
            out.append((int(v.classification), v.max_offaxis, ""))
        except Exception as exc:  # per-cell failures never abort the sweep
            out.append((int(Classification.UNSTABLE), float("nan"),
                        f"{type(exc).__name__}: {exc}"))
    return out


def sweep_grid(c: PhysicalConstants, p_template: SystemParams,
               B0_range: tuple, R_range: tuple, n_B0: int, n_R: int,
               tol: float = DEFAULT_TOL, log_spacing: bool = True,
               threads: int = 1) -> PhaseDiagram:
    """Classify every cell of an (R, B0) grid.

    Grid axes are log-spaced by default (both axes span decades).  Cells are
    independent; with ``threads > 1`` rows are distributed over worker
    processes, and assembly is by row index so the output is identical for
    any worker count.  Per-cell numerical failures are recorded in
    ``notes`` and classified UNSTABLE, never aborting the sweep.
    """
    if n_B0 < 2 or n_R < 2:
        raise ValueError("grid must be at least 2x2")
    space = np.geomspace if log_spacing else np.linspace
    B0_axis = space(B0_range[0], B0_range[1], n_B0)
    R_axis = space(R_range[0], R_range[1], n_R)

    jobs = [(c, p_template, R, B0_axis, tol) for R in R_axis]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_sweep_row, jobs, chunksize=max(1, n_R // (4 * threads))))
    else:
        rows = [_sweep_row(j) for j in jobs]

    cells = np.zeros((n_R, n_B0), dtype=int)
    offaxis = np.zeros((n_R, n_B0))
    notes = {}
    for i, row in enumerate(rows):
        for j, (cls, off, note) in enumerate(row):
            cells[i, j] = cls
            offaxis[i, j] = off
            if note:
                notes[(i, j)] = note
    return PhaseDiagram(B0_axis=B0_axis, R_axis=R_axis, cells=cells,
                        max_offaxis=offaxis,
                        borders=analytic_borders(c, p_template), notes=notes)


def _bisect(classify_at, lo: float, hi: float, rel_width: float = 1e-6) -> float:
    """Geometric bisection on classification; returns the final midpoint."""
    c_lo = classify_at(lo)
    c_hi = classify_at(hi)
    if c_lo == c_hi:
        raise NoSignChange(
            f"both bracket endpoints classify as {Classification(c_lo).name}"
        )
    while hi / lo - 1.0 > rel_width:
        mid = math.sqrt(lo * hi)
        if classify_at(mid) == c_lo:
            lo = mid
        else:
            hi = mid
    return math.sqrt(lo * hi)


def refine_boundary(c: PhysicalConstants, p_template: SystemParams,
                    fixed_R: float, B0_bracket: tuple,
                    tol: float = DEFAULT_TOL) -> float:
    """Bisect a classification boundary along B0 at fixed radius."""
    def classify_at(B0):
        return classify_params(c, _replace_geometry(p_template, fixed_R, B0),
                               tol).classification
    return _bisect(classify_at, B0_bracket[0], B0_bracket[1])


def refine_boundary_radius(c: PhysicalConstants, p_template: SystemParams,
                           fixed_B0: float, R_bracket: tuple,
                           tol: float = DEFAULT_TOL) -> float:
    """Bisect a classification boundary along R at fixed bias."""
    def classify_at(R):
        return classify_params(c, _replace_geometry(p_template, R, fixed_B0),
                               tol).classification
    return _bisect(classify_at, R_bracket[0], R_bracket[1])


def crosscheck_spectrum(model: QuadraticModel, poly: CharPolyT) -> float:
    """Dual-route spectrum residual.

    The multiset {roots of P_T} united with its complex conjugates must
    equal the eigenvalue multiset of i*K_T; equivalently, in nu units, the
    eigenvalues of K_T must cover {roots of q} and the negated conjugates.
    Returns the max over targets of the scaled distance to the nearest K_T
    eigenvalue; callers assert against their own tolerance.
    """
    s = model.omega_scale
    ev = np.linalg.eigvals(model.KT / s)
    nu = _scaled_roots(poly.q, s)
    targets = np.concatenate([nu, -np.conj(nu)])
    return float(max(np.min(np.abs(ev - t)) / max(1.0, abs(t)) for t in targets))


def _exact_rem(a: list, b: list) -> list:
    """Exact Fraction remainder of descending-coefficient polynomials."""
    a = a[:]
    while len(a) >= len(b):
        f = a[0] / b[0]
        for i, bc in enumerate(b):
            a[i] -= f * bc
        a.pop(0)  # leading term cancels exactly
    while a and a[0] == 0:
        a.pop(0)
    return a


def sturm_real_root_count(q: np.ndarray) -> int:
    """Count distinct real roots of a real polynomial by a Sturm chain.

    The float coefficients are promoted to exact rationals, so the chain is
    computed without rounding and the count is exact for the polynomial as
    given.  Each remainder is rescaled by its largest coefficient magnitude
    (a positive constant, which preserves the sign sequence) to keep the
    exact arithmetic bounded.
    """
    from fractions import Fraction

    coeffs = [Fraction(float(c)) for c in np.asarray(q, dtype=float)[::-1]]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if len(coeffs) <= 1:
        return 0
    deg = len(coeffs) - 1
    deriv = [coeffs[i] * (deg - i) for i in range(deg)]
    chain = [coeffs, deriv]
    while len(chain[-1]) > 1:
        rem = [-c for c in _exact_rem(chain[-2], chain[-1])]
        if not rem:
            break
        top = max(abs(c) for c in rem)
        chain.append([c / top for c in rem])

    def variations(at_plus_inf: bool) -> int:
        signs = []
        for p in chain:
            s = 1 if p[0] > 0 else -1
            if not at_plus_inf and (len(p) - 1) % 2 == 1:
                s = -s
            signs.append(s)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    return variations(False) - variations(True)


def companion_real_root_count(q: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    """Tolerance-based real-root count from companion eigenvalues."""
    s = _poly_scale(np.asarray(q, dtype=float))
    x = _scaled_roots(np.asarray(q, dtype=float), s)
    return int(sum(1 for r in x if abs(r.imag) <= tol * max(1.0, abs(r))))
