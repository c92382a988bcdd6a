"""Acceptance suite: one criterion per test, each printing a PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines.  Three assertions are known to fail against the implemented dynamics
and are kept as stated; the accompanying comments give the mathematical
reason in each case.
"""

import time

import numpy as np
import pytest
from scipy import ndimage

from maglev import (Classification, CouplingMatrixC, PhysicalConstants,
                    bogoliubov_transform, build_C, build_MT, build_model,
                    classify_params, companion_real_root_count, covariance,
                    crosscheck_spectrum, derive_quantities, mode_metrics,
                    pt_coefficients, refine_boundary, refine_boundary_radius,
                    state_scan, sturm_real_root_count, sweep_grid)
from maglev.gaussian import bogoliubov_from_form

from conftest import make_params

G10 = np.diag([1.0, -1.0] * 5)
CONSTANTS = PhysicalConstants()
P_TEMPLATE = make_params(2e-9, 1e-2)

B0_RANGE = (1e-5, 1e-1)
R_RANGE = (5e-10, 1e-8)


@pytest.fixture(scope="module")
def a2_sweep():
    t0 = time.time()
    diagram = sweep_grid(CONSTANTS, P_TEMPLATE, B0_RANGE, R_RANGE, 200, 200)
    return diagram, time.time() - t0


def report(tag, ok, detail):
    print(f"[{tag}] {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


# --------------------------------------------------------------------- A1

def test_a1_dual_route_spectrum_oracle():
    rng = np.random.default_rng(12345)
    t0 = time.time()
    worst = 0.0
    n_draws = 600
    for i in range(n_draws):
        R = 10 ** rng.uniform(np.log10(0.5e-9), np.log10(20e-9))
        B0 = 10 ** rng.uniform(-5, -1)
        omega_S = (0.0, 1e3, -1e3)[i % 3]
        d = derive_quantities(CONSTANTS, make_params(R, B0, omega_S))
        resid = crosscheck_spectrum(build_model(d), pt_coefficients(d))
        worst = max(worst, resid)
    elapsed = time.time() - t0
    ok = worst < 1e-7 and elapsed < 10.0
    assert report("A1", ok,
                  f"{n_draws} draws, worst residual {worst:.3e}, {elapsed:.1f}s")


# --------------------------------------------------------------------- A2

def test_a2_runtime(a2_sweep):
    _, elapsed = a2_sweep
    assert report("A2", elapsed < 60.0, f"200x200 sweep in {elapsed:.1f}s")


def test_a2_two_connected_components(a2_sweep):
    diagram, _ = a2_sweep
    stable = (diagram.cells == int(Classification.STABLE_EDH)) \
        | (diagram.cells == int(Classification.STABLE_A))
    labels, n = ndimage.label(stable)  # default structure = 4-neighbor
    sizes = sorted(np.bincount(labels.ravel())[1:], reverse=True)
    detail = f"{n} components (sizes {sizes})"
    # known discrepancy: the low-field region is a tapering wedge whose tip
    # is narrower than one grid column; on this exact grid two tip cells
    # detach from the main region, giving 3 components instead of 2.
    assert report("A2", n == 2, detail)


def test_a2_low_field_border(a2_sweep):
    diagram, _ = a2_sweep
    b0 = refine_boundary(CONSTANTS, P_TEMPLATE, 1e-9, (1e-5, 1e-3))
    ref = diagram.borders.B_c1
    rel = abs(b0 - ref) / ref
    assert report("A2", rel < 0.25,
                  f"low-field border at R=1nm: {b0:.4e} vs B_c1 {ref:.4e} ({rel:.1%})")


def test_a2_high_field_border(a2_sweep):
    diagram, _ = a2_sweep
    b0 = refine_boundary(CONSTANTS, P_TEMPLATE, 1e-9, (5e-3, 1e-1))
    ref = diagram.borders.B_c2
    rel = abs(b0 - ref) / ref
    # known discrepancy: the computed onset of the high-field stable region
    # is radius-dependent and sits a factor 4-5 above the closed-form scale
    # B_c2 (which corresponds to omega_L = omega_D); the 10% bound cannot
    # hold for the implemented dynamics.
    assert report("A2", rel < 0.10,
                  f"high-field border at R=1nm: {b0:.4e} vs B_c2 {ref:.4e} ({rel:.1%})")


def test_a2_radius_border(a2_sweep):
    diagram, _ = a2_sweep
    r = refine_boundary_radius(CONSTANTS, P_TEMPLATE, 1e-3, (5e-10, 5e-9))
    ref = diagram.borders.R_c(1e-3)
    rel = abs(r - ref) / ref
    assert report("A2", rel < 0.25,
                  f"radius border at B0=1e-3: {r:.4e} vs R_c {ref:.4e} ({rel:.1%})")


# --------------------------------------------------------------------- A3

def test_a3_z_axis_criterion():
    bad = 0
    for Bpp in [1e6, 1e3, 1.0, 1e-6, -1e-6, -1.0, -1e3, -1e6]:
        v = classify_params(CONSTANTS, make_params(2e-9, 3e-4, Bpp=Bpp))
        z_unstable_expected = Bpp <= 0
        if v.z_stable == z_unstable_expected:
            bad += 1
        if z_unstable_expected and v.classification != Classification.UNSTABLE:
            bad += 1
    assert report("A3", bad == 0, f"sign sweep over 8 curvatures, {bad} mismatches")


# --------------------------------------------------------------------- A4

def _stable_sample(diagram, n=100):
    """Deterministic sample of n stable grid cells spanning both phases."""
    idx = np.argwhere((diagram.cells == 1) | (diagram.cells == 2))
    take = np.unique(np.linspace(0, len(idx) - 1, n).astype(int))
    return [(diagram.R_axis[i], diagram.B0_axis[j]) for i, j in idx[take]]


@pytest.fixture(scope="module")
def a4_transforms(a2_sweep):
    diagram, _ = a2_sweep
    out = []
    for R, B0 in _stable_sample(diagram, 100):
        d = derive_quantities(CONSTANTS, make_params(R, B0))
        model = build_model(d)
        out.append((model, bogoliubov_transform(model)))
    return out


def test_a4_symplectic_condition(a4_transforms):
    worst = max(np.abs(tr.T.conj().T @ G10 @ tr.T - G10).max()
                for _, tr in a4_transforms)
    assert report("A4", worst < 1e-10,
                  f"T^dag G T = G at {len(a4_transforms)} points, worst {worst:.2e}")


def test_a4_diagonalization_paired(a4_transforms):
    worst_off = 0.0
    worst_pair = 0.0
    for model, tr in a4_transforms:
        D = tr.T.conj().T @ (model.MT / model.omega_scale) @ tr.T
        off = D.copy()
        for i in range(5):
            off[2 * i, 2 * i] = 0.0
            off[2 * i + 1, 2 * i + 1] = 0.0
        worst_off = max(worst_off, np.abs(off).max())
        diag = np.real(np.diag(D))
        worst_pair = max(worst_pair, np.abs(diag[0::2] - diag[1::2]).max())
    ok = worst_off < 1e-9 and worst_pair < 1e-9
    assert report("A4", ok,
                  f"off-diagonal {worst_off:.2e}, pair mismatch {worst_pair:.2e}")


def test_a4_normal_form_entries_positive(a4_transforms):
    n_neg = sum(int((tr.omegas < 0).sum()) for _, tr in a4_transforms)
    # known discrepancy: the transverse quadratic form is indefinite (its
    # m-sector diagonal entry is -omega_L*eta^2 < 0 for any bias), so by
    # Sylvester's law exactly one normal-form pair is negative at every
    # stable point; all-positive entries are impossible here.
    assert report("A4", n_neg == 0,
                  f"{n_neg} negative normal-form entries across "
                  f"{len(a4_transforms)} points")


def test_a4_pure_state_and_metrics(a4_transforms):
    worst_det = 0.0
    ok_bounds = True
    for _, tr in a4_transforms:
        theta = covariance(tr)
        worst_det = max(worst_det, abs(np.linalg.det(2 * theta.Theta).real - 1.0))
        m = mode_metrics(theta)
        ok_bounds &= bool(np.all(m.purities > 0) and np.all(m.purities <= 1 + 1e-12))
        ok_bounds &= m.entanglement >= -1e-12
        ok_bounds &= m.squeezing >= 1 - 1e-12
    ok = worst_det < 1e-8 and ok_bounds
    assert report("A4", ok,
                  f"det(2 Theta) worst deviation {worst_det:.2e}, bounds ok={ok_bounds}")


# --------------------------------------------------------------------- A5

def test_a5_decoupled_limit():
    d = derive_quantities(CONSTANTS, make_params(2e-9, 3e-4))
    C = build_C(d).entries
    MT = build_MT(CouplingMatrixC(np.diag(np.diag(C))))
    m = mode_metrics(covariance(bogoliubov_from_form(MT)))
    ok = m.entanglement < 1e-10 and abs(m.squeezing - 1.0) < 1e-10
    assert report("A5", ok,
                  f"P = {m.entanglement:.2e}, |xi-1| = {abs(m.squeezing - 1):.2e}")


# --------------------------------------------------------------------- A6

# regression baselines frozen from the implementation after validation
# against an independent 35-digit recomputation (see the oracle test below)
A6_BASELINES = {
    2.5e-4: (0.46642408364012136, 1.429866625207001),
    4.0e-4: (0.53058254476698839, 1.4789188286286951),
    5.0e-2: (2.1971360800484968, 3.9271086145674525),
    8.0e-2: (1.9753119126583912, 3.3185680673626536),
}


def test_a6_state_scan_windows_and_continuity():
    b0s = np.geomspace(1e-5, 1e-1, 400)
    rows = state_scan(CONSTANTS, P_TEMPLATE, 2e-9, b0s)
    # rows appear exactly where the classifier says stable
    mism = 0
    for row, B0 in zip(rows, b0s):
        stable = classify_params(CONSTANTS, make_params(2e-9, B0)).classification in (
            Classification.STABLE_EDH, Classification.STABLE_A)
        mism += int(stable != row.stable)
    flags = [r.stable for r in rows]
    runs = sum(1 for i, f in enumerate(flags) if f and (i == 0 or not flags[i - 1]))
    finite = all(np.isfinite(r.entanglement) and np.isfinite(r.squeezing)
                 for r in rows if r.stable)
    # continuity at 0.1% steps away from the borders
    worst_step = 0.0
    for B0 in (2.5e-4, 4e-4, 5e-2, 8e-2):
        r1, r2 = state_scan(CONSTANTS, P_TEMPLATE, 2e-9, [B0, B0 * 1.001])
        worst_step = max(worst_step,
                         abs(r2.entanglement / r1.entanglement - 1.0),
                         abs(r2.squeezing / r1.squeezing - 1.0))
    ok = mism == 0 and runs == 2 and finite and worst_step < 0.05
    assert report("A6", ok,
                  f"window mismatches {mism}, stable windows {runs}, "
                  f"finite={finite}, worst 0.1%-step change {worst_step:.2%}")


def test_a6_regression_baselines():
    worst = 0.0
    for B0, (ent_ref, xi_ref) in A6_BASELINES.items():
        (row,) = state_scan(CONSTANTS, P_TEMPLATE, 2e-9, [B0])
        assert row.stable
        worst = max(worst, abs(row.entanglement / ent_ref - 1.0),
                    abs(row.squeezing / xi_ref - 1.0))
    assert report("A6", worst < 1e-9,
                  f"4 frozen baselines, worst relative drift {worst:.2e}")


def test_a6_high_precision_oracle():
    """Independent 35-digit recomputation of the metrics at one point per phase."""
    from mpmath import mp, mpf, matrix, eig, sqrt as mpsqrt, pi as mppi

    mp.dps = 35

    def mp_metrics(R, B0):
        hbar = mpf("1.054571817e-34")
        mu_B = mpf("9.2740100783e-24")
        amu = mpf("1.66053906660e-27")
        gamma0 = mpf("1.760859630e11")
        rho_M = mpf("1e4")
        rho_mu = rho_M * mu_B / (50 * amu)
        k_a, Bp, Bpp = mpf("1e4"), mpf("1e4"), mpf("1e6")
        V = 4 * mppi * R**3 / 3
        M = rho_M * V
        I = mpf(2) / 5 * M * R**2
        S = rho_mu * V / (hbar * gamma0)
        wL = gamma0 * B0
        wD = k_a * gamma0 / rho_mu
        wI = hbar * S / I
        wZ2 = hbar * gamma0 * Bpp * S / M
        wT = mpsqrt(hbar * gamma0 * S * (Bp**2 - B0 * Bpp / 2) / (M * B0))
        g = gamma0 * Bp * mpsqrt(S) * mpsqrt(hbar / (2 * M * wT))
        wmu = wI + 2 * wD - wL
        wp = (wT + wZ2 / (2 * wT)) / 2
        wm = (wT - wZ2 / (2 * wT)) / 2
        wk = wI - wL
        C = [[wm, g, -wp, -g, g], [g, wk, g, wL, wk], [-wp, g, wm, -g, g],
             [-g, wL, -g, -wL, wL], [g, wk, g, wL, wmu]]
        slot = [1, 7, 2, 4, 8]
        A = matrix(10, 10)
        for i in range(5):
            for j in range(5):
                A[slot[i], slot[j]] += 2 * C[i][j]
        MT = matrix(10, 10)
        for r in range(10):
            for c in range(10):
                MT[r, c] = (A[r, c] + A[r ^ 1, c ^ 1]) / 2
        scale = max(abs(MT[r, c]) for r in range(10) for c in range(10))
        gd = [1, -1] * 5
        K = matrix(10, 10)
        for r in range(10):
            for c in range(10):
                K[r, c] = gd[r] * MT[r, c] / scale
        ev, Vm = eig(K)
        kept = []
        for idx in range(10):
            v = [Vm[r, idx] for r in range(10)]
            nrm = mp.re(sum(gd[r] * abs(v[r])**2 for r in range(10)))
            if nrm > 0:
                kept.append([vi / mpsqrt(nrm) for vi in v])
        assert len(kept) == 5
        T = matrix(10, 10)
        for j, v in enumerate(kept):
            for r in range(10):
                T[r, 2 * j] = v[r]
                T[r, 2 * j + 1] = mp.conj(v[r ^ 1])
        Theta = T * T.transpose_conj() / 2
        purities = []
        for a in range(5):
            det = mp.re(Theta[2 * a, 2 * a] * Theta[2 * a + 1, 2 * a + 1]
                        - Theta[2 * a, 2 * a + 1] * Theta[2 * a + 1, 2 * a])
            purities.append(1 / (2 * mpsqrt(det)))
        evs, _ = eig(Theta)
        tmin = min(mp.re(e) for e in evs)
        return float(5 - sum(purities)), float(1 / mpsqrt(2 * tmin))

    worst = 0.0
    for B0 in (2.5e-4, 5e-2):
        ent_hp, xi_hp = mp_metrics(mpf("2e-9"), mpf(repr(B0)))
        (row,) = state_scan(CONSTANTS, P_TEMPLATE, 2e-9, [B0])
        worst = max(worst, abs(row.entanglement / ent_hp - 1.0),
                    abs(row.squeezing / xi_hp - 1.0))
    assert report("A6", worst < 1e-10,
                  f"high-precision oracle agreement, worst {worst:.2e}")


# --------------------------------------------------------------------- A7

def test_a7_sturm_companion_agreement(a2_sweep):
    diagram, _ = a2_sweep
    disagreements = 0
    checked = 0
    for i, R in enumerate(diagram.R_axis):
        for j, B0 in enumerate(diagram.B0_axis):
            if diagram.cells[i, j] == int(Classification.MARGINAL):
                continue
            d = derive_quantities(CONSTANTS, make_params(R, B0))
            q = pt_coefficients(d).q
            s = max(abs(q[k]) ** (1.0 / (5 - k)) for k in range(5) if q[k])
            qs = np.array([q[k] / s ** (5 - k) for k in range(6)])
            checked += 1
            if sturm_real_root_count(qs) != companion_real_root_count(qs):
                disagreements += 1
    assert report("A7", disagreements == 0,
                  f"{checked} non-marginal cells, {disagreements} disagreements")
