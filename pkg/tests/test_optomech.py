"""Single-photon amplification schemes: kernels, exact shifts, small-time
forms, and the truncated-Fock / lab-frame oracles."""

import cmath
import math
from dataclasses import replace

import numpy as np
import pytest

from weakamp.errors import DegenerateError
from weakamp.fock import ModeSpace, PointerSpec, adequate_dim
from weakamp.optomech import (
    OptomechParams,
    brute_force_moments,
    coherent_phase,
    kernel,
    lab_frame_moments,
    mean_displacement,
    per_n_small_time_q,
    small_time_q,
    unamplified_displacement,
)
from weakamp.oracles import optomech_suite


def test_kernel_landmark_times():
    p = OptomechParams(k=0.005, z=0.9, theta=3e-4)
    k0 = kernel(0.0, p, scheme=1)
    assert k0.xi == 0
    assert k0.kerr == 0.0
    assert k0.Phi == pytest.approx(cmath.exp(1j * p.theta))
    k_half = kernel(math.pi, p, scheme=1)
    assert k_half.xi == pytest.approx(2 * p.k)  # farthest loop excursion
    k_full = kernel(2 * math.pi, p, scheme=1)
    assert abs(k_full.xi) < 1e-17
    assert k_full.kerr == pytest.approx(2 * math.pi * p.k**2)


def test_kernel_rejects_bad_scheme():
    with pytest.raises(ValueError):
        kernel(0.1, OptomechParams(k=0.01), scheme=3)


def test_coherent_phase_sign_convention():
    # phi(alpha, t) = 2 Im(alpha xi); beta = pi/2 makes it peak fastest
    xi = 0.005 * (1 - cmath.exp(-0.1j))
    assert coherent_phase(1j, xi) == pytest.approx(2 * xi.real)
    assert coherent_phase(1.0, xi) == pytest.approx(2 * xi.imag)


def test_mean_displacement_peak_is_sqrt19_sigma():
    p = OptomechParams(k=0.005, z=0.9, theta=5e-4)
    taus = np.linspace(1e-5, 0.1, 5000)
    peak = max(mean_displacement(float(t), p, 1).q_shift for t in taus)
    assert peak == pytest.approx(math.sqrt(19.0), rel=1e-3)


def test_mean_displacement_degenerate_at_origin():
    # theta = 0 at t = 0: the dark port is perfectly dark
    with pytest.raises(DegenerateError):
        mean_displacement(0.0, OptomechParams(k=0.01, z=0.5), scheme=1)


def test_oracle_suite_closed_vs_fock_and_frames():
    for check in optomech_suite():
        assert check.passed, f"{check.name}: {check.residual} >= {check.threshold}"


def test_zero_phase_scheme_still_shifts_via_kerr():
    # with theta = 0 the small-time form vanishes but the exact one picks up
    # the self-Kerr phase: kick kappa tau^2/2 plus Kerr-driven term kappa
    # tau^2/3, so ~ 5 sigma k tau^2 / 6; the Fock route must agree
    p = OptomechParams(k=0.05, z=0.5)
    tau = 0.3
    got = mean_displacement(tau, p, scheme=1)
    want = brute_force_moments(tau, p, 1, ModeSpace(60))
    assert got.q_shift == pytest.approx(want.q_shift, abs=1e-9)
    assert got.q_shift == pytest.approx(5 * p.sigma * p.k * tau**2 / 6, rel=0.05)
    assert small_time_q(tau, p, scheme=1) == 0.0


def test_small_time_matches_exact():
    p = OptomechParams(k=0.005, z=0.9, theta=5e-4)
    for tau in (0.005, 0.02, 0.05):
        exact = mean_displacement(tau, p, 1).q_shift
        approx = small_time_q(tau, p, 1)
        assert approx == pytest.approx(exact, rel=5e-3)


def test_small_time_peak_value_and_location():
    p = OptomechParams(k=0.005, z=0.9, theta=5e-4)
    w = p.width_factor
    tau_star = p.theta / (math.sqrt(w) * p.k)
    assert small_time_q(tau_star, p, 1) == pytest.approx(math.sqrt(w), rel=1e-12)
    assert small_time_q(2 * tau_star, p, 1) < math.sqrt(w)


def test_small_time_scheme2_beta_dependence():
    # beta = 0: plateau at 4 W a / (W + 4 a^2) with a = |alpha|
    z = 0.9
    w = (1 + z) / (1 - z)
    a = math.sqrt(w) / 2
    p = OptomechParams(k=0.005, z=z, alpha=a)
    assert small_time_q(1e-3, p, 2) == pytest.approx(math.sqrt(w), rel=1e-5)
    # beta = pi/2: response starts at zero and grows with tau
    p_quad = OptomechParams(k=0.005, z=z, alpha=a * 1j)
    assert abs(small_time_q(1e-4, p_quad, 2)) < abs(small_time_q(5e-4, p_quad, 2))


def test_per_n_ground_state_at_matched_phase():
    # n = 0 with theta = k tau gives exactly sigma
    p = OptomechParams(k=0.01, theta=0.002, sigma=1.3)
    tau = p.theta / p.k
    assert per_n_small_time_q(0, tau, p) == pytest.approx(p.sigma, rel=1e-12)


def test_per_n_monotone_and_saturating():
    p = OptomechParams(k=0.005, theta=5e-4)
    tau = 0.023
    vals = [per_n_small_time_q(n, tau, p) for n in range(0, 400, 7)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    limit = 2 * p.sigma * p.theta / (p.k * tau)
    assert per_n_small_time_q(10**8, tau, p) == pytest.approx(limit, rel=1e-6)
    with pytest.raises(ValueError):
        per_n_small_time_q(-1, tau, p)


def test_per_n_thermal_average_recovers_small_time():
    # averaging the per-n numerator and denominator over the geometric
    # distribution must reproduce the thermal small-time formula exactly
    z = 0.5
    p = OptomechParams(k=0.01, z=z, theta=0.003)
    tau = 0.05
    n = np.arange(300)
    wts = (1 - z) * z**n
    num = 2 * p.sigma * p.theta * p.k * tau * (2 * n + 1)
    den = p.theta**2 + p.k**2 * tau**2 * (2 * n + 1)
    averaged = float(np.sum(wts * num) / np.sum(wts * den))
    assert averaged == pytest.approx(small_time_q(tau, p, 1), rel=1e-8)


def test_unamplified_baseline():
    p = OptomechParams(k=0.005, sigma=1.0)
    assert unamplified_displacement(0.0, p) == 0.0
    # ceiling 4 k sigma, met exactly at half a mirror period
    assert unamplified_displacement(math.pi, p) == pytest.approx(
        4 * p.k * p.sigma, rel=1e-12
    )
    taus = np.linspace(0, 6 * math.pi, 20001)
    vals = [unamplified_displacement(float(t), p) for t in taus]
    assert max(vals) <= 4 * p.k * p.sigma + 1e-15


def test_unamplified_baseline_physical_units():
    # k = 0.005 on the reference mirror: ceiling 4 k sigma ~ 86.4 am
    sigma = 4.3184400156763355e-15
    p = OptomechParams(k=0.005, sigma=sigma)
    assert unamplified_displacement(math.pi, p) == pytest.approx(86.4e-18, rel=1e-3)


def test_scheme2_frames_agree_at_small_coupling():
    # lab frame minus the free coherent trajectory must equal the co-moving
    # result; k = 1e-3 keeps the dark-port weight ~1e-5 above the brute-force
    # cancellation floor (numerator and denominator both vanish with k^2)
    p = OptomechParams(k=1e-3, z=0.3, alpha=1.2 + 0.4j)
    spec = PointerSpec.thermal(p.z)
    disp = abs(p.alpha) + 2 * p.k
    # triple headroom: at z = 0.3 the narrow thermal tail alone would
    # undersize the displacement operator's unitarity requirement
    space = ModeSpace(adequate_dim(spec, extra_displacement=3 * disp))
    tau = 1.7
    lab = lab_frame_moments(tau, p, space)
    comoving = mean_displacement(tau, p, scheme=2)
    assert lab.q_shift == pytest.approx(comoving.q_shift, abs=1e-8)
    # and the closed-form shift itself survives k -> 0 (finite limit: kernel
    # and click probability vanish together)
    tinier = mean_displacement(tau, replace(p, k=1e-6), scheme=2)
    assert tinier.q_shift == pytest.approx(comoving.q_shift, rel=1e-2)
    assert abs(tinier.q_shift) > 0.1


def test_success_probability_between_zero_and_half():
    p = OptomechParams(k=0.05, z=0.5, theta=0.2)
    for tau in np.linspace(0.1, 2 * math.pi, 25):
        m = mean_displacement(float(tau), p, 1)
        assert 0.0 < m.success_prob < 0.5 + 1e-12
