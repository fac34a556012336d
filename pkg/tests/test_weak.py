"""Postselected weak measurement: closed thermal forms vs the Fock oracle.

All brute-force comparisons go through conditioned_pointer_state /
brute_force_moments, which never touch the closed forms.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import minimize_scalar

from weakamp.errors import DegenerateError, OrthogonalError
from weakamp.fock import ModeSpace, PointerSpec, adequate_dim
from weakamp.weak import (
    General,
    PhaseOffset,
    PointerMoments,
    RealOffset,
    WMSetup,
    asymptotic_p_thermal,
    asymptotic_q_thermal,
    brute_force_moments,
    conditioned_pointer_state,
    exact_p_thermal_real,
    exact_q_thermal_imaginary,
    exact_thermal_moments,
    general_pointer_moments,
    postselection_amplitudes,
    weak_value,
    weak_value_regime_moments,
)


def _setup(post, a1=1.0, a2=-1.0, chi=0.01, sigma=1.0):
    return WMSetup(a1=a1, a2=a2, chi=chi, sigma=sigma, postselect=post)


def _brute(setup, z):
    spec = PointerSpec.thermal(z) if z > 0 else PointerSpec.ground()
    extra = setup.eta * max(abs(setup.a1), abs(setup.a2))
    space = ModeSpace(adequate_dim(spec, extra_displacement=extra))
    return brute_force_moments(setup, spec, space)


# ---------------------------------------------------------------- amplitudes


def test_postselection_amplitudes_balanced_phase():
    u, v = postselection_amplitudes(_setup(PhaseOffset(0.0)))
    assert u == pytest.approx(0.5)
    assert v == pytest.approx(-0.5)
    u, v = postselection_amplitudes(_setup(RealOffset(math.pi / 4)))
    # postselecting along the preselection itself: u = v = 1/2... times signs
    assert u + v == pytest.approx(math.sin(math.pi / 4))


def test_weak_value_real_offset_is_cotangent():
    aw = weak_value(_setup(RealOffset(0.1))).value
    assert aw.imag == pytest.approx(0.0, abs=1e-12)
    assert aw.real == pytest.approx(math.cos(0.1) / math.sin(0.1), rel=1e-12)


def test_weak_value_phase_offset_is_imaginary():
    aw = weak_value(_setup(PhaseOffset(0.1))).value
    # (a1 - a2 e^{-i phi}) / (1 - e^{-i phi}) = -i cot(phi/2) for a = +-1
    assert aw.real == pytest.approx(0.0, abs=1e-10)
    assert aw.imag == pytest.approx(-1.0 / math.tan(0.05), rel=1e-10)


def test_weak_value_orthogonal_raises():
    with pytest.raises(OrthogonalError):
        weak_value(_setup(PhaseOffset(0.0)))
    with pytest.raises(OrthogonalError):
        weak_value(_setup(RealOffset(0.0)))


# ----------------------------------------------------------- exact vs brute


def test_exact_matches_brute_weak_kick():
    got = exact_thermal_moments(_setup(PhaseOffset(0.03)), 0.5)
    want = _brute(_setup(PhaseOffset(0.03)), 0.5)
    assert got.q_shift == pytest.approx(want.q_shift, abs=1e-8)
    assert got.p_shift == pytest.approx(want.p_shift, abs=1e-8)
    assert got.success_prob == pytest.approx(want.success_prob, abs=1e-10)


def test_exact_matches_brute_outside_weak_regime():
    # the closed form is exact in eta, not perturbative
    setup = _setup(PhaseOffset(0.3), chi=0.2)
    got = exact_thermal_moments(setup, 0.6)
    want = _brute(setup, 0.6)
    assert got.q_shift == pytest.approx(want.q_shift, abs=1e-8)
    assert got.p_shift == pytest.approx(want.p_shift, abs=1e-8)


def test_exact_matches_brute_general_postselection():
    setup = _setup(General(theta_f=-0.6, phi=0.2), chi=0.05)
    got = exact_thermal_moments(setup, 0.5)
    want = _brute(setup, 0.5)
    assert got.q_shift == pytest.approx(want.q_shift, abs=1e-8)
    assert got.p_shift == pytest.approx(want.p_shift, abs=1e-8)


def test_asymmetric_eigenvalues_against_brute():
    setup = _setup(RealOffset(0.05), a1=2.0, a2=0.5, chi=0.04)
    got = exact_thermal_moments(setup, 0.4)
    want = _brute(setup, 0.4)
    assert got.q_shift == pytest.approx(want.q_shift, abs=1e-8)
    assert got.p_shift == pytest.approx(want.p_shift, abs=1e-8)


def test_zero_coupling_gives_zero_shift():
    got = exact_thermal_moments(_setup(PhaseOffset(0.1), chi=0.0), 0.7)
    assert got.q_shift == 0.0
    assert got.p_shift == 0.0
    assert got.success_prob == pytest.approx(math.sin(0.05) ** 2, rel=1e-12)


def test_conditioned_state_trace_is_success_probability():
    setup = _setup(PhaseOffset(0.08), chi=0.02)
    z = 0.5
    spec = PointerSpec.thermal(z)
    space = ModeSpace(adequate_dim(spec, extra_displacement=setup.eta))
    cond = conditioned_pointer_state(setup, spec, space)
    exact = exact_thermal_moments(setup, z)
    assert cond.trace == pytest.approx(exact.success_prob, abs=1e-10)


# -------------------------------------------------- named postselection ops


def test_phase_offset_wrapper_equals_unified_form():
    m1 = exact_q_thermal_imaginary(0.8, 0.02, 0.05, 1.0, -1.0, 2.0)
    setup = WMSetup(a1=1.0, a2=-1.0, chi=0.01, sigma=2.0, postselect=PhaseOffset(0.05))
    m2 = exact_thermal_moments(setup, 0.8)
    assert m1 == m2


def test_phase_offset_closed_expression():
    # <q> = sigma W eta (a2-a1) E sin(phi) / (1 - E cos(phi))
    z, eta, phi, sigma = 0.9, 0.01, 0.04, 1.5
    w = (1 + z) / (1 - z)
    e = math.exp(-0.5 * w * eta**2 * 4.0)
    expected = sigma * w * eta * (-2.0) * e * math.sin(phi) / (1 - e * math.cos(phi))
    got = exact_q_thermal_imaginary(z, eta, phi, 1.0, -1.0, sigma)
    assert got.q_shift == pytest.approx(expected, rel=1e-12)
    assert got.success_prob == pytest.approx((1 - e * math.cos(phi)) / 2, rel=1e-12)


def test_real_offset_closed_expression():
    # <p> = -(eta/(2 sigma)) [(a1+a2) + (a1-a2) sin(2 eps)/(1 - E cos(2 eps))]
    z, eta, eps, sigma = 0.6, 0.03, 0.07, 0.9
    a1, a2 = 1.5, -0.5
    w = (1 + z) / (1 - z)
    e = math.exp(-0.5 * w * eta**2 * (a1 - a2) ** 2)
    expected = -(eta / (2 * sigma)) * (
        (a1 + a2) + (a1 - a2) * math.sin(2 * eps) / (1 - e * math.cos(2 * eps))
    )
    got = exact_p_thermal_real(z, eta, eps, a1, a2, sigma)
    assert got.p_shift == pytest.approx(expected, rel=1e-12)
    # angle-offset postselection never moves the thermal pointer's position
    assert got.q_shift == 0.0


def test_complementarity_in_the_fock_basis():
    # symmetric eigenvalues: phase offset leaves p alone, angle offset leaves q
    phase = _brute(_setup(PhaseOffset(0.05), chi=0.05), 0.5)
    assert abs(phase.p_shift) < 1e-9
    angle = _brute(_setup(RealOffset(0.05), chi=0.05), 0.5)
    assert abs(angle.q_shift) < 1e-9


def test_degenerate_overlap_raises():
    # orthogonal postselection with zero kick: success probability underflows
    with pytest.raises(DegenerateError):
        exact_thermal_moments(_setup(PhaseOffset(0.0), chi=0.0), 0.5)


# ----------------------------------------------------------- amplification


def test_asymptotic_q_peaks_at_sqrt_w_sigma():
    z, eta, sigma = 0.9, 0.005, 1.0
    w = (1 + z) / (1 - z)
    phi_star = math.sqrt(w) * 2.0 * eta  # sqrt(W) |a1-a2| eta
    peak = asymptotic_q_thermal(z, eta, phi_star, 1.0, -1.0, sigma)
    assert peak == pytest.approx(-math.sqrt(w) * sigma, rel=1e-12)
    assert asymptotic_q_thermal(z, eta, -phi_star, 1.0, -1.0, sigma) == pytest.approx(
        math.sqrt(w) * sigma, rel=1e-12
    )


def test_asymptotic_q_argmax_matches_golden_section():
    z, eta, sigma = 0.9, 0.005, 1.0
    w = (1 + z) / (1 - z)
    res = minimize_scalar(
        lambda phi: asymptotic_q_thermal(z, eta, phi, 1.0, -1.0, sigma),
        bounds=(1e-6, 0.5),
        method="bounded",
        options={"xatol": 1e-14},
    )
    # the optimizer can't localize a quadratic extremum past ~sqrt(eps)*scale
    assert res.x == pytest.approx(math.sqrt(w) * 2.0 * eta, abs=1e-7)


def test_asymptotic_q_bounded_by_thermal_ceiling():
    z, eta, sigma = 0.8, 0.02, 1.3
    w = (1 + z) / (1 - z)
    for phi in np.linspace(-0.3, 0.3, 101):
        val = asymptotic_q_thermal(z, eta, float(phi), 1.0, -1.0, sigma)
        assert abs(val) <= math.sqrt(w) * sigma * (1 + 1e-12)


def test_asymptotic_p_peaks_at_inverse_width():
    z, eta, sigma = 0.7, 0.01, 1.0
    w = (1 + z) / (1 - z)
    eps_star = math.sqrt(w) * eta  # sqrt(W) |a1-a2| eta / 2
    peak = asymptotic_p_thermal(z, eta, eps_star, 1.0, -1.0, sigma)
    assert peak == pytest.approx(-1.0 / (2 * sigma * math.sqrt(w)), rel=1e-12)


def test_asymptotic_matches_exact_for_small_offset():
    z, eta, phi = 0.9, 0.001, 0.01
    exact = exact_q_thermal_imaginary(z, eta, phi, 1.0, -1.0, 1.0).q_shift
    asym = asymptotic_q_thermal(z, eta, phi, 1.0, -1.0, 1.0)
    assert exact == pytest.approx(asym, rel=2e-3)


def test_exact_peak_reaches_sqrt19_sigma():
    # z = 0.9: scanning the exact response over phi tops out at sqrt(19) sigma
    z, eta = 0.9, 0.001
    best = max(
        abs(exact_q_thermal_imaginary(z, eta, float(phi), 1.0, -1.0, 1.0).q_shift)
        for phi in np.linspace(1e-5, 0.05, 4000)
    )
    assert best == pytest.approx(math.sqrt(19.0), rel=1e-3)


# ------------------------------------------------------- weak-value regime


def test_regime_moments_frozen_values():
    m = weak_value_regime_moments(0.9, 1e-4, -200j, 1.0)
    assert m.q_shift == pytest.approx(-0.76, rel=1e-3)
    assert m.success_prob is None
    m2 = weak_value_regime_moments(0.9, 1e-4, 100.0, 1.0)
    assert m2.p_shift == pytest.approx(-0.01, rel=1e-12)


def test_regime_tracks_exact_at_one_percent():
    z, chi = 0.9, 1e-4
    s = _setup(PhaseOffset(1e-2), chi=chi)
    aw = weak_value(s).value
    exact = exact_thermal_moments(s, z)
    approx = weak_value_regime_moments(z, chi, aw, 1.0)
    assert exact.q_shift == pytest.approx(approx.q_shift, rel=1e-2)
    s2 = _setup(RealOffset(1e-2), chi=chi)
    aw2 = weak_value(s2).value
    exact2 = exact_thermal_moments(s2, z)
    approx2 = weak_value_regime_moments(z, chi, aw2, 1.0)
    assert exact2.p_shift == pytest.approx(approx2.p_shift, rel=1e-2)


# --------------------------------------------------- general pointer result


def test_general_pointer_reduces_to_thermal_asymptotics():
    z, chi, sigma = 0.6, 0.01, 1.0
    w = (1 + z) / (1 - z)
    moments = PointerMoments(
        q_mean=0.0, q2_mean=w * sigma**2, comm=0.0, anticomm=2 * w * sigma**2
    )
    for phi in (0.005, 0.02, 0.1):
        got = general_pointer_moments(moments, chi, 1.0, -1.0, 0.0, phi, "q")
        ref = asymptotic_q_thermal(z, chi * sigma, phi, 1.0, -1.0, sigma)
        assert got.q_shift == pytest.approx(ref, rel=1e-12)


def test_general_pointer_momentum_peak_for_ground_state():
    # ground pointer reading out p: the shift peaks at 1/(2 sigma) when
    # 4 eps = chi Delta sigma
    sigma, chi = 0.7, 0.02
    delta = 2.0
    moments = PointerMoments(
        q_mean=0.0, q2_mean=sigma**2, comm=-1j, anticomm=0.0
    )
    eps_star = chi * delta * sigma / 4.0
    got = general_pointer_moments(moments, chi, -1.0, 1.0, eps_star, 0.0, "p")
    assert got.p_shift == pytest.approx(1.0 / (2 * sigma), rel=1e-12)
    worse = general_pointer_moments(moments, chi, -1.0, 1.0, 3 * eps_star, 0.0, "p")
    assert abs(worse.p_shift) < abs(got.p_shift)


def test_general_pointer_success_probability_quarter_rule():
    moments = PointerMoments(q_mean=0.0, q2_mean=1.0, comm=0.0, anticomm=2.0)
    got = general_pointer_moments(moments, 0.0, 1.0, -1.0, 0.1, 0.0, "q")
    # chi = 0: A0 = 16 eps^2, success = 4 eps^2 = sin^2(eps_I) to leading order
    assert got.success_prob == pytest.approx(4 * 0.1**2)


def test_general_pointer_rejects_unknown_observable():
    moments = PointerMoments(q_mean=0.0, q2_mean=1.0, comm=0.0, anticomm=0.0)
    with pytest.raises(ValueError):
        general_pointer_moments(moments, 0.01, 1.0, -1.0, 0.0, 0.1, "x")


# ------------------------------------------------------------- properties


@settings(max_examples=25, deadline=None)
@given(
    z=st.floats(min_value=0.0, max_value=0.9),
    eta=st.floats(min_value=1e-3, max_value=0.25),
    off=st.floats(min_value=0.01, max_value=0.4),
    use_phase=st.booleans(),
)
def test_property_exact_equals_brute(z, eta, off, use_phase):
    post = PhaseOffset(off) if use_phase else RealOffset(off)
    setup = WMSetup(a1=1.0, a2=-1.0, chi=eta, sigma=1.0, postselect=post)
    got = exact_thermal_moments(setup, z)
    want = _brute(setup, z)
    assert got.q_shift == pytest.approx(want.q_shift, abs=1e-6)
    assert got.p_shift == pytest.approx(want.p_shift, abs=1e-6)
    assert 0.0 <= got.success_prob <= 1.0
