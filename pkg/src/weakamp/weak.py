"""Postselected weak measurement of a two-level system with a mixed pointer.

The system observable A (eigenvalues a1, a2) couples impulsively to the
pointer momentum, H = chi * A (x) q_hat-conjugate generator, so each system
eigenstate displaces the pointer by D(-i a_j eta) with eta = chi * sigma.
Preselection along (cos th_i, sin th_i) and postselection along
(cos th_f, e^{i phi} sin th_f) leave the pointer in

    rho_m = K rho K^dag,   K = u D(-i a1 eta) + v D(-i a2 eta),
    u = cos th_f cos th_i,   v = e^{-i phi} sin th_f sin th_i.

For a thermal pointer every moment of rho_m has a closed form; the truncated
Fock route (`conditioned_pointer_state` + `brute_force_moments`) provides the
independent cross-check.

Two experimentally natural postselections are provided as constructors on the
single General code path:

  * RealOffset(eps):  angle offset, overlap sin(eps); amplifies momentum.
  * PhaseOffset(phi): phase offset, overlap (1 - e^{-i phi})/2; amplifies
    position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, OrthogonalError
from .fock import (
    DensityOperator,
    ModeSpace,
    PointerSpec,
    displacement_op,
    quadrature_moments,
    realize_pointer,
)

_UNDERFLOW = 1e-300


@dataclass(frozen=True)
class RealOffset:
    """Postselect at angle -(pi/4 - eps) with no phase (overlap sin eps)."""

    eps: float


@dataclass(frozen=True)
class PhaseOffset:
    """Postselect at angle -pi/4 with phase phi (overlap (1 - e^{-i phi})/2)."""

    phi: float


@dataclass(frozen=True)
class General:
    """Arbitrary postselection angle and phase."""

    theta_f: float
    phi: float


Postselection = RealOffset | PhaseOffset | General


@dataclass(frozen=True)
class WMSetup:
    """Impulsive weak-measurement configuration.

    chi is the measurement strength (momentum kick per eigenvalue unit);
    eta = chi * sigma is the dimensionless kick. Preselection defaults to the
    balanced pi/4 superposition.
    """

    a1: float
    a2: float
    chi: float
    sigma: float
    postselect: Postselection
    preselect_theta: float = math.pi / 4

    def __post_init__(self) -> None:
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")

    @property
    def eta(self) -> float:
        return self.chi * self.sigma

    def as_general(self) -> General:
        post = self.postselect
        if isinstance(post, RealOffset):
            return General(theta_f=-(math.pi / 4 - post.eps), phi=0.0)
        if isinstance(post, PhaseOffset):
            return General(theta_f=-math.pi / 4, phi=post.phi)
        return post


@dataclass(frozen=True)
class MomentResult:
    """Conditioned pointer shifts relative to the unconditioned state.

    success_prob is the exact unnormalized trace when the producing routine
    knows it, and None otherwise (regime formulas carry no normalization).
    Routines that compute only one quadrature leave the other None.
    """

    q_shift: float | None
    p_shift: float | None
    success_prob: float | None


@dataclass(frozen=True)
class WeakValue:
    value: complex


@dataclass(frozen=True)
class PointerMoments:
    """Moments of the unconditioned pointer state entering the general
    pointer-response formula.  comm = <[M, q]>, anticomm = <{M, q}> for the
    observable M being read out; m_mean and qmq (= <q M q>) vanish for any
    symmetric pointer density and default to zero.
    """

    q_mean: float
    q2_mean: float
    comm: complex
    anticomm: float
    m_mean: float = 0.0
    qmq: float = 0.0


def postselection_amplitudes(setup: WMSetup) -> tuple[complex, complex]:
    """Branch amplitudes (u, v) of the conditioning kernel K."""
    g = setup.as_general()
    th_i = setup.preselect_theta
    u = complex(math.cos(g.theta_f) * math.cos(th_i))
    v = np.exp(-1j * g.phi) * math.sin(g.theta_f) * math.sin(th_i)
    return u, v


def weak_value(setup: WMSetup) -> WeakValue:
    """A_w = <f|A|i>/<f|i>; raises OrthogonalError when the overlap vanishes."""
    u, v = postselection_amplitudes(setup)
    overlap = u + v
    if abs(overlap) < 1e-12:
        raise OrthogonalError(
            "pre- and postselection are orthogonal; the weak value diverges"
        )
    return WeakValue((u * setup.a1 + v * setup.a2) / overlap)


def conditioned_pointer_state(
    setup: WMSetup, pointer: PointerSpec, space: ModeSpace
) -> DensityOperator:
    """Unnormalized pointer state K rho K^dag after postselection.

    The trace of the result is the postselection success probability.
    """
    u, v = postselection_amplitudes(setup)
    rho = realize_pointer(pointer, space)
    d1 = displacement_op(-1j * setup.a1 * setup.eta, space)
    d2 = displacement_op(-1j * setup.a2 * setup.eta, space)
    k = u * d1 + v * d2
    m = k @ rho.matrix @ k.conj().T
    return DensityOperator(
        m, space, tail_weight=rho.tail_weight, normalized=False
    )


def brute_force_moments(
    setup: WMSetup, pointer: PointerSpec, space: ModeSpace
) -> MomentResult:
    """Conditioned shifts evaluated in the truncated Fock basis.

    This is the oracle route: no closed forms, just K rho K^dag and traces.
    """
    cond = conditioned_pointer_state(setup, pointer, space)
    prob = cond.trace
    if prob < _UNDERFLOW:
        raise DegenerateError("postselection probability underflows")
    base = realize_pointer(pointer, space)
    m_cond = quadrature_moments(cond.matrix / prob, setup.sigma)
    m_base = quadrature_moments(base, setup.sigma)
    return MomentResult(
        q_shift=m_cond.q_mean - m_base.q_mean,
        p_shift=m_cond.p_mean - m_base.p_mean,
        success_prob=prob,
    )


def exact_thermal_moments(setup: WMSetup, z: float) -> MomentResult:
    """Closed-form conditioned shifts for a thermal pointer, any postselection.

    With E = exp(-W eta^2 (a1-a2)^2 / 2) and branch amplitudes (u, v):

        Tr(rho_m)   = |u|^2 + |v|^2 + 2 Re(u v*) E
        Tr(rho_m q) =  2 sigma E eta W (a1 - a2) Im(u v*)
        Tr(rho_m p) = -(eta/sigma) [ |u|^2 a1 + |v|^2 a2 + E (a1+a2) Re(u v*) ]

    derived by Gaussian displacement averages over the geometric number
    distribution; shifts are the trace ratios (the thermal pointer has zero
    unconditioned means).
    """
    if not 0.0 <= z < 1.0:
        raise ValueError(f"need 0 <= z < 1, got {z}")
    w = (1.0 + z) / (1.0 - z)
    delta = setup.a1 - setup.a2
    eta = setup.eta
    u, v = postselection_amplitudes(setup)
    big_e = math.exp(-0.5 * w * eta**2 * delta**2)
    uv = u * np.conjugate(v)
    trace = (abs(u) ** 2 + abs(v) ** 2 + 2.0 * uv.real * big_e).real
    if trace < _UNDERFLOW:
        raise DegenerateError("postselection probability underflows")
    tr_q = 2.0 * setup.sigma * big_e * eta * w * delta * uv.imag
    tr_p = -(eta / setup.sigma) * (
        abs(u) ** 2 * setup.a1
        + abs(v) ** 2 * setup.a2
        + big_e * (setup.a1 + setup.a2) * uv.real
    )
    return MomentResult(
        q_shift=tr_q / trace, p_shift=tr_p / trace, success_prob=float(trace)
    )


def exact_q_thermal_imaginary(
    z: float, eta: float, phi: float, a1: float, a2: float, sigma: float
) -> MomentResult:
    """Exact thermal-pointer shifts for phase-offset (imaginary-overlap)
    postselection.  The position shift is

        <q> = sigma W eta (a2 - a1) E sin(phi) / (1 - E cos(phi)),

    success probability (1 - E cos(phi)) / 2.
    """
    setup = WMSetup(
        a1=a1, a2=a2, chi=eta / sigma, sigma=sigma, postselect=PhaseOffset(phi)
    )
    return exact_thermal_moments(setup, z)


def exact_p_thermal_real(
    z: float, eta: float, eps: float, a1: float, a2: float, sigma: float
) -> MomentResult:
    """Exact thermal-pointer shifts for angle-offset (real-overlap)
    postselection.  The momentum shift is

        <p> = -(eta/(2 sigma)) [ (a1+a2) + (a1-a2) sin(2 eps)/(1 - E cos(2 eps)) ],

    success probability (1 - E cos(2 eps)) / 2; the position shift is
    identically zero.
    """
    setup = WMSetup(
        a1=a1, a2=a2, chi=eta / sigma, sigma=sigma, postselect=RealOffset(eps)
    )
    return exact_thermal_moments(setup, z)


def asymptotic_q_thermal(
    z: float, eta: float, phi: float, a1: float, a2: float, sigma: float
) -> float:
    """Small-offset position response 2 sigma W phi eta (a2-a1) /
    (phi^2 + W (a2-a1)^2 eta^2); peaks at +-sqrt(W) sigma."""
    w = (1.0 + z) / (1.0 - z)
    delta = a2 - a1
    den = phi**2 + w * delta**2 * eta**2
    if den == 0.0:
        raise DegenerateError("vanishing offset and coupling")
    return 2.0 * sigma * w * phi * eta * delta / den


def asymptotic_p_thermal(
    z: float, eta: float, eps: float, a1: float, a2: float, sigma: float
) -> float:
    """Small-offset momentum response 4 (a2-a1) eps eta /
    (2 sigma (4 eps^2 + W (a2-a1)^2 eta^2)); peaks at +-1/(2 sigma sqrt(W))."""
    w = (1.0 + z) / (1.0 - z)
    delta = a2 - a1
    den = 4.0 * eps**2 + w * delta**2 * eta**2
    if den == 0.0:
        raise DegenerateError("vanishing offset and coupling")
    return 4.0 * delta * eps * eta / (2.0 * sigma * den)


def weak_value_regime_moments(
    z: float, chi: float, a_w: complex, sigma: float
) -> MomentResult:
    """Linear-response pointer shifts in terms of the weak value.

    For a thermal pointer the imaginary part drives the position,
    q_shift = 2 chi Im(A_w) W sigma^2, and the real part the momentum recoil,
    p_shift = -chi Re(A_w).  No normalization is available at this order, so
    success_prob is None.
    """
    w = (1.0 + z) / (1.0 - z)
    a_w = complex(a_w)
    return MomentResult(
        q_shift=2.0 * chi * a_w.imag * w * sigma**2,
        p_shift=-chi * a_w.real,
        success_prob=None,
    )


def general_pointer_moments(
    moments: PointerMoments,
    chi: float,
    a1: float,
    a2: float,
    eps: float,
    phi: float,
    observable: str,
) -> MomentResult:
    """Conditioned shift of an arbitrary pointer observable M to quadratic
    order in the small quantities (eps, phi, chi), for pre/post selections
    rotated by +-eps off the balanced pair with relative phase phi:

        <M>_f = [ (16 eps^2 + phi^2) <M> + i 4 eps chi D <[M,q]>
                  + phi chi D <{M,q}> + chi^2 D^2 <q M q> ] / A0,
        A0    = 16 eps^2 + phi^2 + 2 phi chi D <q> + chi^2 D^2 <q^2>,

    with D = a2 - a1.  Works for any pointer density whose listed moments are
    supplied; for symmetric densities m_mean and qmq vanish.
    """
    if observable not in ("q", "p"):
        raise ValueError("observable must be 'q' or 'p'")
    delta = a2 - a1
    a0 = (
        16.0 * eps**2
        + phi**2
        + 2.0 * phi * chi * delta * moments.q_mean
        + chi**2 * delta**2 * moments.q2_mean
    )
    num = (
        (16.0 * eps**2 + phi**2) * moments.m_mean
        + (1j * 4.0 * eps * chi * delta * complex(moments.comm)).real
        + phi * chi * delta * moments.anticomm
        + chi**2 * delta**2 * moments.qmq
    )
    shift = num / a0 - moments.m_mean
    return MomentResult(
        q_shift=shift if observable == "q" else None,
        p_shift=shift if observable == "p" else None,
        success_prob=a0 / 4.0,
    )
