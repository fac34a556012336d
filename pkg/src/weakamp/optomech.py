"""Single-photon optomechanical amplification of thermal mirror motion.

A photon in one interferometer arm couples to a mirror (frequency omega_m,
coupling k = g/omega_m) and is then detected at the dark port.  Conditioned on
that click, the mirror -- initially thermal (scheme 1) or coherently displaced
thermal (scheme 2) -- acquires a position shift far beyond the one-photon
momentum kick.

Scheme 1 uses a phase shifter theta in the photon arm; scheme 2 replaces it
with the phase phi(alpha, t) = 2 Im(alpha xi(t)) that the photon picks up from
the mirror's coherent motion.  In both cases the conditioned mirror state is

    rho_m = K rho K^dag,   K = (e^{i(kerr + Omega)} D(xi) - 1) / 2,

with xi(t) = k (1 - e^{-i omega_m t}) the loop displacement and
kerr(t) = k^2 (omega_m t - sin omega_m t) the self-Kerr phase.  For scheme 2
this kernel lives in the frame co-moving with the free coherent trajectory
alpha e^{-i omega_m t}; all scheme-2 shifts are reported in that frame
(deviation from the undisturbed motion).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegenerateError
from .fock import (
    ModeSpace,
    PointerSpec,
    displacement_op,
    position_op,
    realize_pointer,
)

_UNDERFLOW = 1e-300


@dataclass(frozen=True)
class OptomechParams:
    """Parameters of the photon-mirror interaction.

    With omega_m = 1 (the default) all times are the dimensionless omega_m*t
    used in the figures; the experiment layer passes real rad/s and seconds.
    """

    k: float
    omega_m: float = 1.0
    z: float = 0.0
    theta: float = 0.0
    alpha: complex = 0j
    sigma: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.z < 1.0:
            raise ValueError(f"need 0 <= z < 1, got {self.z}")
        if self.omega_m <= 0 or self.sigma <= 0:
            raise ValueError("omega_m and sigma must be positive")

    @property
    def width_factor(self) -> float:
        return (1.0 + self.z) / (1.0 - self.z)


@dataclass(frozen=True)
class SchemeKernel:
    """Ingredients of the conditioning kernel at a given time.

    xi: mirror loop displacement; kerr: self-Kerr phase; omega: interference
    phase (theta for scheme 1, phi(alpha,t) for scheme 2); Phi: thermally
    averaged branch overlap exp(-W|xi|^2/2 + i(kerr + omega)).
    """

    xi: complex
    kerr: float
    omega: float
    Phi: complex


class SchemeMoments(NamedTuple):
    q_shift: float
    success_prob: float


def coherent_phase(alpha: complex, xi: complex) -> float:
    """phi(alpha, t) = 2 Im(alpha xi): the phase a photon gains against a
    mirror already moving on the coherent trajectory alpha."""
    return 2.0 * (complex(alpha) * xi).imag


def kernel(t: float, p: OptomechParams, scheme: int) -> SchemeKernel:
    """Kernel pieces at time t (seconds; omega_m*t if omega_m == 1)."""
    if scheme not in (1, 2):
        raise ValueError("scheme must be 1 or 2")
    tau = p.omega_m * t
    xi = p.k * (1.0 - cmath.exp(-1j * tau))
    kerr = p.k**2 * (tau - math.sin(tau))
    omega = p.theta if scheme == 1 else coherent_phase(p.alpha, xi)
    w = p.width_factor
    phi_big = cmath.exp(-0.5 * w * abs(xi) ** 2 + 1j * (kerr + omega))
    return SchemeKernel(xi=xi, kerr=kerr, omega=omega, Phi=phi_big)


def mean_displacement(t: float, p: OptomechParams, scheme: int) -> SchemeMoments:
    """Exact conditioned mirror position shift and dark-port probability.

        <q> = sigma [ Re xi + W Im xi Im Phi / (1 - Re Phi) ],
        P   = (1 - Re Phi) / 2.

    Scheme-2 values are relative to the free coherent trajectory.
    """
    kern = kernel(t, p, scheme)
    denom = 1.0 - kern.Phi.real
    if 2.0 * denom < _UNDERFLOW:
        raise DegenerateError(
            "dark-port probability underflows; postselection is impossible here"
        )
    w = p.width_factor
    q = p.sigma * (kern.xi.real + w * kern.xi.imag * kern.Phi.imag / denom)
    return SchemeMoments(q_shift=q, success_prob=0.5 * denom)


def small_time_q(t: float, p: OptomechParams, scheme: int) -> float:
    """Leading small-time shift 2 sigma W Omega k tau / (Omega^2 + W k^2 tau^2)
    with Omega = theta (scheme 1) or 2 k |alpha| zeta (scheme 2),
    zeta = tau cos(beta) + tau^2 sin(beta)/2."""
    if scheme not in (1, 2):
        raise ValueError("scheme must be 1 or 2")
    tau = p.omega_m * t
    if scheme == 1:
        omega = p.theta
    else:
        beta = cmath.phase(complex(p.alpha)) if p.alpha else 0.0
        zeta = tau * math.cos(beta) + 0.5 * tau**2 * math.sin(beta)
        omega = 2.0 * p.k * abs(p.alpha) * zeta
    w = p.width_factor
    den = omega**2 + w * p.k**2 * tau**2
    if den == 0.0:
        raise DegenerateError("vanishing interference phase and kick")
    return 2.0 * p.sigma * w * omega * p.k * tau / den


def per_n_small_time_q(n: int, t: float, p: OptomechParams) -> float:
    """Scheme-1 small-time shift conditioned on the mirror starting in |n>:

        <q>_n = 2 sigma theta k tau (2n+1) / (theta^2 + k^2 tau^2 (2n+1)).

    Grows with n and saturates at 2 sigma theta/(k tau) as n -> infinity.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    tau = p.omega_m * t
    den = p.theta**2 + p.k**2 * tau**2 * (2 * n + 1)
    if den == 0.0:
        raise DegenerateError("vanishing interference phase and kick")
    return 2.0 * p.sigma * p.theta * p.k * tau * (2 * n + 1) / den


def unamplified_displacement(t: float, p: OptomechParams) -> float:
    """Mean shift 2 k sigma (1 - cos omega_m t) without postselection: the
    classical radiation-pressure benchmark, at most 4 k sigma."""
    tau = p.omega_m * t
    return 2.0 * p.k * p.sigma * (1.0 - math.cos(tau))


def brute_force_moments(
    t: float, p: OptomechParams, scheme: int, space: ModeSpace
) -> SchemeMoments:
    """Conditioned shift evaluated on a truncated Fock space (oracle route).

    Builds K = (e^{i(kerr+Omega)} D(xi) - 1)/2 on a thermal state; for scheme 2
    this is the co-moving frame, so the result is directly comparable with
    mean_displacement.
    """
    kern = kernel(t, p, scheme)
    rho = realize_pointer(PointerSpec.thermal(p.z), space)
    d = displacement_op(kern.xi, space)
    k_op = 0.5 * (cmath.exp(1j * (kern.kerr + kern.omega)) * d - np.eye(space.dim))
    m = k_op @ rho.matrix @ k_op.conj().T
    prob = float(np.trace(m).real)
    if prob < _UNDERFLOW:
        raise DegenerateError("postselection probability underflows")
    q_op = position_op(space, p.sigma)
    q = float(np.einsum("ij,ji->", m, q_op).real) / prob
    return SchemeMoments(q_shift=q, success_prob=prob)


def lab_frame_moments(t: float, p: OptomechParams, space: ModeSpace) -> SchemeMoments:
    """Scheme-2 conditioned shift computed entirely in the lab frame.

    The mirror starts displaced-thermal; the kernel carries no interference
    phase (it emerges from reordering the displacement operators); the free
    trajectory 2 sigma Re(alpha e^{-i omega_m t}) is subtracted at the end.
    Must agree with brute_force_moments(scheme=2) to rounding -- that is the
    frame-independence oracle.
    """
    kern = kernel(t, p, 2)
    tau = p.omega_m * t
    phi_c = complex(p.alpha) * cmath.exp(-1j * tau)
    rho = realize_pointer(PointerSpec.displaced_thermal(p.z, phi_c), space)
    d = displacement_op(kern.xi, space)
    k_op = 0.5 * (cmath.exp(1j * kern.kerr) * d - np.eye(space.dim))
    m = k_op @ rho.matrix @ k_op.conj().T
    prob = float(np.trace(m).real)
    if prob < _UNDERFLOW:
        raise DegenerateError("postselection probability underflows")
    q_op = position_op(space, p.sigma)
    q_lab = float(np.einsum("ij,ji->", m, q_op).real) / prob
    q = q_lab - 2.0 * p.sigma * phi_c.real
    return SchemeMoments(q_shift=q, success_prob=prob)
