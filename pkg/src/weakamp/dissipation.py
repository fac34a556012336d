"""Mechanical damping of the amplification schemes via a thermal Lindblad bath.

In units of the mirror period (tau = omega_m t, gamma = gamma_m / omega_m) the
joint photon-mirror state obeys

    drho/dtau = -i[H, rho] + gamma/(1-z) D[c](rho) + gamma z/(1-z) D[c^dag](rho),
    H = c^dag c - k n_A (c + c^dag),     D[o](rho) = o rho o^dag - {o^dag o, rho}/2,

where n_A counts the photon in the coupled arm.  The bath rates satisfy
detailed balance at the mirror temperature, so the free mirror relaxes to the
thermal state with n_bar = z/(1-z).

Alongside the numerical master-equation route, the module carries the
short-time closed forms for the damped conditioned shift of both schemes
(numerator and denominator expanded through the first dissipative
corrections).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DegenerateError, StiffnessError
from .fock import ModeSpace, PointerSpec, annihilation_op, position_op, realize_pointer
from .optomech import OptomechParams, SchemeMoments

_UNDERFLOW = 1e-300


@dataclass(frozen=True)
class DissipationParams:
    """gamma = gamma_m/omega_m on top of the coherent parameters."""

    gamma: float
    base: OptomechParams

    def __post_init__(self) -> None:
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0")


@dataclass
class JointState:
    """Density matrix of (two-arm photon) x (mirror), photon index major."""

    matrix: np.ndarray
    mirror_space: ModeSpace

    def validate(self) -> None:
        dim = 2 * self.mirror_space.dim
        if self.matrix.shape != (dim, dim):
            raise ValueError("joint matrix shape does not match 2 x mirror dim")
        herm = np.max(np.abs(self.matrix - self.matrix.conj().T))
        if herm > 1e-9:
            raise ValueError(f"joint state not Hermitian (defect {herm:.3e})")
        eigs = np.linalg.eigvalsh(0.5 * (self.matrix + self.matrix.conj().T))
        if eigs.min() < -1e-9:
            raise ValueError(f"joint state not positive (min eig {eigs.min():.3e})")

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)


def joint_initial_state(dp: DissipationParams, scheme: int, space: ModeSpace) -> JointState:
    """|psi_i><psi_i| (x) rho_mirror for the requested scheme."""
    p = dp.base
    if scheme == 1:
        psi = np.array([cmath.exp(1j * p.theta), 1.0]) / math.sqrt(2.0)
        mirror = realize_pointer(PointerSpec.thermal(p.z), space)
    elif scheme == 2:
        psi = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)
        mirror = realize_pointer(PointerSpec.displaced_thermal(p.z, p.alpha), space)
    else:
        raise ValueError("scheme must be 1 or 2")
    photon = np.outer(psi, psi.conj())
    return JointState(np.kron(photon, mirror.matrix), space)


def joint_hamiltonian(dp: DissipationParams, space: ModeSpace) -> np.ndarray:
    """H = c^dag c - k n_A (c + c^dag) in omega_m units (same for both schemes)."""
    c = annihilation_op(space)
    n = c.conj().T @ c
    x = c + c.conj().T
    n_a = np.diag([1.0, 0.0]).astype(complex)
    eye2 = np.eye(2, dtype=complex)
    return np.kron(eye2, n) - dp.base.k * np.kron(n_a, x)


def lindblad_evolve(
    rho0: np.ndarray,
    h: np.ndarray,
    collapse: list[tuple[np.ndarray, float]],
    tau: float,
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> np.ndarray:
    """Integrate drho/dtau = -i[h,rho] + sum_i rate_i D[op_i](rho) to tau.

    Dense high-order explicit stepping; raises StiffnessError if the solver
    gives up (step collapse).
    """
    dim = rho0.shape[0]
    jump = [math.sqrt(rate) * op for op, rate in collapse if rate > 0.0]
    # -iH - (1/2) sum A^dag A, so the RHS is M rho + rho M^dag + sum A rho A^dag
    drift = -1j * h.astype(complex)
    for a in jump:
        drift -= 0.5 * (a.conj().T @ a)

    def rhs(_t: float, flat: np.ndarray) -> np.ndarray:
        rho = flat.reshape(dim, dim)
        out = drift @ rho + rho @ drift.conj().T
        for a in jump:
            out += a @ rho @ a.conj().T
        return out.ravel()

    if tau == 0.0:
        return rho0.astype(complex).copy()
    sol = solve_ivp(
        rhs,
        (0.0, tau),
        rho0.astype(complex).ravel(),
        method="DOP853",
        rtol=rtol,
        atol=atol,
        t_eval=[tau],
    )
    if not sol.success:
        raise StiffnessError(f"master-equation integration failed: {sol.message}")
    return sol.y[:, -1].reshape(dim, dim)


def lindblad_step_integrate(
    rho0: JointState, t: float, dp: DissipationParams, tol: float = 1e-10
) -> JointState:
    """Evolve a joint state for a time t (seconds; omega_m*t if omega_m == 1)."""
    space = rho0.mirror_space
    p = dp.base
    tau = p.omega_m * t
    c = annihilation_op(space)
    eye2 = np.eye(2, dtype=complex)
    c_full = np.kron(eye2, c)
    collapse = [
        (c_full, dp.gamma / (1.0 - p.z)),
        (c_full.conj().T, dp.gamma * p.z / (1.0 - p.z)),
    ]
    h = joint_hamiltonian(dp, space)
    out = lindblad_evolve(
        rho0.matrix, h, collapse, tau, rtol=tol, atol=tol * 1e-2
    )
    return JointState(out, space)


def dark_port_mirror_state(state: JointState) -> np.ndarray:
    """<psi_f| rho |psi_f> for psi_f = (|A> - |B>)/sqrt(2): the unnormalized
    mirror state conditioned on a dark-port click."""
    n = state.mirror_space.dim
    m = state.matrix
    raa = m[:n, :n]
    rab = m[:n, n:]
    rba = m[n:, :n]
    rbb = m[n:, n:]
    return 0.5 * (raa - rab - rba + rbb)


def postselected_q_from_master(
    t: float,
    dp: DissipationParams,
    scheme: int,
    space: ModeSpace,
    tol: float = 1e-10,
) -> SchemeMoments:
    """Damped conditioned mirror shift, straight from the master equation.

    Scheme 2 is referenced to the damped free coherent trajectory
    2 sigma Re(alpha e^{(-i - gamma/2) tau}), the Lindblad first-moment
    solution, so the gamma=0 limit matches optomech.mean_displacement.
    """
    p = dp.base
    rho0 = joint_initial_state(dp, scheme, space)
    evolved = lindblad_step_integrate(rho0, t, dp, tol=tol)
    cond = dark_port_mirror_state(evolved)
    prob = float(np.trace(cond).real)
    if prob < _UNDERFLOW:
        raise DegenerateError("dark-port probability underflows")
    q_op = position_op(space, p.sigma)
    q_cond = float(np.einsum("ij,ji->", cond, q_op).real) / prob
    tau = p.omega_m * t
    if scheme == 1:
        ref = 0.0
    else:
        ref = 2.0 * p.sigma * (complex(p.alpha) * cmath.exp((-1j - 0.5 * dp.gamma) * tau)).real
    return SchemeMoments(q_shift=q_cond - ref, success_prob=prob)


def taylor_q_scheme1(t: float, dp: DissipationParams) -> float:
    """Short-time damped shift for the phase-shifter scheme:

        <q> = sigma [ 2 W k tau sin(theta) + k tau^2 (1 - cos(theta))
                      - (gamma/2) W k tau^2 sin(theta) ]
              / [ 2 - 2 cos(theta) + W k^2 tau^2 cos(theta) ],

    exact through O(tau^2) in both numerator and denominator.
    """
    p = dp.base
    tau = p.omega_m * t
    w = p.width_factor
    s, c = math.sin(p.theta), math.cos(p.theta)
    den = 2.0 - 2.0 * c + w * p.k**2 * tau**2 * c
    if den == 0.0:
        raise DegenerateError("vanishing postselection overlap and kick")
    num = (
        2.0 * w * p.k * tau * s
        + p.k * tau**2 * (1.0 - c)
        - 0.5 * dp.gamma * w * p.k * tau**2 * s
    )
    return p.sigma * num / den


def taylor_q_scheme2(t: float, dp: DissipationParams) -> float:
    """Short-time damped shift for the coherent-drive scheme, in the co-moving
    frame.  With a = |alpha| cos(beta), the common factor k^2 tau^2 cancels:

        <q>/sigma = [ 3 W a + 4 a^3 - gamma tau ((5/3) W a + 3 a^3) ]
                    / [ W/2 + 2 a^2 - gamma tau (a^2 + W/12) ]  -  2 a.

    Undefined for |alpha| = 0 (no coherent drive, nothing to amplify).
    """
    p = dp.base
    if abs(complex(p.alpha)) == 0.0:
        raise DegenerateError("scheme 2 needs a nonzero coherent drive")
    tau = p.omega_m * t
    w = p.width_factor
    a = abs(complex(p.alpha)) * math.cos(cmath.phase(complex(p.alpha)))
    gt = dp.gamma * tau
    num = 3.0 * w * a + 4.0 * a**3 - gt * ((5.0 / 3.0) * w * a + 3.0 * a**3)
    den = 0.5 * w + 2.0 * a**2 - gt * (a**2 + w / 12.0)
    if den == 0.0:
        raise DegenerateError("short-time denominator vanished")
    return p.sigma * (num / den - 2.0 * a)
