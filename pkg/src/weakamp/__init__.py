"""weakamp: postselected weak measurement with thermal pointers and
single-photon optomechanical amplification.

Conventions (used throughout): q = sigma (c + c†), p = -i (c - c†) / (2 sigma),
so [q, p] = i.  A thermal pointer is rho(z) = (1 - z) sum_n z^n |n><n| with
width factor W = (1 + z) / (1 - z) = 2 n_bar + 1.  Times are in units of
1/omega_m unless stated otherwise.
"""

from .errors import (
    ConfigError,
    DegenerateError,
    OrthogonalError,
    StiffnessError,
    TruncationError,
    WeakampError,
)
from .fock import (
    DensityOperator,
    ModeSpace,
    PointerSpec,
    QuadratureMoments,
    adequate_dim,
    annihilation_op,
    displacement_op,
    momentum_op,
    number_op,
    operator_from_json,
    operator_to_json,
    position_op,
    quadrature_moments,
    realize_pointer,
    thermal_weights,
)
from .weak import (
    General,
    MomentResult,
    PhaseOffset,
    PointerMoments,
    RealOffset,
    WMSetup,
    WeakValue,
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
from .optomech import (
    OptomechParams,
    SchemeKernel,
    SchemeMoments,
    coherent_phase,
    kernel,
    lab_frame_moments,
    mean_displacement,
    per_n_small_time_q,
    small_time_q,
    unamplified_displacement,
)
from .dissipation import (
    DissipationParams,
    JointState,
    dark_port_mirror_state,
    joint_hamiltonian,
    joint_initial_state,
    lindblad_evolve,
    lindblad_step_integrate,
    postselected_q_from_master,
    taylor_q_scheme1,
    taylor_q_scheme2,
)
from .experiment import (
    REFERENCE_DEVICE,
    AmplificationReport,
    DeviceParams,
    FeasibilityReport,
    ThermalDerivation,
    arrival_density,
    averaged_displacement,
    derive_thermal,
    feasibility_check,
    full_click_probability,
    headline_numbers,
    interaction_probability,
    overall_probability,
    reference_scheme_params,
)
from .figures import REGISTRY as FIGURES, FigureData, render_png
from .oracles import CheckResult, run_suite

__version__ = "0.1.0"

__all__ = [
    "AmplificationReport", "CheckResult", "ConfigError", "DegenerateError",
    "DensityOperator", "DeviceParams", "DissipationParams", "FIGURES",
    "FeasibilityReport", "FigureData", "General", "JointState", "ModeSpace",
    "MomentResult", "OptomechParams", "OrthogonalError", "PhaseOffset",
    "PointerMoments", "PointerSpec", "QuadratureMoments", "REFERENCE_DEVICE",
    "RealOffset", "SchemeKernel", "SchemeMoments", "StiffnessError",
    "ThermalDerivation", "TruncationError", "WMSetup", "WeakValue",
    "WeakampError", "adequate_dim", "annihilation_op", "arrival_density",
    "asymptotic_p_thermal", "asymptotic_q_thermal", "averaged_displacement",
    "brute_force_moments", "coherent_phase", "conditioned_pointer_state",
    "dark_port_mirror_state", "derive_thermal", "displacement_op",
    "exact_p_thermal_real", "exact_q_thermal_imaginary",
    "exact_thermal_moments", "feasibility_check", "full_click_probability",
    "general_pointer_moments", "headline_numbers", "interaction_probability",
    "joint_hamiltonian", "joint_initial_state", "kernel", "lab_frame_moments",
    "lindblad_evolve", "lindblad_step_integrate", "mean_displacement",
    "momentum_op", "number_op", "operator_from_json", "operator_to_json",
    "overall_probability", "per_n_small_time_q", "position_op",
    "postselected_q_from_master", "postselection_amplitudes",
    "quadrature_moments", "realize_pointer", "reference_scheme_params",
    "render_png", "run_suite", "small_time_q", "taylor_q_scheme1",
    "taylor_q_scheme2", "thermal_weights", "unamplified_displacement",
    "weak_value", "weak_value_regime_moments",
]
