"""Self-check suites: closed forms cross-validated against truncated-Fock
brute force and against the master-equation integrator.

Each check compares two independently computed routes and reports the
residual against a fixed threshold.  These back the ``weakamp oracle``
subcommand and double as the core of the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dissipation import (
    DissipationParams,
    postselected_q_from_master,
)
from .fock import ModeSpace, PointerSpec, adequate_dim
from .optomech import (
    OptomechParams,
    brute_force_moments as optomech_brute,
    lab_frame_moments,
    mean_displacement,
)
from .weak import (
    PhaseOffset,
    RealOffset,
    WMSetup,
    brute_force_moments as wm_brute,
    exact_thermal_moments,
    weak_value,
    weak_value_regime_moments,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.residual < self.threshold


def _wm_space(setup: WMSetup, z: float) -> ModeSpace:
    spec = PointerSpec.thermal(z) if z > 0 else PointerSpec.ground()
    extra = setup.eta * max(abs(setup.a1), abs(setup.a2))
    return ModeSpace(adequate_dim(spec, extra_displacement=extra))


def _moment_residual(got, want) -> float:
    res = 0.0
    for g, w in ((got.q_shift, want.q_shift), (got.p_shift, want.p_shift),
                 (got.success_prob, want.success_prob)):
        if g is not None and w is not None:
            res = max(res, abs(g - w))
    return res


def wm_suite() -> list[CheckResult]:
    """Exact thermal postselection moments vs. truncated-Fock brute force."""
    checks = []
    for z in (0.0, 0.5, 0.9):
        for eta in (0.01, 0.1):
            for off in (0.02, 0.1):
                for post in (PhaseOffset(off), RealOffset(off)):
                    setup = WMSetup(a1=1.0, a2=-1.0, chi=eta, sigma=1.0,
                                    postselect=post)
                    space = _wm_space(setup, z)
                    spec = PointerSpec.thermal(z) if z > 0 else PointerSpec.ground()
                    got = exact_thermal_moments(setup, z)
                    want = wm_brute(setup, spec, space)
                    tag = type(post).__name__.lower()
                    checks.append(CheckResult(
                        f"wm z={z} eta={eta} {tag}({off})",
                        _moment_residual(got, want), 1e-7,
                    ))
    # Weak-value regime: exact moments track the weak-value prediction.
    setup = WMSetup(a1=1.0, a2=-1.0, chi=1e-4, sigma=1.0,
                    postselect=PhaseOffset(1e-2))
    a_w = weak_value(setup)
    exact = exact_thermal_moments(setup, 0.9)
    approx = weak_value_regime_moments(0.9, setup.chi, a_w.value, setup.sigma)
    rel = abs(exact.q_shift - approx.q_shift) / abs(approx.q_shift)
    checks.append(CheckResult("wm weak-value regime (q)", rel, 1e-2))
    return checks


def optomech_suite() -> list[CheckResult]:
    """Closed-form conditioned shifts vs. brute force, and displaced-frame
    vs. lab-frame agreement for the coherent-drive scheme."""
    checks = []
    z = 0.5
    p1 = OptomechParams(k=0.05, z=z, theta=0.1)
    p2 = OptomechParams(k=0.05, z=z, alpha=1.0 + 0.5j)
    spec = PointerSpec.thermal(z)
    for tau in (0.5, 1.0, 2.0):
        dim = adequate_dim(spec, extra_displacement=2 * p1.k)
        space = ModeSpace(dim)
        got = mean_displacement(tau, p1, scheme=1)
        want = optomech_brute(tau, p1, 1, space)
        checks.append(CheckResult(
            f"optomech scheme1 brute tau={tau}",
            max(abs(got.q_shift - want.q_shift),
                abs(got.success_prob - want.success_prob)), 1e-7,
        ))
    for tau in (0.5, 2.0):
        disp = abs(p2.alpha) + 2 * p2.k
        space = ModeSpace(adequate_dim(spec, extra_displacement=disp))
        got = mean_displacement(tau, p2, scheme=2)
        want = optomech_brute(tau, p2, 2, space)
        checks.append(CheckResult(
            f"optomech scheme2 brute tau={tau}",
            max(abs(got.q_shift - want.q_shift),
                abs(got.success_prob - want.success_prob)), 1e-7,
        ))
        # The lab-frame route keeps the pointer displaced by alpha e^{-i tau},
        # so its truncation tail needs twice the headroom.
        lab_space = ModeSpace(adequate_dim(spec, extra_displacement=2 * disp))
        lab = lab_frame_moments(tau, p2, lab_space)
        checks.append(CheckResult(
            f"optomech scheme2 frame tau={tau}",
            max(abs(got.q_shift - lab.q_shift),
                abs(got.success_prob - lab.success_prob)), 1e-8,
        ))
    return checks


def dissipation_suite() -> list[CheckResult]:
    """gamma = 0 master-equation evolution vs. the unitary closed forms."""
    checks = []
    z = 0.5
    space = ModeSpace(40)
    p1 = OptomechParams(k=0.05, z=z, theta=0.1)
    dp1 = DissipationParams(gamma=0.0, base=p1)
    tau = 0.5
    got = postselected_q_from_master(tau, dp1, scheme=1, space=space)
    want = mean_displacement(tau, p1, scheme=1)
    checks.append(CheckResult(
        "dissipation gamma=0 scheme1",
        max(abs(got.q_shift - want.q_shift),
            abs(got.success_prob - want.success_prob)), 1e-6,
    ))
    p2 = OptomechParams(k=0.05, z=z, alpha=0.8)
    dp2 = DissipationParams(gamma=0.0, base=p2)
    tau = 0.3
    got = postselected_q_from_master(tau, dp2, scheme=2, space=space)
    want = mean_displacement(tau, p2, scheme=2)
    checks.append(CheckResult(
        "dissipation gamma=0 scheme2",
        max(abs(got.q_shift - want.q_shift),
            abs(got.success_prob - want.success_prob)), 1e-6,
    ))
    return checks


SUITES = {
    "wm": wm_suite,
    "optomech": optomech_suite,
    "dissipation": dissipation_suite,
}


def run_suite(name: str) -> list[CheckResult]:
    if name not in SUITES:
        raise KeyError(f"no oracle suite named {name!r}; have {sorted(SUITES)}")
    return SUITES[name]()
