"""Figure data generators: each produces the plotted curves as tabular data
(CSV/JSON) and can render a quick-look PNG alongside.

All generators use closed forms only and run in well under a second at the
default resolution.  Lengths are in units of sigma; times in units of
1/omega_m unless a column says otherwise.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .dissipation import DissipationParams, taylor_q_scheme1, taylor_q_scheme2
from .errors import ConfigError
from .experiment import REFERENCE_DEVICE, arrival_density, derive_thermal
from .optomech import OptomechParams, mean_displacement, per_n_small_time_q


@dataclass
class FigureData:
    name: str
    params: dict
    columns: list[str]
    rows: list[tuple]
    kind: str = "line"  # "line" or "grid" (first two columns are coordinates)

    def to_csv_text(self) -> str:
        par = " ".join(f"{k}={v!r}" for k, v in self.params.items())
        lines = [f"# figure={self.name} {par}", ",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(repr(float(v)) for v in row))
        return "\n".join(lines) + "\n"

    def to_json_text(self) -> str:
        payload = {
            "figure": self.name,
            "params": self.params,
            "columns": self.columns,
            "rows": [[float(v) for v in row] for row in self.rows],
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _resolve(defaults: dict, overrides: dict) -> dict:
    unknown = set(overrides) - set(defaults)
    if unknown:
        raise ConfigError(
            f"unknown parameter(s) {sorted(unknown)}; valid: {sorted(defaults)}"
        )
    out = dict(defaults)
    for key, val in overrides.items():
        out[key] = type(defaults[key])(val)
    return out


def _room_z(temperature: float) -> float:
    dev = replace(REFERENCE_DEVICE, temperature=temperature)
    return derive_thermal(dev).z


def fig2a(points: int = 2000, **overrides) -> FigureData:
    """Exact conditioned mirror shift vs time for the phase-shifter scheme."""
    par = _resolve({"k": 0.005, "theta": 0.0005, "z": 0.9, "t_max": 0.1}, overrides)
    p = OptomechParams(k=par["k"], z=par["z"], theta=par["theta"])
    taus = np.linspace(0.0, par["t_max"], points)
    rows = [
        (float(tau), mean_displacement(float(tau), p, scheme=1).q_shift)
        for tau in taus
    ]
    par["points"] = points
    return FigureData("fig2a", par, ["omega_m_t", "q_over_sigma"], rows)


def fig2b(points: int = 101, **overrides) -> FigureData:
    """Per-Fock-level conditioned shift at the optimal phase theta =
    sqrt(W) k omega_m t, holding theta fixed and growing n."""
    par = _resolve({"k": 0.005, "theta": 0.0005, "z": 0.9}, overrides)
    w = (1.0 + par["z"]) / (1.0 - par["z"])
    tau = par["theta"] / (math.sqrt(w) * par["k"])
    p = OptomechParams(k=par["k"], z=par["z"], theta=par["theta"])
    rows = [
        (n, per_n_small_time_q(n, tau, p)) for n in range(points)
    ]
    par["points"] = points
    par["omega_m_t"] = tau
    return FigureData("fig2b", par, ["n", "q_over_sigma"], rows)


def fig3a(points: int = 2000, **overrides) -> FigureData:
    """Coherent-drive scheme shift vs time for a plateau drive
    (|alpha| = sqrt(W)/2, beta = 0) and a peaked drive
    (|alpha| = 10 sqrt(W), beta = pi/2)."""
    par = _resolve({"k": 0.005, "z": 0.9, "t_max": 0.3}, overrides)
    w = (1.0 + par["z"]) / (1.0 - par["z"])
    p_plateau = OptomechParams(k=par["k"], z=par["z"], alpha=0.5 * math.sqrt(w))
    p_peaked = OptomechParams(k=par["k"], z=par["z"], alpha=10.0 * math.sqrt(w) * 1j)
    taus = np.linspace(0.0, par["t_max"], points + 1)[1:]  # t=0 is degenerate
    rows = []
    for tau in taus:
        q1 = mean_displacement(float(tau), p_plateau, scheme=2).q_shift
        q2 = mean_displacement(float(tau), p_peaked, scheme=2).q_shift
        rows.append((float(tau), q1, q2))
    par["points"] = points
    return FigureData(
        "fig3a", par, ["omega_m_t", "q_over_sigma_beta0", "q_over_sigma_beta_pi2"], rows
    )


def fig3b(points: int = 120, **overrides) -> FigureData:
    """Early-time shift over the coherent-drive plane (|alpha|, beta)."""
    par = _resolve({"k": 0.005, "z": 0.9, "t": 0.001, "alpha_max": 10.0}, overrides)
    mags = np.linspace(0.0, par["alpha_max"], points)
    betas = np.linspace(0.0, 2.0 * math.pi, points)
    rows = []
    for mag in mags:
        for beta in betas:
            alpha = mag * complex(math.cos(beta), math.sin(beta))
            p = OptomechParams(k=par["k"], z=par["z"], alpha=alpha)
            q = mean_displacement(par["t"], p, scheme=2).q_shift
            rows.append((float(mag), float(beta), q))
    par["points"] = points
    return FigureData(
        "fig3b", par, ["alpha_abs", "beta", "q_over_sigma"], rows, kind="grid"
    )


def fig4a(points: int = 2000, **overrides) -> FigureData:
    """Damped short-time shift of the phase-shifter scheme at room
    temperature, for several gamma = gamma_m/omega_m."""
    par = _resolve(
        {"k": 0.005, "theta": 0.005, "temperature_k": 300.0, "t_max": 1e-4}, overrides
    )
    z = _room_z(par["temperature_k"])
    base = OptomechParams(k=par["k"], z=z, theta=par["theta"])
    gammas = [0.0, 0.005, 50.0, 5000.0]
    taus = np.linspace(0.0, par["t_max"], points)
    rows = []
    for tau in taus:
        vals = [taylor_q_scheme1(float(tau), DissipationParams(g, base)) for g in gammas]
        rows.append((float(tau), *vals))
    par["points"] = points
    cols = ["omega_m_t"] + [f"q_over_sigma_gamma{g:g}" for g in gammas]
    return FigureData("fig4a", par, cols, rows)


def fig4b(points: int = 2000, **overrides) -> FigureData:
    """Photon arrival density for the phase-shifter scheme at three cavity
    decay rates (in units of omega_m); D is per unit omega_m*t."""
    par = _resolve(
        {"k": 0.005, "theta": 0.005, "temperature_k": 300.0, "t_max": 0.05}, overrides
    )
    kappas = [1.2e2, 1.2e3, 1.2e4]
    dev0 = replace(REFERENCE_DEVICE, temperature=par["temperature_k"])
    thermal = derive_thermal(dev0)
    taus = np.linspace(0.0, par["t_max"], points)
    series = []
    for kap in kappas:
        dev = replace(dev0, kappa=kap)
        p = OptomechParams(
            k=par["k"], omega_m=dev.omega_m, z=thermal.z,
            theta=par["theta"], sigma=thermal.sigma,
        )
        series.append(
            [arrival_density(t, p, dev, scheme=1) / dev.omega_m
             for t in taus / dev.omega_m]
        )
    rows = [
        (float(taus[i]), *(s[i] for s in series)) for i in range(points)
    ]
    par["points"] = points
    cols = ["omega_m_t"] + [f"d_kappa{int(k)}" for k in kappas]
    return FigureData("fig4b", par, cols, rows)


def fig5a(points: int = 2000, **overrides) -> FigureData:
    """Damped short-time shift of the coherent-drive scheme at room
    temperature (|alpha| = sqrt(W)/2, beta = 0), for several gamma."""
    par = _resolve({"k": 0.005, "temperature_k": 300.0, "t_max": 0.005}, overrides)
    z = _room_z(par["temperature_k"])
    w = (1.0 + z) / (1.0 - z)
    base = OptomechParams(k=par["k"], z=z, alpha=0.5 * math.sqrt(w))
    gammas = [0.0, 0.005, 0.5, 50.0]
    taus = np.linspace(0.0, par["t_max"], points)
    rows = []
    for tau in taus:
        vals = [taylor_q_scheme2(float(tau), DissipationParams(g, base)) for g in gammas]
        rows.append((float(tau), *vals))
    par["points"] = points
    cols = ["omega_m_t"] + [f"q_over_sigma_gamma{g:g}" for g in gammas]
    return FigureData("fig5a", par, cols, rows)


def fig5b(points: int = 2000, **overrides) -> FigureData:
    """Photon arrival density for the coherent-drive scheme at three cavity
    decay rates; D is per unit omega_m*t."""
    par = _resolve({"k": 0.005, "temperature_k": 300.0, "t_max": 0.05}, overrides)
    kappas = [2e2, 2e3, 2e4]
    dev0 = replace(REFERENCE_DEVICE, temperature=par["temperature_k"])
    thermal = derive_thermal(dev0)
    w = (1.0 + thermal.z) / (1.0 - thermal.z)
    taus = np.linspace(0.0, par["t_max"], points)
    series = []
    for kap in kappas:
        dev = replace(dev0, kappa=kap)
        p = OptomechParams(
            k=par["k"], omega_m=dev.omega_m, z=thermal.z,
            alpha=0.5 * math.sqrt(w), sigma=thermal.sigma,
        )
        series.append(
            [arrival_density(t, p, dev, scheme=2) / dev.omega_m
             for t in taus / dev.omega_m]
        )
    rows = [
        (float(taus[i]), *(s[i] for s in series)) for i in range(points)
    ]
    par["points"] = points
    cols = ["omega_m_t"] + [f"d_kappa{int(k)}" for k in kappas]
    return FigureData("fig5b", par, cols, rows)


REGISTRY: dict[str, Callable[..., FigureData]] = {
    "fig2a": fig2a,
    "fig2b": fig2b,
    "fig3a": fig3a,
    "fig3b": fig3b,
    "fig4a": fig4a,
    "fig4b": fig4b,
    "fig5a": fig5a,
    "fig5b": fig5b,
}

DEFAULT_POINTS = {
    "fig2a": 2000, "fig2b": 101, "fig3a": 2000, "fig3b": 120,
    "fig4a": 2000, "fig4b": 2000, "fig5a": 2000, "fig5b": 2000,
}

_RC = {
    "figure.figsize": (6.0, 4.0),
    "font.size": 11,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.4,
}


def render_png(data: FigureData, path: str) -> None:
    """Quick-look rendering of a figure's data next to the delimited file."""
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        if data.kind == "grid":
            arr = np.array(data.rows)
            xs = np.unique(arr[:, 0])
            ys = np.unique(arr[:, 1])
            grid = arr[:, 2].reshape(len(xs), len(ys))
            mesh = ax.pcolormesh(xs, ys, grid.T, shading="auto", cmap="viridis")
            fig.colorbar(mesh, ax=ax, label=data.columns[2])
            ax.set_xlabel(data.columns[0])
            ax.set_ylabel(data.columns[1])
        else:
            arr = np.array(data.rows)
            for j, col in enumerate(data.columns[1:], start=1):
                ax.plot(arr[:, 0], arr[:, j], label=col)
            ax.set_xlabel(data.columns[0])
            ax.legend(fontsize=8)
        ax.set_title(data.name)
        fig.savefig(
            path, dpi=200, bbox_inches="tight", metadata={"Software": "weakamp"}
        )
        plt.close(fig)
