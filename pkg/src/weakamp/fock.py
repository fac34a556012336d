"""Truncated Fock representation of a single bosonic mode.

Conventions used throughout the package:

    q = sigma * (c + c^dag)
    p = -i * (c - c^dag) / (2 sigma)          so [q, p] = i

    thermal state  rho(z) = (1 - z) sum_n z^n |n><n|,   0 <= z < 1
    width factor   W = (1 + z) / (1 - z) = 2 n_bar + 1
    displacement   D(a) = exp(a c^dag - a* c)

Displacement matrices are built from their analytic matrix elements (associated
Laguerre polynomials), not by exponentiating the generator; truncation then
only affects the rows/columns near the cutoff and the damage is measurable as a
unitarity defect on the populated subblock.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import TruncationError
from .special import laguerre_sequence

_HERMITICITY_TOL = 1e-12
_POSITIVITY_TOL = 1e-10


@dataclass(frozen=True)
class ModeSpace:
    """Fock space truncated to dimension `dim` (states |0> .. |dim-1>)."""

    dim: int

    def __post_init__(self) -> None:
        if self.dim < 2:
            raise ValueError(f"ModeSpace needs dim >= 2, got {self.dim}")


@dataclass(frozen=True)
class PointerSpec:
    """Recipe for a pointer (mirror) state, independent of any truncation.

    kind is one of "thermal", "displaced_thermal", "number", "ground".
    """

    kind: str
    z: float = 0.0
    alpha: complex = 0j
    n: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("thermal", "displaced_thermal", "number", "ground"):
            raise ValueError(f"unknown pointer kind {self.kind!r}")
        if not 0.0 <= self.z < 1.0:
            raise ValueError(f"thermal parameter must satisfy 0 <= z < 1, got {self.z}")
        if self.n < 0:
            raise ValueError("number state index must be >= 0")

    @classmethod
    def thermal(cls, z: float) -> "PointerSpec":
        return cls(kind="thermal", z=z)

    @classmethod
    def displaced_thermal(cls, z: float, alpha: complex) -> "PointerSpec":
        return cls(kind="displaced_thermal", z=z, alpha=complex(alpha))

    @classmethod
    def number(cls, n: int) -> "PointerSpec":
        return cls(kind="number", n=n)

    @classmethod
    def ground(cls) -> "PointerSpec":
        return cls(kind="ground")

    @property
    def width_factor(self) -> float:
        """W = (1+z)/(1-z), the thermal variance enhancement <q^2>/sigma^2."""
        if self.kind in ("number",):
            return 2.0 * self.n + 1.0
        if self.kind == "ground":
            return 1.0
        return (1.0 + self.z) / (1.0 - self.z)


@dataclass
class DensityOperator:
    """A (possibly unnormalized) density matrix on a truncated mode space.

    tail_weight records how much probability the truncation discarded; the
    trace check allows for exactly that deficit.
    """

    matrix: np.ndarray
    space: ModeSpace
    tail_weight: float = 0.0
    normalized: bool = True

    def validate(self) -> None:
        m = self.matrix
        if m.shape != (self.space.dim, self.space.dim):
            raise ValueError("matrix shape does not match the mode space")
        herm = np.max(np.abs(m - m.conj().T))
        if herm > _HERMITICITY_TOL:
            raise ValueError(f"density matrix not Hermitian (defect {herm:.3e})")
        eigs = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
        if eigs.min() < -_POSITIVITY_TOL:
            raise ValueError(f"density matrix not positive (min eig {eigs.min():.3e})")
        if self.normalized:
            deficit = abs(np.trace(m).real - 1.0)
            if deficit > self.tail_weight + 1e-10:
                raise ValueError(
                    f"trace deviates from 1 by {deficit:.3e}, "
                    f"more than the truncation tail {self.tail_weight:.3e}"
                )

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)


class QuadratureMoments(NamedTuple):
    q_mean: float
    p_mean: float
    q2_mean: float


def annihilation_op(space: ModeSpace) -> np.ndarray:
    """Matrix of c: <n-1|c|n> = sqrt(n)."""
    n = np.arange(1, space.dim)
    return np.diag(np.sqrt(n).astype(complex), k=1)


def number_op(space: ModeSpace) -> np.ndarray:
    return np.diag(np.arange(space.dim).astype(complex))


def position_op(space: ModeSpace, sigma: float) -> np.ndarray:
    c = annihilation_op(space)
    return sigma * (c + c.conj().T)


def momentum_op(space: ModeSpace, sigma: float) -> np.ndarray:
    c = annihilation_op(space)
    return -0.5j / sigma * (c - c.conj().T)


def displacement_op(
    alpha: complex, space: ModeSpace, defect_tol: float = 1e-8
) -> np.ndarray:
    """Displacement matrix from its analytic Laguerre-polynomial elements.

        <n+d|D(a)|n> = sqrt(n!/(n+d)!) a^d      e^{-|a|^2/2} L_n^d(|a|^2)
        <l|D(a)|l+d> = sqrt(l!/(l+d)!) (-a*)^d  e^{-|a|^2/2} L_l^d(|a|^2)

    Prefactors are accumulated as ratios so neither a^d nor the factorials
    ever over/underflow on their own.  Raises TruncationError when the matrix
    fails unitarity on the heavily populated lower subblock, which is the
    signature of a displacement too large for the space.
    """
    alpha = complex(alpha)
    dim = space.dim
    x = abs(alpha) ** 2
    out = np.zeros((dim, dim), dtype=complex)
    if alpha == 0:
        return np.eye(dim, dtype=complex)

    gauss = math.exp(-0.5 * x)
    base_lower = gauss  # a^d / sqrt(d!) * gauss, built up over d
    base_upper = gauss  # (-a*)^d / sqrt(d!) * gauss
    for d in range(dim):
        if d > 0:
            base_lower *= alpha / math.sqrt(d)
            base_upper *= -alpha.conjugate() / math.sqrt(d)
        lag = laguerre_sequence(dim - 1 - d, d, x)
        pref = 1.0
        for n in range(dim - d):
            if n > 0:
                pref *= math.sqrt(n / (n + d))
            out[n + d, n] = base_lower * pref * lag[n]
            if d > 0:
                out[n, n + d] = base_upper * pref * lag[n]

    defect = displacement_unitarity_defect(out)
    if defect > defect_tol:
        raise TruncationError(
            f"displacement alpha={alpha} breaks unitarity on the populated "
            f"subblock (defect {defect:.3e} > {defect_tol:.1e}); enlarge the space"
        )
    return out


def displacement_unitarity_defect(d: np.ndarray) -> float:
    """max |(D^dag D - I)_{mn}| over the lower half of the index range.

    Rows near the truncation edge are always wrong; the physically populated
    block is the bottom ceil(N/2) x ceil(N/2) corner.
    """
    dim = d.shape[0]
    block = (dim + 1) // 2
    u = d.conj().T @ d - np.eye(dim)
    return float(np.max(np.abs(u[:block, :block])))


def thermal_weights(z: float, dim: int) -> tuple[np.ndarray, float]:
    """Geometric occupation weights (1-z) z^n for n < dim, plus the tail z^dim."""
    if not 0.0 <= z < 1.0:
        raise ValueError(f"need 0 <= z < 1, got {z}")
    if z == 0.0:
        w = np.zeros(dim)
        w[0] = 1.0
        return w, 0.0
    n = np.arange(dim)
    return (1.0 - z) * z**n, z**dim


def adequate_dim(
    spec: PointerSpec,
    tail_tol: float = 1e-10,
    extra_displacement: float = 0.0,
    max_dim: int = 8192,
) -> int:
    """Smallest dimension meeting the truncation adequacy rule.

    Requires z^N < tail_tol and (|displacement| + 6 sqrt(W)/2)^2 < N, where the
    displacement is measured in ladder units.  Raises TruncationError when no
    affordable dimension exists (z too close to 1).
    """
    n_tail = 2
    if spec.z > 0.0:
        n_tail = int(math.ceil(math.log(tail_tol) / math.log(spec.z))) + 1
    disp = abs(spec.alpha) if spec.kind == "displaced_thermal" else 0.0
    disp += extra_displacement
    width = (disp + 3.0 * math.sqrt(spec.width_factor)) ** 2
    n_need = max(n_tail, int(math.ceil(width)) + 1, spec.n + 2, 2)
    if n_need > max_dim:
        raise TruncationError(
            f"pointer spec needs dim >= {n_need} (> {max_dim}); "
            "the occupation is too high for a truncated-Fock treatment"
        )
    return n_need


def realize_pointer(
    spec: PointerSpec, space: ModeSpace, tail_tol: float = 1e-10
) -> DensityOperator:
    """Concrete density matrix for a pointer spec on a truncated space.

    The discarded tail weight is recorded on the result; if it exceeds
    tail_tol the truncation is refused.
    """
    dim = space.dim
    if spec.kind == "ground":
        m = np.zeros((dim, dim), dtype=complex)
        m[0, 0] = 1.0
        rho = DensityOperator(m, space, tail_weight=0.0)
    elif spec.kind == "number":
        if spec.n >= dim:
            raise TruncationError(f"|{spec.n}> does not fit in dim {dim}")
        m = np.zeros((dim, dim), dtype=complex)
        m[spec.n, spec.n] = 1.0
        rho = DensityOperator(m, space, tail_weight=0.0)
    elif spec.kind == "thermal":
        w, tail = thermal_weights(spec.z, dim)
        if tail > tail_tol:
            raise TruncationError(
                f"thermal z={spec.z} leaves tail {tail:.3e} > {tail_tol:.1e} at dim {dim}"
            )
        rho = DensityOperator(np.diag(w.astype(complex)), space, tail_weight=tail)
    else:  # displaced_thermal
        w, tail = thermal_weights(spec.z, dim)
        if tail > tail_tol:
            raise TruncationError(
                f"thermal z={spec.z} leaves tail {tail:.3e} > {tail_tol:.1e} at dim {dim}"
            )
        d = displacement_op(spec.alpha, space)
        m = d @ np.diag(w.astype(complex)) @ d.conj().T
        deficit = abs(np.trace(m).real - 1.0)
        if deficit + tail > tail_tol * 10:
            raise TruncationError(
                f"displacing by {spec.alpha} pushes weight {deficit:.3e} past the cutoff"
            )
        rho = DensityOperator(m, space, tail_weight=tail + deficit)
    rho.validate()
    return rho


def quadrature_moments(rho: DensityOperator | np.ndarray, sigma: float) -> QuadratureMoments:
    """Tr(rho q), Tr(rho p), Tr(rho q^2) for a normalized density matrix."""
    m = rho.matrix if isinstance(rho, DensityOperator) else rho
    dim = m.shape[0]
    space = ModeSpace(dim)
    q = position_op(space, sigma)
    p = momentum_op(space, sigma)
    q_mean = complex(np.einsum("ij,ji->", m, q)).real
    p_mean = complex(np.einsum("ij,ji->", m, p)).real
    q2_mean = complex(np.einsum("ij,jk,ki->", m, q, q)).real
    return QuadratureMoments(q_mean, p_mean, q2_mean)


def operator_to_json(m: np.ndarray) -> str:
    """Serialize a complex matrix as row-major [re, im] pairs."""
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    flat = m.astype(complex).ravel()
    entries = [[float(v.real), float(v.imag)] for v in flat]
    return json.dumps({"dim": int(m.shape[0]), "entries": entries})


def operator_from_json(text: str) -> np.ndarray:
    data = json.loads(text)
    dim = int(data["dim"])
    entries = data["entries"]
    if len(entries) != dim * dim:
        raise ValueError("entry count does not match dim^2")
    flat = np.array([complex(re, im) for re, im in entries])
    return flat.reshape(dim, dim)
