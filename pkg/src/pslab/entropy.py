"""Purity, linear entropy (both pictures), von Neumann and Wehrl entropies."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .grid import DensityOperatorKernel, PhaseSpaceField, WaveFunction

log = logging.getLogger(__name__)

EIG_FLOOR = 1e-12
NEG_EIG_TOL = 1e-8
HUSIMI_CLIP = 1e-12
HUSIMI_REJECT = 1e-6


@dataclass(frozen=True)
class HusimiParameter:
    """Squeezing ratio of the smoothing Gaussian; sigma_x * sigma_p = hbar/2."""

    kappa: float = 1.0

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")

    def widths(self, hbar: float) -> tuple[float, float]:
        return np.sqrt(hbar * self.kappa / 2), np.sqrt(hbar / (2 * self.kappa))


def purity_integral(W: PhaseSpaceField) -> float:
    g = W.grid
    return float(2 * np.pi * g.hbar * np.sum(W.values ** 2) * g.cell)


def s2_wigner(W: PhaseSpaceField) -> float:
    return 1.0 - purity_integral(W)


def s2_operator(rho: DensityOperatorKernel) -> float:
    m = rho.hermitian_matrix()
    return float(1.0 - np.trace(m @ m).real)


def spectrum(rho: DensityOperatorKernel) -> np.ndarray:
    """Ascending eigenvalues of the symmetrized kernel."""
    return np.linalg.eigvalsh(rho.hermitian_matrix())


def von_neumann_entropy(rho: DensityOperatorKernel) -> float:
    lam = spectrum(rho)
    if lam[0] < -NEG_EIG_TOL:
        raise ValueError(
            f"kernel has eigenvalue {lam[0]:.3g}; not a density operator "
            "(use admissibility_report for arbitrary fields)"
        )
    lam = np.clip(lam, 0.0, 1.0)
    lam = lam[lam > EIG_FLOOR]
    return float(-np.sum(lam * np.log(lam)))


def husimi_from_field(W: PhaseSpaceField, kappa: HusimiParameter | float = 1.0) -> PhaseSpaceField:
    """Gaussian smoothing of a Wigner field with the minimal-uncertainty kernel."""
    from .admissibility import SmoothingKernel, gaussian_smooth

    if not isinstance(kappa, HusimiParameter):
        kappa = HusimiParameter(kappa)
    sx, sp = kappa.widths(W.grid.hbar)
    Q = gaussian_smooth(W, SmoothingKernel(sx, sp))
    return Q.with_values(Q.values, kind="husimi")


def husimi_from_state(psi: WaveFunction, kappa: HusimiParameter | float = 1.0) -> PhaseSpaceField:
    from .weyl import wigner_from_pure

    if not isinstance(kappa, HusimiParameter):
        kappa = HusimiParameter(kappa)
    return husimi_from_field(wigner_from_pure(psi), kappa)


def wehrl_entropy(Q: PhaseSpaceField) -> float:
    """-sum Q ln Q dx dp, in nats."""
    if Q.kind != "husimi":
        raise ValueError(f"Wehrl entropy needs a Husimi field, got kind={Q.kind!r}")
    q = Q.values
    low = q.min()
    if low < -HUSIMI_REJECT:
        raise ValueError(f"Husimi field is genuinely negative (min {low:.3g})")
    if low < -HUSIMI_CLIP:
        log.warning("clipping Husimi negativity of %.3g", low)
    q = np.clip(q, 0.0, None)
    nz = q > 0
    return float(-np.sum(q[nz] * np.log(q[nz])) * Q.grid.cell)
