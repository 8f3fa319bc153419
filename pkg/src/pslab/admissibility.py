"""Gaussian smoothing and numerical admissibility diagnostics for phase-space fields.

Admissibility here means: the inverse Weyl image of the field is a
positive semidefinite operator of unit trace.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Literal, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.signal import fftconvolve

from .entropy import spectrum
from .grid import NumericalGuardError, PhaseSpaceField, PhaseSpaceGrid, check_same_grid
from .weyl import inverse_weyl, marginals

TOL_EIG = 1e-6
TOL_TR = 1e-4
EDGE_TOL = 1e-6

Verdict = Literal["admissible", "inadmissible", "indeterminate"]


class DivergenceSuspected(NumericalGuardError):
    """The field does not decay before the domain boundary, so a periodic
    convolution would be meaningless.  Growing fields such as
    exp(a (x^2 + p^2)) end up here; use ``divergence_probe`` to study them."""


@dataclass(frozen=True)
class SmoothingKernel:
    sigma_x: float
    sigma_p: float

    def __post_init__(self):
        if not (self.sigma_x > 0 and self.sigma_p > 0):
            raise ValueError("kernel widths must be positive")

    @classmethod
    def minimal_uncertainty(cls, hbar: float = 1.0, kappa: float = 1.0) -> "SmoothingKernel":
        return cls(np.sqrt(hbar * kappa / 2), np.sqrt(hbar / (2 * kappa)))

    def __call__(self, x, p):
        sx, sp = self.sigma_x, self.sigma_p
        return np.exp(-x ** 2 / (2 * sx ** 2) - p ** 2 / (2 * sp ** 2)) / (2 * np.pi * sx * sp)

    def on_grid(self, grid: PhaseSpaceGrid) -> np.ndarray:
        X, P = grid.mesh()
        return self(X, P)

    def as_field(self, grid: PhaseSpaceGrid) -> PhaseSpaceField:
        return PhaseSpaceField(grid, self.on_grid(grid), "kernel")


def check_decay(field: PhaseSpaceField, tol: float = EDGE_TOL) -> None:
    r = field.edge_ratio()
    if r > tol:
        raise DivergenceSuspected(
            f"field does not decay at the domain boundary (edge/max = {r:.3g} > {tol:g}); "
            "smoothing integrals may diverge, see divergence_probe"
        )


def gaussian_smooth(field: PhaseSpaceField, kernel: SmoothingKernel) -> PhaseSpaceField:
    """Periodic FFT convolution of the field with a unit-mass Gaussian.

    The field spectrum is multiplied by the Gaussian's exact Fourier
    transform rather than by the FFT of its samples, so kernels as narrow
    as the momentum spacing are handled exactly and the field integral is
    preserved to round-off.
    """
    check_decay(field)
    g = field.grid
    kx = 2 * np.pi * np.fft.fftfreq(g.Nx, g.dx)
    kp = 2 * np.pi * np.fft.fftfreq(g.Np, g.dp)
    h = np.exp(-0.5 * (kernel.sigma_x * kx[:, None]) ** 2 - 0.5 * (kernel.sigma_p * kp[None, :]) ** 2)
    out = np.fft.ifft2(np.fft.fft2(field.values) * h).real
    return PhaseSpaceField(g, out, "generic", {"smoothed_with": asdict(kernel)})


def reflect(values: np.ndarray) -> np.ndarray:
    """values[(N - j) % N, (M - k) % M], i.e. W(-x, -p) on the symmetric grid."""
    return np.roll(values[::-1, ::-1], 1, axis=(0, 1))


def parity_residual(field: PhaseSpaceField) -> float:
    return float(np.max(np.abs(field.values - reflect(field.values))))


def wigner_bound_check(field: PhaseSpaceField) -> float:
    """max|W| * pi * hbar; above 1 rules out a pure-state Wigner function."""
    return float(np.max(np.abs(field.values)) * np.pi * field.grid.hbar)


def convolution_chain_terms(W: PhaseSpaceField, F: PhaseSpaceField,
                            K: SmoothingKernel) -> tuple[float, float]:
    """A = int K(z'') int W(z - z'') F(z) dz dz''  and
    B = int K(z'') int W(z'' - z) F(z) dz dz''.

    Inner integrals are linear (zero-padded) convolutions, so F need not
    decay; W must.
    """
    g = check_same_grid(W, F)
    check_decay(W)
    n, m = g.Nx, g.Np
    inner_b = fftconvolve(W.values, F.values) * g.cell
    inner_a = fftconvolve(reflect(W.values), F.values) * g.cell
    lx = (np.arange(2 * n - 1) - n) * g.dx
    lp = (np.arange(2 * m - 1) - m) * g.dp
    kz = K(*np.meshgrid(lx, lp, indexing="ij"))
    return float(np.sum(kz * inner_a) * g.cell), float(np.sum(kz * inner_b) * g.cell)


def convolution_chain_residual(W: PhaseSpaceField, F: PhaseSpaceField, K: SmoothingKernel) -> float:
    a, b = convolution_chain_terms(W, F, K)
    return abs(a - b)


@dataclass(frozen=True)
class AdmissibilityReport:
    trace: float
    hermiticity_residual: float
    min_eigenvalue: float
    purity: float
    negative_mass: float
    marginals_nonneg: bool
    verdict: Verdict
    eigenvalues: tuple[float, ...] = field(repr=False)
    tol_eig: float = TOL_EIG
    tol_tr: float = TOL_TR

    def to_dict(self) -> dict:
        d = asdict(self)
        d["eigenvalues"] = list(self.eigenvalues)
        return d


def classify(min_eig: float, trace: float, tol_eig: float = TOL_EIG, tol_tr: float = TOL_TR) -> Verdict:
    dtr = abs(trace - 1)
    if min_eig >= -tol_eig and dtr <= tol_tr:
        return "admissible"
    if min_eig < -2 * tol_eig or dtr > 2 * tol_tr:
        return "inadmissible"
    return "indeterminate"


def admissibility_report(field: PhaseSpaceField, tol_eig: float = TOL_EIG,
                         tol_tr: float = TOL_TR) -> AdmissibilityReport:
    rho = inverse_weyl(field)
    herm = rho.hermiticity_residual
    lam = spectrum(rho)
    mx, mp = marginals(field)
    floor = -1e-9 * max(1.0, np.abs(mx).max(), np.abs(mp).max())
    trace = float(lam.sum())
    return AdmissibilityReport(
        trace=trace,
        hermiticity_residual=herm,
        min_eigenvalue=float(lam[0]),
        purity=float(np.sum(lam ** 2)),
        negative_mass=float(lam[lam < 0].sum()),
        marginals_nonneg=bool(mx.min() >= floor and mp.min() >= floor),
        verdict=classify(float(lam[0]), trace, tol_eig, tol_tr),
        eigenvalues=tuple(float(v) for v in lam),
        tol_eig=tol_eig,
        tol_tr=tol_tr,
    )


@dataclass(frozen=True)
class DivergenceProbe:
    a: float
    sigma_x: float
    sigma_p: float
    threshold: float
    cutoffs: tuple[float, ...]
    values: tuple[float, ...]
    increments: tuple[float, ...]
    classification: Literal["convergent", "divergent", "indeterminate"]
    limit: float | None

    def to_dict(self) -> dict:
        return asdict(self)


def truncated_smoothing_integral(a: float, kernel: SmoothingKernel, R: float,
                                 n_r: int = 400, n_theta: int = 256) -> float:
    """Integral of exp(a|z|^2) K(-z) over the disk |z| <= R.

    Built on a fresh polar grid for each R: Gauss-Legendre in r, periodic
    trapezoid in the angle.
    """
    t, w = leggauss(n_r)
    r = R * (t + 1) / 2
    wr = w * R / 2
    theta = 2 * np.pi * np.arange(n_theta) / n_theta
    x = r[:, None] * np.cos(theta)[None, :]
    p = r[:, None] * np.sin(theta)[None, :]
    # combine exponents before exponentiating to keep large a finite
    sx, sp = kernel.sigma_x, kernel.sigma_p
    expo = a * r[:, None] ** 2 - x ** 2 / (2 * sx ** 2) - p ** 2 / (2 * sp ** 2)
    integrand = np.exp(expo) / (2 * np.pi * sx * sp) * r[:, None]
    return float(np.sum(integrand.sum(axis=1) * wr) * 2 * np.pi / n_theta)


def divergence_probe(a: float, kernel: SmoothingKernel, cutoffs: Sequence[float],
                     rel_tol: float = 1e-5) -> DivergenceProbe:
    """Truncated Gaussian smoothing of exp(a (x^2 + p^2)) at the origin.

    Divergent when the last three increments grow monotonically;
    convergent when the increments shrink monotonically and the last
    relative increment is below ``rel_tol``.
    """
    if not a > 0:
        raise ValueError(f"a must be positive, got {a}")
    cutoffs = tuple(float(c) for c in cutoffs)
    if len(cutoffs) < 4:
        raise ValueError("need at least four cutoffs to classify growth")
    if any(c <= 0 for c in cutoffs) or any(b <= c for c, b in zip(cutoffs, cutoffs[1:])):
        raise ValueError("cutoffs must be positive and strictly increasing")
    vals = np.array([truncated_smoothing_integral(a, kernel, R) for R in cutoffs])
    inc = np.diff(vals)
    last = inc[-3:]
    if np.all(last > 0) and np.all(np.diff(last) > 0):
        cls = "divergent"
    elif np.all(np.diff(inc) < 0) and abs(inc[-1]) <= rel_tol * abs(vals[-1]):
        cls = "convergent"
    else:
        cls = "indeterminate"
    smax = max(kernel.sigma_x, kernel.sigma_p)
    limit = None
    if kernel.sigma_x == kernel.sigma_p and a < 1 / (2 * smax ** 2):
        limit = 1.0 / (1.0 - 2 * a * smax ** 2)
    return DivergenceProbe(
        a=a, sigma_x=kernel.sigma_x, sigma_p=kernel.sigma_p,
        threshold=1 / (2 * smax ** 2), cutoffs=cutoffs,
        values=tuple(float(v) for v in vals), increments=tuple(float(v) for v in inc),
        classification=cls, limit=limit,
    )
