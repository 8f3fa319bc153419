"""Wigner transform, its inverse, marginals and the phase-space overlap rule.

Forward transforms sample the off-diagonal offset y on a half-step
(dx/2) so that the momentum axis covers the full FFT-conjugate range
without aliasing; the half-step values come from band-limited (Fourier)
upsampling of the state.  The inverse map reconstructs the kernel on
``grid.coarsened()``, whose pairwise midpoints are exactly the x-samples
of the input field.
"""

from __future__ import annotations

import numpy as np
from scipy.signal import resample

from .grid import (
    DensityOperatorKernel,
    PhaseSpaceField,
    PhaseSpaceGrid,
    WaveFunction,
    check_same_grid,
)

NORM_TOL = 1e-8
IMAG_TOL = 1e-10


def _upsample(a: np.ndarray, axis: int) -> np.ndarray:
    return resample(a, 2 * a.shape[axis], axis=axis)


def _offset_index(n: int) -> tuple[np.ndarray, np.ndarray]:
    j = np.arange(n)[:, None]
    m = np.arange(-n, n)[None, :]
    return 2 * j, m


def _rows_to_wigner(f: np.ndarray, grid: PhaseSpaceGrid) -> np.ndarray:
    """f[j, m] = rho(x_j - m dx/2, x_j + m dx/2) for m in [-Nx, Nx)."""
    n = grid.Nx
    m = np.arange(-n, n)
    f = f * np.where(m % 2, -1.0, 1.0)[None, :]
    # fold offsets modulo Nx: the phase exp(2 pi i k m / Nx) is Nx-periodic in m
    folded = f[:, :n] + f[:, n:]
    # column c of `folded` holds offsets m = c - Nx and m = c; both are c mod Nx
    w = np.fft.ifft(folded, axis=1) * n * grid.dx / (2 * np.pi * grid.hbar)
    imag = np.max(np.abs(w.imag))
    scale = max(1.0, np.max(np.abs(w.real)))
    if imag > IMAG_TOL * scale:
        raise ArithmeticError(f"Wigner transform has imaginary residue {imag:.3g}")
    return w.real


def wigner_from_pure(psi: WaveFunction) -> PhaseSpaceField:
    """W(x,p) = (pi hbar)^-1 int dy psi*(x+y) psi(x-y) exp(2ipy/hbar)."""
    grid = psi.grid
    n2 = psi.norm2
    if abs(n2 - 1) > NORM_TOL:
        raise ValueError(f"wavefunction is not normalized (norm^2 = {n2:.12g})")
    psi.check_edges()
    fine = np.concatenate([_upsample(psi.values, 0), [0.0]])  # sentinel zero
    n = grid.Nx
    c, m = _offset_index(n)
    lo, hi = c - m, c + m
    outside = (lo < 0) | (lo >= 2 * n) | (hi < 0) | (hi >= 2 * n)
    lo = np.where(outside, 2 * n, lo)
    hi = np.where(outside, 2 * n, hi)
    f = fine[lo] * fine[hi].conj()
    return PhaseSpaceField(grid, _rows_to_wigner(f, grid), "wigner")


def wigner_from_density(rho: DensityOperatorKernel) -> PhaseSpaceField:
    """W(x,p) = (pi hbar)^-1 int dy <x-y|rho|x+y> exp(2ipy/hbar)."""
    grid = rho.grid
    mat = rho.hermitian_matrix() / grid.dx
    fine = _upsample(_upsample(mat, 0), 1)
    n = grid.Nx
    fine = np.pad(fine, ((0, 1), (0, 1)))
    c, m = _offset_index(n)
    lo, hi = c - m, c + m
    outside = (lo < 0) | (lo >= 2 * n) | (hi < 0) | (hi >= 2 * n)
    lo = np.where(outside, 2 * n, lo)
    hi = np.where(outside, 2 * n, hi)
    return PhaseSpaceField(grid, _rows_to_wigner(fine[lo, hi], grid), "wigner")


def inverse_weyl(field: PhaseSpaceField) -> DensityOperatorKernel:
    """Operator kernel rho(x, x') = int dp W((x+x')/2, p) exp(ip(x-x')/hbar).

    The kernel lives on ``field.grid.coarsened()``.  Separations with
    |x - x'| >= L alias onto shorter ones under the momentum quadrature
    and are set to zero.
    """
    grid = field.grid
    coarse = grid.coarsened()
    n = grid.Nx
    # g[c, s] = dp * sum_k W(x_c, p_k) exp(2 pi i k s / Nx)
    g = np.fft.ifft(field.values, axis=1) * n * grid.dp
    a = np.arange(coarse.Nx)
    A, B = np.meshgrid(a, a, indexing="ij")
    d = A - B
    vals = g[A + B, (2 * d) % n]
    vals = np.where(np.abs(d) < coarse.Nx // 2, vals, 0.0)
    return DensityOperatorKernel(coarse, vals * coarse.dx)


def momentum_amplitude(psi: WaveFunction) -> np.ndarray:
    """psi~(p_k) = (2 pi hbar)^-1/2 sum_j psi(x_j) exp(-i p_k x_j / hbar) dx."""
    g = psi.grid
    phase = np.exp(-1j * np.outer(g.p, g.x) / g.hbar)
    return phase @ psi.values * g.dx / np.sqrt(2 * np.pi * g.hbar)


def marginals(field: PhaseSpaceField) -> tuple[np.ndarray, np.ndarray]:
    g = field.grid
    return field.values.sum(axis=1) * g.dp, field.values.sum(axis=0) * g.dx


def hilbert_schmidt_trace(a: PhaseSpaceField, b: PhaseSpaceField) -> float:
    """Tr(A B) from the Wigner symbols: (2 pi hbar) sum A B dx dp."""
    g = check_same_grid(a, b)
    return float(2 * np.pi * g.hbar * np.sum(a.values * b.values) * g.cell)


def coherence_tail(psi: WaveFunction) -> float:
    """Weight of |rho(x, x')|^2 at separations |x - x'| >= L.

    The momentum spacing dp = pi hbar / L cannot resolve these
    coherences; a non-negligible value means the grid is too small.
    """
    g = psi.grid
    w = np.abs(psi.values) ** 2 * g.dx
    far = np.abs(g.x[:, None] - g.x[None, :]) >= g.L
    return float(w @ far @ w)
