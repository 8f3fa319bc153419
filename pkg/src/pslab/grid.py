"""Phase-space discretization and the state containers that live on it."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

DEFAULT_HBAR = 1.0
DEFAULT_L = 8.0
DEFAULT_NX = 256

# fraction of the x-domain (per side) treated as the wrap-around danger zone
EDGE_FRACTION = 0.05

FieldKind = Literal["wigner", "husimi", "kernel", "generic"]


class GridMismatch(ValueError):
    pass


class NumericalGuardError(RuntimeError):
    """A numerical precondition failed (wrap-around, divergence, ...)."""


class EdgeAmplitudeError(NumericalGuardError):
    pass


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Uniform (x, p) grid with the momentum axis FFT-conjugate to x.

    x_j = -L + j*dx and p_k = -P + k*dp, with dx = 2L/Nx and
    dp = 2*pi*hbar/(Nx*dx), so that dx*dp*Nx = 2*pi*hbar.
    """

    hbar: float = DEFAULT_HBAR
    L: float = DEFAULT_L
    Nx: int = DEFAULT_NX
    Np: int = DEFAULT_NX

    def __post_init__(self):
        if not self.hbar > 0:
            raise ValueError(f"hbar must be positive, got {self.hbar}")
        if not self.L > 0:
            raise ValueError(f"L must be positive, got {self.L}")
        for name in ("Nx", "Np"):
            n = getattr(self, name)
            if int(n) != n or n < 8 or n % 2:
                raise ValueError(f"{name} must be an even integer >= 8, got {n}")
        if self.Np != self.Nx:
            raise ValueError("Np must equal Nx (FFT-conjugate momentum axis)")

    @property
    def dx(self) -> float:
        return 2.0 * self.L / self.Nx

    @property
    def dp(self) -> float:
        return 2.0 * np.pi * self.hbar / (self.Nx * self.dx)

    @property
    def P(self) -> float:
        return self.Np * self.dp / 2.0

    @property
    def x(self) -> np.ndarray:
        return -self.L + np.arange(self.Nx) * self.dx

    @property
    def p(self) -> np.ndarray:
        return -self.P + np.arange(self.Np) * self.dp

    @property
    def cell(self) -> float:
        return self.dx * self.dp

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.x, self.p, indexing="ij")

    def coarsened(self) -> "PhaseSpaceGrid":
        """Grid with every other x-sample; this grid is its 2x refinement.

        The momentum spacing is unchanged and the coarse p-axis is the
        central half of this one.
        """
        if self.Nx % 4:
            raise ValueError(f"Nx must be divisible by 4 to coarsen, got {self.Nx}")
        return PhaseSpaceGrid(self.hbar, self.L, self.Nx // 2, self.Np // 2)

    def to_dict(self) -> dict:
        return {"hbar": self.hbar, "L": self.L, "Nx": self.Nx, "Np": self.Np,
                "dx": self.dx, "dp": self.dp}


def build_grid(hbar: float = DEFAULT_HBAR, L: float = DEFAULT_L, Nx: int = DEFAULT_NX) -> PhaseSpaceGrid:
    if isinstance(Nx, float):
        if not Nx.is_integer():
            raise ValueError(f"Nx must be an even integer >= 8, got {Nx}")
        Nx = int(Nx)
    return PhaseSpaceGrid(hbar=float(hbar), L=float(L), Nx=Nx, Np=Nx)


def default_grid() -> PhaseSpaceGrid:
    """The acceptance grid; ``PSLAB_GRID_NX`` overrides the point count."""
    nx = int(os.environ.get("PSLAB_GRID_NX", DEFAULT_NX))
    return build_grid(DEFAULT_HBAR, DEFAULT_L, nx)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


def check_same_grid(*objs) -> PhaseSpaceGrid:
    grid = objs[0].grid
    for o in objs[1:]:
        if o.grid != grid:
            raise GridMismatch(f"grid mismatch: {grid} vs {o.grid}")
    return grid


@dataclass(frozen=True)
class WaveFunction:
    grid: PhaseSpaceGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid.Nx,):
            raise ValueError(f"expected {self.grid.Nx} samples, got shape {v.shape}")
        object.__setattr__(self, "values", _frozen(v))

    @property
    def norm2(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2) * self.grid.dx)

    def normalize(self) -> "WaveFunction":
        n = self.norm2
        if n == 0:
            raise ValueError("cannot normalize a zero wavefunction")
        return WaveFunction(self.grid, self.values / np.sqrt(n))

    def edge_mass(self) -> float:
        """Probability in the outer EDGE_FRACTION of the x-domain (both sides)."""
        x = self.grid.x
        edge = np.abs(x) > self.grid.L * (1 - 2 * EDGE_FRACTION)
        return float(np.sum(np.abs(self.values[edge]) ** 2) * self.grid.dx)

    def check_edges(self, tol: float = 1e-6) -> None:
        mass = self.edge_mass()
        if mass > tol * self.norm2:
            raise EdgeAmplitudeError(
                f"wavefunction has probability {mass:.3g} in the outer "
                f"{EDGE_FRACTION:.0%} of the x-domain; enlarge L"
            )


@dataclass(frozen=True)
class DensityOperatorKernel:
    """Density matrix on the x-samples; entry (j, k) is rho(x_j, x_k)*dx."""

    grid: PhaseSpaceGrid
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        n = self.grid.Nx
        if m.shape != (n, n):
            raise ValueError(f"expected ({n}, {n}) matrix, got {m.shape}")
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    @property
    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def hermitian_matrix(self, tol: float = 1e-10) -> np.ndarray:
        """Symmetrized copy, after checking the asymmetry is round-off."""
        r = self.hermiticity_residual
        if r > tol:
            raise ValueError(f"kernel is not Hermitian (residual {r:.3g} > {tol:g})")
        return (self.matrix + self.matrix.conj().T) / 2

    def __add__(self, other: "DensityOperatorKernel") -> "DensityOperatorKernel":
        check_same_grid(self, other)
        return DensityOperatorKernel(self.grid, self.matrix + other.matrix)

    def __mul__(self, c: float) -> "DensityOperatorKernel":
        return DensityOperatorKernel(self.grid, c * self.matrix)

    __rmul__ = __mul__


def density_from_pure(psi: WaveFunction) -> DensityOperatorKernel:
    v = psi.values
    return DensityOperatorKernel(psi.grid, np.outer(v, v.conj()) * psi.grid.dx)


def mix(states, weights=None) -> DensityOperatorKernel:
    """Convex combination of pure states and/or kernels."""
    kernels = [density_from_pure(s) if isinstance(s, WaveFunction) else s for s in states]
    if weights is None:
        weights = np.full(len(kernels), 1.0 / len(kernels))
    weights = np.asarray(weights, dtype=float)
    if np.any(weights < 0) or abs(weights.sum() - 1) > 1e-12:
        raise ValueError("mixture weights must be non-negative and sum to 1")
    grid = check_same_grid(*kernels)
    m = sum(w * k.matrix for w, k in zip(weights, kernels))
    return DensityOperatorKernel(grid, m)


@dataclass(frozen=True)
class PhaseSpaceField:
    """Real values on the grid, indexed [x, p]."""

    grid: PhaseSpaceGrid
    values: np.ndarray
    kind: FieldKind = "generic"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        v = np.asarray(self.values)
        if np.iscomplexobj(v):
            raise TypeError("field values must be real")
        v = v.astype(float)
        if v.shape != (self.grid.Nx, self.grid.Np):
            raise ValueError(f"expected shape {(self.grid.Nx, self.grid.Np)}, got {v.shape}")
        if self.kind not in ("wigner", "husimi", "kernel", "generic"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        object.__setattr__(self, "values", _frozen(v))

    def integral(self) -> float:
        return float(np.sum(self.values) * self.grid.cell)

    def with_values(self, values, kind: FieldKind | None = None) -> "PhaseSpaceField":
        return PhaseSpaceField(self.grid, values, kind or self.kind, dict(self.meta))

    def __add__(self, other: "PhaseSpaceField") -> "PhaseSpaceField":
        check_same_grid(self, other)
        kind = self.kind if self.kind == other.kind else "generic"
        return PhaseSpaceField(self.grid, self.values + other.values, kind)

    def __mul__(self, c: float) -> "PhaseSpaceField":
        return PhaseSpaceField(self.grid, c * self.values, self.kind)

    __rmul__ = __mul__

    def coarsened(self) -> "PhaseSpaceField":
        """Restriction to ``grid.coarsened()``: even x rows, central p half."""
        g = self.grid.coarsened()
        q = self.grid.Np // 4
        return PhaseSpaceField(g, self.values[::2, q:q + g.Np], self.kind, dict(self.meta))

    def edge_ratio(self) -> float:
        """max |value| in the outer band of the domain over the global max."""
        n, m = self.values.shape
        bx = max(1, int(round(EDGE_FRACTION * n)))
        bp = max(1, int(round(EDGE_FRACTION * m)))
        a = np.abs(self.values)
        if not np.all(np.isfinite(a)):
            return float("inf")
        peak = a.max()
        if peak == 0:
            return 0.0
        edge = max(a[:bx].max(), a[-bx:].max(), a[:, :bp].max(), a[:, -bp:].max())
        return float(edge / peak)
