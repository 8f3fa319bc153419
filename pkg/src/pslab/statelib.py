"""Fixture states and fields: oscillator eigenstates, coherent and cat
states, the flat box field, the growing exp-quadratic field and Gaussian bumps."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .grid import EdgeAmplitudeError, PhaseSpaceField, PhaseSpaceGrid, WaveFunction

MAX_FOCK = 30

STATE_KINDS = ("fock", "coherent", "cat")
FIELD_KINDS = ("box", "exp_quadratic", "gaussian_field")

_PARAMS: dict[str, dict[str, Any]] = {
    "fock": {"n": 0},
    "coherent": {"x0": 0.0, "p0": 0.0},
    "cat": {"d": 6.0, "parity": 1},
    "box": {"omega": 4.0, "shape": "square"},
    "exp_quadratic": {"a": 0.25},
    "gaussian_field": {"x0": 0.0, "p0": 0.0, "sx": 1.0, "sp": 1.0},
}


@dataclass(frozen=True)
class StateSpec:
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in _PARAMS:
            raise ValueError(f"unknown state kind {self.kind!r}")
        unknown = set(self.params) - set(_PARAMS[self.kind])
        if unknown:
            raise ValueError(f"unknown parameter(s) {sorted(unknown)} for kind {self.kind!r}")
        merged = {**_PARAMS[self.kind], **self.params}
        object.__setattr__(self, "params", merged)

    @property
    def is_wavefunction(self) -> bool:
        return self.kind in STATE_KINDS

    @classmethod
    def parse(cls, text: str) -> "StateSpec":
        """``fock:3``, ``coherent:x0=2,p0=0``, ``cat:d=6,parity=-1``, ``box:omega=4,shape=disk``."""
        kind, _, rest = text.partition(":")
        kind = kind.strip()
        if kind not in _PARAMS:
            raise ValueError(f"unknown state kind {kind!r}")
        params: dict[str, Any] = {}
        names = list(_PARAMS[kind])
        for i, item in enumerate(filter(None, (s.strip() for s in rest.split(",")))):
            if "=" in item:
                key, val = (s.strip() for s in item.split("=", 1))
            else:
                key, val = names[i], item
            if key not in _PARAMS[kind]:
                raise ValueError(f"unknown parameter {key!r} for kind {kind!r}")
            default = _PARAMS[kind][key]
            params[key] = val if isinstance(default, str) else type(default)(float(val))
        return cls(kind, params)

    @classmethod
    def from_dict(cls, d: dict) -> "StateSpec":
        d = dict(d)
        kind = d.pop("kind")
        return cls(kind, d)

    def to_dict(self) -> dict:
        return {"kind": self.kind, **self.params}

    def label(self) -> str:
        return self.kind + ":" + ",".join(f"{k}={v}" for k, v in self.params.items())

    def build(self, grid: PhaseSpaceGrid):
        """WaveFunction for state kinds, PhaseSpaceField for field kinds."""
        p = self.params
        if self.kind == "fock":
            return harmonic_eigenstate(int(p["n"]), grid)
        if self.kind == "coherent":
            return coherent_state(p["x0"], p["p0"], grid)
        if self.kind == "cat":
            return cat_state(p["d"], int(p["parity"]), grid)
        if self.kind == "box":
            return box_field(p["omega"], p["shape"], grid)
        if self.kind == "exp_quadratic":
            return exp_quadratic_field(p["a"], grid)
        return gaussian_field(p["x0"], p["p0"], p["sx"], p["sp"], grid)


def hermite_functions(nmax: int, xi: np.ndarray) -> np.ndarray:
    """Rows 0..nmax of the normalized Hermite functions via the three-term recurrence."""
    h = np.empty((nmax + 1, xi.size))
    h[0] = np.pi ** -0.25 * np.exp(-xi ** 2 / 2)
    if nmax:
        h[1] = np.sqrt(2.0) * xi * h[0]
    for n in range(1, nmax):
        h[n + 1] = np.sqrt(2.0 / (n + 1)) * xi * h[n] - np.sqrt(n / (n + 1)) * h[n - 1]
    return h


def harmonic_eigenstate(n: int, grid: PhaseSpaceGrid) -> WaveFunction:
    """Oscillator eigenstate with m = omega = 1."""
    if n < 0 or int(n) != n:
        raise ValueError(f"n must be a non-negative integer, got {n}")
    if n > MAX_FOCK:
        raise ValueError(f"n = {n} exceeds the supported maximum {MAX_FOCK}")
    xi = grid.x / np.sqrt(grid.hbar)
    psi = WaveFunction(grid, hermite_functions(n, xi)[n] * grid.hbar ** -0.25)
    try:
        psi.check_edges()
    except EdgeAmplitudeError as err:
        raise ValueError(f"n = {n} is too large for L = {grid.L}: {err}") from None
    return psi.normalize()


def _displaced_ground(x0: float, p0: float, grid: PhaseSpaceGrid) -> np.ndarray:
    x, hb = grid.x, grid.hbar
    return (np.pi * hb) ** -0.25 * np.exp(-(x - x0) ** 2 / (2 * hb) + 1j * p0 * x / hb)


def coherent_state(x0: float, p0: float, grid: PhaseSpaceGrid) -> WaveFunction:
    if abs(x0) > grid.L / 2:
        raise ValueError(f"|x0| = {abs(x0)} too close to the boundary (limit L/2 = {grid.L / 2})")
    return WaveFunction(grid, _displaced_ground(x0, p0, grid)).normalize()


def cat_state(d: float, parity: int, grid: PhaseSpaceGrid) -> WaveFunction:
    """Coherent states at +-d/2 combined with relative sign ``parity``."""
    if d < 1:
        raise ValueError(f"separation must be >= 1, got {d}")
    if parity not in (1, -1):
        raise ValueError(f"parity must be +1 or -1, got {parity}")
    if d / 2 > grid.L / 2:
        raise ValueError(f"separation {d} too large for L = {grid.L}")
    overlap = np.exp(-d ** 2 / (4 * grid.hbar))
    norm = 1 / np.sqrt(2 * (1 + parity * overlap))
    v = norm * (_displaced_ground(d / 2, 0, grid) + parity * _displaced_ground(-d / 2, 0, grid))
    return WaveFunction(grid, v)


def _snapped_range(extent: float, step: float, n: int) -> np.ndarray:
    """Half-open index range of ``extent/step`` (rounded, even) cells centred at index n/2."""
    cells = max(2, 2 * int(round(extent / step / 2)))
    lo = n // 2 - cells // 2
    if lo < 1 or lo + cells > n - 1:
        raise ValueError("box region exceeds the grid")
    idx = np.zeros(n, bool)
    idx[lo:lo + cells] = True
    return idx


def box_field(omega: float, shape: str, grid: PhaseSpaceGrid) -> PhaseSpaceField:
    """Flat field on a region of area ``omega``, zero elsewhere.

    The region boundary is snapped to grid cells without smoothing, and the
    inside value is 1/(snapped area) so the field integrates to one.  The
    snapped area is stored in ``meta['omega_eff']``.
    """
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega}")
    if shape == "square":
        side = np.sqrt(omega)
        inside = np.outer(_snapped_range(side, grid.dx, grid.Nx), _snapped_range(side, grid.dp, grid.Np))
    elif shape == "disk":
        r = np.sqrt(omega / np.pi)
        if r > 0.9 * min(grid.L, grid.P):
            raise ValueError("box region exceeds the grid")
        X, P = grid.mesh()
        inside = X ** 2 + P ** 2 <= r ** 2
    else:
        raise ValueError(f"shape must be 'square' or 'disk', got {shape!r}")
    area = inside.sum() * grid.cell
    if area == 0:
        raise ValueError("box region smaller than one grid cell")
    return PhaseSpaceField(grid, inside / area, "generic",
                           {"omega": omega, "omega_eff": float(area), "shape": shape})


def exp_quadratic_field(a: float, grid: PhaseSpaceGrid) -> PhaseSpaceField:
    """exp(a (x^2 + p^2)), deliberately unnormalized."""
    if not a > 0:
        raise ValueError(f"a must be positive, got {a}")
    X, P = grid.mesh()
    with np.errstate(over="ignore"):
        v = np.exp(a * (X ** 2 + P ** 2))
    return PhaseSpaceField(grid, v, "generic", {"a": a})


def gaussian_field(x0: float, p0: float, sx: float, sp: float, grid: PhaseSpaceGrid,
                   normalize: str = "analytic") -> PhaseSpaceField:
    """Normalized Gaussian bump; ``normalize='grid'`` rescales to unit discrete mass."""
    if not (sx > 0 and sp > 0):
        raise ValueError("widths must be positive")
    X, P = grid.mesh()
    v = np.exp(-(X - x0) ** 2 / (2 * sx ** 2) - (P - p0) ** 2 / (2 * sp ** 2)) / (2 * np.pi * sx * sp)
    if normalize == "grid":
        v = v / (v.sum() * grid.cell)
    return PhaseSpaceField(grid, v, "generic")


def pure_fixtures() -> list[StateSpec]:
    """Pure states used throughout the acceptance runs."""
    return [
        StateSpec("fock", {"n": 0}),
        StateSpec("fock", {"n": 1}),
        StateSpec("fock", {"n": 5}),
        StateSpec("coherent", {"x0": 2.0, "p0": 0.0}),
        StateSpec("cat", {"d": 6.0, "parity": -1}),
    ]
