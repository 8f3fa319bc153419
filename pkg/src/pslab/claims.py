"""Numbered claims about Wigner/Husimi entropy, each reduced to a reproducible report."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Callable, Literal

import numpy as np

from .admissibility import (
    SmoothingKernel,
    admissibility_report,
    convolution_chain_residual,
    divergence_probe,
    gaussian_smooth,
    parity_residual,
    wigner_bound_check,
)
from .entropy import purity_integral, s2_operator, s2_wigner
from .grid import PhaseSpaceField, PhaseSpaceGrid, default_grid, density_from_pure, mix
from .statelib import StateSpec, box_field, gaussian_field, pure_fixtures
from .weyl import coherence_tail, inverse_weyl, wigner_from_density, wigner_from_pure

ClaimId = Literal["C1", "C2", "C3", "C4", "C5", "C6"]
ClaimVerdict = Literal["confirmed", "refuted", "measured_only"]

CLAIM_IDS: tuple[str, ...] = ("C1", "C2", "C3", "C4", "C5", "C6")

REPRESENTATION_SWITCH_CAVEAT = (
    "Gaussian smoothing of a Wigner function yields a Husimi-type function, which "
    "belongs to the antinormally ordered representation. S2 of the smoothed field "
    "and S2 of the original Wigner function are therefore evaluated in two different "
    "phase-space representations; the measured inequality between them is not by "
    "itself evidence that smoothing raises the entropy of one and the same state."
)

PURITY_TOL = 1e-6
BOX_EIG_BOUND = -1e-4
EVEN_CHAIN_TOL = 1e-8
CONST_CHAIN_TOL = 1e-6
WITNESS_MIN = 1e-3
WITNESS_PARITY_MIN = 0.1
LIMIT_TOL = 1e-4
MONOTONE_SLACK = 1e-8
PURE_S2_GAIN = 0.2

BOX_OMEGAS = (np.pi / 2, 2 * np.pi, 8 * np.pi)
PROBE_CUTOFFS = tuple(float(r) for r in range(2, 9))


@dataclass
class Measurement:
    name: str
    value: float
    tolerance: float | None = None
    passed: bool | None = None


@dataclass
class ClaimReport:
    claim_id: str
    description: str
    measurements: list[Measurement]
    verdict: ClaimVerdict
    fixtures: list[dict]
    grid: dict
    notes: str = ""
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def _all_passed(ms: list[Measurement]) -> bool:
    return all(m.passed for m in ms if m.passed is not None)


def _wigner(spec: StateSpec, grid: PhaseSpaceGrid) -> PhaseSpaceField:
    return wigner_from_pure(spec.build(grid))


def _claim_c1(grid):
    fixtures = pure_fixtures()
    ms = []
    for spec in fixtures:
        psi = spec.build(grid)
        W = wigner_from_pure(psi)
        pur = purity_integral(W)
        s2 = s2_wigner(W)
        ms.append(Measurement(f"purity[{spec.label()}]", pur, PURITY_TOL, abs(pur - 1) <= PURITY_TOL))
        ms.append(Measurement(f"s2_wigner[{spec.label()}]", s2, PURITY_TOL, abs(s2) <= PURITY_TOL))
        ms.append(Measurement(f"coherence_tail[{spec.label()}]", coherence_tail(psi)))
    verdict = "confirmed" if _all_passed(ms) else "refuted"
    notes = ("coherence_tail is the weight of |rho(x,x')|^2 at |x-x'| >= L; where it is not "
             "negligible the momentum spacing cannot resolve the state and the phase-space "
             "purity sum is aliased.")
    return "Pure states have (2 pi hbar) * integral of W^2 equal to one, so S2 = 0.", ms, verdict, fixtures, notes, {}


def _claim_c2(grid):
    fixtures = [StateSpec("box", {"omega": float(om), "shape": sh})
                for sh in ("square", "disk") for om in BOX_OMEGAS]
    ms, details = [], {}
    for spec in fixtures:
        B = spec.build(grid)
        rep = admissibility_report(B)
        label = spec.label()
        ok = rep.min_eigenvalue < BOX_EIG_BOUND and rep.verdict == "inadmissible"
        ms.append(Measurement(f"min_eigenvalue[{label}]", rep.min_eigenvalue, BOX_EIG_BOUND, ok))
        ms.append(Measurement(f"omega_eff[{label}]", B.meta["omega_eff"]))
        ms.append(Measurement(f"wigner_bound[{label}]", wigner_bound_check(B)))
        d = rep.to_dict()
        d.pop("eigenvalues")
        details[label] = d
    verdict = "confirmed" if _all_passed(ms) else "refuted"
    return ("A flat, compactly supported phase-space field is not the Wigner function "
            "of any density operator."), ms, verdict, fixtures, "", details


def _claim_c3(grid):
    fixtures = [StateSpec("fock", {"n": 0}), StateSpec("fock", {"n": 1}),
                StateSpec("cat", {"d": 6.0, "parity": -1})]
    kernel = SmoothingKernel.minimal_uncertainty(grid.hbar)
    ms, details = [], {}
    for spec in fixtures:
        rep = admissibility_report(gaussian_smooth(_wigner(spec, grid), kernel))
        label = spec.label()
        ms.append(Measurement(f"min_eigenvalue[{label}]", rep.min_eigenvalue, rep.tol_eig))
        ms.append(Measurement(f"trace[{label}]", rep.trace, rep.tol_tr))
        ms.append(Measurement(f"purity[{label}]", rep.purity))
        ms.append(Measurement(f"negative_mass[{label}]", rep.negative_mass))
        details[label] = rep.to_dict()
    notes = ("Smoothing with a normalized Gaussian is the phase-space action of a random "
             "displacement channel, which maps states to states; the opposing position is "
             "that smoothed Wigner functions are generally not Wigner functions. The full "
             "inverse-Weyl spectra are recorded so the reader can judge; no verdict is imposed.")
    return ("Gaussian-smoothed Wigner functions remain admissible Wigner functions "
            "(contested; measured only)."), ms, "measured_only", fixtures, notes, details


def f_battery(grid: PhaseSpaceGrid) -> dict[str, PhaseSpaceField]:
    return {
        "constant": PhaseSpaceField(grid, np.ones((grid.Nx, grid.Np))),
        "bump(0,0)": gaussian_field(0.0, 0.0, 1.0, 1.0, grid),
        "bump(1,1)": gaussian_field(1.0, 1.0, 1.0, 1.0, grid),
    }


def _claim_c4(grid):
    even = [s for s in pure_fixtures() if s.kind != "coherent"]
    odd = [StateSpec("coherent", {"x0": 2.0, "p0": 0.0})]
    kernel = SmoothingKernel.minimal_uncertainty(grid.hbar)
    battery = f_battery(grid)
    ms = []
    for spec in even + odd:
        W = _wigner(spec, grid)
        is_even = spec in even
        ms.append(Measurement(f"parity_residual[{spec.label()}]", parity_residual(W)))
        for fname, F in battery.items():
            r = convolution_chain_residual(W, F, kernel)
            name = f"residual[{spec.label()} x {fname}]"
            if is_even:
                ms.append(Measurement(name, r, EVEN_CHAIN_TOL, r <= EVEN_CHAIN_TOL))
            elif fname == "constant":
                ms.append(Measurement(name, r, CONST_CHAIN_TOL, r <= CONST_CHAIN_TOL))
            elif fname == "bump(1,1)":
                ms.append(Measurement(name, r, WITNESS_MIN, r > WITNESS_MIN))
            else:
                ms.append(Measurement(name, r))
    witness_parity = parity_residual(_wigner(odd[0], grid))
    ms.append(Measurement("witness_parity_residual", witness_parity, WITNESS_PARITY_MIN,
                          witness_parity > WITNESS_PARITY_MIN))
    verdict = "confirmed" if _all_passed(ms) else "refuted"
    return ("Exchanging W(z - z'') for W(z'' - z) in the smoothing chain is valid if and "
            "only if W(x, p) = W(-x, -p)."), ms, verdict, even + odd, "", {"F_battery": list(battery)}


def _claim_c5(grid):
    kernel = SmoothingKernel(1.0, 1.0)
    a0 = 1 / (2 * kernel.sigma_x ** 2)
    expected = {a0 / 2: "convergent", a0: "divergent", 2 * a0: "divergent"}
    ms, details, fixtures = [], {}, []
    for a, want in expected.items():
        pr = divergence_probe(a, kernel, PROBE_CUTOFFS)
        fixtures.append(StateSpec("exp_quadratic", {"a": a}))
        ms.append(Measurement(f"classified_{want}[a={a:g}]", float(pr.classification == want), None,
                              pr.classification == want))
        ms.append(Measurement(f"I(R={PROBE_CUTOFFS[-1]:g})[a={a:g}]", pr.values[-1]))
        if pr.limit is not None:
            err = abs(pr.values[-1] - pr.limit)
            ms.append(Measurement(f"limit_error[a={a:g}]", err, LIMIT_TOL, err <= LIMIT_TOL))
        details[f"a={a:g}"] = pr.to_dict()
    verdict = "confirmed" if _all_passed(ms) else "refuted"
    return ("Gaussian smoothing of exp(a (x^2 + p^2)) diverges once a reaches "
            "1/(2 sigma^2)."), ms, verdict, fixtures, "", details


def _claim_c6(grid):
    pure = pure_fixtures()
    kernel = SmoothingKernel.minimal_uncertainty(grid.hbar)
    ms, details = [], {}
    cases = [(s.label(), density_from_pure(s.build(grid)), _wigner(s, grid), True) for s in pure]
    f = [StateSpec("fock", {"n": k}).build(grid) for k in range(4)]
    for label, states in (("mix(fock:0,1)", f[:2]), ("mix(fock:0..3)", f)):
        rho = mix(states)
        cases.append((label, rho, wigner_from_density(rho), False))
    for label, rho, W, is_pure in cases:
        Wbar = gaussian_smooth(W, kernel)
        before_w, after_w = s2_wigner(W), s2_wigner(Wbar)
        before_o, after_o = s2_operator(rho), s2_operator(inverse_weyl(Wbar))
        dw = after_w - before_w
        ms.append(Measurement(f"s2_gain_wigner[{label}]", dw, -MONOTONE_SLACK, dw >= -MONOTONE_SLACK))
        if is_pure:
            ms.append(Measurement(f"s2_gain_pure[{label}]", dw, PURE_S2_GAIN, dw >= PURE_S2_GAIN))
        ms.append(Measurement(f"s2_gain_operator[{label}]", after_o - before_o))
        details[label] = {
            "s2_wigner_before": before_w, "s2_wigner_after": after_w,
            "s2_operator_before": before_o, "s2_operator_after": after_o,
            "sign_wigner": int(np.sign(dw)), "sign_operator": int(np.sign(after_o - before_o)),
        }
    verdict = "confirmed" if _all_passed(ms) else "refuted"
    fixtures = pure + [StateSpec("fock", {"n": k}) for k in range(4)]
    return ("S2 of the Gaussian-smoothed field is at least S2 of the original Wigner "
            "function."), ms, verdict, fixtures, REPRESENTATION_SWITCH_CAVEAT, details


_RUNNERS: dict[str, Callable] = {
    "C1": _claim_c1, "C2": _claim_c2, "C3": _claim_c3,
    "C4": _claim_c4, "C5": _claim_c5, "C6": _claim_c6,
}


def run_claim(claim_id: str, grid: PhaseSpaceGrid | None = None) -> ClaimReport:
    if claim_id not in _RUNNERS:
        raise ValueError(f"unknown claim id {claim_id!r}; expected one of {CLAIM_IDS}")
    grid = grid or default_grid()
    description, ms, verdict, fixtures, notes, details = _RUNNERS[claim_id](grid)
    ms = [Measurement(m.name, float(m.value), m.tolerance,
                      None if m.passed is None else bool(m.passed)) for m in ms]
    return ClaimReport(
        claim_id=claim_id,
        description=description,
        measurements=ms,
        verdict=verdict,
        fixtures=[s.to_dict() for s in fixtures],
        grid=grid.to_dict(),
        notes=notes,
        details=details,
    )
