"""Acceptance criteria, run on the default grid (hbar=1, L=8, Nx=256) at
their stated tolerances.  Each test records one PASS/FAIL line, listed in
the terminal summary under "acceptance criteria"."""

import json

import numpy as np
import pytest

from pslab import (
    SmoothingKernel,
    StateSpec,
    admissibility_report,
    convolution_chain_residual,
    default_grid,
    density_from_pure,
    divergence_probe,
    gaussian_smooth,
    husimi_from_state,
    marginals,
    mix,
    purity_integral,
    run_claim,
    s2_operator,
    s2_wigner,
    von_neumann_entropy,
    wehrl_entropy,
    wigner_from_density,
    wigner_from_pure,
)
from pslab.claims import REPRESENTATION_SWITCH_CAVEAT, f_battery
from pslab.io import validate_claim_report
from pslab.statelib import box_field, pure_fixtures
from pslab.weyl import momentum_amplitude

pytestmark = pytest.mark.acceptance

GRID = default_grid()
FIXTURES = pure_fixtures()
LIBRARY = FIXTURES + [StateSpec.parse(s) for s in ("fock:2", "fock:3", "coherent:x0=-1,p0=1.5", "cat:d=6,parity=1")]


def fmt(worst):
    return ", ".join(f"{k}={v:.3g}" for k, v in worst.items())


@pytest.fixture(scope="module")
def wigners():
    return {s.label(): (s.build(GRID), wigner_from_pure(s.build(GRID))) for s in LIBRARY}


@pytest.fixture(scope="module")
def mixtures():
    f = [StateSpec("fock", {"n": n}).build(GRID) for n in range(4)]
    return {"mix2": (mix(f[:2]), 0.5, np.log(2)), "mix4": (mix(f), 0.75, np.log(4))}


def test_criterion_01_pure_state_purity(wigners, report_criterion):
    bad = {}
    for s in FIXTURES:
        W = wigners[s.label()][1]
        pur, s2 = purity_integral(W), s2_wigner(W)
        if abs(pur - 1) > 1e-6 or abs(s2) > 1e-6:
            bad[s.label()] = pur - 1
    ok = report_criterion(1, not bad, f"purity deviations beyond 1e-6: {fmt(bad) or 'none'}")
    assert ok, bad


def test_criterion_02_picture_equivalence(wigners, mixtures, report_criterion):
    bad = {}
    for s in LIBRARY:
        psi, W = wigners[s.label()]
        d = abs(s2_operator(density_from_pure(psi)) - s2_wigner(W))
        if d > 1e-6:
            bad[s.label()] = d
    for name, (rho, target, _) in mixtures.items():
        so, sw = s2_operator(rho), s2_wigner(wigner_from_density(rho))
        if abs(so - sw) > 1e-6 or abs(so - target) > 1e-6 or abs(sw - target) > 1e-6:
            bad[name] = max(abs(so - sw), abs(sw - target))
    ok = report_criterion(2, not bad, f"|s2_operator - s2_wigner| beyond 1e-6: {fmt(bad) or 'none'}")
    assert ok, bad


def test_criterion_03_marginals(wigners, report_criterion):
    worst = 0.0
    for s in FIXTURES:
        psi, W = wigners[s.label()]
        mx, mp = marginals(W)
        worst = max(worst, np.max(np.abs(mx - np.abs(psi.values) ** 2)),
                    np.max(np.abs(mp - np.abs(momentum_amplitude(psi)) ** 2)))
    psi0 = wigners["fock:n=0"][0]
    qx, _ = marginals(husimi_from_state(psi0))
    j = GRID.Nx // 2
    gap = abs(qx[j] - abs(psi0.values[j]) ** 2)
    ok = report_criterion(3, worst <= 1e-6 and gap > 1e-2,
                          f"max marginal error {worst:.2e}; Husimi x-marginal gap at 0 = {gap:.4f}")
    assert ok


def test_criterion_04_box_inadmissible(report_criterion):
    eigs = {}
    for shape in ("square", "disk"):
        for omega in (np.pi / 2, 2 * np.pi, 8 * np.pi):
            eigs[f"{shape}:{omega:.3f}"] = admissibility_report(box_field(omega, shape, GRID)).min_eigenvalue
    verdict = run_claim("C2", GRID).verdict
    ok = report_criterion(4, max(eigs.values()) < -1e-4 and verdict == "confirmed",
                          f"largest min eigenvalue {max(eigs.values()):.3g}; C2 {verdict}")
    assert ok, eigs


def test_criterion_05_parity_condition(wigners, report_criterion):
    K = SmoothingKernel.minimal_uncertainty(GRID.hbar)
    battery = f_battery(GRID)
    even = [s for s in FIXTURES if s.kind != "coherent"]
    worst_even = max(convolution_chain_residual(wigners[s.label()][1], F, K)
                     for s in even for F in battery.values())
    witness = convolution_chain_residual(wigners["coherent:x0=2.0,p0=0.0"][1], battery["bump(1,1)"], K)
    ok = report_criterion(5, worst_even <= 1e-8 and witness > 1e-3,
                          f"even max residual {worst_even:.2e}; coherent(2,0) witness {witness:.4g}")
    assert ok


def test_criterion_06_divergence(report_criterion):
    K = SmoothingKernel(1.0, 1.0)
    cut = range(2, 9)
    conv = divergence_probe(0.25, K, cut)
    div = [divergence_probe(a, K, cut) for a in (0.5, 1.0)]
    ok = (conv.classification == "convergent" and abs(conv.values[-1] - 1 / (1 - 2 * 0.25)) <= 1e-4
          and all(p.classification == "divergent" and np.all(np.diff(p.values) > 0) for p in div))
    ok = report_criterion(6, ok, f"a=0.25 {conv.classification} I(8)={conv.values[-1]:.8f}; "
                                 + "; ".join(f"a={p.a:g} {p.classification}" for p in div))
    assert ok


def test_criterion_07_husimi_and_wehrl(wigners, report_criterion):
    mins, wehrl = {}, {}
    for s in FIXTURES:
        Q = husimi_from_state(wigners[s.label()][0])
        mins[s.label()] = Q.values.min()
        wehrl[s.label()] = wehrl_entropy(Q)
    negative = {k: v for k, v in mins.items() if v < -1e-12}
    s0 = wehrl["fock:n=0"]
    sc = wehrl["coherent:x0=2.0,p0=0.0"]
    others = [v for k, v in wehrl.items() if k not in ("fock:n=0", "coherent:x0=2.0,p0=0.0")]
    values_ok = abs(s0 - (1 + np.log(2 * np.pi))) <= 1e-4 and abs(sc - s0) <= 1e-6 and all(v > sc for v in others)
    ok = report_criterion(7, not negative and values_ok,
                          f"Husimi minima below -1e-12: {fmt(negative) or 'none'}; "
                          f"Wehrl(psi0)={s0:.6f}, |coherent - psi0|={abs(sc - s0):.1e}, min other={min(others):.4f}")
    assert ok, (negative, wehrl)


def test_criterion_08_von_neumann(wigners, mixtures, report_criterion):
    pure = max(abs(von_neumann_entropy(density_from_pure(wigners[s.label()][0]))) for s in FIXTURES)
    mixed = max(abs(von_neumann_entropy(rho) - S) for rho, _, S in mixtures.values())
    ok = report_criterion(8, pure <= 1e-8 and mixed <= 1e-6, f"pure max {pure:.1e}; mixture max error {mixed:.1e}")
    assert ok


def test_criterion_09_contested_claim(report_criterion):
    a, b = run_claim("C3", GRID), run_claim("C3", GRID)
    d = json.loads(a.to_json())
    validate_claim_report(d)
    spectra = {k: len(v["eigenvalues"]) for k, v in d["details"].items()}
    labels = {f"{f['kind']}" for f in d["fixtures"]}
    ok = (d["verdict"] == "measured_only" and a.to_json() == b.to_json() and len(spectra) == 3
          and all(n == GRID.Nx // 2 for n in spectra.values()) and labels == {"fock", "cat"})
    ok = report_criterion(9, ok, f"verdict {d['verdict']}; spectra lengths {sorted(spectra.values())}; deterministic")
    assert ok


def test_criterion_10_smoothing_gain(wigners, report_criterion):
    K = SmoothingKernel.minimal_uncertainty(GRID.hbar)
    gains = {s.label(): s2_wigner(gaussian_smooth(wigners[s.label()][1], K)) - s2_wigner(wigners[s.label()][1])
             for s in FIXTURES}
    rep = run_claim("C6", GRID)
    ok = min(gains.values()) >= 0.2 and REPRESENTATION_SWITCH_CAVEAT in rep.to_json() and rep.verdict == "confirmed"
    ok = report_criterion(10, ok, f"smallest S2 gain {min(gains.values()):.4f}; caveat present; C6 {rep.verdict}")
    assert ok, gains
