import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from pslab import (
    DivergenceSuspected,
    PhaseSpaceField,
    SmoothingKernel,
    admissibility_report,
    build_grid,
    convolution_chain_residual,
    divergence_probe,
    gaussian_smooth,
    mix,
    parity_residual,
    wigner_bound_check,
    wigner_from_density,
    wigner_from_pure,
)
from pslab.admissibility import classify, convolution_chain_terms, reflect, truncated_smoothing_integral
from pslab.claims import f_battery
from pslab.statelib import box_field, cat_state, coherent_state, exp_quadratic_field, gaussian_field, harmonic_eigenstate

MIN_UNC = SmoothingKernel.minimal_uncertainty(1.0)


def probe_closed_form(a, R, sigma=1.0):
    """I(R) for K = N(0, sigma^2 I): int_0^R exp((a - 1/(2 sigma^2)) r^2) r dr / sigma^2."""
    c = a - 1 / (2 * sigma ** 2)
    if c == 0:
        return R ** 2 / (2 * sigma ** 2)
    return (np.exp(c * R ** 2) - 1) / (2 * c * sigma ** 2)


@pytest.fixture(scope="module")
def W0(grid):
    return wigner_from_pure(harmonic_eigenstate(0, grid))


def test_kernel_properties(grid):
    assert MIN_UNC.sigma_x == MIN_UNC.sigma_p == np.sqrt(0.5)
    K = MIN_UNC.as_field(grid)
    assert K.kind == "kernel" and abs(K.integral() - 1) < 1e-12
    assert parity_residual(K) < 1e-15
    sq = SmoothingKernel.minimal_uncertainty(1.0, 4.0)
    assert np.isclose(sq.sigma_x * sq.sigma_p, 0.5)
    with pytest.raises(ValueError):
        SmoothingKernel(0.0, 1.0)


def test_smoothing_ground_state_gives_husimi(grid, W0):
    Q = gaussian_smooth(W0, MIN_UNC)
    assert abs(Q.values[grid.Nx // 2, grid.Np // 2] - 1 / (2 * np.pi)) < 1e-6
    X, P = grid.mesh()
    assert np.max(np.abs(Q.values - np.exp(-(X ** 2 + P ** 2) / 2) / (2 * np.pi))) < 1e-12


@settings(max_examples=20, deadline=None)
@given(x0=st.floats(-1.5, 1.5), p0=st.floats(-1.5, 1.5), s=st.floats(0.2, 1.2), sk=st.floats(0.1, 1.5))
def test_smoothing_preserves_integral(x0, p0, s, sk):
    g = build_grid(1.0, 8.0, 128)
    F = gaussian_field(x0, p0, s, s, g)
    assert abs(gaussian_smooth(F, SmoothingKernel(sk, sk)).integral() - F.integral()) < 1e-6


def test_narrow_field_reproduces_kernel(grid):
    delta = gaussian_field(0.0, 0.0, 0.01, 0.01, grid, normalize="grid")
    out = gaussian_smooth(delta, MIN_UNC)
    assert np.max(np.abs(out.values - MIN_UNC.on_grid(grid))) <= 1e-3


def test_smoothing_commutes_with_displacement(grid):
    F = wigner_from_pure(harmonic_eigenstate(3, grid))
    shifted = F.with_values(np.roll(F.values, (16, 3), axis=(0, 1)))
    a = gaussian_smooth(shifted, MIN_UNC).values
    b = np.roll(gaussian_smooth(F, MIN_UNC).values, (16, 3), axis=(0, 1))
    assert np.max(np.abs(a - b)) < 1e-14


@pytest.mark.parametrize("a", [0.25, 1.0])
def test_growing_field_guard(grid, a):
    with pytest.raises(DivergenceSuspected, match="divergence_probe"):
        gaussian_smooth(exp_quadratic_field(a, grid), SmoothingKernel(1.0, 1.0))


def test_report_ground_state():
    # on the L=8 grid the same report has min eigenvalue -1.5e-8; see test_grid_extent
    g = build_grid(1.0, 10.0, 256)
    rep = admissibility_report(wigner_from_pure(harmonic_eigenstate(0, g)))
    assert rep.verdict == "admissible"
    assert rep.min_eigenvalue >= -1e-8
    assert abs(rep.purity - 1) < 1e-6 and abs(rep.trace - 1) < 1e-6
    assert rep.marginals_nonneg and rep.hermiticity_residual < 1e-12
    assert len(rep.eigenvalues) == g.Nx // 2


def test_report_box_inadmissible(grid):
    rep = admissibility_report(box_field(8 * np.pi, "square", grid))
    assert rep.verdict == "inadmissible" and rep.min_eigenvalue < -1e-4
    assert rep.negative_mass < 0


def test_report_smoothed_excited_state(grid):
    rep = admissibility_report(gaussian_smooth(wigner_from_pure(harmonic_eigenstate(1, grid)), MIN_UNC))
    d = rep.to_dict()
    assert all(np.isfinite(v) for v in d["eigenvalues"])
    assert all(np.isfinite(d[k]) for k in ("trace", "min_eigenvalue", "purity", "negative_mass"))
    assert d["verdict"] in ("admissible", "inadmissible", "indeterminate")


def test_report_is_deterministic(grid):
    f = box_field(2 * np.pi, "disk", grid)
    assert admissibility_report(f) == admissibility_report(f)


@pytest.mark.parametrize("lam, tr, verdict", [
    (0.0, 1.0, "admissible"), (-1e-6, 1.0 + 1e-4, "admissible"),
    (-1.5e-6, 1.0, "indeterminate"), (0.0, 1.00015, "indeterminate"),
    (-3e-6, 1.0, "inadmissible"), (0.0, 1.01, "inadmissible"),
])
def test_classify(lam, tr, verdict):
    assert classify(lam, tr) == verdict


def test_parity_residual_values(grid, W0):
    assert parity_residual(W0) <= 1e-10
    assert parity_residual(wigner_from_pure(harmonic_eigenstate(1, grid))) <= 1e-10
    r = parity_residual(wigner_from_pure(coherent_state(2.0, 0.0, grid)))
    assert abs(r - (1 - np.exp(-16)) / np.pi) < 1e-9


def test_reflect_is_involution(grid):
    v = np.random.default_rng(0).normal(size=(grid.Nx, grid.Np))
    assert np.array_equal(reflect(reflect(v)), v)
    j, k = 37, 201
    assert reflect(v)[j, k] == v[grid.Nx - j, grid.Np - k]


def test_chain_even_states_full_battery(grid, W0):
    fields = [W0, wigner_from_pure(harmonic_eigenstate(1, grid)), wigner_from_pure(cat_state(6.0, -1, grid))]
    for W in fields:
        for F in f_battery(grid).values():
            assert convolution_chain_residual(W, F, MIN_UNC) <= 1e-8


@settings(max_examples=15, deadline=None)
@given(sx=st.floats(0.3, 1.2), sp=st.floats(0.3, 1.2), fx=st.floats(-2, 2), fp=st.floats(-2, 2),
       kx=st.floats(0.3, 1.5), kp=st.floats(0.3, 1.5))
def test_chain_sufficiency_property(sx, sp, fx, fp, kx, kp):
    g = build_grid(1.0, 8.0, 64)
    W = gaussian_field(0.0, 0.0, sx, sp, g)
    F = gaussian_field(fx, fp, 1.0, 1.0, g)
    assert convolution_chain_residual(W, F, SmoothingKernel(kx, kp)) <= 1e-8


def test_chain_witness_against_closed_form(grid):
    # W ~ N((2,0), I/2), F ~ N((1,1), I) with mass 2 pi, K ~ N(0, I/2):
    # A = 2 pi N((-1,1); 2I), B = 2 pi N((3,1); 2I)
    W = wigner_from_pure(coherent_state(2.0, 0.0, grid))
    F = f_battery(grid)["bump(1,1)"]
    A, B = convolution_chain_terms(W, F, MIN_UNC)
    mass = F.integral()
    assert abs(A - mass * oracles.gaussian_density([-1, 1], 2.0)) < 1e-8
    assert abs(B - mass * oracles.gaussian_density([3, 1], 2.0)) < 1e-8
    assert abs(A - B) > 1e-3


def test_chain_constant_field(grid):
    F = f_battery(grid)["constant"]
    for W in (wigner_from_pure(coherent_state(2.0, 0.0, grid)), wigner_from_pure(coherent_state(-1.0, 2.0, grid))):
        assert convolution_chain_residual(W, F, MIN_UNC) <= 1e-6


def test_chain_guard(grid):
    with pytest.raises(DivergenceSuspected):
        convolution_chain_residual(exp_quadratic_field(0.25, grid), f_battery(grid)["constant"], MIN_UNC)


@pytest.mark.parametrize("a", [0.1, 0.25, 0.5, 1.0])
def test_truncated_integral_closed_form(a):
    for R in (2.0, 5.0, 8.0):
        val = truncated_smoothing_integral(a, SmoothingKernel(1.0, 1.0), R)
        ref = probe_closed_form(a, R)
        assert abs(val - ref) <= 1e-10 * max(1.0, ref)


@pytest.mark.parametrize("a, cls", [(0.25, "convergent"), (0.5, "divergent"), (1.0, "divergent")])
def test_probe_classification(a, cls):
    pr = divergence_probe(a, SmoothingKernel(1.0, 1.0), range(2, 9))
    assert pr.classification == cls
    assert pr.threshold == 0.5
    if cls == "convergent":
        assert pr.limit == 2.0 and abs(pr.values[-1] - 2.0) < 1e-4
    else:
        assert pr.limit is None and all(np.diff(pr.values) > 0)


def test_probe_short_range_is_indeterminate():
    pr = divergence_probe(0.25, SmoothingKernel(1.0, 1.0), [0.5, 1.0, 1.5, 2.0])
    assert pr.classification == "indeterminate"


@pytest.mark.parametrize("cutoffs", [[2, 3, 3, 4, 5], [5, 4, 3, 2], [0, 1, 2, 3], [2, 3, 4]])
def test_probe_rejects_bad_cutoffs(cutoffs):
    with pytest.raises(ValueError):
        divergence_probe(0.25, SmoothingKernel(1.0, 1.0), cutoffs)


def test_wigner_bound(grid, W0):
    assert abs(wigner_bound_check(W0) - 1) < 1e-6
    assert wigner_bound_check(box_field(1.0, "square", grid)) > 1
    rho = mix([harmonic_eigenstate(0, grid), harmonic_eigenstate(1, grid)])
    assert wigner_bound_check(wigner_from_density(rho)) <= 1


def test_zero_field_report(grid):
    rep = admissibility_report(PhaseSpaceField(grid, np.zeros((grid.Nx, grid.Np))))
    assert rep.trace == 0 and rep.verdict == "inadmissible"
