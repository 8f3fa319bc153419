"""pslab: Wigner/Husimi functions, phase-space entropies and admissibility checks."""

from .admissibility import (
    AdmissibilityReport,
    DivergenceSuspected,
    SmoothingKernel,
    admissibility_report,
    convolution_chain_residual,
    divergence_probe,
    gaussian_smooth,
    parity_residual,
    wigner_bound_check,
)
from .claims import ClaimReport, run_claim
from .entropy import (
    HusimiParameter,
    husimi_from_field,
    husimi_from_state,
    purity_integral,
    s2_operator,
    s2_wigner,
    von_neumann_entropy,
    wehrl_entropy,
)
from .grid import (
    DensityOperatorKernel,
    PhaseSpaceField,
    PhaseSpaceGrid,
    WaveFunction,
    build_grid,
    default_grid,
    density_from_pure,
    mix,
)
from .statelib import (
    StateSpec,
    box_field,
    cat_state,
    coherent_state,
    exp_quadratic_field,
    harmonic_eigenstate,
)
from .weyl import hilbert_schmidt_trace, inverse_weyl, marginals, wigner_from_density, wigner_from_pure

__version__ = "0.1.0"
