"""Sequential-sweep finite differences for 1D transport equations.

Unconditionally stable explicit solvers for the diffusion, advection
and advection-diffusion equations on periodic (or fixed-end) grids,
built from exponentially-split 2x2 pair updates, plus the spectral
analysis and circulant oracles used to verify them.
"""

from .coefficients import (
    AdvDiffParams,
    AdvDiffVariant,
    AdvectionParams,
    AdvectionVariant,
    DiffusionParams,
    DiffusionVariant,
    advdiff_coeffs_ad2c,
    advdiff_coeffs_rw,
    advdiff_coeffs_split,
    advection_coeffs,
    diffusion_coeffs,
    diffusion_gamma,
    matched_cn_s,
    pair_from_gamma,
)
from .composition import (
    FOREST_RUTH,
    MPE_T4,
    MPE_T6,
    MPE_T8,
    SUZUKI4,
    YOSHIDA6,
    BaseStep,
    Comparator,
    Equation,
    MultiProduct,
    Scheme,
    SchemeSpec,
    SingleProduct,
    StepParams,
    apply_scheme,
    apply_spec,
    euler_step,
    lax_wendroff_step,
    preset_names,
    resolve_preset,
    step_ad_sequential,
    step_multi_product,
    step_single_product,
    step_t2,
    validate_order_conditions,
)
from .grid import (
    BoundaryKind,
    Field1D,
    ModifiedNormTag,
    abs_moment,
    abs_weighted_mean,
    gaussian_profile,
    modified_norm,
    norm,
    sextic_profile,
)
from .oracle import (
    CirculantSpectrum,
    exact_evolve,
    fit_power_law,
    observed_order,
    richardson_reference,
)
from .spectral import (
    AmplificationSample,
    comparator_amplification,
    exact_amplification,
    exact_phase,
    numeric_amplification,
    phase_angle,
    phase_curve,
    scheme_amplification,
    scheme_factor,
)
from .sweep import PairUpdate, SweepDirection, saulyev_sweep_fixed, sweep, sweep_as_matrix

__version__ = "0.1.0"
