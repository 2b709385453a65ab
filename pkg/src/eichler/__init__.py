"""Numerical Eichler cocycles, one-sided averages, and polar harmonic functions.

The package is organized bottom-up:

* :mod:`eichler.algebra`    -- branched powers, SL2 matrices, slash operators
* :mod:`eichler.specfun`    -- eta powers, incomplete gamma, 2F1/1F1, Hurwitz-Lerch
* :mod:`eichler.quadrature` -- adaptive contour integration on hyperbolic paths
* :mod:`eichler.cocycles`   -- Eichler cocycles, period functions, L-values
* :mod:`eichler.averages`   -- one-sided averages and parabolic equations
* :mod:`eichler.harmonic`   -- shadows, kernels, polar eigenfunctions, Green's form
* :mod:`eichler.quantum`    -- quantum modular values at cusps
* :mod:`eichler.cli`        -- JSON verification harness
"""

from .algebra import (
    ARG_CUT_DOWN,
    ARG_CUT_UP,
    ARG_LOWER,
    ARG_UPPER,
    ArgInterval,
    GroupElement,
    IDENTITY,
    MultiplierSystem,
    S,
    T,
    from_word,
    iota_involution,
    j_factor,
    matrix_to_word,
    multiplier_eval,
    power_branch,
    proj_map,
    scaling_matrix,
    slash,
    slash_multiplier,
    t_power,
)
from .errors import (
    BranchError,
    DomainError,
    EichlerError,
    PoleError,
    RefusalError,
    UnsupportedGroupError,
)
from .specfun import (
    EtaPowerSeries,
    LerchEval,
    binom_complex,
    eta_power_coeffs,
    eta_power_eval,
    gauss_2f1,
    hurwitz_lerch,
    hurwitz_lerch_detailed,
    incomplete_gamma,
    kummer_1f1,
    kummer_1f1_detailed,
    lerch_asymptotic,
    lerch_b_coeffs,
    pochhammer,
)
from .quadrature import INF, ContourSpec, QuadResult, contour_integral, geodesic_param
from .cocycles import (
    DEFAULT_SAMPLES,
    CocycleSample,
    FormEvaluator,
    GoldfeldResult,
    I_integral,
    L_eta,
    L_eta_detailed,
    LSeriesValue,
    ResidualReport,
    cusp_cocycle,
    eichler_cocycle,
    goldfeld_lprime,
    period_function,
    period_series_coeffs,
    rational_cocycle_check,
    rational_cocycle_wt2,
    verify_period_relations,
)
from .averages import (
    AverageSpec,
    average_asymptotic_coeffs,
    average_continued,
    one_sided_average,
    solve_parabolic,
)
from .harmonic import (
    ARG_CAP,
    FDStencil,
    PolarIndex,
    bol_operator,
    cauchy_formula,
    dz_fd,
    dzbar_fd,
    e2_star,
    f_rn,
    germ_factor,
    green_form,
    kernel_K,
    kernel_restriction,
    kernel_shadow,
    laplacian_r,
    polar_eval,
    polar_expansion_partial,
    polar_restriction,
    polar_shadow,
    q_lift,
    resolvent_Q,
    shadow,
)
from .quantum import (
    QuantumSample,
    base_point_shift,
    eta_defect,
    quantum_value_eta,
    weight0_quantum,
)
from .cli import RunConfig

__version__ = "0.1.0"
