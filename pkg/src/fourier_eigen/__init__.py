"""Radial Fourier eigenfunctions built on generalized exponential integrals.

The family phi_d(r) = r^{2-d} e^{-r^2/2} Ei^(2-d/2)(r^2/2) satisfies
F[phi_d] = -(2 pi)^{d/2} phi_d in every dimension d >= 1: pointwise through
the radial Hankel reduction for d <= 3 and in the tempered-distribution
pairing sense for d >= 4.  The package provides the special functions,
the transforms, the distributional checks, the thermal-lens seed profiles
and a verification CLI.
"""

from .bessel import bessel_j, bessel_j_zeros
from .distribution_verify import (
    BoundCheck,
    PairingResult,
    SchwartzProbe,
    continuity_bound_check,
    eigen_pairing_residual,
    pair_radial,
    probe_hat,
    uniform_bound_check,
)
from .eigenfunctions import (
    LpReason,
    LpVerdict,
    RadialEigenfunction,
    RegularizedFunction,
    f_d,
    f_d_alpha,
    integrability_probe,
    lp_membership,
    phi_d,
    phi_from_f_consistency,
    surface_area,
    tempered_constant,
    tempered_constant_alpha,
)
from .errors import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    PreconditionError,
    UnsupportedOrderError,
)
from .expint import (
    EULER_GAMMA,
    DeltaParam,
    EvalOptions,
    PvConvergenceReport,
    PvSchedule,
    ei_delta,
    ei_delta_scaled,
    ei_scaled_root,
    g_delta,
    h_delta,
    near_zero_model,
    pv_limit_check,
)
from .radial_fourier import (
    RadialProfile,
    RadialTransformPlan,
    SpectralValue,
    f_alpha_profile,
    f_profile,
    g_hat_alpha,
    gaussian_profile,
    gaussian_transform,
    h_hat_alpha,
    limit_f_hat,
    phi_profile,
    radial_fourier,
    scaling_eigen,
    transform_grid,
)
from .report import CheckRecord, VerificationReport
from .thermal_lens import (
    LensState,
    ThermalFitReport,
    e_s,
    e_th,
    fourier_consistency,
    planar_eigenrelation_residual,
)
from .verification import run_verify_suite

__version__ = "0.1.0"
