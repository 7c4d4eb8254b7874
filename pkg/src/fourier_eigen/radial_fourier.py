"""d-dimensional Fourier transforms of radial profiles.

With the plane-wave convention F[f](u) = int e^{-i<u,x>} f(x) dx, the
transform of a radial profile reduces to a one-dimensional Hankel-type
integral

    F[f](rho) = (2 pi)^{d/2} rho^{1-d/2} int_0^inf f(r) J_{d/2-1}(rho r) r^{d/2} dr,

real by symmetry (the imaginary part is never formed).  The singular head
is integrated on geometrically graded panels; the oscillatory tail is
integrated between consecutive kernel zeros and the alternating partial
sums are accelerated with Wynn's epsilon algorithm.

The module also carries the semi-analytic transforms of the split
regularized family (h_hat_alpha / g_hat_alpha), their pointwise limit, and
the scaling rule that converts a transform relation into an eigenvalue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .bessel import bessel_j, bessel_j_zeros
from .eigenfunctions import (
    RadialEigenfunction,
    RegularizedFunction,
    f_d,
    f_d_alpha,
    phi_d,
    surface_area,
)
from .errors import ConvergenceError, DivergenceError, DomainError
from .expint import EvalOptions
from .quadrature import accelerated_limit, adaptive_panel, gl_panel, gl_panel_err, quad_checked


@dataclass(frozen=True)
class RadialProfile:
    """Radial callable plus endpoint hints for the quadrature driver.

    origin_exponent: f(r) ~ r^e (possibly times a log) as r -> 0.
    gaussian_decay:  True when the profile dies super-algebraically.
    decay_exponent:  algebraic tail exponent when gaussian_decay is False;
                     the transform requires decay at least like r^-2.
    """

    func: Callable[[float], float]
    origin_exponent: float = 0.0
    gaussian_decay: bool = True
    decay_exponent: float = -math.inf
    label: str = ""


@dataclass(frozen=True)
class RadialTransformPlan:
    d: int
    truncation_radius: float = 60.0
    quadrature: str = "adaptive"
    grid_points: int = 4096
    singularity_split: float = 1.0
    rel_tol: float = 1e-9
    abs_tol: float = 1e-14

    def __post_init__(self) -> None:
        if not isinstance(self.d, int) or not (1 <= self.d <= 8):
            raise DomainError(f"dimension must be an integer in 1..8, got {self.d}")
        if not (self.truncation_radius > self.singularity_split > 0.0):
            raise DomainError("need truncation_radius > singularity_split > 0")
        if self.grid_points < 16:
            raise DomainError("grid_points must be >= 16")
        if self.quadrature not in ("adaptive", "fixed-grid"):
            raise DomainError(f"unknown quadrature mode {self.quadrature!r}")

    @property
    def panel_nodes(self) -> int:
        return max(8, min(64, self.grid_points // 256))


@dataclass(frozen=True)
class SpectralValue:
    rho: float
    value: float


def _as_profile(profile) -> RadialProfile:
    if isinstance(profile, RadialProfile):
        return profile
    if callable(profile):
        return RadialProfile(func=profile)
    raise DomainError("profile must be a RadialProfile or a radial callable")


def _validate_hints(plan: RadialTransformPlan, prof: RadialProfile) -> None:
    if prof.origin_exponent <= -plan.d:
        raise DomainError(
            f"profile {prof.label or '<anon>'} is not integrable against "
            f"r^{plan.d - 1} near the origin (exponent {prof.origin_exponent})")
    if not prof.gaussian_decay and prof.decay_exponent > -2.0:
        raise DomainError(
            f"profile {prof.label or '<anon>'} must decay at least like r^-2 "
            f"(declared exponent {prof.decay_exponent})")


def _panel(f, a: float, b: float, plan: RadialTransformPlan, abs_tol: float) -> float:
    n = plan.panel_nodes
    if plan.quadrature == "fixed-grid":
        return gl_panel(f, a, b, 2 * n)
    val, err = gl_panel_err(f, a, b, n)
    if err <= abs_tol:
        return val
    return adaptive_panel(f, a, b, abs_tol, n)


def _graded_head(f, split: float, plan: RadialTransformPlan) -> float:
    total = 0.0
    hi = split
    quiet = 0
    for _ in range(60):
        lo = 0.5 * hi
        tol = max(plan.abs_tol, 0.02 * plan.rel_tol * abs(total))
        val = _panel(f, lo, hi, plan, tol)
        total += val
        if abs(val) <= max(plan.abs_tol, 0.05 * plan.rel_tol * abs(total)):
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
        hi = lo
    return total


def _oscillatory_tail(f, start: float, rho: float, nu: float,
                      plan: RadialTransformPlan, scale0: float,
                      hint_label: str) -> float:
    max_panels = 400
    zeros = bessel_j_zeros(nu, 16)
    idx = 0
    while zeros[idx] / rho <= start:
        idx += 1
        if idx >= len(zeros):
            zeros = bessel_j_zeros(nu, 2 * len(zeros))
    partial = 0.0
    sums: list[float] = []
    terms: list[float] = []
    scale = scale0
    prev_r = start
    for k in range(max_panels):
        while idx + k >= len(zeros):
            zeros = bessel_j_zeros(nu, 2 * len(zeros))
        r_k = zeros[idx + k] / rho
        tol = max(plan.abs_tol, 0.02 * plan.rel_tol * scale)
        term = _panel(f, prev_r, r_k, plan, tol)
        partial += term
        terms.append(term)
        sums.append(partial)
        scale = max(scale, abs(term), abs(partial))
        conv_tol = max(plan.abs_tol, plan.rel_tol * scale)
        if len(terms) >= 2 and abs(terms[-1]) <= 0.01 * conv_tol \
                and abs(terms[-2]) <= 0.01 * conv_tol:
            return partial  # absolutely damped tail: plain truncation is exact
        if len(sums) >= 8:
            limit, spread = accelerated_limit(sums)
            if spread <= 0.5 * conv_tol:
                return limit
        prev_r = r_k
    raise ConvergenceError(
        f"oscillatory tail did not converge for {hint_label or 'profile'} at "
        f"rho={rho}; declared hints may be violated")


def _transform_zero(plan: RadialTransformPlan, prof: RadialProfile) -> float:
    d = plan.d
    if not prof.gaussian_decay and prof.decay_exponent + d - 1 >= -1.0:
        raise DivergenceError(
            f"zero-frequency transform diverges in dimension {d} for tail "
            f"exponent {prof.decay_exponent}")

    def f(r: float) -> float:
        return prof.func(r) * r ** (d - 1)

    total = _graded_head(f, plan.singularity_split, plan)
    lo = plan.singularity_split
    for _ in range(80):
        hi = 2.0 * lo
        tol = max(plan.abs_tol, 0.02 * plan.rel_tol * abs(total))
        val = _panel(f, lo, hi, plan, tol)
        total += val
        lo = hi
        if abs(val) <= max(plan.abs_tol, 0.2 * plan.rel_tol * abs(total)) \
                and lo >= plan.truncation_radius:
            break
    else:
        raise ConvergenceError("zero-frequency tail did not settle")
    if not prof.gaussian_decay:
        # analytic closure of the algebraic tail: integrand ~ r^{-q}
        q = -(prof.decay_exponent + d - 1)
        total += f(lo) * lo / (q - 1.0)
    return surface_area(d) * total


def radial_fourier(plan: RadialTransformPlan, profile, rho: float) -> float:
    """F[f](rho) for a radial profile f under the e^{-i<u,x>} convention."""
    prof = _as_profile(profile)
    _validate_hints(plan, prof)
    if rho < 0.0:
        raise DomainError("rho must be >= 0")
    d = plan.d
    if rho == 0.0:
        return _transform_zero(plan, prof)
    nu = 0.5 * d - 1.0
    prefactor = (2.0 * math.pi) ** (0.5 * d) * rho ** (1.0 - 0.5 * d)

    def f(r: float) -> float:
        return prof.func(r) * bessel_j(nu, rho * r) * r ** (0.5 * d)

    split = plan.singularity_split
    head = _graded_head(f, split, plan)
    scale0 = max(abs(head), plan.abs_tol)
    tail = _oscillatory_tail(f, split, rho, nu, plan, scale0, prof.label)
    return prefactor * (head + tail)


def transform_grid(plan: RadialTransformPlan, profile, rhos) -> list[SpectralValue]:
    return [SpectralValue(rho=float(r), value=radial_fourier(plan, profile, float(r)))
            for r in rhos]


# ---------------------------------------------------------------------------
# closed-form and semi-analytic transforms
# ---------------------------------------------------------------------------

def gaussian_transform(a: float, d: int, rho: float) -> float:
    """Transform of e^{-a r^2}: (pi/a)^{d/2} exp(-rho^2 / (4a))."""
    if a <= 0.0:
        raise DomainError("gaussian width must be positive")
    return (math.pi / a) ** (0.5 * d) * math.exp(-rho * rho / (4.0 * a))


def h_hat_alpha(d: int, alpha: float, rho: float) -> float:
    """Transform of r^{2-d} e^{-(1+alpha) r^2} H^(delta)(r^2).

    Equals pi^{d/2} int_1^inf (1+alpha+t)^{-d/2} t^{-delta}
    exp(-rho^2/(4(1+alpha+t))) dt; the substitution u = 1/t turns this into
    a bounded smooth integrand on (0, 1] because d/2 + delta = 2.
    """
    if d < 1:
        raise DomainError("d must be >= 1")
    if alpha < 0.0:
        raise DomainError("alpha must be >= 0")
    p = 0.5 * d
    one_a = 1.0 + alpha
    r2 = rho * rho

    def integrand(u: float) -> float:
        den = one_a * u + 1.0
        return den ** -p * math.exp(-0.25 * r2 * u / den)

    val, _ = quad_checked(integrand, 0.0, 1.0, rel_tol=1e-12, what="h-hat integral")
    return math.pi ** p * val


def _phi_bracket(x: float, big_a: float, p: float) -> float:
    """phi(-x) - phi(x) for phi(x) = (1+x)^{-p} exp(-A/(1+x)), fused.

    Anchors on the larger of the two values and applies expm1 to the
    log-ratio, so the O(x) cancellation near x = 0 costs no precision.
    """
    lratio = 2.0 * big_a * x / (1.0 - x * x) - 2.0 * p * math.atanh(x)
    if lratio >= 0.0:
        # phi(x) dominates
        arg = -big_a / (1.0 + x) - p * math.log1p(x)
        return math.exp(arg) * math.expm1(-lratio)
    arg = -big_a / (1.0 - x) - p * math.log1p(-x)
    return -math.exp(arg) * math.expm1(lratio)


def g_hat_alpha(d: int, alpha: float, rho: float) -> float:
    """Transform of r^{2-d} e^{-(1+alpha) r^2} G^(delta)(r^2).

    pi^{d/2}/(1+alpha) int_0^{1/(1+alpha)} (phi(-x) - phi(x)) x^{-delta} dx
    with A = rho^2/(4(1+alpha)).  The x -> 0 cancellation is handled by a
    fused bracket plus an analytic two-term odd-Taylor integral below 1e-4;
    at alpha = 0 the x -> 1 endpoint needs rho > 0 for integrability.
    """
    if d < 1:
        raise DomainError("d must be >= 1")
    if alpha < 0.0:
        raise DomainError("alpha must be >= 0")
    if alpha == 0.0 and rho == 0.0:
        raise DivergenceError("transform is singular at rho = 0 when alpha = 0")
    p = 0.5 * d
    delta = 2.0 - p
    one_a = 1.0 + alpha
    big_a = rho * rho / (4.0 * one_a)
    upper = 1.0 / one_a

    def psi(x: float) -> float:
        return _phi_bracket(x, big_a, p) * x ** -delta

    eps = 1e-4
    # odd Taylor part of the bracket: -2 (phi'(0) x + phi'''(0) x^3 / 6)
    d1 = math.exp(-big_a) * (big_a - p)
    d3 = math.exp(-big_a) * ((big_a - p) ** 3
                             + 3.0 * (big_a - p) * (p - 2.0 * big_a)
                             + 6.0 * big_a - 2.0 * p)
    head = -2.0 * (d1 * eps ** (2.0 - delta) / (2.0 - delta)
                   + d3 / 6.0 * eps ** (4.0 - delta) / (4.0 - delta))
    mid, _ = quad_checked(psi, eps, 0.5, rel_tol=1e-12, what="g-hat integral (inner)")
    end, _ = quad_checked(psi, 0.5, upper, rel_tol=1e-12, what="g-hat integral (outer)")
    return math.pi ** p / one_a * (head + mid + end)


def limit_f_hat(d: int, rho: float, options: EvalOptions | None = None) -> float:
    """Pointwise alpha -> 0 limit of the split transforms: -pi^{d/2} f_d(rho/2)."""
    if d < 1:
        raise DomainError("d must be >= 1")
    if rho < 0.0:
        raise DomainError("rho must be >= 0")
    if rho == 0.0:
        if d == 1:
            # f_1 extends continuously to the origin with value -2
            return -math.sqrt(math.pi) * -2.0
        raise DivergenceError(f"limit transform is singular at rho = 0 for d = {d}")
    fn = RadialEigenfunction(d)
    return -math.pi ** (0.5 * d) * f_d(fn, 0.5 * rho, options)


def scaling_eigen(lam: float, beta: float, d: int) -> float:
    """If F[f] = lam f(beta .), then f(sqrt(beta) .) has eigenvalue lam beta^{-d/2}."""
    if beta <= 0.0:
        raise DomainError("beta must be positive")
    return lam * beta ** (-0.5 * d)


# ---------------------------------------------------------------------------
# profile factories
# ---------------------------------------------------------------------------

def f_profile(fn: RadialEigenfunction, options: EvalOptions | None = None) -> RadialProfile:
    return RadialProfile(func=lambda r: f_d(fn, r, options),
                         origin_exponent=float(2 - fn.d),
                         gaussian_decay=False, decay_exponent=-2.0,
                         label=f"f_{fn.d}")


def phi_profile(fn: RadialEigenfunction, options: EvalOptions | None = None) -> RadialProfile:
    return RadialProfile(func=lambda r: phi_d(fn, r, options),
                         origin_exponent=float(2 - fn.d),
                         gaussian_decay=False, decay_exponent=-2.0,
                         label=f"phi_{fn.d}")


def f_alpha_profile(rf: RegularizedFunction,
                    options: EvalOptions | None = None) -> RadialProfile:
    return RadialProfile(func=lambda r: f_d_alpha(rf, r, options),
                         origin_exponent=float(2 - rf.base.d),
                         gaussian_decay=True,
                         label=f"f_{rf.base.d}^({rf.alpha})")


def gaussian_profile(a: float) -> RadialProfile:
    if a <= 0.0:
        raise DomainError("gaussian width must be positive")
    return RadialProfile(func=lambda r: math.exp(-a * r * r),
                         origin_exponent=0.0, gaussian_decay=True,
                         label=f"gauss({a})")
