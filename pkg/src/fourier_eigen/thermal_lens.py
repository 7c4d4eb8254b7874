"""Thermal-lens field profiles and their Fourier relation.

The exit field and its far-field spectrum, stripped of physical constants:

    e_th(r, t) = exp(-r^2/2) [Ei(-r^2)      - Ei(-r^2/(4t+1))]
    e_s(rho,t) = 2 exp(-2 rho^2) [Ei(4 rho^2/3) - Ei(4 rho^2/(4t+3))]

The planar transform of e_th reproduces e_s up to an amplitude and a
radial rescale; both are recovered by least squares, never assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import DomainError
from .expint import EvalOptions, ei_delta, ei_delta_scaled
from .radial_fourier import RadialProfile, RadialTransformPlan, radial_fourier


@dataclass(frozen=True)
class LensState:
    """Dimensionless time parameter; denominators 4t+1 and 4t+3 stay positive."""

    t: float

    def __post_init__(self) -> None:
        if not (self.t >= 0.0):
            raise DomainError(f"time parameter must be >= 0, got {self.t}")


@dataclass(frozen=True)
class ThermalFitReport:
    amplitude: float
    scale: float
    residual: float


def _ei(x: float, options: EvalOptions | None = None) -> float:
    return ei_delta(1.0, x, options)


def e_th(state: LensState, r: float, options: EvalOptions | None = None) -> float:
    """Exit-plane field; identically zero at t = 0."""
    if r <= 0.0:
        raise DomainError("e_th requires r > 0")
    if state.t == 0.0:
        return 0.0
    r2 = r * r
    bracket = _ei(-r2, options) - _ei(-r2 / (4.0 * state.t + 1.0), options)
    return math.exp(-0.5 * r2) * bracket


def e_s(state: LensState, rho: float, options: EvalOptions | None = None) -> float:
    """Sensor-plane spectrum; identically zero at t = 0."""
    if rho <= 0.0:
        raise DomainError("e_s requires rho > 0")
    if state.t == 0.0:
        return 0.0
    q = 4.0 * rho * rho
    bracket = _ei(q / 3.0, options) - _ei(q / (4.0 * state.t + 3.0), options)
    return 2.0 * math.exp(-2.0 * rho * rho) * bracket


def planar_eigenrelation_residual(rho: float,
                                  plan: RadialTransformPlan | None = None,
                                  options: EvalOptions | None = None) -> float:
    """|F_2[e^{-r^2} Ei(r^2)](rho) + pi e^{-rho^2/4} Ei(rho^2/4)|."""
    if rho <= 0.0:
        raise DomainError("rho must be positive")
    if plan is None:
        plan = RadialTransformPlan(d=2)
    elif plan.d != 2:
        raise DomainError("the planar relation needs a d = 2 plan")
    profile = RadialProfile(
        func=lambda r: ei_delta_scaled(1.0, r * r, options),
        origin_exponent=0.0, gaussian_decay=False, decay_exponent=-2.0,
        label="planar seed")
    lhs = radial_fourier(plan, profile, rho)
    rhs = -math.pi * math.exp(-0.25 * rho * rho) * _ei(0.25 * rho * rho, options)
    return abs(lhs - rhs)


def _e_th_profile(state: LensState, options: EvalOptions | None) -> RadialProfile:
    return RadialProfile(func=lambda r: e_th(state, r, options),
                         origin_exponent=0.0, gaussian_decay=True,
                         label=f"e_th(t={state.t})")


def fourier_consistency(state: LensState, rho_grid,
                        plan: RadialTransformPlan | None = None,
                        options: EvalOptions | None = None) -> ThermalFitReport:
    """Fit T(rho) = F_2[e_th](rho) against c * e_s(sigma rho) and report the fit.

    The dropped physical constants make amplitude and radial scale free
    parameters; the relative RMS residual after the fit is the actual
    consistency measure.
    """
    rhos = np.asarray([float(r) for r in rho_grid], dtype=float)
    if rhos.size == 0:
        raise DomainError("rho grid must be nonempty")
    if state.t == 0.0:
        raise DomainError("fields vanish identically at t = 0; fit is degenerate")
    if plan is None:
        plan = RadialTransformPlan(d=2)
    profile = _e_th_profile(state, options)
    target = np.asarray([radial_fourier(plan, profile, r) for r in rhos])
    norm = math.sqrt(float(np.mean(target ** 2)))
    if norm == 0.0:
        raise DomainError("transform is identically zero; fit is degenerate")

    def model(params):
        c, sigma = params
        return np.asarray([c * e_s(state, sigma * r, options) for r in rhos])

    def objective(params):
        return (model(params) - target) / norm

    c0 = target[0] / e_s(state, 0.5 * rhos[0], options)
    fit = optimize.least_squares(objective, x0=[c0, 0.5], method="lm")
    c, sigma = float(fit.x[0]), float(fit.x[1])
    residual = math.sqrt(float(np.mean((model(fit.x) - target) ** 2))) / norm
    return ThermalFitReport(amplitude=c, scale=sigma, residual=residual)
