"""Radial eigenfunction family indexed by dimension.

For dimension d >= 1 set delta = 2 - d/2 and define the radial profiles

    phi_d(r) = r^{2-d} e^{-r^2/2} Ei^(delta)(r^2 / 2)
    f_d(r)   = r^{2-d} e^{-r^2}   Ei^(delta)(r^2)

with the regularized variant f_d^alpha = f_d e^{-alpha r^2}.  Everything is
exposed as a function of the radius r = ||x||; the full-space value is the
profile evaluated at the norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import ConvergenceError, DomainError
from .expint import EvalOptions, ei_delta_scaled, ei_scaled_root
from .quadrature import gl_panel, quad_checked


def surface_area(d: int) -> float:
    """Surface measure of the unit sphere in R^d: 2 pi^{d/2} / Gamma(d/2)."""
    return 2.0 * math.pi ** (0.5 * d) / math.gamma(0.5 * d)


@dataclass(frozen=True)
class RadialEigenfunction:
    d: int

    def __post_init__(self) -> None:
        if not isinstance(self.d, int) or self.d < 1:
            raise DomainError(f"dimension must be an integer >= 1, got {self.d}")

    @property
    def delta(self) -> float:
        # exact in binary floating point for every integer d
        return 2.0 - self.d / 2.0

    def phi(self, r: float, options: EvalOptions | None = None) -> float:
        return phi_d(self, r, options)

    def f(self, r: float, options: EvalOptions | None = None) -> float:
        return f_d(self, r, options)


@dataclass(frozen=True)
class RegularizedFunction:
    base: RadialEigenfunction
    alpha: float

    def __post_init__(self) -> None:
        if not (self.alpha > 0.0):
            raise DomainError(f"alpha must be positive, got {self.alpha}")

    def __call__(self, r: float) -> float:
        return f_d_alpha(self, r)


class LpReason(Enum):
    ORIGIN_DIVERGENCE = "origin-divergence"
    INFINITY_DIVERGENCE = "infinity-divergence"
    BOTH = "both"
    MEMBER = "member"


@dataclass(frozen=True)
class LpVerdict:
    d: int
    p: int
    member: bool
    reason: LpReason


def phi_d(fn: RadialEigenfunction, r: float, options: EvalOptions | None = None) -> float:
    """phi_d(r) = r^{2-d} e^{-r^2/2} Ei^(delta)(r^2/2), finite for all r > 0."""
    if r <= 0.0:
        raise DomainError("phi_d requires r > 0")
    return r ** (2 - fn.d) * ei_delta_scaled(fn.delta, 0.5 * r * r, options)


def f_d(fn: RadialEigenfunction, r: float, options: EvalOptions | None = None) -> float:
    """f_d(r) = r^{2-d} e^{-r^2} Ei^(delta)(r^2)."""
    if r <= 0.0:
        raise DomainError("f_d requires r > 0")
    return r ** (2 - fn.d) * ei_delta_scaled(fn.delta, r * r, options)


def f_d_alpha(rf: RegularizedFunction, r: float, options: EvalOptions | None = None) -> float:
    """Regularized profile f_d(r) e^{-alpha r^2}; dominated by |f_d| pointwise."""
    if r <= 0.0:
        raise DomainError("f_d_alpha requires r > 0")
    return f_d(rf.base, r, options) * math.exp(-rf.alpha * r * r)


def phi_from_f_consistency(fn: RadialEigenfunction, r: float,
                           options: EvalOptions | None = None) -> float:
    """|phi_d(r) - (sqrt 2)^{2-d} f_d(r / sqrt 2)|, zero up to roundoff.

    The rescaling constant is (sqrt 2)^{2-d}: substituting r/sqrt(2) into f_d
    produces (sqrt 2)^{d-2} r^{2-d} e^{-r^2/2} Ei^(delta)(r^2/2), so that
    factor has to be cancelled, not repeated.
    """
    if r <= 0.0:
        raise DomainError("consistency check requires r > 0")
    lhs = phi_d(fn, r, options)
    rhs = math.sqrt(2.0) ** (2 - fn.d) * f_d(fn, r / math.sqrt(2.0), options)
    return abs(lhs - rhs)


def lp_membership(d: int, p: int) -> LpVerdict:
    """Exact rational verdict: f_d in L^p(R^d) iff p > d/2 and (d <= 2 or p < d/(d-2)).

    The origin needs (2-d)p + d - 1 > -1 for d >= 3 and the tail needs
    -2p + d - 1 < -1; both inequalities are strict.
    """
    if d < 1 or p < 1:
        raise DomainError("lp_membership requires d >= 1 and p >= 1")
    p_f = Fraction(p)
    infinity_ok = p_f > Fraction(d, 2)
    origin_ok = d <= 2 or p_f < Fraction(d, d - 2)
    if origin_ok and infinity_ok:
        reason = LpReason.MEMBER
    elif not origin_ok and not infinity_ok:
        reason = LpReason.BOTH
    elif not origin_ok:
        reason = LpReason.ORIGIN_DIVERGENCE
    else:
        reason = LpReason.INFINITY_DIVERGENCE
    return LpVerdict(d=d, p=p, member=origin_ok and infinity_ok, reason=reason)


def tempered_constant(fn: RadialEigenfunction,
                      options: EvalOptions | None = None) -> float:
    """omega_{d-1} int_0^inf |f_d(r)| / (1 + r^{2d}) r^{d-1} dr, finite for all d.

    |f_d| has a kink where Ei^(delta)(r^2) changes sign; the quadrature is
    split there.
    """
    d = fn.d
    root = math.sqrt(ei_scaled_root(fn.delta, options))

    def integrand(r: float) -> float:
        return abs(f_d(fn, r, options)) * r ** (d - 1) / (1.0 + r ** (2 * d))

    far = max(10.0, 2.0 * root)
    head, _ = quad_checked(integrand, 0.0, root, rel_tol=1e-11,
                           what="tempered constant head")
    mid, _ = quad_checked(integrand, root, far, rel_tol=1e-11,
                          what="tempered constant mid")
    tail, _ = quad_checked(integrand, far, math.inf, rel_tol=1e-11,
                           what="tempered constant tail")
    return surface_area(d) * (head + mid + tail)


def tempered_constant_alpha(fn: RadialEigenfunction, alpha: float,
                            options: EvalOptions | None = None) -> float:
    """Same weighted integral against |f_d| (1 - e^{-alpha r^2}); 0 at alpha = 0."""
    if alpha < 0.0:
        raise DomainError("alpha must be >= 0")
    if alpha == 0.0:
        return 0.0
    d = fn.d
    root = math.sqrt(ei_scaled_root(fn.delta, options))

    def integrand(r: float) -> float:
        damp = -math.expm1(-alpha * r * r)
        return abs(f_d(fn, r, options)) * damp * r ** (d - 1) / (1.0 + r ** (2 * d))

    head, _ = quad_checked(integrand, 0.0, root, rel_tol=1e-10,
                           what="alpha-gap constant head")
    tail, _ = quad_checked(integrand, root, math.inf, rel_tol=1e-10,
                           what="alpha-gap constant tail")
    return surface_area(d) * (head + tail)


def integrability_probe(d: int, p: int, options: EvalOptions | None = None) -> bool:
    """Numerical membership probe for int |f_d|^p r^{d-1} dr on [1e-6, 1e3].

    Dyadically widens the window toward each cap and watches the per-side
    increments: geometric decay means that end converges, while increments
    that grow or stall (the logarithmic cases) mean divergence.  A single
    refinement adding more than 10% of the running total is flagged
    divergent immediately.
    """
    fn = RadialEigenfunction(d)

    def integrand(r: float) -> float:
        return abs(f_d(fn, r, options)) ** p * r ** (d - 1)

    total = gl_panel(integrand, 0.25, 4.0, 48)

    def side_converges(start: float, cap: float, outward: bool) -> bool:
        nonlocal total
        edge = start
        increments = []
        while (edge < cap) if outward else (edge > cap):
            nxt = min(2.0 * edge, cap) if outward else max(0.5 * edge, cap)
            inc = gl_panel(integrand, edge, nxt, 32) if outward \
                else gl_panel(integrand, nxt, edge, 32)
            if total > 0.0 and inc > 0.10 * total:
                return False
            increments.append(inc)
            total += inc
            edge = nxt
        floor = 1e-12 * max(total, 1.0)
        for prev, cur in zip(increments[-5:], increments[-4:]):
            if cur > 0.8 * prev and cur > floor:
                return False
        return True

    origin_ok = side_converges(0.25, 1e-6, outward=False)
    tail_ok = side_converges(4.0, 1e3, outward=True)
    return origin_ok and tail_ok
