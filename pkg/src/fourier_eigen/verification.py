"""Per-dimension verification suite behind `verify`.

Each check compares a computed quantity with an independent route and
records residual, tolerance and verdict.  Quadrature error estimates widen
the pass margin (residual must exceed tolerance + 3x the estimate to fail),
so method failures are distinguished from quadrature noise.
"""

from __future__ import annotations

import math
import time

import numpy as np

from .distribution_verify import SchwartzProbe, eigen_pairing_residual, uniform_bound_check
from .eigenfunctions import (
    RadialEigenfunction,
    RegularizedFunction,
    f_d,
    integrability_probe,
    lp_membership,
)
from .errors import DomainError
from .radial_fourier import (
    RadialTransformPlan,
    f_alpha_profile,
    f_profile,
    g_hat_alpha,
    h_hat_alpha,
    limit_f_hat,
    phi_profile,
    radial_fourier,
)
from .report import CheckRecord, VerificationReport

SUPPORTED_DIMS = range(1, 9)


def _record(report: VerificationReport, check_id: str, reference: str,
            residual: float, tolerance: float, started: float,
            error_estimate: float = 0.0) -> None:
    passed = residual <= tolerance + 3.0 * error_estimate
    report.checks.append(CheckRecord(
        check_id=check_id, reference=reference, residual=residual,
        tolerance=tolerance, passed=passed,
        runtime_ms=1e3 * (time.perf_counter() - started)))


def _check_direct_eigen(report: VerificationReport, d: int) -> None:
    started = time.perf_counter()
    plan = RadialTransformPlan(d=d)
    fn = RadialEigenfunction(d)
    profile = phi_profile(fn)
    lam = -(2.0 * math.pi) ** (0.5 * d)
    worst = 0.0
    for rho in np.geomspace(0.2, 10.0, 25):
        phi_val = fn.phi(float(rho))
        resid = abs(radial_fourier(plan, profile, float(rho)) - lam * phi_val)
        worst = max(worst, resid / (1.0 + abs(phi_val)))
    _record(report, "direct-eigen",
            f"F[phi_{d}](rho) = -(2*pi)^{d}/2 * phi_{d}(rho) on 25-pt log grid",
            worst, 1e-6, started)


def _check_transform_relation(report: VerificationReport, d: int) -> None:
    started = time.perf_counter()
    plan = RadialTransformPlan(d=d)
    fn = RadialEigenfunction(d)
    profile = f_profile(fn)
    factor = math.pi ** (0.5 * d)
    worst = 0.0
    for rho in np.geomspace(0.2, 10.0, 25):
        lhs = radial_fourier(plan, profile, float(rho))
        rhs = -factor * f_d(fn, 0.5 * float(rho))
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs)))
    _record(report, "transform-relation",
            f"F[f_{d}](rho) = -pi^{d}/2 * f_{d}(rho/2) on 25-pt log grid",
            worst, 1e-6, started)


def _check_pairing(report: VerificationReport, d: int) -> None:
    started = time.perf_counter()
    probes = [SchwartzProbe(d=d, a=a, k=k) for a in (1.0, 2.0) for k in (0, 1, 2)]
    if d <= 3:
        probes = probes[:2]
    worst = 0.0
    err_est = 0.0
    for probe in probes:
        res = eigen_pairing_residual(d, probe)
        scale = abs(res.lhs) + abs(res.rhs)
        worst = max(worst, res.residual / scale)
        err_est = max(err_est, res.quadrature_error_estimate / scale)
    _record(report, "pairing-eigen",
            f"<f_{d}, F phi> = -pi^{d}/2 <f_{d}(./2), phi> over Schwartz probes",
            worst, 1e-7, started, error_estimate=err_est)


def _check_decomposition(report: VerificationReport, d: int) -> None:
    started = time.perf_counter()
    plan = RadialTransformPlan(d=d)
    fn = RadialEigenfunction(d)
    worst = 0.0
    for alpha in (0.5, 0.05):
        profile = f_alpha_profile(RegularizedFunction(fn, alpha))
        for rho in (1.0, 3.0):
            direct = radial_fourier(plan, profile, rho)
            split = g_hat_alpha(d, alpha, rho) - h_hat_alpha(d, alpha, rho)
            worst = max(worst, abs(direct - split) / max(abs(direct), abs(split)))
    _record(report, "decomposition",
            "F[f_d^alpha] = g_hat_alpha - h_hat_alpha at sampled (alpha, rho)",
            worst, 1e-7, started)


def _check_alpha_limit(report: VerificationReport, d: int) -> None:
    started = time.perf_counter()
    rho = 2.0
    target = limit_f_hat(d, rho)
    gaps = [abs(g_hat_alpha(d, a, rho) - h_hat_alpha(d, a, rho) - target)
            for a in (1e-1, 1e-2, 1e-3, 1e-4, 1e-5)]
    decreasing = all(b < a for a, b in zip(gaps, gaps[1:]))
    final_rel = gaps[-1] / abs(target)
    residual = final_rel if decreasing else math.inf
    _record(report, "alpha-limit",
            "g_hat_alpha - h_hat_alpha -> -pi^{d/2} f_d(rho/2) monotonically",
            residual, 1e-4, started)


_LP_TRUTH = {
    1: set(range(1, 11)),
    2: set(range(2, 11)),
    3: {2},
}


def _check_lp_table(report: VerificationReport, d: int) -> None:
    started = time.perf_counter()
    expected = _LP_TRUTH.get(d, set())
    mismatches = sum(1 for p in range(1, 11)
                     if lp_membership(d, p).member != (p in expected))
    probe_mismatches = sum(1 for p in range(1, 6)
                           if integrability_probe(d, p) != lp_membership(d, p).member)
    _record(report, "lp-table",
            f"L^p membership table for f_{d} and numerical divergence probe",
            float(mismatches + probe_mismatches), 0.0, started)


def _check_asymptotics(report: VerificationReport, d: int) -> None:
    started = time.perf_counter()
    fn = RadialEigenfunction(d)
    worst = abs(f_d(fn, 30.0) * 30.0 ** 2 - 1.0) / 0.01
    if d == 1:
        worst = max(worst, abs(f_d(fn, 1e-5) + 2.0) / 1e-3)
    elif d == 2:
        r = 1e-4
        worst = max(worst, abs(f_d(fn, r) / (2.0 * math.log(r)) - 1.0) / 0.02)
    else:
        r = 1e-5
        limit = -math.gamma(0.5 * d - 1.0)
        worst = max(worst, abs(f_d(fn, r) * r ** (d - 2) / limit - 1.0) / 0.01)
    _record(report, "asymptotics",
            f"f_{d}(r) r^2 -> 1 at infinity and the stated near-zero law",
            worst, 1.0, started)


def _check_uniform_bound(report: VerificationReport, d: int) -> None:
    started = time.perf_counter()
    check = uniform_bound_check(d, (1.0, 0.3, 0.1, 0.03, 0.01),
                                np.geomspace(0.1, 20.0, 20))
    _record(report, "uniform-bound",
            "|F f_d^alpha| <= A/rho^2 + B rho^4 calibrated/held-out",
            check.max_violation_ratio, 1.0, started)


def run_verify_suite(d: int) -> VerificationReport:
    if d not in SUPPORTED_DIMS:
        raise DomainError(f"verification supports d in 1..8, got {d}")
    report = VerificationReport(suite="eigenfunction-verify", d=d)
    if d <= 3:
        _check_direct_eigen(report, d)
        _check_transform_relation(report, d)
    _check_pairing(report, d)
    _check_decomposition(report, d)
    _check_alpha_limit(report, d)
    _check_lp_table(report, d)
    _check_asymptotics(report, d)
    _check_uniform_bound(report, d)
    return report
