"""Shared quadrature plumbing: Gauss-Legendre panels and sequence acceleration.

General-purpose 1-D integrals elsewhere in the package go through
``scipy.integrate.quad``; this module supplies the pieces QUADPACK is not
suited for -- fixed panels between oscillation nodes, endpoint-graded panel
chains, and Wynn's epsilon algorithm for alternating tail sums.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .errors import ConvergenceError


@lru_cache(maxsize=32)
def _gl_rule(n: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return tuple(nodes.tolist()), tuple(weights.tolist())


def gl_panel(f: Callable[[float], float], a: float, b: float, n: int) -> float:
    """n-point Gauss-Legendre estimate of int_a^b f."""
    nodes, weights = _gl_rule(n)
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    return half * math.fsum(w * f(mid + half * x) for x, w in zip(nodes, weights))


def gl_panel_err(f: Callable[[float], float], a: float, b: float, n: int) -> tuple[float, float]:
    """GL estimate with an error estimate from doubling the node count."""
    coarse = gl_panel(f, a, b, n)
    fine = gl_panel(f, a, b, 2 * n)
    return fine, abs(fine - coarse)


def adaptive_panel(
    f: Callable[[float], float],
    a: float,
    b: float,
    abs_tol: float,
    n: int = 16,
    max_depth: int = 14,
) -> float:
    """Bisection-adaptive Gauss-Legendre on a finite panel."""
    val, err = gl_panel_err(f, a, b, n)
    if err <= abs_tol or max_depth == 0 or (b - a) < 1e-15 * (abs(a) + abs(b)):
        return val
    mid = 0.5 * (a + b)
    return (adaptive_panel(f, a, mid, 0.5 * abs_tol, n, max_depth - 1)
            + adaptive_panel(f, mid, b, 0.5 * abs_tol, n, max_depth - 1))


def graded_integral(
    f: Callable[[float], float],
    upper: float,
    abs_tol: float,
    n: int = 16,
    adaptive: bool = True,
    max_levels: int = 60,
) -> float:
    """int_0^upper f with geometric panel grading toward the origin.

    Handles integrands with an integrable algebraic or logarithmic
    singularity at 0; the chain stops once two consecutive panels fall
    below the absolute tolerance.
    """
    total = 0.0
    hi = upper
    quiet = 0
    for _ in range(max_levels):
        lo = 0.5 * hi
        if adaptive:
            part = adaptive_panel(f, lo, hi, abs_tol / max_levels, n)
        else:
            part = gl_panel(f, lo, hi, 2 * n)
        total += part
        if abs(part) <= abs_tol:
            quiet += 1
            if quiet >= 2:
                return total
        else:
            quiet = 0
        hi = lo
    return total


def wynn_epsilon(sums: Sequence[float]) -> float:
    """Shanks-type extrapolation of a sequence of partial sums.

    Returns the deepest stable even-column entry of Wynn's epsilon table.
    """
    n = len(sums)
    if n == 0:
        raise ValueError("empty sequence")
    if n < 3:
        return sums[-1]
    prev = [0.0] * (n + 1)
    cur = list(sums)
    best = sums[-1]
    for col in range(1, n):
        nxt = []
        for i in range(len(cur) - 1):
            diff = cur[i + 1] - cur[i]
            if diff == 0.0:
                # exact convergence of the previous column
                return cur[i + 1] if col % 2 == 0 else best
            nxt.append(prev[i + 1] + 1.0 / diff)
        prev, cur = cur, nxt
        if not cur:
            break
        if col % 2 == 0:
            best = cur[-1]
    return best


def accelerated_limit(sums: Sequence[float]) -> tuple[float, float]:
    """Epsilon-accelerated limit plus a stability spread estimate.

    The spread compares extrapolations from three trailing windows; it is a
    usable proxy for the acceleration error.
    """
    if len(sums) < 6:
        return sums[-1], abs(sums[-1] - sums[-2]) if len(sums) > 1 else abs(sums[-1])
    e0 = wynn_epsilon(sums)
    e1 = wynn_epsilon(sums[:-1])
    e2 = wynn_epsilon(sums[:-2])
    return e0, max(abs(e0 - e1), abs(e0 - e2))


def quad_checked(
    f: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float = 1e-11,
    abs_tol: float = 0.0,
    points: Sequence[float] | None = None,
    limit: int = 200,
    what: str = "integral",
) -> tuple[float, float]:
    """scipy.integrate.quad with the error estimate checked, not warned about."""
    kwargs = {"epsabs": abs_tol, "epsrel": rel_tol, "limit": limit, "full_output": 1}
    if points is not None and math.isfinite(a) and math.isfinite(b):
        kwargs["points"] = list(points)
    out = integrate.quad(f, a, b, **kwargs)
    val, err = out[0], out[1]
    tol = max(abs_tol, 1e3 * rel_tol * max(abs(val), 1e-280))
    if err > tol and len(out) > 3:
        raise ConvergenceError(f"{what}: quadrature error {err:.3e} above tolerance {tol:.3e}")
    return val, err
