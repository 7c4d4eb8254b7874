"""Bessel J kernels for the radial transform.

Only the orders nu = d/2 - 1 arising from dimensions 1..10 are needed:
half-integers reduce to trigonometric closed forms (ascending series near
the origin where those forms cancel), integer orders use the ascending
series below x = 12 and the Hankel asymptotic expansion above.
"""

from __future__ import annotations

import math

from .errors import ConvergenceError, DomainError

_SERIES_MAX = 80
_INT_CROSSOVER = 12.0
_HALF_CROSSOVER = 2.0


def _bessel_int_series(n: int, x: float) -> float:
    # sum_k (-1)^k (x/2)^{n+2k} / (k! (n+k)!)
    half = 0.5 * x
    term = half ** n / math.factorial(n)
    total = term
    q = half * half
    for k in range(1, _SERIES_MAX):
        term *= -q / (k * (n + k))
        total += term
        if abs(term) <= 1e-17 * abs(total) + 1e-300:
            return total
    raise ConvergenceError(f"J_{n} series did not converge at x={x}")


def _hankel_asym(nu: float, x: float) -> float:
    # J_nu(x) ~ sqrt(2/(pi x)) [P cos(w) - Q sin(w)], w = x - nu pi/2 - pi/4,
    # with P/Q the even/odd parts of the divergent series a_k/(x^k),
    # a_{k+1} = a_k (4 nu^2 - (2k+1)^2) / (8 (k+1)); truncated at smallest term.
    mu = 4.0 * nu * nu
    p = 1.0
    q = 0.0
    a = 1.0
    smallest = 1.0
    for k in range(40):
        a *= (mu - (2 * k + 1) ** 2) / (8.0 * (k + 1) * x)
        if abs(a) >= smallest:
            break
        smallest = abs(a)
        if (k + 1) % 2 == 1:
            q += a if (k // 2) % 2 == 0 else -a
        else:
            p += a if ((k + 1) // 2) % 2 == 0 else -a
        if smallest < 1e-18:
            break
    w = x - 0.5 * nu * math.pi - 0.25 * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(w) - q * math.sin(w))


def _spherical_series(n: int, x: float) -> float:
    # j_n(x) = x^n sum_k (-1)^k x^{2k} / ((2k)!! (2n+2k+1)!!)
    dfact = 1.0
    for m in range(3, 2 * n + 2, 2):
        dfact *= m
    term = x ** n / dfact
    total = term
    q = x * x
    for k in range(1, _SERIES_MAX):
        term *= -q / ((2 * k) * (2 * n + 2 * k + 1))
        total += term
        if abs(term) <= 1e-17 * abs(total) + 1e-300:
            return total
    raise ConvergenceError(f"spherical j_{n} series did not converge at x={x}")


def _spherical_closed(n: int, x: float) -> float:
    s, c = math.sin(x), math.cos(x)
    if n == 0:
        return s / x
    if n == 1:
        return s / (x * x) - c / x
    if n == 2:
        return (3.0 / (x * x * x) - 1.0 / x) * s - 3.0 * c / (x * x)
    if n == 3:
        x2 = x * x
        return (15.0 / (x2 * x2) - 6.0 / x2) * s - (15.0 / (x2 * x) - 1.0 / x) * c
    if n == 4:
        x2 = x * x
        return ((105.0 / (x2 * x2) - 45.0 / x2 + 1.0) * s / x
                - (105.0 / (x2 * x2) - 10.0 / x2) * c)
    raise DomainError(f"spherical order {n} not supported")


def bessel_j(nu: float, x: float) -> float:
    """J_nu(x) for x >= 0 and nu integer or half-integer in [-1/2, 4]."""
    if x < 0.0:
        raise DomainError("bessel_j requires x >= 0")
    two_nu = 2.0 * nu
    if two_nu != round(two_nu) or not (-0.5 <= nu <= 4.0):
        raise DomainError(f"order {nu} not supported")
    if nu == -0.5:
        if x == 0.0:
            return math.inf
        return math.sqrt(2.0 / (math.pi * x)) * math.cos(x)
    if nu == 0.5:
        if x == 0.0:
            return 0.0
        return math.sqrt(2.0 / (math.pi * x)) * math.sin(x)
    if float(nu).is_integer():
        n = int(nu)
        if x == 0.0:
            return 1.0 if n == 0 else 0.0
        if x < _INT_CROSSOVER:
            return _bessel_int_series(n, x)
        return _hankel_asym(nu, x)
    # remaining half-integers 3/2, 5/2, 7/2
    n = int(nu - 0.5)
    if x == 0.0:
        return 0.0
    if x < _HALF_CROSSOVER:
        jn = _spherical_series(n, x)
    else:
        jn = _spherical_closed(n, x)
    return math.sqrt(2.0 * x / math.pi) * jn


def _bessel_j_deriv(nu: float, x: float) -> float:
    # J'_nu = J_{nu-1} - (nu/x) J_nu; J'_0 = -J_1
    if nu == 0.0:
        return -bessel_j(1.0, x)
    return bessel_j(nu - 1.0, x) - (nu / x) * bessel_j(nu, x)


_ZERO_CACHE: dict[float, list[float]] = {}


def bessel_j_zeros(nu: float, count: int) -> list[float]:
    """First `count` positive zeros of J_nu, McMahon start + Newton polish."""
    if nu == -0.5:
        return [(k - 0.5) * math.pi for k in range(1, count + 1)]
    if nu == 0.5:
        return [k * math.pi for k in range(1, count + 1)]
    zeros = _ZERO_CACHE.setdefault(nu, [])
    mu = 4.0 * nu * nu
    while len(zeros) < count:
        k = len(zeros) + 1
        beta = (k + 0.5 * nu - 0.25) * math.pi
        z = beta - (mu - 1.0) / (8.0 * beta) \
            - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * (8.0 * beta) ** 3)
        for _ in range(6):
            f = bessel_j(nu, z)
            step = f / _bessel_j_deriv(nu, z)
            z -= step
            if abs(step) < 1e-14 * z:
                break
        if zeros and z <= zeros[-1]:
            raise ConvergenceError(f"zero ordering failure for nu={nu}, k={k}")
        zeros.append(z)
    return zeros[:count]
