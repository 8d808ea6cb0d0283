"""Real slice of the Weierstrass elliptic function for g2 = 4 d^2, g3 = 0.

The cubic is 4u^3 - 4 d^2 u = 4 u (u - d)(u + d) with roots (d, 0, -d);
the real slice through the positive root has half period

    tau+ = integral_d^infinity du / sqrt(4u^3 - 4 d^2 u),

and p(tau+) = d.  Evaluation folds the argument into (0, 2 tau+] by
periodicity and evenness, runs the Laurent series inside |z| <= tau+/4,
and applies at most two duplication steps.
"""

from __future__ import annotations

import math

from scipy.integrate import quad


class AtPole(Exception):
    """Raised when the evaluation point is too close to a lattice pole."""


_SERIES_KMAX = 8          # Laurent terms up to z^(2k-2) = z^14
_SERIES_RADIUS = 0.25     # fraction of tau+ where the series is trusted
_POLE_TOL = 1e-9          # fraction of tau+ treated as "at the pole"

_tau_cache: dict[float, float] = {}
_coef_cache: dict[float, list[float]] = {}


def half_period(d: float) -> float:
    """tau+ via numeric quadrature (u = d (1 + s^2) substitution)."""
    d = float(d)
    if d <= 0:
        raise ValueError("half_period needs d > 0")
    if d not in _tau_cache:
        val, _err = quad(lambda s: 1.0 / math.sqrt((1 + s * s) * (2 + s * s)), 0.0, math.inf, limit=200)
        _tau_cache[d] = val / math.sqrt(d)
    return _tau_cache[d]


def half_period_agm(d: float) -> float:
    """Closed form tau+ = K(1/sqrt 2)/sqrt(2 d) with K from the AGM."""
    a, b = 1.0, math.sqrt(0.5)
    for _ in range(32):
        if a == b:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    K = math.pi / (2.0 * a)
    return K / math.sqrt(2.0 * float(d))


def laurent_coefficients(d: float, kmax: int = _SERIES_KMAX) -> list[float]:
    """c_k for p(z) = z^-2 + sum_{k>=2} c_k z^{2k-2} (index = position k)."""
    d = float(d)
    key = d
    if key in _coef_cache and len(_coef_cache[key]) > kmax:
        return _coef_cache[key]
    g2 = 4.0 * d * d
    c = [0.0] * (kmax + 1)
    if kmax >= 2:
        c[2] = g2 / 20.0
    if kmax >= 3:
        c[3] = 0.0  # g3 = 0
    for k in range(4, kmax + 1):
        s = sum(c[m] * c[k - m] for m in range(2, k - 1))
        c[k] = 3.0 * s / ((2 * k + 1) * (k - 3))
    _coef_cache[key] = c
    return c


def _series(z: float, d: float) -> tuple[float, float]:
    c = laurent_coefficients(d)
    z2 = z * z
    p = 1.0 / z2
    pp = -2.0 / (z2 * z)
    zpow = z2  # z^{2k-2} starting at k = 2
    for k in range(2, len(c)):
        p += c[k] * zpow
        pp += (2 * k - 2) * c[k] * zpow / z
        zpow *= z2
    return p, pp


def _duplicate(p: float, pp: float, g2: float) -> tuple[float, float]:
    ppp = 6.0 * p * p - 0.5 * g2          # p'' = 6 p^2 - g2/2
    q = ppp / (2.0 * pp)
    p2 = q * q - 2.0 * p
    qprime = (12.0 * p * pp * pp - ppp * ppp) / (2.0 * pp * pp)  # p''' = 12 p p'
    pp2 = q * qprime - pp
    return p2, pp2


def weierstrass_p(x: float, d: float) -> tuple[float, float]:
    """(p(x), p'(x)) on the real slice; raises AtPole near lattice points."""
    d = float(d)
    tau = half_period(d)
    period = 2.0 * tau
    z = x - period * math.floor(x / period)
    sign = 1.0
    if z > tau:  # evenness: p(2 tau - z) = p(z), p' flips
        z = period - z
        sign = -1.0
    if z < _POLE_TOL * tau:
        raise AtPole(f"x = {x!r} is within {_POLE_TOL} tau of a pole")
    n = 0
    while z > _SERIES_RADIUS * tau:
        z *= 0.5
        n += 1
    p, pp = _series(z, d)
    g2 = 4.0 * d * d
    for _ in range(n):
        p, pp = _duplicate(p, pp, g2)
    return p, sign * pp


def cubic_residual(x: float, d: float) -> float:
    """p'^2 - (4 p^3 - 4 d^2 p) at x, relative to the cubic's size."""
    p, pp = weierstrass_p(x, d)
    lhs = pp * pp
    rhs = 4.0 * p ** 3 - 4.0 * d * d * p
    scale = max(abs(lhs), abs(rhs), 1.0)
    return (lhs - rhs) / scale
