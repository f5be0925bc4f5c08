"""Principal Lambert W and the zeroth-order upper incomplete Gamma function."""

from __future__ import annotations

import math

from .errors import DomainError, NoConvergence

EULER_GAMMA = 0.57721566490153286061
_INV_E = math.exp(-1.0)
_MAX_ITER = 50
_W_TOL = 1e-14
# series below, continued fraction above
GAMMA_CROSSOVER = 1.0


def lambert_w0(x: float) -> float:
    """Principal branch ``W0(x)`` solving ``w * exp(w) = x``, for ``x >= -1/e``.

    Halley iteration; seeded by ``ln(1 + x)`` for ``x >= 0`` and by the
    branch-point expansion on ``[-1/e, 0)``.
    """
    x = float(x)
    if math.isnan(x) or x < -_INV_E - 1e-16:
        raise DomainError(f"lambert_w0 requires x >= -1/e, got {x}")
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return math.inf
    if x <= -_INV_E:
        return -1.0
    if x >= 0.0:
        w = math.log1p(x)
    else:
        p = math.sqrt(max(2.0 * (math.e * x + 1.0), 0.0))
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
    for _ in range(_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0.0:
            return w
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        step = f / denom
        w -= step
        if abs(step) <= _W_TOL * max(1.0, abs(w)):
            return w
    raise NoConvergence(f"lambert_w0 did not converge for x={x}")


def _e1_series(z: float) -> float:
    total = 0.0
    term = 1.0
    for k in range(1, 200):
        term *= -z / k
        contrib = -term / k
        total += contrib
        if abs(contrib) < 1e-17 * abs(total):
            break
    return -EULER_GAMMA - math.log(z) + total


def _e1_scaled_cf(z: float) -> float:
    # modified Lentz evaluation of exp(z) * E1(z)
    tiny = 1e-300
    b = z + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10_000):
        an = -float(i * i)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise NoConvergence(f"continued fraction for Gamma(0, {z}) did not converge")


def gamma_upper_zero(z: float) -> float:
    """``Gamma(0, z) = integral_z^inf exp(-t)/t dt`` for ``z > 0``."""
    z = float(z)
    if not z > 0.0:
        raise DomainError(f"gamma_upper_zero requires z > 0, got {z}")
    if z <= GAMMA_CROSSOVER:
        return _e1_series(z)
    if z > 745.0:
        return 0.0
    return math.exp(-z) * _e1_scaled_cf(z)


def gamma_upper_zero_scaled(z: float) -> float:
    """``exp(z) * Gamma(0, z)``, finite for all ``z > 0`` (tends to ``1/z``)."""
    z = float(z)
    if not z > 0.0:
        raise DomainError(f"gamma_upper_zero_scaled requires z > 0, got {z}")
    if z <= GAMMA_CROSSOVER:
        return math.exp(z) * _e1_series(z)
    return _e1_scaled_cf(z)
