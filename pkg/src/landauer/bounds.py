"""Heat-dissipation bounds from the environment's equilibrium functions.

The modified bound evaluates ``Q(T') = E(T') - E(T)`` at the positive reference
temperature ``T'`` solving ``S(T') - S(T) = -dS_system``. It only needs the
environment's heat capacity, and it never falls below ``-T dS_system``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from scipy.optimize import brentq

from .envmodels import BosonicMode, EnvironmentModel, FiniteSpectrum, entropy_range
from .errors import DomainError, NoConvergence, OutOfTableRange, PositiveEntropyChange
from .specfun import lambert_w0

ENTROPY_ATOL = 1e-10
TPRIME_RTOL = 1e-12
BETA_ZERO_TOL = 1e-12
_MAX_DOUBLINGS = 2100
_T_FLOOR = 1e-6
_EPS = 2.220446049250313e-16


class BoundStatus(str, enum.Enum):
    EXACT = "Exact"
    CLAMPED_AT_ZERO = "ClampedAtZero"
    CLAMPED_AT_BETA_ZERO = "ClampedAtBetaZero"
    INFEASIBLE = "Infeasible"


class GappedVariant(str, enum.Enum):
    LAMBERT_EXACT = "LambertExact"
    LOG_ASYMPTOTIC = "LogAsymptotic"


@dataclass(frozen=True)
class BoundEvaluation:
    reference_temperature: float
    modified_bound: float
    original_bound: float
    status: BoundStatus

    @property
    def feasible(self) -> bool:
        return self.status is not BoundStatus.INFEASIBLE


def q_of_reference(m: EnvironmentModel, T: float, Tprime: float) -> float:
    """Heat ``E(T') - E(T)`` absorbed when the bath moves from ``T`` to ``T'``."""
    if Tprime == T:
        return 0.0
    return m.energy(Tprime) - m.energy(T)


def s_of_reference(m: EnvironmentModel, T: float, Tprime: float) -> float:
    if Tprime == T:
        return 0.0
    return m.entropy(Tprime) - m.entropy(T)


def _solve_increasing(f: Callable[[float], float], start: float, upward: bool,
                      atol: float = ENTROPY_ATOL) -> float:
    """Root of an increasing ``f`` on ``(0, inf)``, bracketed by doubling or halving from ``start``.

    Brent's method stops at relative width ``TPRIME_RTOL`` and is rerun at
    machine precision if the residual still exceeds ``atol``.
    """
    if upward:
        lo = start
        hi = max(start, _T_FLOOR)
        for _ in range(_MAX_DOUBLINGS):
            if f(hi) >= 0.0:
                break
            lo, hi = hi, 2.0 * hi
        else:
            raise NoConvergence("could not bracket the reference temperature from above")
    else:
        hi = start
        lo = 0.5 * start
        for _ in range(_MAX_DOUBLINGS):
            if f(lo) <= 0.0:
                break
            hi, lo = lo, 0.5 * lo
        else:
            raise NoConvergence("could not bracket the reference temperature from below")
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    root = brentq(f, lo, hi, xtol=1e-300, rtol=TPRIME_RTOL, maxiter=500)
    if abs(f(root)) > atol:
        root = brentq(f, lo, hi, xtol=1e-300, rtol=4 * _EPS, maxiter=500)
    return root


def invert_entropy_change(m: EnvironmentModel, T: float, target: float) -> tuple[float, BoundStatus]:
    """Positive-temperature solution ``T'`` of ``S(T') - S(T) = target``.

    Targets below the attainable range clamp to ``T' = 0``; a target equal to
    the finite-spectrum maximum maps to ``T' = inf`` (``beta' = 0``) and one
    above it is infeasible.
    """
    if not math.isfinite(target):
        raise ValueError(f"entropy target must be finite, got {target}")
    if target == 0.0:
        return T, BoundStatus.EXACT
    lo, hi = entropy_range(m, T)
    if target <= lo:
        return 0.0, BoundStatus.CLAMPED_AT_ZERO
    if math.isfinite(m.max_entropy()):
        if abs(target - hi) <= BETA_ZERO_TOL:
            return math.inf, BoundStatus.CLAMPED_AT_BETA_ZERO
        if target > hi:
            return math.inf, BoundStatus.INFEASIBLE
    elif target > hi:
        raise OutOfTableRange(
            f"entropy change {target} needs T' beyond the table maximum {m.max_temperature()}")

    s0 = m.entropy(T)

    def f(tp: float) -> float:
        if tp > m.max_temperature():
            return math.inf
        return m.entropy(tp) - s0 - target

    return _solve_increasing(f, T, upward=target > 0.0), BoundStatus.EXACT


def original_landauer_bound(T: float, ds: float) -> float:
    """``-T dS_system``; trivially zero at ``T = 0``."""
    if T < 0:
        raise ValueError(f"temperature must be >= 0, got {T}")
    return -T * ds + 0.0


def modified_bound(m: EnvironmentModel, T: float, ds: float) -> BoundEvaluation:
    """Lower bound on the heat absorbed by the environment for system entropy change ``ds``."""
    Tprime, status = invert_entropy_change(m, T, -ds)
    original = original_landauer_bound(T, ds)
    if status is BoundStatus.INFEASIBLE:
        return BoundEvaluation(Tprime, math.inf, original, status)
    return BoundEvaluation(Tprime, q_of_reference(m, T, Tprime), original, status)


def reference_beta_for_energy(m: EnvironmentModel, energy: float) -> float:
    """Inverse temperature ``beta'`` whose thermal state has the given energy.

    Bounded spectra can return ``beta' <= 0`` (negative temperatures) and the
    edge values ``+inf`` / ``-inf`` for the lowest / highest level.
    """
    if isinstance(m, BosonicMode):
        nbar = energy / m.omega
        if nbar <= 0.0:
            return math.inf
        return math.log1p(1.0 / nbar) / m.omega
    if isinstance(m, FiniteSpectrum):
        e_min, e_max = m.levels[0], m.levels[-1]
        tol = 1e-13 * max(1.0, e_max - e_min)
        if energy <= e_min + tol:
            return math.inf
        if energy >= e_max - tol:
            return -math.inf
        e_mid = m.energy_beta(0.0)
        if energy == e_mid:
            return 0.0
        # energy_beta decreases in beta; energies above e_mid need beta < 0
        sign = 1.0 if energy < e_mid else -1.0
        edge = 1.0
        while sign * (m.energy_beta(sign * edge) - energy) > 0.0:
            edge *= 2.0
        a, b = sorted((0.0, sign * edge))
        return brentq(lambda beta: m.energy_beta(beta) - energy, a, b,
                      xtol=1e-300, rtol=TPRIME_RTOL, maxiter=500)
    if energy <= m.energy(0.0):
        return math.inf

    def f(tp: float) -> float:
        return m.energy(tp) - energy

    return 1.0 / _solve_increasing(f, _T_FLOOR, upward=f(_T_FLOOR) < 0.0)


def closed_form_waveguide(L: float, c: float, T: float, ds: float) -> float:
    if not (L > 0 and c > 0):
        raise DomainError("waveguide needs L > 0 and c > 0")
    return -T * ds + 3.0 * c * ds * ds / (math.pi * L)


def closed_form_phonon_T0(a: float, ds: float) -> float:
    """Zero-temperature bound for a ``C = a T^3`` bath; grows as ``(-ds)^(4/3)``."""
    if not a > 0:
        raise DomainError("phonon coefficient must be positive")
    if ds > 0:
        raise PositiveEntropyChange("phonon closed form holds for erasure (ds <= 0) at T = 0")
    return 3.0 ** (4.0 / 3.0) / 4.0 * (-ds) ** (4.0 / 3.0) / a ** (1.0 / 3.0)


def closed_form_gapped_T0(b: float, delta: float, ds: float,
                          variant: GappedVariant | str = GappedVariant.LAMBERT_EXACT) -> float:
    """Zero-temperature bound for a ``C = b exp(-delta/T)`` bath.

    ``LambertExact`` returns ``delta (-ds) / W0(b/(-ds))``; ``LogAsymptotic``
    replaces ``W0`` by ``ln`` and is only accepted for ``b/(-ds) > e``.
    """
    variant = GappedVariant(variant)
    if not (b > 0 and delta > 0):
        raise DomainError("gapped bath needs b > 0 and delta > 0")
    if ds > 0:
        raise PositiveEntropyChange("gapped closed form holds for erasure (ds < 0) at T = 0")
    if ds == 0:
        return 0.0
    x = b / (-ds)
    if variant is GappedVariant.LAMBERT_EXACT:
        return delta * (-ds) / lambert_w0(x)
    if x <= math.e:
        raise DomainError(f"log asymptotic needs b/(-ds) > e, got {x}")
    return delta * (-ds) / math.log(x)
