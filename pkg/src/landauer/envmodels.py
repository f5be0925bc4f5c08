"""Equilibrium thermodynamics of environment models.

Every model provides the energy ``E(T)``, entropy ``S(T)`` and heat capacity
``C(T)`` of its thermal state, all referenced to ``E(0) = ground energy`` and
in natural units (hbar = k_B = 1). ``T = inf`` means ``beta = 0``.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, NamedTuple

import numpy as np

from .errors import ConfigError, OutOfTableRange
from .quantum import gibbs_weights, ground_mask
from .specfun import gamma_upper_zero, gamma_upper_zero_scaled


class EntropyRange(NamedTuple):
    min_delta: float
    max_delta: float


def _check_T(T: float) -> float:
    T = float(T)
    if math.isnan(T) or T < 0:
        raise ValueError(f"temperature must be >= 0, got {T}")
    return T


class EnvironmentModel:
    """Base class; subclasses implement ``energy``, ``entropy`` and ``heat_capacity``."""

    kind: str = ""
    #: bounded spectrum, so beta <= 0 states exist
    allows_negative_temperature = False

    def energy(self, T: float) -> float:
        raise NotImplementedError

    def entropy(self, T: float) -> float:
        raise NotImplementedError

    def heat_capacity(self, T: float) -> float:
        raise NotImplementedError

    def ground_entropy(self) -> float:
        return 0.0

    def max_entropy(self) -> float:
        return math.inf

    def max_temperature(self) -> float:
        return math.inf

    def to_config(self) -> dict[str, Any]:
        raise NotImplementedError


@dataclass(frozen=True)
class BosonicMode(EnvironmentModel):
    """Single harmonic mode of frequency ``omega``."""

    omega: float
    kind = "bosonic"

    def __post_init__(self):
        if not self.omega > 0:
            raise ConfigError("bosonic mode needs omega > 0")

    def occupation(self, T: float) -> float:
        T = _check_T(T)
        if T == 0:
            return 0.0
        return 1.0 / math.expm1(self.omega / T)

    def energy(self, T):
        return self.omega * self.occupation(T)

    def entropy(self, T):
        T = _check_T(T)
        if T == 0:
            return 0.0
        if math.isinf(T):
            return math.inf
        x = self.omega / T
        if x > 700:
            return x * math.exp(-x) + math.exp(-x)
        # (n+1) ln(n+1) - n ln n written without the n ln n cancellation
        return x / math.expm1(x) - math.log(-math.expm1(-x))

    def heat_capacity(self, T):
        T = _check_T(T)
        if T == 0:
            return 0.0
        x = self.omega / T
        if x > 700:
            return x * x * math.exp(-x)
        return (0.5 * x / math.sinh(0.5 * x)) ** 2

    def to_config(self):
        return {"kind": self.kind, "omega": self.omega}


@dataclass(frozen=True)
class Waveguide1D(EnvironmentModel):
    """One-dimensional waveguide of length ``L`` with linear dispersion ``omega = c k``."""

    L: float
    c: float
    kind = "waveguide"

    def __post_init__(self):
        if not (self.L > 0 and self.c > 0):
            raise ConfigError("waveguide needs L > 0 and c > 0")

    def energy(self, T):
        T = _check_T(T)
        return math.pi * self.L * T * T / (12.0 * self.c)

    def entropy(self, T):
        T = _check_T(T)
        return math.pi * self.L * T / (6.0 * self.c)

    def heat_capacity(self, T):
        T = _check_T(T)
        return math.pi * self.L * T / (6.0 * self.c)

    def to_config(self):
        return {"kind": self.kind, "L": self.L, "c": self.c}


@dataclass(frozen=True)
class DebyePhonon(EnvironmentModel):
    """Phonon bath with ``C = a T^3``.

    This is the low-temperature Debye law; it is applied at every ``T`` with
    no cutoff, so results far above the Debye temperature are not physical.
    """

    a: float
    kind = "phonon"

    def __post_init__(self):
        if not self.a > 0:
            raise ConfigError("phonon bath needs a > 0")

    def energy(self, T):
        T = _check_T(T)
        return self.a * T ** 4 / 4.0

    def entropy(self, T):
        T = _check_T(T)
        return self.a * T ** 3 / 3.0

    def heat_capacity(self, T):
        T = _check_T(T)
        return self.a * T ** 3

    def to_config(self):
        return {"kind": self.kind, "a": self.a}


@dataclass(frozen=True)
class GappedBCS(EnvironmentModel):
    """Gapped bath with ``C = b exp(-delta/T)``.

    With ``asymptotic=True`` energy and entropy use the leading low-temperature
    terms ``b T^2/delta e^{-delta/T}`` and ``b T/delta e^{-delta/T}`` instead of
    the exact incomplete-Gamma integrals. That variant is not thermodynamically
    consistent and only serves the closed-form comparison.
    """

    b: float
    delta: float
    asymptotic: bool = False
    kind = "gapped"

    def __post_init__(self):
        if not (self.b > 0 and self.delta > 0):
            raise ConfigError("gapped bath needs b > 0 and delta > 0")

    def energy(self, T):
        T = _check_T(T)
        if T == 0:
            return 0.0
        if math.isinf(T):
            return math.inf
        z = self.delta / T
        if self.asymptotic:
            return self.b * T * T / self.delta * math.exp(-z)
        if z > 1.0:
            # b*delta*e^{-z} (1/z - e^z Gamma(0,z)) keeps the small difference accurate
            return self.b * self.delta * math.exp(-z) * (1.0 / z - gamma_upper_zero_scaled(z))
        return self.b * self.delta * (math.exp(-z) / z - gamma_upper_zero(z))

    def entropy(self, T):
        T = _check_T(T)
        if T == 0:
            return 0.0
        if math.isinf(T):
            return math.inf
        z = self.delta / T
        if self.asymptotic:
            return self.b * T / self.delta * math.exp(-z)
        return self.b * gamma_upper_zero(z)

    def heat_capacity(self, T):
        T = _check_T(T)
        if T == 0:
            return 0.0
        return self.b * math.exp(-self.delta / T)

    def to_config(self):
        cfg = {"kind": self.kind, "b": self.b, "delta": self.delta}
        if self.asymptotic:
            cfg["asymptotic"] = True
        return cfg


@dataclass(frozen=True)
class FiniteSpectrum(EnvironmentModel):
    """Environment with a finite list of energy levels (degeneracies repeated).

    Temperatures may be negative here; ``T = -0.0`` is not distinguished, use
    :meth:`energy_beta` / :meth:`entropy_beta` to reach ``beta -> -inf``.
    """

    levels: tuple[float, ...]
    kind = "spectrum"
    allows_negative_temperature = True

    def __post_init__(self):
        levels = tuple(float(x) for x in self.levels)
        if len(levels) < 2 or not all(math.isfinite(x) for x in levels):
            raise ConfigError("finite spectrum needs at least 2 finite levels")
        object.__setattr__(self, "levels", tuple(sorted(levels)))

    @property
    def dim(self) -> int:
        return len(self.levels)

    @staticmethod
    def _beta(T: float) -> float:
        T = float(T)
        if math.isnan(T):
            raise ValueError("temperature is NaN")
        if T == 0:
            return math.inf
        return 1.0 / T

    def weights_beta(self, beta: float) -> np.ndarray:
        return gibbs_weights(np.array(self.levels), beta)[0]

    def energy_beta(self, beta: float) -> float:
        return float(np.dot(self.weights_beta(beta), self.levels))

    def entropy_beta(self, beta: float) -> float:
        p = self.weights_beta(beta)
        p = p[p > 1e-300]
        return float(-np.sum(p * np.log(p)))

    def heat_capacity_beta(self, beta: float) -> float:
        if math.isinf(beta):
            return 0.0
        p = self.weights_beta(beta)
        e = np.array(self.levels)
        mean = np.dot(p, e)
        return float(beta * beta * np.dot(p, (e - mean) ** 2))

    def energy(self, T):
        return self.energy_beta(self._beta(T))

    def entropy(self, T):
        return self.entropy_beta(self._beta(T))

    def heat_capacity(self, T):
        return self.heat_capacity_beta(self._beta(T))

    def ground_entropy(self):
        return math.log(np.count_nonzero(ground_mask(np.array(self.levels))))

    def max_entropy(self):
        return math.log(self.dim)

    def to_config(self):
        return {"kind": self.kind, "levels": list(self.levels)}


@dataclass(frozen=True)
class TabulatedHeatCapacity(EnvironmentModel):
    """Heat capacity sampled at ``(T, C)`` points and interpolated linearly.

    Energy and entropy are exact integrals of the piecewise-linear ``C``; the
    table must start at ``T = 0`` with ``C = 0``.
    """

    temperatures: tuple[float, ...]
    capacities: tuple[float, ...]
    source: str | None = None
    kind = "tabulated"
    _cum_energy: tuple[float, ...] = field(init=False, repr=False, compare=False)
    _cum_entropy: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        t = np.asarray(self.temperatures, dtype=float)
        c = np.asarray(self.capacities, dtype=float)
        if t.ndim != 1 or t.shape != c.shape or t.size < 2:
            raise ConfigError("tabulated heat capacity needs >= 2 (T, C) samples")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(c))):
            raise ConfigError("tabulated samples must be finite")
        if np.any(np.diff(t) <= 0):
            raise ConfigError("tabulated temperatures must be strictly increasing")
        if np.any(c < 0):
            raise ConfigError("tabulated heat capacities must be >= 0")
        if t[0] != 0.0 or c[0] != 0.0:
            raise ConfigError("table must start at T = 0 with C(0) = 0")
        object.__setattr__(self, "temperatures", tuple(t.tolist()))
        object.__setattr__(self, "capacities", tuple(c.tolist()))
        energy = [0.0]
        entropy = [0.0]
        for i in range(1, t.size):
            energy.append(energy[-1] + self._segment_energy(i, t[i]))
            entropy.append(entropy[-1] + self._segment_entropy(i, t[i]))
        object.__setattr__(self, "_cum_energy", tuple(energy))
        object.__setattr__(self, "_cum_entropy", tuple(entropy))

    def _slope(self, i: int) -> float:
        t, c = self.temperatures, self.capacities
        return (c[i] - c[i - 1]) / (t[i] - t[i - 1])

    def _segment_energy(self, i: int, T: float) -> float:
        t0, c0 = self.temperatures[i - 1], self.capacities[i - 1]
        k = self._slope(i)
        return c0 * (T - t0) + 0.5 * k * (T - t0) ** 2

    def _segment_entropy(self, i: int, T: float) -> float:
        t0, c0 = self.temperatures[i - 1], self.capacities[i - 1]
        k = self._slope(i)
        if t0 == 0.0:
            # C(0) = 0 so C/tau = k on the first segment
            return k * T
        return (c0 - k * t0) * math.log(T / t0) + k * (T - t0)

    def _segment(self, T: float) -> int:
        T = _check_T(T)
        if T > self.temperatures[-1]:
            raise OutOfTableRange(f"T={T} beyond table maximum {self.temperatures[-1]}")
        i = int(np.searchsorted(self.temperatures, T, side="left"))
        return max(i, 1)

    def energy(self, T):
        i = self._segment(T)
        return self._cum_energy[i - 1] + self._segment_energy(i, T)

    def entropy(self, T):
        i = self._segment(T)
        return self._cum_entropy[i - 1] + self._segment_entropy(i, T)

    def heat_capacity(self, T):
        i = self._segment(T)
        t0, c0 = self.temperatures[i - 1], self.capacities[i - 1]
        return c0 + self._slope(i) * (T - t0)

    def max_temperature(self):
        return self.temperatures[-1]

    def to_config(self):
        if self.source is not None:
            return {"kind": self.kind, "csv": self.source}
        return {"kind": self.kind, "samples": [list(p) for p in zip(self.temperatures, self.capacities)]}


def evaluate_energy(m: EnvironmentModel, T: float) -> float:
    return m.energy(T)


def evaluate_entropy(m: EnvironmentModel, T: float) -> float:
    return m.entropy(T)


def evaluate_heat_capacity(m: EnvironmentModel, T: float) -> float:
    return m.heat_capacity(T)


def entropy_range(m: EnvironmentModel, T: float) -> EntropyRange:
    """Attainable interval of ``S(T') - S(T)`` over ``T' in [0+, beta'=0]``.

    For a table the upper end is its last sample rather than infinity.
    """
    s = m.entropy(T)
    lo = m.ground_entropy() - s
    if math.isfinite(m.max_entropy()):
        hi = m.max_entropy() - s
    elif math.isfinite(m.max_temperature()):
        hi = m.entropy(m.max_temperature()) - s
    else:
        hi = math.inf
    return EntropyRange(min(lo, 0.0), max(hi, 0.0))


# kind -> (required parameters, description with units)
MODEL_KINDS: dict[str, tuple[str, str]] = {
    "bosonic": ("omega", "single bosonic mode; omega: frequency (energy units)"),
    "waveguide": ("L, c", "1D waveguide; L: length, c: propagation speed"),
    "phonon": ("a", "Debye phonons C = a T^3; a: coefficient (1/temperature^3)"),
    "gapped": ("b, delta", "gapped bath C = b exp(-delta/T); b: dimensionless, delta: gap (energy)"),
    "spectrum": ("levels", "finite spectrum; levels: list of energies"),
    "tabulated": ("csv path", "tabulated heat capacity; two-column CSV 'T,C' with header, starting at T=0, C=0"),
}


def _num(cfg: dict, key: str) -> float:
    if key not in cfg:
        raise ConfigError(f"model {cfg.get('kind')!r} is missing parameter {key!r}")
    try:
        return float(cfg[key])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"parameter {key!r} is not a number: {cfg[key]!r}") from exc


def load_tabulated_csv(path: str | Path) -> TabulatedHeatCapacity:
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    if len(rows) < 3:
        raise ConfigError(f"{path}: need a header row and at least two samples")
    try:
        data = [(float(r[0]), float(r[1])) for r in rows[1:] if r]
    except (IndexError, ValueError) as exc:
        raise ConfigError(f"{path}: malformed row ({exc})") from exc
    t, c = zip(*data)
    return TabulatedHeatCapacity(t, c, source=str(path))


def model_from_config(cfg: dict[str, Any]) -> EnvironmentModel:
    """Build a model from a ``{"kind": ..., <parameters>}`` mapping."""
    if not isinstance(cfg, dict) or "kind" not in cfg:
        raise ConfigError("model config must be an object with a 'kind' field")
    kind = cfg["kind"]
    if kind == "bosonic":
        return BosonicMode(_num(cfg, "omega"))
    if kind == "waveguide":
        return Waveguide1D(_num(cfg, "L"), _num(cfg, "c"))
    if kind == "phonon":
        return DebyePhonon(_num(cfg, "a"))
    if kind == "gapped":
        return GappedBCS(_num(cfg, "b"), _num(cfg, "delta"), bool(cfg.get("asymptotic", False)))
    if kind == "spectrum":
        levels = cfg.get("levels")
        if not isinstance(levels, (list, tuple)):
            raise ConfigError("spectrum model needs a 'levels' list")
        try:
            return FiniteSpectrum(tuple(float(x) for x in levels))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad levels: {exc}") from exc
    if kind == "tabulated":
        if "csv" in cfg:
            return load_tabulated_csv(cfg["csv"])
        samples = cfg.get("samples")
        if not samples:
            raise ConfigError("tabulated model needs 'csv' or 'samples'")
        try:
            t, c = zip(*[(float(a), float(b)) for a, b in samples])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad samples: {exc}") from exc
        return TabulatedHeatCapacity(t, c)
    raise ConfigError(f"unknown model kind {kind!r}; expected one of {sorted(MODEL_KINDS)}")


def load_model_file(path: str | Path) -> dict[str, Any]:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot load model file {path}: {exc}") from exc
