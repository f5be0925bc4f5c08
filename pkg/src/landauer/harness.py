"""Randomized checks of the heat/entropy inequality chain on small systems.

Each trial draws a system state, a Haar unitary on system (x) environment and a
finite environment spectrum, all from ``numpy``'s PCG64 generator, so a trial
is reproduced bit-for-bit from its seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .bounds import BoundEvaluation, reference_beta_for_energy
from .envmodels import FiniteSpectrum
from .linalg import kron, partial_trace
from .process import ProcessRecord, evolve, process_record
from .quantum import gibbs_weights, internal_energy, von_neumann_entropy

DEFAULT_TEMPERATURES = (0.0, 0.1, 1.0, 10.0)
DEFAULT_MAX_DIMS = (3, 6)
LEVEL_SPAN = 3.0

# inequality name -> allowed negative slack
TOLERANCES = {
    "mutual_information": 1e-10,
    "entropy_balance": 1e-10,
    "entropy_production": 1e-9,
    "modified_bound": 1e-9,
    "tightness": 1e-12,
    "maxent": 1e-10,
}


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64([int(seed), int(stream)]))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary: QR of a complex Ginibre matrix with phases fixed by ``diag(R)``."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    rho = rho / np.trace(rho).real
    return 0.5 * (rho + rho.conj().T)


@dataclass(frozen=True)
class TrialSpec:
    seed: int
    dim_system: int
    dim_env: int
    temperature: float
    env_levels: tuple[float, ...]

    def __post_init__(self):
        if self.dim_system < 2 or self.dim_env < 2:
            raise ValueError("trial dimensions must be >= 2")
        if len(self.env_levels) != self.dim_env:
            raise ValueError("need one environment level per environment dimension")


@dataclass(frozen=True)
class Violation:
    seed: int
    inequality: str
    slack: float


@dataclass
class TrialReport:
    spec: TrialSpec
    record: ProcessRecord
    bound_eval: BoundEvaluation
    violations: list[Violation] = field(default_factory=list)
    slacks: dict[str, float] = field(default_factory=dict)
    #: beta' < 0: final environment energy above its infinite-temperature value
    negative_reference: bool = False


def make_trial_spec(seed: int, temperatures: Sequence[float] = DEFAULT_TEMPERATURES,
                    max_dims: tuple[int, int] = DEFAULT_MAX_DIMS) -> TrialSpec:
    """Trial parameters for ``seed``; temperatures cycle through ``temperatures``."""
    rng = make_rng(seed, 0)
    ds = int(rng.integers(2, max_dims[0] + 1))
    de = int(rng.integers(2, max_dims[1] + 1))
    excited = np.sort(rng.uniform(0.0, LEVEL_SPAN, de - 1))
    T = float(temperatures[(seed - 1) % len(temperatures)])
    return TrialSpec(seed, ds, de, T, (0.0, *excited.tolist()))


def run_trial(spec: TrialSpec, unitary: np.ndarray | None = None) -> TrialReport:
    rng = make_rng(spec.seed, 1)
    rho_s = random_state(spec.dim_system, rng)
    d = spec.dim_system * spec.dim_env
    u = random_unitary(d, rng) if unitary is None else np.asarray(unitary, dtype=complex)

    env = FiniteSpectrum(spec.env_levels)
    h_env = np.diag(np.array(env.levels)).astype(complex)
    beta = math.inf if spec.temperature == 0 else 1.0 / spec.temperature
    rho_env = np.diag(gibbs_weights(np.array(env.levels), beta)[0]).astype(complex)

    rho_final = evolve(kron(rho_s, rho_env), u)
    record = process_record(rho_s, rho_env, h_env, beta, rho_final, env)
    bound = record.bound

    rho_e_final = partial_trace(rho_final, (spec.dim_system, spec.dim_env), "E")
    beta_ref = reference_beta_for_energy(env, internal_energy(rho_e_final, h_env))

    slacks = {
        "mutual_information": record.mutual_info,
        "entropy_balance": record.delta_s_system + record.delta_s_env,
        "modified_bound": record.delta_q_env - bound.modified_bound,
        "tightness": bound.modified_bound - bound.original_bound,
        "maxent": env.entropy_beta(beta_ref) - von_neumann_entropy(rho_e_final),
    }
    if math.isfinite(record.entropy_production):
        slacks["entropy_production"] = record.entropy_production
    violations = [Violation(spec.seed, name, s) for name, s in slacks.items()
                  if not s >= -TOLERANCES[name]]
    return TrialReport(spec, record, bound, violations, slacks, negative_reference=beta_ref < 0)


def run_fuzz(seeds: Iterable[int], temperatures: Sequence[float] = DEFAULT_TEMPERATURES,
             max_dims: tuple[int, int] = DEFAULT_MAX_DIMS) -> list[TrialReport]:
    reports = [run_trial(make_trial_spec(s, temperatures, max_dims)) for s in seeds]
    return sorted(reports, key=lambda r: r.spec.seed)


def summarize(reports: Sequence[TrialReport]) -> dict:
    """JSON-ready fuzz summary, ordered by seed."""
    reports = sorted(reports, key=lambda r: r.spec.seed)
    violations = [v for r in reports for v in r.violations]
    zero_t = [r for r in reports if r.spec.temperature == 0]
    erasures = [r for r in zero_t if r.record.delta_s_system < -1e-3]
    return {
        "trials": len(reports),
        "violations": [{"seed": v.seed, "inequality": v.inequality, "slack": v.slack}
                       for v in violations],
        "max_abs_slack_violation": max((abs(v.slack) for v in violations), default=0.0),
        "negative_reference_trials": sum(r.negative_reference for r in reports),
        "zero_temperature_trials": len(zero_t),
        "zero_temperature_erasures": len(erasures),
        "zero_temperature_positive_bounds": sum(r.bound_eval.modified_bound > 0 for r in erasures),
    }
