"""Thermodynamic bookkeeping for one system-environment unitary map."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import BoundEvaluation, modified_bound, reference_beta_for_energy
from .envmodels import EnvironmentModel
from .linalg import partial_trace
from .quantum import (internal_energy, relative_entropy_to_thermal,
                      von_neumann_entropy)


@dataclass(frozen=True)
class ProcessRecord:
    """Entropy and heat balance of ``rho' = U (rho_S x rho_E) U^dagger``.

    ``reference_temperature`` is the temperature whose thermal state has the
    final environment energy; it is negative when that energy lies above the
    infinite-temperature value of a bounded spectrum.
    """

    time: float
    delta_s_system: float
    delta_q_env: float
    delta_s_env: float
    mutual_info: float
    entropy_production: float
    reference_temperature: float
    bound: BoundEvaluation | None = None

    @property
    def second_law_sum(self) -> float:
        return self.delta_s_system + self.delta_s_env


def _temperature(beta: float) -> float:
    if beta == 0.0:
        return math.inf
    return 1.0 / beta


def process_record(rho_s, rho_env, h_env, beta: float, rho_final,
                   env_model: EnvironmentModel, time: float = 0.0) -> ProcessRecord:
    """Evaluate the record for a final joint state and thermal initial environment.

    ``rho_env`` must be the Gibbs state of ``h_env`` at ``beta``; the bound is
    evaluated on ``env_model`` at ``T = 1/beta``.
    """
    ds, de = rho_s.shape[0], rho_env.shape[0]
    dims = (ds, de)
    rho_s_final = partial_trace(rho_final, dims, "S")
    rho_e_final = partial_trace(rho_final, dims, "E")

    s_s0 = von_neumann_entropy(rho_s)
    s_e0 = von_neumann_entropy(rho_env)
    s_s1 = von_neumann_entropy(rho_s_final)
    s_e1 = von_neumann_entropy(rho_e_final)
    s_joint = von_neumann_entropy(rho_final)

    e_final = internal_energy(rho_e_final, h_env)
    dq = e_final - internal_energy(rho_env, h_env)
    mi = s_s1 + s_e1 - s_joint
    sigma = mi + relative_entropy_to_thermal(rho_e_final, h_env, beta)

    T = 0.0 if math.isinf(beta) else 1.0 / beta
    d_s_system = s_s1 - s_s0
    return ProcessRecord(
        time=float(time),
        delta_s_system=d_s_system,
        delta_q_env=dq,
        delta_s_env=s_e1 - s_e0,
        mutual_info=mi,
        entropy_production=sigma,
        reference_temperature=_temperature(reference_beta_for_energy(env_model, e_final)),
        bound=modified_bound(env_model, T, d_s_system),
    )


def evolve(rho, unitary) -> np.ndarray:
    return unitary @ rho @ unitary.conj().T
