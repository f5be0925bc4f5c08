"""Exact dynamics of a qubit emitting into a single cavity mode (Rabi model).

The qubit is the system and the truncated cavity mode the environment.
Operators are ordered qubit (x) cavity; the qubit basis is (ground, excited),
so ``H_sys = (Omega/2) diag(-1, +1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .envmodels import BosonicMode
from .errors import TruncationUnconverged
from .linalg import EigenDecomposition, hermitian_eig, kron
from .process import ProcessRecord, process_record
from .quantum import gibbs_weights

DEFAULT_FOCK = 30
MAX_FOCK = 240
TRUNCATION_TOL = 1e-8
DEFAULT_TMAX = 20.0
DEFAULT_STEPS = 200


def default_time_grid(tmax: float = DEFAULT_TMAX, steps: int = DEFAULT_STEPS) -> tuple[float, ...]:
    return tuple(np.linspace(0.0, tmax, steps).tolist())


@dataclass(frozen=True)
class RabiConfig:
    g: float
    T: float
    omega: float = 1.0
    Omega: float = 1.0
    p: float = 0.1
    fock_dim: int = DEFAULT_FOCK
    t_grid: tuple[float, ...] = default_time_grid()

    def __post_init__(self):
        object.__setattr__(self, "t_grid", tuple(float(t) for t in self.t_grid))
        if not (self.omega > 0 and self.Omega > 0):
            raise ValueError("omega and Omega must be positive")
        if not self.g >= 0:
            raise ValueError("coupling g must be >= 0")
        if math.isnan(self.T) or self.T < 0:
            raise ValueError("temperature must be >= 0")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("excitation probability p must lie in [0, 1]")
        if int(self.fock_dim) != self.fock_dim or self.fock_dim < 2:
            raise ValueError("fock_dim must be an integer >= 2")
        ts = np.asarray(self.t_grid)
        if ts.size and (not np.all(np.isfinite(ts)) or np.any(np.diff(ts) < 0)):
            raise ValueError("time grid must be finite and ascending")

    @property
    def beta(self) -> float:
        return math.inf if self.T == 0 else 1.0 / self.T


def annihilation(n: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n, dtype=float)), k=1)


def build_rabi_hamiltonian(cfg: RabiConfig) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(H_total, H_env, H_sys)`` for ``omega a^dag a + Omega/2 sz + g (a + a^dag) sx``."""
    n = cfg.fock_dim
    a = annihilation(n)
    h_env = cfg.omega * (a.T @ a)
    h_sys = 0.5 * cfg.Omega * np.diag([-1.0, 1.0])
    sx = np.array([[0.0, 1.0], [1.0, 0.0]])
    h_total = (kron(h_sys, np.eye(n)) + kron(np.eye(2), h_env)
               + cfg.g * kron(sx, a + a.T))
    return h_total.astype(complex), h_env.astype(complex), h_sys.astype(complex)


def cavity_thermal_state(cfg: RabiConfig) -> np.ndarray:
    p, _ = gibbs_weights(cfg.omega * np.arange(cfg.fock_dim), cfg.beta)
    return np.diag(p).astype(complex)


def qubit_state(cfg: RabiConfig) -> np.ndarray:
    return np.diag([1.0 - cfg.p, cfg.p]).astype(complex)


def initial_state(cfg: RabiConfig) -> np.ndarray:
    return kron(qubit_state(cfg), cavity_thermal_state(cfg))


class RabiSimulator:
    """Evolves the initial product state with one shared eigendecomposition.

    The decomposition and initial state are computed once and only read
    afterwards, so :meth:`record` may be called from several threads.
    """

    def __init__(self, cfg: RabiConfig):
        self.cfg = cfg
        self.h_total, self.h_env, self.h_sys = build_rabi_hamiltonian(cfg)
        self.eig: EigenDecomposition = hermitian_eig(self.h_total)
        self.rho_s = qubit_state(cfg)
        self.rho_env = cavity_thermal_state(cfg)
        self.rho0 = kron(self.rho_s, self.rho_env)
        v = self.eig.eigenvectors
        self._rho0_eig = v.conj().T @ self.rho0 @ v
        self.env_model = BosonicMode(cfg.omega)

    def state(self, t: float) -> np.ndarray:
        lam = self.eig.eigenvalues
        v = self.eig.eigenvectors
        phase = np.exp(-1j * (lam[:, None] - lam[None, :]) * t)
        rho_eig = phase * self._rho0_eig
        return v @ rho_eig @ v.conj().T

    def record(self, t: float) -> ProcessRecord:
        return process_record(self.rho_s, self.rho_env, self.h_env, self.cfg.beta,
                              self.state(t), self.env_model, time=t)


def certify_truncation(cfg: RabiConfig, t: float, max_fock: int = MAX_FOCK,
                       tol: float = TRUNCATION_TOL) -> int:
    """Smallest ``N = fock_dim * 2^k <= max_fock / 2`` whose record at ``t`` matches ``2N``.

    Raises :class:`TruncationUnconverged` if ``Delta Q_E`` or ``Delta S_S``
    still move by more than ``tol`` when the reference reaches ``max_fock``.
    """
    n = cfg.fock_dim
    coarse = RabiSimulator(cfg).record(t)
    while 2 * n <= max_fock:
        fine = RabiSimulator(replace(cfg, fock_dim=2 * n)).record(t)
        dq = abs(fine.delta_q_env - coarse.delta_q_env)
        dss = abs(fine.delta_s_system - coarse.delta_s_system)
        if dq < tol and dss < tol:
            return n
        n, coarse = 2 * n, fine
    raise TruncationUnconverged(
        f"Fock truncation not converged to {tol:g} at t={t} with N up to {max_fock}")


def simulate_step(cfg: RabiConfig, t: float, certify: bool = True) -> ProcessRecord:
    if t < 0:
        raise ValueError("time must be >= 0")
    if certify:
        cfg = replace(cfg, fock_dim=certify_truncation(cfg, t))
    return RabiSimulator(cfg).record(t)


def sweep(cfg: RabiConfig, certify: bool = True) -> list[ProcessRecord]:
    """One record per time in ``cfg.t_grid``; truncation certified at the final time."""
    if not cfg.t_grid:
        return []
    if certify:
        cfg = replace(cfg, fock_dim=certify_truncation(cfg, cfg.t_grid[-1]))
    sim = RabiSimulator(cfg)
    return [sim.record(t) for t in cfg.t_grid]


CSV_COLUMNS = ("t", "dS_S", "dQ_E", "dS_E", "mutual_info", "sigma", "T_prime",
               "bound_modified", "bound_original")


def record_row(r: ProcessRecord) -> tuple[float, ...]:
    b = r.bound
    return (r.time, r.delta_s_system, r.delta_q_env, r.delta_s_env, r.mutual_info,
            r.entropy_production, r.reference_temperature,
            b.modified_bound if b else math.nan, b.original_bound if b else math.nan)


def records_table(records: Sequence[ProcessRecord]) -> list[tuple[float, ...]]:
    return [record_row(r) for r in records]
