"""Thermal states and information measures (natural units, entropies in nats)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidBeta
from .linalg import as_hermitian, hermitian_eig, partial_trace

ENTROPY_FLOOR = 1e-15
SUPPORT_TOL = 1e-13
SUPPORT_WEIGHT_TOL = 1e-10
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class ThermalStateInfo:
    state: np.ndarray
    log_partition: float
    energy: float
    entropy: float


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if math.isnan(beta) or beta < 0:
        raise InvalidBeta(f"inverse temperature must be >= 0, got {beta}")
    return beta


def ground_mask(levels: np.ndarray) -> np.ndarray:
    e0 = np.min(levels)
    return levels <= e0 + DEGENERACY_TOL * max(1.0, abs(e0))


def gibbs_weights(levels, beta: float) -> tuple[np.ndarray, float]:
    """Normalized Boltzmann weights and ``ln Z`` for a list of energies.

    Any real ``beta`` is accepted, including negative values and both
    infinities (uniform weight on the lowest or highest level set).
    The exponent is shifted by its maximum so nothing overflows.
    """
    levels = np.asarray(levels, dtype=float)
    if math.isnan(beta):
        raise InvalidBeta("inverse temperature is NaN")
    if math.isinf(beta):
        mask = ground_mask(levels) if beta > 0 else ground_mask(-levels)
        p = mask / np.count_nonzero(mask)
        edge = levels[mask][0]
        if edge == 0.0:
            log_z = math.log(np.count_nonzero(mask))
        else:
            log_z = -math.copysign(math.inf, beta * edge)
        return p, log_z
    x = -beta * levels
    shift = np.max(x)
    w = np.exp(x - shift)
    z = np.sum(w)
    return w / z, shift + math.log(z)


def _entropy_of_probs(p: np.ndarray) -> float:
    p = p[p > ENTROPY_FLOOR]
    return float(-np.sum(p * np.log(p)))


def thermal_state(h, beta: float) -> ThermalStateInfo:
    """Gibbs state ``exp(-beta h)/Z``; ``beta = inf`` gives the ground-space mixture."""
    beta = _check_beta(beta)
    w, v = hermitian_eig(h)
    p, log_z = gibbs_weights(w, beta)
    state = (v * p) @ v.conj().T
    return ThermalStateInfo(
        state=state,
        log_partition=log_z,
        energy=float(np.dot(p, w)),
        entropy=_entropy_of_probs(p),
    )


def von_neumann_entropy(rho) -> float:
    """``-tr(rho ln rho)``; eigenvalues below 1e-15 count as zero."""
    lam = np.linalg.eigvalsh(as_hermitian(rho))
    return _entropy_of_probs(lam)


def relative_entropy(rho, sigma) -> float:
    """Quantum relative entropy ``S(rho || sigma)``.

    Returns ``inf`` when ``rho`` has weight above 1e-10 along an eigendirection
    where ``sigma`` is below 1e-13.
    """
    rho = as_hermitian(rho)
    sigma = as_hermitian(sigma)
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"shapes {rho.shape} and {sigma.shape} differ")
    s, v = np.linalg.eigh(sigma)
    weights = np.real(np.einsum("ij,jk,ki->i", v.conj().T, rho, v))
    null = s < SUPPORT_TOL
    if np.any(weights[null] > SUPPORT_WEIGHT_TOL):
        return math.inf
    cross = float(np.sum(weights[~null] * np.log(s[~null])))
    return -von_neumann_entropy(rho) - cross


def relative_entropy_to_thermal(rho, h, beta: float) -> float:
    """``S(rho || exp(-beta h)/Z)`` using ``ln`` of the Gibbs state in closed form.

    Avoids underflow of tiny thermal populations at low temperature. At
    ``beta = inf`` the result is finite only if ``rho`` lives in the ground space.
    """
    beta = _check_beta(beta)
    rho = as_hermitian(rho)
    h = as_hermitian(h)
    if rho.shape != h.shape:
        raise DimensionMismatch(f"shapes {rho.shape} and {h.shape} differ")
    w, v = np.linalg.eigh(h)
    weights = np.real(np.einsum("ij,jk,ki->i", v.conj().T, rho, v))
    s_rho = von_neumann_entropy(rho)
    if math.isinf(beta):
        mask = ground_mask(w)
        if np.sum(weights[~mask]) > SUPPORT_WEIGHT_TOL:
            return math.inf
        return -s_rho + math.log(np.count_nonzero(mask))
    _, log_z = gibbs_weights(w, beta)
    return -s_rho + beta * float(np.dot(weights, w)) + log_z


def mutual_information(rho_joint, dims: tuple[int, int]) -> float:
    rho_s = partial_trace(rho_joint, dims, "S")
    rho_e = partial_trace(rho_joint, dims, "E")
    return (von_neumann_entropy(rho_s) + von_neumann_entropy(rho_e)
            - von_neumann_entropy(rho_joint))


def internal_energy(rho, h) -> float:
    rho = np.asarray(rho)
    h = np.asarray(h)
    if rho.shape != h.shape:
        raise DimensionMismatch(f"shapes {rho.shape} and {h.shape} differ")
    e = np.einsum("ij,ji->", h, rho)
    assert abs(e.imag) < 1e-10 * max(1.0, abs(e.real)), f"complex energy {e}"
    return float(e.real)


def nonequilibrium_free_energy(rho, h, T: float) -> float:
    """``tr(h rho) - T S(rho)`` with ``T`` the reference temperature."""
    if T < 0:
        raise ValueError(f"temperature must be >= 0, got {T}")
    u = internal_energy(rho, h)
    if T == 0:
        return u
    return u - T * von_neumann_entropy(rho)


def is_density_matrix(rho, tol: float = 1e-12) -> bool:
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return False
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        return False
    if abs(np.trace(rho) - 1.0) > tol:
        return False
    return bool(np.min(np.linalg.eigvalsh(rho)) >= -tol)
