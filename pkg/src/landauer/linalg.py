"""Dense complex linear algebra for small quantum systems.

Matrices are plain ``numpy`` arrays. Joint system-environment operators are
always ordered system (x) environment.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotHermitian

HERMITIAN_TOL = 1e-10
JACOBI_MAX_SWEEPS = 100
JACOBI_REL_TOL = 1e-12


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_hermitian(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``(m + m^dagger)/2`` after checking ``m`` is Hermitian to ``tol``.

    Asymmetry below ``tol`` (max-norm) is treated as round-off and removed.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    asym = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if asym > tol:
        raise NotHermitian(f"matrix asymmetry {asym:.3e} exceeds {tol:.0e}")
    return 0.5 * (m + m.conj().T)


def hermitian_eig(m, method: str = "lapack") -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    ``method="lapack"`` uses ``numpy.linalg.eigh``; ``method="jacobi"`` runs
    the cyclic Jacobi sweep in :func:`jacobi_eigh`.
    """
    h = as_hermitian(m)
    d = np.real(np.diag(h))
    if np.count_nonzero(h - np.diag(d)) == 0:
        # exactly diagonal: keep the standard basis even inside degenerate blocks
        order = np.argsort(d, kind="stable")
        return EigenDecomposition(d[order], np.eye(h.shape[0], dtype=complex)[:, order])
    if method == "lapack":
        w, v = np.linalg.eigh(h)
    elif method == "jacobi":
        w, v = jacobi_eigh(h)
    else:
        raise ValueError(f"unknown eigen method {method!r}")
    return EigenDecomposition(np.asarray(w, dtype=float), v)


def jacobi_eigh(h: np.ndarray, max_sweeps: int = JACOBI_MAX_SWEEPS,
                rel_tol: float = JACOBI_REL_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigensolver for a complex Hermitian matrix.

    Each rotation annihilates one off-diagonal pair. Sweeps stop when the
    off-diagonal Frobenius norm drops below ``rel_tol * ||h||_F``.
    """
    a = np.array(h, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    if n < 2 or scale == 0.0:
        w = np.real(np.diag(a)).copy()
        order = np.argsort(w, kind="stable")
        return w[order], v[:, order]
    threshold = rel_tol * scale

    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                # columns p, q of a and v: x J with J = [[c, s*phase], [-s*conj(phase), c]]
                sp = s * phase
                sq = s * np.conj(phase)
                ap = a[:, p].copy()
                aq = a[:, q]
                a[:, p] = c * ap - sq * aq
                a[:, q] = sp * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :]
                a[p, :] = c * ap - np.conj(sq) * aq
                a[q, :] = np.conj(sp) * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - sq * vq
                v[:, q] = sp * vp + c * vq
    else:
        raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")

    w = np.real(np.diag(a)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def unitary_from_hamiltonian(h, t: float, eig: EigenDecomposition | None = None) -> np.ndarray:
    """``exp(-i h t)`` built from the eigendecomposition of ``h``.

    A precomputed ``eig`` may be passed to skip the diagonalization.
    """
    if not np.isfinite(t):
        raise ValueError("time must be finite")
    if eig is None:
        eig = hermitian_eig(h)
    v = eig.eigenvectors
    return (v * np.exp(-1j * eig.eigenvalues * t)) @ v.conj().T


def kron(a, b) -> np.ndarray:
    return np.kron(np.asarray(a), np.asarray(b))


def partial_trace(rho, dims: tuple[int, int], keep: str) -> np.ndarray:
    """Reduced state of a bipartite operator ordered system (x) environment.

    ``keep`` is ``"S"`` (trace out the environment) or ``"E"`` (trace out the
    system).
    """
    rho = np.asarray(rho)
    ds, de = dims
    if rho.shape != (ds * de, ds * de):
        raise DimensionMismatch(f"operator shape {rho.shape} does not match dims {dims}")
    r = rho.reshape(ds, de, ds, de)
    if keep == "S":
        return np.einsum("ikjk->ij", r)
    if keep == "E":
        return np.einsum("kikj->ij", r)
    raise ValueError(f"keep must be 'S' or 'E', got {keep!r}")
