"""PSD matrix helpers used by the generic pipeline.

The oracle backends in :mod:`funcord.oracles` deliberately avoid these
helpers and carry their own pseudo-inverse and projection code, so that
differential tests compare genuinely independent numerical routes.
"""
from __future__ import annotations

import numpy as np

# Relative eigenvalue/singular-value cut shared by every rank decision in
# the pipeline.  Keeping one constant prevents two call sites from making
# conflicting rank calls on the same degenerate input.
RANK_RTOL = 1e-10


def hermitize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)


def psd_eig(m: np.ndarray):
    """Eigendecomposition of the Hermitian part, eigenvalues ascending."""
    if m.size == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=complex)
    return np.linalg.eigh(hermitize(m))


def rank_keep(lam: np.ndarray, rtol: float = RANK_RTOL) -> np.ndarray:
    """Boolean mask of eigenvalues counted as nonzero (relative cut)."""
    if lam.size == 0:
        return np.zeros(0, dtype=bool)
    lam_max = float(lam.max())
    if lam_max <= 0.0:
        return np.zeros(lam.shape, dtype=bool)
    return lam > rtol * lam_max


def pinv_psd(m: np.ndarray) -> np.ndarray:
    lam, vec = psd_eig(m)
    keep = rank_keep(lam)
    if not keep.any():
        return np.zeros_like(np.asarray(m, dtype=complex))
    vk = vec[:, keep]
    return (vk / lam[keep]) @ vk.conj().T


def sqrt_psd(m: np.ndarray) -> np.ndarray:
    lam, vec = psd_eig(m)
    lam = np.clip(lam, 0.0, None)
    return (vec * np.sqrt(lam)) @ vec.conj().T


def pinv_sqrt_psd(m: np.ndarray) -> np.ndarray:
    """Pseudo-inverse square root, zero on the numerical kernel."""
    lam, vec = psd_eig(m)
    keep = rank_keep(lam)
    if not keep.any():
        return np.zeros_like(np.asarray(m, dtype=complex))
    vk = vec[:, keep]
    return (vk / np.sqrt(lam[keep])) @ vk.conj().T


def range_projector(m: np.ndarray) -> np.ndarray:
    lam, vec = psd_eig(m)
    keep = rank_keep(lam)
    vk = vec[:, keep]
    return vk @ vk.conj().T


def orth_columns(cols: np.ndarray, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal basis of the column span, via SVD with a relative cut."""
    cols = np.asarray(cols, dtype=complex)
    if cols.size == 0:
        return np.zeros((cols.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(cols, full_matrices=False)
    if s.size == 0 or s[0] <= 0.0:
        return np.zeros((cols.shape[0], 0), dtype=complex)
    return u[:, s > rtol * s[0]]
