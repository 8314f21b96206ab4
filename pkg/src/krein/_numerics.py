"""Shared numerical tolerances and small linear-algebra helpers."""

import numpy as np

# singular values below RANK_RTOL * max(1, sigma_max) count as zero
RANK_RTOL = 1e-10
# relative tolerance for matrix identities (AB^H = BA^H, unitarity, ...)
IDENTITY_RTOL = 1e-10
# a root of the spectral indicator is accepted below ROOT_RTOL * (1 + ||BQ - A||)
ROOT_RTOL = 1e-6


def as_matrix(x, name="matrix"):
    """Return ``x`` as a finite 2-D complex array."""
    arr = np.atleast_2d(np.asarray(x, dtype=complex))
    if arr.ndim != 2:
        raise ValueError(f"{name} must be two-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf entries")
    return arr


def rank_cutoff(s, rtol=RANK_RTOL):
    smax = float(s[0]) if len(s) else 0.0
    return rtol * max(1.0, smax)


def numerical_rank(s, rtol=RANK_RTOL):
    return int(np.count_nonzero(s > rank_cutoff(s, rtol)))


def sigma_min(m):
    """Smallest singular value of a square matrix (0 for an empty one)."""
    if m.size == 0:
        return 0.0
    return float(np.linalg.svd(m, compute_uv=False)[-1])


def null_space(m, rtol=RANK_RTOL):
    """Orthonormal basis (as columns) of the kernel of ``m``."""
    rows, cols = m.shape
    if rows == 0:
        return np.eye(cols, dtype=complex)
    _, s, vh = np.linalg.svd(m)
    r = numerical_rank(s, rtol)
    return vh[r:].conj().T


def range_basis(m, rtol=RANK_RTOL):
    """Orthonormal basis (as columns) of the column space of ``m``."""
    if m.shape[1] == 0:
        return np.zeros((m.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    return u[:, : numerical_rank(s, rtol)]
