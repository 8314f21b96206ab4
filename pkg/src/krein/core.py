"""Krein resolvent formula over a finite-dimensional boundary space.

A concrete model supplies the Q-function Q(z) (and, optionally, the Gram
matrix of its Gamma-field).  For boundary conditions (A, B) the resolvent
of the extension differs from the reference resolvent by
``gamma(z) C(z) gamma*(conj z)`` with

    C(z) = B^H (Q(z) B^H - A^H)^{-1} = (B Q(z) - A)^{-1} B,

and a point z of the reference resolvent set is an eigenvalue iff
B Q(z) - A has a kernel.  Spectra are located by scanning the smallest
singular value of B Q(z) - A and refining its local minima.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._numerics import RANK_RTOL, ROOT_RTOL, as_matrix, rank_cutoff, sigma_min

__all__ = [
    "BoundaryModel",
    "InSpectrumError",
    "SpectralResult",
    "correction_left",
    "correction_right",
    "corrections_consistent",
    "krein_matrix",
    "spectral_indicator",
    "root_threshold",
    "golden_section",
    "scan_indicator",
    "eigenvalue_scan",
    "eigenspace",
    "q_identity_residual",
]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class InSpectrumError(ValueError):
    """Raised when z lies (numerically) in the spectrum of the extension."""


class BoundaryModel:
    """Interface of a model with a boundary triple over C^dim.

    Subclasses implement ``q_at`` and set ``dim`` and
    ``reference_spectrum_threshold`` (every real z below it lies in the
    resolvent set of the reference extension H^0).  ``gamma_gram`` is optional.
    ``q_at`` must be free of side effects.
    """

    dim: int
    reference_spectrum_threshold: float = 0.0

    def q_at(self, z):
        raise NotImplementedError

    def gamma_gram(self, zeta, z):
        """Gram matrix gamma*(zeta) gamma(z)."""
        raise NotImplementedError(f"{type(self).__name__} does not provide gamma_gram")


@dataclass
class SpectralResult:
    eigenvalue: float
    kernel_vectors: np.ndarray  # columns are orthonormal boundary vectors
    indicator_residual: float

    @property
    def multiplicity(self):
        return self.kernel_vectors.shape[1]


def krein_matrix(pair, Q):
    """B Q - A."""
    Q = as_matrix(Q, "Q")
    return pair.B @ Q - pair.A


def _check_invertible(m, what):
    s = np.linalg.svd(m, compute_uv=False)
    if s[-1] <= rank_cutoff(s):
        raise InSpectrumError(
            f"{what} is singular (sigma_min = {s[-1]:.3e}); z is in the spectrum"
        )


def correction_left(pair, Q):
    """C = B^H (Q B^H - A^H)^{-1}."""
    Q = as_matrix(Q, "Q")
    Bh = pair.B.conj().T
    K = Q @ Bh - pair.A.conj().T
    _check_invertible(K, "Q B^H - A^H")
    # C K = B^H  <=>  K^T C^T = (B^H)^T
    return np.linalg.solve(K.T, Bh.T).T


def correction_right(pair, Q, return_residual=False):
    """C = (B Q - A)^{-1} B.

    If B Q - A is singular the equation (B Q - A) C = B is solved in the
    least-squares sense, which is the weak form valid for parameterizations
    that are not normalized; the result is accepted only when the residual
    ||(B Q - A) C - B|| is negligible, otherwise ``InSpectrumError`` is raised.
    """
    K = krein_matrix(pair, Q)
    s = np.linalg.svd(K, compute_uv=False)
    scale = max(1.0, float(s[0]) if len(s) else 0.0)
    if len(s) == 0 or s[-1] > rank_cutoff(s):
        C = np.linalg.solve(K, pair.B)
    else:
        C = np.linalg.pinv(K, rcond=RANK_RTOL) @ pair.B
    residual = float(np.linalg.norm(K @ C - pair.B, 2))
    if residual > 1e-8 * scale * max(1.0, np.linalg.norm(pair.B, 2)):
        raise InSpectrumError(
            f"B Q - A is not invertible on the range of B (residual {residual:.3e}); "
            "z is in the spectrum"
        )
    return (C, residual) if return_residual else C


def corrections_consistent(pair, Q):
    """||C_left - C_right||; zero up to rounding for normalized pairs."""
    return float(np.linalg.norm(correction_left(pair, Q) - correction_right(pair, Q), 2))


def spectral_indicator(pair, Q):
    """Smallest singular value of B Q - A; it vanishes exactly at eigenvalues."""
    return sigma_min(krein_matrix(pair, Q))


def root_threshold(m, rtol=ROOT_RTOL):
    return rtol * (1.0 + np.linalg.norm(m, 2))


def golden_section(f, a, b, tol):
    """Minimize a unimodal ``f`` on [a, b] down to an interval of width ``tol``."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    if fc <= fd:
        return c, fc
    return d, fd


def scan_indicator(f, z_lo, z_hi, grid, tol):
    """Sample ``f`` on a uniform grid and refine every local minimum.

    Returns a list of ``(z, f(z))`` for the refined minima, ascending in z.
    Plateaus (equal neighbouring samples) do not count as minima.
    """
    if not z_lo < z_hi:
        raise ValueError(f"empty interval [{z_lo}, {z_hi}]")
    if grid < 2:
        raise ValueError("grid must have at least two points")
    zs = np.linspace(z_lo, z_hi, grid)
    vals = np.array([f(z) for z in zs])
    brackets = []
    if vals[0] < vals[1]:
        brackets.append((zs[0], zs[1]))
    for i in range(1, grid - 1):
        if vals[i] < vals[i - 1] and vals[i] <= vals[i + 1]:
            brackets.append((zs[i - 1], zs[i + 1]))
    if vals[-1] < vals[-2]:
        brackets.append((zs[-2], zs[-1]))
    minima = []
    for a, b in brackets:
        z, fz = golden_section(f, a, b, tol)
        if minima and abs(z - minima[-1][0]) <= 10 * tol:
            if fz < minima[-1][1]:
                minima[-1] = (z, fz)
            continue
        minima.append((z, fz))
    return minima


def _kernel(m, threshold):
    _, s, vh = np.linalg.svd(m)
    keep = s <= threshold
    return vh[keep].conj().T


def _check_range(model, z_lo, z_hi):
    if not z_lo < z_hi:
        raise ValueError(f"empty interval [{z_lo}, {z_hi}]")
    if z_hi >= model.reference_spectrum_threshold:
        raise ValueError(
            f"interval [{z_lo}, {z_hi}] touches the reference spectrum "
            f"(threshold {model.reference_spectrum_threshold})"
        )


def eigenvalue_scan(model, pair, z_lo, z_hi, grid=2000, tol=1e-12, rtol=ROOT_RTOL):
    """Eigenvalues of the extension (A, B) in [z_lo, z_hi].

    A refined minimum is reported when the indicator is below
    ``rtol * (1 + ||B Q - A||)``; its kernel vectors are the right singular
    vectors with singular value at most ten times that threshold.  Roots
    closer than the grid spacing may merge.
    """
    _check_range(model, z_lo, z_hi)
    if pair.n != model.dim:
        raise ValueError(f"pair has size {pair.n}, model boundary space has {model.dim}")

    def indicator(z):
        return spectral_indicator(pair, model.q_at(z))

    results = []
    for z, value in scan_indicator(indicator, z_lo, z_hi, grid, tol):
        K = krein_matrix(pair, model.q_at(z))
        threshold = root_threshold(K, rtol)
        if value <= threshold:
            results.append(SpectralResult(float(z), _kernel(K, 10 * threshold), value))
    return results


def eigenspace(model, pair, z, rtol=ROOT_RTOL):
    """Orthonormal basis (columns) of ker(B Q(z) - A) at an eigenvalue z."""
    K = krein_matrix(pair, model.q_at(z))
    threshold = root_threshold(K, rtol)
    value = sigma_min(K)
    if value > threshold:
        raise InSpectrumError(
            f"z = {z} is not an eigenvalue: indicator {value:.3e} > {threshold:.3e}"
        )
    return _kernel(K, 10 * threshold)


def q_identity_residual(model, z, zeta):
    """||Q(z) - Q(zeta)^H - (z - conj(zeta)) gamma*(zeta) gamma(z)||."""
    gram = model.gamma_gram(zeta, z)
    lhs = model.q_at(z) - model.q_at(zeta).conj().T
    return float(np.linalg.norm(lhs - (z - np.conj(zeta)) * gram, 2))
