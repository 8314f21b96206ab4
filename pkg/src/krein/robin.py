"""Half-plane Laplacian with Robin / mixed boundary conditions.

The boundary condition a f + b df/dy = 0 on {y = 0} (y the inward normal
coordinate) is studied through the boundary operator

    u -> a u - b Lambda(z) u,   Lambda(z) = (-d^2/dx^2 - z)^{1/2},

whose kernel is nontrivial exactly when z < 0 is an eigenvalue.  The
boundary line is periodized with period P and sampled on M points, so
Lambda(z) becomes the Fourier multiplier sqrt(k_j^2 - z) with
k_j = 2 pi j / P, j = -M/2, ..., M/2 - 1.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import circulant

from ._numerics import ROOT_RTOL, sigma_min
from .core import root_threshold, scan_indicator
from .linrel import ParamPair

__all__ = [
    "RobinProblem",
    "RobinBoundState",
    "lambda_multiplier",
    "wavenumbers",
    "multiplier_matrix",
    "boundary_operator",
    "robin_spectral_indicator",
    "robin_bound_states",
    "robin_pair",
    "robin_q",
]


@dataclass(frozen=True, eq=False)
class RobinProblem:
    period: float
    a_samples: np.ndarray
    b_samples: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a_samples, dtype=float).ravel()
        b = np.asarray(self.b_samples, dtype=float).ravel()
        if a.shape != b.shape:
            raise ValueError("a and b must be sampled on the same grid")
        M = a.size
        if M < 2 or M & (M - 1):
            raise ValueError(f"grid size must be a power of two, got {M}")
        if not (math.isfinite(self.period) and self.period > 0):
            raise ValueError(f"period must be positive, got {self.period}")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("coefficient samples must be finite")
        if np.any(np.abs(a) + np.abs(b) == 0):
            raise ValueError("|a| + |b| must be nonzero at every sample")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a_samples", a)
        object.__setattr__(self, "b_samples", b)

    @property
    def grid_size(self):
        return self.a_samples.size

    @property
    def nodes(self):
        """Sample positions x_i = -P/2 + i P / M."""
        M = self.grid_size
        return -self.period / 2 + self.period * np.arange(M) / M

    @classmethod
    def constant(cls, period, grid_size, a, b):
        return cls(period, np.full(grid_size, float(a)), np.full(grid_size, float(b)))

    @classmethod
    def from_functions(cls, period, grid_size, a, b):
        """Sample callables ``a(x)``, ``b(x)`` at the grid nodes."""
        x = -period / 2 + period * np.arange(grid_size) / grid_size
        return cls(period, np.broadcast_to(a(x), x.shape), np.broadcast_to(b(x), x.shape))

    @classmethod
    def piecewise(cls, period, grid_size, pieces, default=(1.0, 0.0)):
        """Coefficients constant on half-open intervals.

        ``pieces`` is a sequence of ``(start, stop, a, b)``; nodes outside all
        intervals get ``default`` = (a, b), i.e. Dirichlet by default.
        """
        x = -period / 2 + period * np.arange(grid_size) / grid_size
        a = np.full(grid_size, float(default[0]))
        b = np.full(grid_size, float(default[1]))
        for start, stop, av, bv in pieces:
            mask = (x >= start) & (x < stop)
            a[mask] = av
            b[mask] = bv
        return cls(period, a, b)


@dataclass
class RobinBoundState:
    eigenvalue: float
    kernel_vectors: np.ndarray  # columns: boundary traces u on the grid
    indicator_residual: float

    @property
    def multiplicity(self):
        return self.kernel_vectors.shape[1]


def lambda_multiplier(z, k):
    """sqrt(k^2 - z), the symbol of Lambda(z); requires z < 0."""
    if not z < 0:
        raise ValueError(f"Lambda(z) needs z < 0, got {z}")
    return np.sqrt(np.square(k) - z)


def wavenumbers(period, grid_size):
    return 2 * np.pi * np.fft.fftfreq(grid_size, d=period / grid_size)


def multiplier_matrix(period, grid_size, z, power=1.0):
    """Lambda(z)^power in the position basis (real symmetric circulant)."""
    symbol = lambda_multiplier(z, wavenumbers(period, grid_size)) ** power
    return circulant(np.fft.ifft(symbol).real)


def boundary_operator(problem, z):
    """Matrix of u -> a u - b Lambda(z) u on the boundary grid."""
    lam = multiplier_matrix(problem.period, problem.grid_size, z)
    return np.diag(problem.a_samples) - problem.b_samples[:, None] * lam


def robin_spectral_indicator(problem, z):
    return sigma_min(boundary_operator(problem, z))


def robin_bound_states(problem, z_lo, z_hi, grid=400, tol=1e-12, rtol=ROOT_RTOL):
    """Eigenvalues in [z_lo, z_hi] (z_hi < 0) with boundary traces spanning the kernel."""
    if z_hi >= 0:
        raise ValueError("z_hi must be negative: [0, inf) is the Dirichlet spectrum")
    states = []
    for z, value in scan_indicator(
        lambda z: robin_spectral_indicator(problem, z), z_lo, z_hi, grid, tol
    ):
        K = boundary_operator(problem, z)
        threshold = root_threshold(K, rtol)
        if value <= threshold:
            _, s, vh = np.linalg.svd(K)
            kernel = vh[s <= 10 * threshold].conj().T
            states.append(RobinBoundState(float(z), kernel, value))
    return states


def robin_pair(problem, lam=-1.0):
    """Discrete boundary-triple pair for a f + b df/dy = 0 at reference point lam < 0.

    A = L^{-3/2} (b L - a) L^{1/2} and B = L^{-3/2} b L^{-1/2} with
    L = Lambda(lam).  Every finite grid gives a normalized pair.
    """
    P, M = problem.period, problem.grid_size
    L = multiplier_matrix(P, M, lam)
    L_m32 = multiplier_matrix(P, M, lam, -1.5)
    L_p12 = multiplier_matrix(P, M, lam, 0.5)
    L_m12 = multiplier_matrix(P, M, lam, -0.5)
    a = np.diag(problem.a_samples)
    b = np.diag(problem.b_samples)
    A = L_m32 @ (b @ L - a) @ L_p12
    B = L_m32 @ b @ L_m12
    return ParamPair(A, B)


def robin_q(problem, z, lam=-1.0):
    """Q(z) = (Lambda(lam) - Lambda(z)) Lambda(lam) for the same triple."""
    P, M = problem.period, problem.grid_size
    k = wavenumbers(P, M)
    symbol = (lambda_multiplier(lam, k) - lambda_multiplier(z, k)) * lambda_multiplier(lam, k)
    return circulant(np.fft.ifft(symbol).real)
