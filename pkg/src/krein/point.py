"""Generalized point interactions for -d^2/dx^2 on the real line.

Boundary triple at the points a_1 < ... < a_N, with G = C^{2N} indexed as
(h'_1, h''_1, h'_2, h''_2, ...):

    Gamma_1 f = (f'(a-) - f'(a+),  f(a+) - f(a-))_k
    Gamma_2 f = ((f(a+) + f(a-)) / 2,  (f'(a-) + f'(a+)) / 2)_k

The reference extension Gamma_1 f = 0 is the free Laplacian with spectrum
[0, inf).  A point carries the connecting condition

    (f(a+), f'(a+)) = e^{i theta} [[alpha, beta], [gamma, delta]] (f(a-), f'(a-))

with real entries and alpha delta - beta gamma = 1.  A delta potential of
strength c is (alpha, beta, gamma, delta) = (1, 0, c, 1), a delta-prime
interaction of strength b is (1, b, 0, 1).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad_vec

from .core import (
    BoundaryModel,
    InSpectrumError,
    SpectralResult,
    correction_right,
    eigenvalue_scan,
    krein_matrix,
    root_threshold,
)
from ._numerics import sigma_min
from .linrel import ParamPair

__all__ = [
    "InteractionPoint",
    "PointModel",
    "BoundState",
    "sqrt_minus_z",
    "build_pair",
    "q_matrix",
    "q_derivative",
    "gamma_kernels",
    "gamma_apply",
    "gamma_gram",
    "free_green",
    "green_function",
    "resolve_apply",
    "bound_states",
]

UNIMODULAR_TOL = 1e-12
# kernels are integrated out to where they drop below this magnitude
TAIL_CUTOFF = 1e-12


@dataclass(frozen=True)
class InteractionPoint:
    position: float
    theta: float = 0.0
    alpha: float = 1.0
    beta: float = 0.0
    gamma: float = 0.0
    delta: float = 1.0

    def __post_init__(self):
        values = (self.position, self.theta, self.alpha, self.beta, self.gamma, self.delta)
        if not all(math.isfinite(v) for v in values):
            raise ValueError("interaction parameters must be finite real numbers")
        det = self.alpha * self.delta - self.beta * self.gamma
        if abs(det - 1.0) > UNIMODULAR_TOL * max(1.0, abs(self.alpha * self.delta)):
            raise ValueError(
                f"transfer matrix at x={self.position} violates unimodularity: "
                f"alpha*delta - beta*gamma = {det!r} (must be 1)"
            )
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta = {self.theta} outside [0, pi]")

    @classmethod
    def delta_potential(cls, position, strength):
        """f continuous, f'(a+) - f'(a-) = strength * f(a)."""
        return cls(position, gamma=strength)

    @classmethod
    def delta_prime(cls, position, strength):
        """f' continuous, f(a+) - f(a-) = strength * f'(a)."""
        return cls(position, beta=strength)

    @property
    def transfer_matrix(self):
        m = np.array([[self.alpha, self.beta], [self.gamma, self.delta]])
        return np.exp(1j * self.theta) * m


class PointModel(BoundaryModel):
    reference_spectrum_threshold = 0.0

    def __init__(self, points):
        points = tuple(points)
        if not points:
            raise ValueError("at least one interaction point required")
        positions = np.array([p.position for p in points], dtype=float)
        if np.any(np.diff(positions) <= 0):
            raise ValueError("interaction points must have strictly increasing positions")
        self.points = points
        self.positions = positions
        self.dim = 2 * len(points)

    @classmethod
    def deltas(cls, positions, strengths):
        return cls(InteractionPoint.delta_potential(a, c) for a, c in zip(positions, strengths))

    @property
    def min_gap(self):
        return float(np.min(np.diff(self.positions))) if len(self.points) > 1 else math.inf

    def q_at(self, z):
        return q_matrix(self, z)

    def gamma_gram(self, zeta, z):
        return gamma_gram(self, zeta, z)

    def __repr__(self):
        return f"PointModel({len(self.points)} points at {self.positions.tolist()})"


@dataclass
class BoundState:
    result: SpectralResult
    eigenfunctions: list  # callables x -> f(x), L2-normalized

    @property
    def eigenvalue(self):
        return self.result.eigenvalue


def sqrt_minus_z(z):
    """Principal root of -z; positive real part for z off [0, inf)."""
    z = complex(z)
    if z.imag == 0.0 and z.real >= 0.0:
        raise ValueError(f"z = {z.real} lies in the reference spectrum [0, inf)")
    return np.sqrt(-z)


def _point_blocks(p):
    e = np.exp(1j * p.theta)
    al, be, ga, de = p.alpha, p.beta, p.gamma, p.delta
    A = np.array([[1 + de * e, -ga * e], [-be * e, 1 + al * e]])
    B = 2 * np.array([[-ga * e, 1 - de * e], [al * e - 1, be * e]])
    return A, B


def build_pair(model):
    """Block-diagonal (A, B) encoding the connecting conditions of ``model``."""
    n = model.dim
    A = np.zeros((n, n), dtype=complex)
    B = np.zeros((n, n), dtype=complex)
    for k, p in enumerate(model.points):
        Ak, Bk = _point_blocks(p)
        A[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = Ak
        B[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = Bk
    return ParamPair(A, B)


def _distances(model):
    diff = model.positions[:, None] - model.positions[None, :]
    return np.abs(diff), np.sign(diff)


def q_matrix(model, z):
    kappa = sqrt_minus_z(z)
    d, s = _distances(model)
    ex = np.exp(-kappa * d) / 2
    N = len(model.points)
    Q = np.empty((2 * N, 2 * N), dtype=complex)
    Q[0::2, 0::2] = ex / kappa
    Q[0::2, 1::2] = ex * s
    Q[1::2, 0::2] = -ex * s
    Q[1::2, 1::2] = -ex * kappa
    return Q


def q_derivative(model, z):
    """dQ/dz; at real z < 0 it equals the Gram matrix gamma*(z) gamma(z)."""
    kappa = sqrt_minus_z(z)
    d, s = _distances(model)
    # d/dz [e^{-kappa d} g(kappa)] = -(1 / (2 kappa)) e^{-kappa d} (g' - d g)
    pre = -np.exp(-kappa * d) / (4 * kappa)
    N = len(model.points)
    dQ = np.empty((2 * N, 2 * N), dtype=complex)
    dQ[0::2, 0::2] = pre * (-1 / kappa**2 - d / kappa)
    dQ[0::2, 1::2] = pre * (-d * s)
    dQ[1::2, 0::2] = pre * (d * s)
    dQ[1::2, 1::2] = pre * (-1 + d * kappa)
    return dQ


def gamma_kernels(model, z, x, side=0):
    """Values gamma(z) e_i at x, shape x.shape + (2N,).

    ``side`` picks the one-sided limit at an interaction point: -1 for a-,
    +1 for a+, 0 for the mean (sgn(0) = 0).
    """
    kappa = sqrt_minus_z(z)
    x = np.asarray(x, dtype=float)
    rel = x[..., None] - model.positions
    s = np.sign(rel)
    s = np.where(rel == 0, float(side), s)
    ex = np.exp(-kappa * np.abs(rel)) / 2
    out = np.empty(x.shape + (model.dim,), dtype=complex)
    out[..., 0::2] = ex / kappa
    out[..., 1::2] = ex * s
    return out


def gamma_apply(model, h, z, x, side=0):
    """g(x) = (gamma(z) h)(x), the solution of -g'' = z g with Gamma_1 g = h."""
    h = np.asarray(h, dtype=complex)
    if h.shape != (model.dim,):
        raise ValueError(f"h must have {model.dim} components, got shape {h.shape}")
    return gamma_kernels(model, z, x, side) @ h


def _tail_length(kappa):
    scale = max(1.0, 1.0 / abs(kappa))
    return (math.log(scale / TAIL_CUTOFF)) / kappa.real


def _segments(breaks, left, right):
    pts = [left] + sorted(breaks) + [right]
    return [(a, b) for a, b in zip(pts[:-1], pts[1:]) if b > a]


def gamma_gram(model, zeta, z, epsrel=1e-10):
    """Matrix of L2 inner products <gamma(zeta) e_i, gamma(z) e_j> by quadrature."""
    k1, k2 = sqrt_minus_z(zeta), sqrt_minus_z(z)
    tail = max(_tail_length(k1), _tail_length(k2))
    lo, hi = model.positions[0] - tail, model.positions[-1] + tail

    def integrand(x):
        g1 = gamma_kernels(model, zeta, x)
        g2 = gamma_kernels(model, z, x)
        return np.outer(g1.conj(), g2)

    total = np.zeros((model.dim, model.dim), dtype=complex)
    for a, b in _segments(list(model.positions), lo, hi):
        val, err = quad_vec(integrand, a, b, epsrel=epsrel, epsabs=1e-14, norm="max")
        total += val
    return total


def free_green(x, y, z):
    """Kernel e^{-sqrt(-z)|x-y|} / (2 sqrt(-z)) of the free resolvent."""
    kappa = sqrt_minus_z(z)
    diff = np.abs(np.asarray(x, dtype=float) - np.asarray(y, dtype=float))
    return np.exp(-kappa * diff) / (2 * kappa)


def _resolvent_correction(model, pair, z, rtol):
    Q = model.q_at(z)
    K = krein_matrix(pair, Q)
    value = sigma_min(K)
    threshold = root_threshold(K, rtol)
    if value <= threshold:
        raise InSpectrumError(
            f"z = {z} is at an eigenvalue of the extension: "
            f"indicator {value:.3e} <= {threshold:.3e}"
        )
    return correction_right(pair, Q)


def green_function(model, pair, x, y, z, rtol=1e-6):
    """Integral kernel G(x, y; z) of the resolvent of the extension (A, B).

    ``x`` may be an array; ``y`` is a scalar.
    """
    C = _resolvent_correction(model, pair, z, rtol)
    gx = gamma_kernels(model, z, x)
    gy = gamma_kernels(model, z, y)
    return free_green(x, y, z) - gx @ C @ gy


def resolve_apply(model, pair, f, z, x, epsrel=1e-9, rtol=1e-6):
    """((H - z)^{-1} f)(x) for the extension (A, B).

    Evaluated as R0 f - gamma(z) C (gamma*(conj z) f), each term by
    adaptive quadrature over the real line split at x and at the points.
    """
    C = _resolvent_correction(model, pair, z, rtol)
    x = float(x)

    def integrand(y):
        fy = complex(f(y))
        return np.concatenate(([free_green(x, y, z)], gamma_kernels(model, z, y))) * fy

    total = np.zeros(model.dim + 1, dtype=complex)
    for a, b in _segments(set(model.positions) | {x}, -np.inf, np.inf):
        val, _ = quad_vec(integrand, a, b, epsrel=epsrel, epsabs=1e-13, norm="max")
        total += val
    free_part, coeffs = total[0], total[1:]
    return complex(free_part - gamma_kernels(model, z, x) @ C @ coeffs)


def _normalized_kernel(model, z, X):
    gram = X.conj().T @ q_derivative(model, z) @ X
    gram = (gram + gram.conj().T) / 2
    R = np.linalg.cholesky(gram).conj().T  # gram = R^H R
    Xn = np.linalg.solve(R.T, X.T).T  # X R^{-1}
    for j in range(Xn.shape[1]):
        col = Xn[:, j]
        big = col[np.argmax(np.abs(col))]
        Xn[:, j] = col * (abs(big) / big)
    return Xn


def _eigenfunction(model, z, xi):
    def f(x, side=0):
        return gamma_apply(model, xi, z, x, side)

    f.coefficients = xi
    f.eigenvalue = z
    return f


def bound_states(model, pair, z_lo, z_hi, grid=2000, tol=1e-12):
    """Negative eigenvalues in [z_lo, z_hi] with L2-normalized eigenfunctions."""
    if z_hi >= 0:
        raise ValueError("bound states are searched below 0; z_hi must be negative")
    states = []
    for res in eigenvalue_scan(model, pair, z_lo, z_hi, grid=grid, tol=tol):
        Xn = _normalized_kernel(model, res.eigenvalue, res.kernel_vectors)
        funcs = [_eigenfunction(model, res.eigenvalue, Xn[:, j]) for j in range(Xn.shape[1])]
        states.append(BoundState(res, funcs))
    return states
