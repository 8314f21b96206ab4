"""Linear relations on G = C^n and their parameterization by pairs (A, B).

A linear relation is a subspace of G (+) G.  It is stored through an
orthonormal basis whose columns are 2n-vectors: the first n rows hold the
x1-components and the last n rows the x2-components.  A pair (A, B) of
n x n matrices encodes the relation {(x1, x2) : A x1 = B x2}, i.e. the
boundary condition A Gamma_1 phi = B Gamma_2 phi.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

import numpy as np

from ._numerics import (
    IDENTITY_RTOL,
    RANK_RTOL,
    as_matrix,
    null_space,
    range_basis,
    rank_cutoff,
)

__all__ = [
    "LinearRelation",
    "ParamPair",
    "PairCheck",
    "relation_from_span",
    "relation_from_pair",
    "relation_from_normalized_range",
    "adjoint_relation",
    "symplectic_form",
    "is_symmetric",
    "is_selfadjoint",
    "mab_matrix",
    "check_pair",
    "is_normalized",
    "cayley_pair",
    "cayley_transform",
    "normalize_pair",
    "recover_denormalizer",
    "arnold_projection",
    "rotate_relation",
    "graph_operator",
    "relations_equal",
    "projector",
]

# arnold_projection enumerates all 2^n coordinate subspaces
MAX_ARNOLD_DIM = 16


@dataclass(frozen=True, eq=False)
class LinearRelation:
    n: int
    basis: np.ndarray

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=complex)
        if basis.size == 0:
            basis = np.zeros((2 * self.n, 0), dtype=complex)
        basis = as_matrix(basis, "basis")
        if basis.shape[0] != 2 * self.n:
            raise ValueError(f"basis must have {2 * self.n} rows, got {basis.shape[0]}")
        m = basis.shape[1]
        if m > 2 * self.n:
            raise ValueError(f"a relation on C^{self.n} has dimension at most {2 * self.n}")
        gram_err = np.linalg.norm(basis.conj().T @ basis - np.eye(m)) if m else 0.0
        if gram_err > 1e-12 * max(1, m):
            raise ValueError(f"basis columns are not orthonormal (error {gram_err:.2e})")
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self):
        return self.basis.shape[1]

    @property
    def x1(self):
        return self.basis[: self.n]

    @property
    def x2(self):
        return self.basis[self.n :]

    def __repr__(self):
        return f"LinearRelation(n={self.n}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class ParamPair:
    """Boundary-condition pair (A, B) for ``A Gamma_1 phi = B Gamma_2 phi``."""

    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        A = as_matrix(self.A, "A")
        B = as_matrix(self.B, "B")
        if A.shape != B.shape or A.shape[0] != A.shape[1]:
            raise ValueError(
                f"A and B must be square of equal size, got {A.shape} and {B.shape}"
            )
        A.setflags(write=False)
        B.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def n(self):
        return self.A.shape[0]

    def left_multiply(self, L):
        """The pair (LA, LB); it describes the same relation when L is invertible."""
        L = as_matrix(L, "L")
        return ParamPair(L @ self.A, L @ self.B)


class PairCheck(NamedTuple):
    bg1: bool
    bg2: bool

    @property
    def selfadjoint(self):
        return self.bg1 and self.bg2


def relation_from_span(vectors, n=None, rtol=RANK_RTOL):
    """Relation spanned by a list of 2n-component vectors.

    ``n`` is required when ``vectors`` is empty; otherwise it is inferred and,
    if given, checked.
    """
    vecs = [np.asarray(v, dtype=complex).ravel() for v in vectors]
    lengths = {len(v) for v in vecs}
    if len(lengths) > 1:
        raise ValueError(f"vectors have different lengths: {sorted(lengths)}")
    if vecs:
        (length,) = lengths
        if length % 2:
            raise ValueError(f"vector length {length} is odd; expected 2n")
        if n is not None and length != 2 * n:
            raise ValueError(f"vector length {length} does not match n={n}")
        n = length // 2
    elif n is None:
        raise ValueError("n must be given for an empty span")
    if not vecs:
        return LinearRelation(n, np.zeros((2 * n, 0), dtype=complex))
    return LinearRelation(n, range_basis(np.column_stack(vecs), rtol))


def relation_from_pair(pair, rtol=RANK_RTOL):
    """The relation {(x1, x2) : A x1 = B x2}, the kernel of [A | -B]."""
    return LinearRelation(pair.n, null_space(np.hstack([pair.A, -pair.B]), rtol))


def relation_from_normalized_range(pair, rtol=RANK_RTOL):
    """The relation {(B^H u, A^H u) : u in G} for a normalized pair."""
    if not is_normalized(pair, rtol):
        raise ValueError("pair is not normalized: M^{A,B} is singular")
    stacked = np.vstack([pair.B.conj().T, pair.A.conj().T])
    return LinearRelation(pair.n, range_basis(stacked, rtol))


def _rotate(basis, n):
    # (x1, x2) -> (x2, -x1); the adjoint is the orthogonal complement of the image
    return np.vstack([basis[n:], -basis[:n]])


def adjoint_relation(rel, rtol=RANK_RTOL):
    if rel.dim == 0:
        return LinearRelation(rel.n, np.eye(2 * rel.n, dtype=complex))
    rotated = _rotate(rel.basis, rel.n)
    return LinearRelation(rel.n, null_space(rotated.conj().T, rtol))


def symplectic_form(p, q, n):
    """[(p1, q1), (p2, q2)] = <p1, q2> - <p2, q1> for 2n-vectors p, q.

    Both arguments may also be 2n x k matrices; the result is then the k x k
    matrix of pairwise values.
    """
    p = np.asarray(p, dtype=complex)
    q = np.asarray(q, dtype=complex)
    return p[:n].conj().T @ q[n:] - p[n:].conj().T @ q[:n]


def is_symmetric(rel, tol=IDENTITY_RTOL):
    if rel.dim == 0:
        return True
    omega = symplectic_form(rel.basis, rel.basis, rel.n)
    return bool(np.linalg.norm(omega) <= tol * max(1, rel.dim))


def is_selfadjoint(rel, tol=IDENTITY_RTOL):
    return rel.dim == rel.n and is_symmetric(rel, tol)


def mab_matrix(pair):
    """The 2n x 2n block matrix [[A, -B], [B, A]]."""
    A, B = pair.A, pair.B
    return np.block([[A, -B], [B, A]])


def _pair_scale(pair):
    return max(1.0, np.linalg.norm(pair.A, 2) ** 2 + np.linalg.norm(pair.B, 2) ** 2)


def check_pair(pair, tol=IDENTITY_RTOL, rtol=RANK_RTOL):
    """Test AB^H = BA^H (bg1) and ker M^{A,B} = 0 (bg2)."""
    A, B = pair.A, pair.B
    skew = np.linalg.norm(A @ B.conj().T - B @ A.conj().T, 2)
    bg1 = bool(skew <= tol * _pair_scale(pair))
    return PairCheck(bg1=bg1, bg2=is_normalized(pair, rtol))


def is_normalized(pair, rtol=RANK_RTOL):
    """0 in res M^{A,B}; in finite dimension the same test as bg2."""
    if pair.n == 0:
        return True
    s = np.linalg.svd(mab_matrix(pair), compute_uv=False)
    return bool(s[-1] > rank_cutoff(s, rtol))


def _unitarity_error(U):
    return float(np.linalg.norm(U.conj().T @ U - np.eye(U.shape[0]), 2))


def cayley_pair(U, tol=IDENTITY_RTOL):
    """(A, B) = (i(1 + U), 1 - U) for a unitary U."""
    U = as_matrix(U, "U")
    if U.shape[0] != U.shape[1]:
        raise ValueError(f"U must be square, got shape {U.shape}")
    err = _unitarity_error(U)
    if err > tol:
        raise ValueError(f"U is not unitary: ||U^H U - I|| = {err:.2e}")
    eye = np.eye(U.shape[0])
    return ParamPair(1j * (eye + U), eye - U)


def cayley_transform(rel, tol=IDENTITY_RTOL):
    """The unitary U with U(x2 + i x1) = x2 - i x1 on a self-adjoint relation."""
    if not is_selfadjoint(rel, tol):
        raise ValueError(
            f"relation is not self-adjoint (n={rel.n}, dim={rel.dim}); "
            "the Cayley transform is defined only for Lagrangian subspaces"
        )
    P = rel.x2 + 1j * rel.x1
    Q = rel.x2 - 1j * rel.x1
    s = np.linalg.svd(P, compute_uv=False)
    if rel.n and s[-1] <= rank_cutoff(s):
        raise ValueError("x2 + i x1 is singular: relation is not self-adjoint")
    # U = Q P^{-1}, solved as P^T U^T = Q^T
    return np.linalg.solve(P.T, Q.T).T


def normalize_pair(pair, tol=IDENTITY_RTOL, rtol=RANK_RTOL):
    """A Cayley-normalized pair describing the same self-adjoint relation."""
    check = check_pair(pair, tol, rtol)
    if not check.selfadjoint:
        raise ValueError(f"pair does not define a self-adjoint relation: {check}")
    U = cayley_transform(relation_from_pair(pair, rtol), tol)
    # U is unitary only up to rounding; let cayley_pair's check be slightly looser
    return cayley_pair(U, tol=max(tol, 1e-8))


def recover_denormalizer(normalized, other, tol=1e-8, rtol=RANK_RTOL):
    """The injective L with C = LA and D = LB, where (C, D) = ``other``.

    Computed as the upper-left block of M^{C,D} (M^{A,B})^{-1}; the remaining
    blocks must reproduce L (+) L.
    """
    if normalized.n != other.n:
        raise ValueError("pairs act on boundary spaces of different dimension")
    if not is_normalized(normalized, rtol):
        raise ValueError("first pair is not normalized: M^{A,B} is singular")
    if not relations_equal(
        relation_from_pair(normalized, rtol), relation_from_pair(other, rtol), tol
    ):
        raise ValueError("the two pairs parameterize different relations")
    n = normalized.n
    # X = M^{C,D} M^{A,B}^{-1}, via M^{A,B}^T X^T = M^{C,D}^T
    X = np.linalg.solve(mab_matrix(normalized).T, mab_matrix(other).T).T
    L = X[:n, :n]
    block_err = (
        np.linalg.norm(X[n:, n:] - L) + np.linalg.norm(X[:n, n:]) + np.linalg.norm(X[n:, :n])
    )
    scale = max(1.0, np.linalg.norm(X))
    if block_err > tol * scale:
        raise ValueError(f"M^{{C,D}} M^{{A,B}}^-1 is not block diagonal (error {block_err:.2e})")
    return L


def _coordinate_minor(rel, theta):
    rows = [rel.x2[j] if j in theta else rel.x1[j] for j in range(rel.n)]
    return np.array(rows).reshape(rel.n, rel.dim)


def arnold_projection(rel, rtol=RANK_RTOL):
    """Smallest coordinate swap set under which ``rel`` projects injectively.

    Returns a sorted tuple of 0-based indices theta such that the relation
    projects injectively onto span{(e_j, 0): j not in theta} +
    span{(0, e_j): j in theta}.  Subsets are tried by increasing size, then
    lexicographically.
    """
    if rel.n > MAX_ARNOLD_DIM:
        raise ValueError(f"n={rel.n} exceeds the enumeration cap {MAX_ARNOLD_DIM}")
    if not is_selfadjoint(rel):
        raise ValueError("arnold_projection requires a self-adjoint relation")
    for size in range(rel.n + 1):
        for theta in combinations(range(rel.n), size):
            minor = _coordinate_minor(rel, set(theta))
            s = np.linalg.svd(minor, compute_uv=False)
            # the basis is orthonormal, so sigma_max <= 1 and the cutoff is absolute
            if rel.n == 0 or s[-1] > rank_cutoff(s, rtol):
                return theta
    raise ValueError("no injective coordinate projection: relation is not Lagrangian")


def rotate_relation(rel, theta):
    """Express ``rel`` in the boundary triple with coordinates in theta swapped.

    The new traces are Gamma_1^j = Gamma_2^j and Gamma_2^j = -Gamma_1^j for
    j in theta, unchanged otherwise.
    """
    basis = rel.basis.copy()
    for j in theta:
        x1j = basis[j].copy()
        basis[j] = basis[rel.n + j]
        basis[rel.n + j] = -x1j
    return LinearRelation(rel.n, basis)


def graph_operator(rel, rtol=RANK_RTOL):
    """The matrix L with rel = {(x, Lx)}; raises if rel is not an operator graph."""
    if rel.dim != rel.n:
        raise ValueError("relation is not the graph of an everywhere defined operator")
    s = np.linalg.svd(rel.x1, compute_uv=False)
    if rel.n and s[-1] <= rank_cutoff(s, rtol):
        raise ValueError("relation has a multivalued part: not an operator graph")
    return np.linalg.solve(rel.x1.T, rel.x2.T).T


def projector(rel):
    return rel.basis @ rel.basis.conj().T


def relations_equal(r1, r2, tol=1e-10):
    """Subspace equality through the distance of orthogonal projectors."""
    if r1.n != r2.n:
        raise ValueError(f"relations live on different spaces (n={r1.n} vs n={r2.n})")
    if r1.dim != r2.dim:
        return False
    return bool(np.linalg.norm(projector(r1) - projector(r2), 2) <= tol)
