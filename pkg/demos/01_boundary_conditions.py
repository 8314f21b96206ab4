# Boundary conditions as subspaces: self-adjointness, Cayley transforms and
# the many pairs (A, B) that describe the same condition A Gamma_1 = B Gamma_2.
import numpy as np
from scipy.stats import unitary_group

from krein.linrel import (
    ParamPair,
    arnold_projection,
    cayley_pair,
    cayley_transform,
    check_pair,
    normalize_pair,
    recover_denormalizer,
    relation_from_pair,
    relations_equal,
)

rng = np.random.default_rng(0)

# Any unitary U on C^3 gives a self-adjoint condition through its Cayley pair.
U = unitary_group.rvs(3, random_state=rng)
pair = cayley_pair(U)
print("bg1, bg2 for the Cayley pair:", tuple(check_pair(pair)))

# Going back recovers U exactly, so unitaries and self-adjoint conditions
# are the same thing.
rel = relation_from_pair(pair)
print("roundtrip error:", np.linalg.norm(cayley_transform(rel) - U, 2))

# Multiplying both A and B by an invertible L changes nothing.
L = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
scaled = pair.left_multiply(L)
print("same relation after L:", relations_equal(rel, relation_from_pair(scaled)))
print("recovered L matches:", np.allclose(recover_denormalizer(pair, scaled), L))

# normalize_pair strips such factors and returns a canonical pair.
canon = normalize_pair(scaled)
print("canonical pair equals Cayley pair:", np.allclose(canon.A, pair.A) and np.allclose(canon.B, pair.B))

# A pair that is not self-adjoint fails bg1: A B^H must be Hermitian.
bad = ParamPair(np.eye(2), 1j * np.eye(2))
print("A = I, B = iI:", tuple(check_pair(bad)))

# Some self-adjoint conditions are not graphs Gamma_2 = H Gamma_1.  Swapping
# a few coordinates (Gamma_1^j, Gamma_2^j) -> (Gamma_2^j, -Gamma_1^j) fixes this.
U = np.diag([1.0, np.exp(0.7j), np.exp(-2.1j)])
rel = relation_from_pair(cayley_pair(U))
print("coordinates to swap:", arnold_projection(rel))
