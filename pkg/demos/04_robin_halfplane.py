# Bound states of the Laplacian on the half-plane y > 0 with the boundary
# condition a u + b du/dy = 0, read off from the kernel of a - b Lambda(z).
import numpy as np

from krein.robin import RobinProblem, robin_bound_states, robin_spectral_indicator, wavenumbers

# Constant a = b = 1: each boundary Fourier mode k binds at z = k^2 - 1.
P, M = 20.0, 256
problem = RobinProblem.constant(P, M, 1.0, 1.0)
k = np.sort(np.abs(wavenumbers(P, M)))
print("expected:", np.unique(np.round(k[k < 1] ** 2 - 1, 12)))
for s in robin_bound_states(problem, -1.2, -0.02, grid=300):
    print(f"  z = {s.eigenvalue:.12f}  multiplicity {s.multiplicity}")

# Pure Neumann has no bound state; its indicator is sqrt(-z).
neumann = RobinProblem.constant(P, 64, 0.0, 1.0)
print("neumann indicator at z = -0.25:", robin_spectral_indicator(neumann, -0.25))

# A Robin strip |x| < 2.5 inside a Dirichlet line binds a single state.
# Refining the boundary grid shows the root settling down.
previous = None
for M in (64, 128, 256):
    mixed = RobinProblem.piecewise(10.0, M, [(-2.5, 2.5, 1.0, 1.0)])
    z = min(s.eigenvalue for s in robin_bound_states(mixed, -1.0, -0.05, grid=120))
    change = "" if previous is None else f"  change {abs(z - previous):.1e}"
    print(f"M = {M:3d}: z = {z:.6f}{change}")
    previous = z
