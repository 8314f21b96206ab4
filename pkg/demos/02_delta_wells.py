# Bound states of attractive delta wells found from the Krein matrix
# B Q(z) - A, checked against the textbook answers.
import numpy as np
from scipy.optimize import brentq

from krein.core import spectral_indicator
from krein.point import InteractionPoint, PointModel, bound_states, build_pair

# One well of strength c = -2 binds a single state at z = -c^2/4 = -1.
model = PointModel.deltas([0.0], [-2.0])
pair = build_pair(model)
(state,) = bound_states(model, pair, -10.0, -0.01)
print("single well:", state.eigenvalue)

# The eigenfunction is e^{-|x|}, already normalized.
f = state.eigenfunctions[0]
x = np.linspace(-3, 3, 7)
print("f(x) - e^{-|x|}:", np.max(np.abs(f(x) - np.exp(-np.abs(x)))))

# The indicator sigma_min(B Q(z) - A) dips to zero only at the eigenvalue.
for z in (-2.0, -1.5, -1.0, -0.5):
    print(f"  indicator at z = {z:5.2f}: {spectral_indicator(pair, model.q_at(z)):.3e}")

# Two wells at +-1: an even and an odd state, kappa = 1 +- e^{-2 kappa}.
model = PointModel.deltas([-1.0, 1.0], [-2.0, -2.0])
found = [s.eigenvalue for s in bound_states(model, build_pair(model), -10.0, -0.01)]
even = brentq(lambda k: k - 1 - np.exp(-2 * k), 0.5, 2.0)
odd = brentq(lambda k: k - 1 + np.exp(-2 * k), 0.1, 2.0)
print("double well:", found)
print("closed form:", [-(even**2), -(odd**2)])

# A delta-prime interaction of strength -2 also binds at -4 / beta^2 = -1.
model = PointModel([InteractionPoint.delta_prime(0.0, -2.0)])
print("delta-prime:", [s.eigenvalue for s in bound_states(model, build_pair(model), -10.0, -0.01)])

# Repulsive wells bind nothing.
model = PointModel.deltas([0.0], [2.0])
print("repulsive:", bound_states(model, build_pair(model), -10.0, -0.01))
