# The resolvent kernel of a delta well, from the free kernel plus a rank-two
# correction, compared with a direct finite-difference solve.
import numpy as np
from scipy.linalg import solve_banded

from krein.point import PointModel, build_pair, free_green, green_function, resolve_apply

model = PointModel.deltas([0.0], [-2.0])
pair = build_pair(model)
z, y = -4.0, -0.7

# Finite differences on [-40, 40] with the jump condition at the node x = 0.
h = 1e-3
x = -40 + h * np.arange(1, 80000)
diag = np.full(x.size, 2 / h**2) - z
diag[np.argmin(np.abs(x))] += -2.0 / h
ab = np.zeros((3, x.size))
ab[0, 1:] = ab[2, :-1] = -1 / h**2
ab[1] = diag
rhs = np.zeros(x.size)
rhs[np.argmin(np.abs(x - y))] = 1 / h
column = solve_banded((1, 1), ab, rhs)

for xi in (-2.0, -0.7, 0.0, 0.3, 1.5):
    G = green_function(model, pair, xi, y, z).real
    fd = column[np.argmin(np.abs(x - xi))]
    print(f"x = {xi:5.2f}:  krein {G:.8f}  fd {fd:.8f}  free {free_green(xi, y, z).real:.8f}")

# The kernel is symmetric for real boundary conditions.
print("G(0.3, -0.7) - G(-0.7, 0.3):",
      green_function(model, pair, 0.3, -0.7, z) - green_function(model, pair, -0.7, 0.3, z))

# Applying the resolvent to a function by quadrature: u = (H - z)^{-1} f
# solves -u'' + c delta u - z u = f.
f = lambda t: np.exp(-t * t)  # noqa: E731
print("(H - z)^{-1} f at 0:", resolve_apply(model, pair, f, z, 0.0).real)

# Near the bound state at z = -1 the kernel is refused rather than returned.
try:
    green_function(model, pair, 0.0, 0.0, -1.0)
except ValueError as exc:
    print("z = -1:", exc)
