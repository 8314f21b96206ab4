"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line (printed in the terminal summary) and
then asserts, so a failing criterion is reported rather than hidden.
"""

import time

import numpy as np
import pytest
from scipy.linalg import block_diag

from krein.core import correction_left, correction_right, q_identity_residual
from krein.linrel import (
    arnold_projection,
    cayley_pair,
    cayley_transform,
    check_pair,
    graph_operator,
    is_normalized,
    projector,
    recover_denormalizer,
    relation_from_normalized_range,
    relation_from_pair,
    relation_from_span,
    rotate_relation,
)
from krein.point import (
    InteractionPoint,
    PointModel,
    bound_states,
    build_pair,
    green_function,
)
from krein.robin import RobinProblem, robin_bound_states, wavenumbers

from conftest import random_hermitian, random_invertible, random_unitary
from oracles import (
    fd_delta_eigenvalues,
    fd_delta_green,
    fd_halfstrip_lowest,
    one_sided_derivative,
    second_difference,
)


def _unitaries(rng, count=200):
    return [random_unitary(int(rng.integers(1, 9)), rng) for _ in range(count)]


def test_ac01_cayley_soundness(criterion):
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    worst, all_valid = 0.0, True
    for U in _unitaries(rng):
        pair = cayley_pair(U)
        all_valid &= check_pair(pair) == (True, True) and is_normalized(pair)
        U2 = cayley_transform(relation_from_pair(pair))
        worst = max(worst, np.linalg.norm(U2 - U, 2))
    elapsed = time.perf_counter() - start
    ok = all_valid and worst <= 1e-10 and elapsed < 5.0
    criterion(
        "AC1 Cayley soundness",
        ok,
        f"bg1/bg2/normalized all={all_valid}, max ||dU||={worst:.2e} (<=1e-10), "
        f"{elapsed:.2f}s (<5s)",
    )
    assert ok


def test_ac02_kernel_equals_normalized_range(criterion):
    rng = np.random.default_rng(1)
    worst = 0.0
    for U in _unitaries(rng):
        pair = cayley_pair(U)
        P1 = projector(relation_from_pair(pair))
        P2 = projector(relation_from_normalized_range(pair))
        worst = max(worst, np.linalg.norm(P1 - P2, 2))
    ok = worst <= 1e-10
    criterion("AC2 ker[A|-B] = normalized range", ok, f"max projector distance={worst:.2e}")
    assert ok


def test_ac03_resolvent_formulas_agree(criterion):
    rng = np.random.default_rng(3)
    worst = 0.0
    for U in _unitaries(rng):
        n = U.shape[0]
        Q = random_hermitian(n, rng, scale=float(rng.uniform(0.1, 10))) + 1j * np.eye(n)
        pair = cayley_pair(U)
        diff = np.linalg.norm(correction_left(pair, Q) - correction_right(pair, Q), 2)
        worst = max(worst, diff / (1 + np.linalg.norm(Q, 2)))
    ok = worst <= 1e-10
    criterion("AC3 left/right Krein corrections", ok, f"max diff/(1+||Q||)={worst:.2e}")
    assert ok


def test_ac04_left_factor_invariance(criterion):
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 9))
        pair = cayley_pair(random_unitary(n, rng))
        Q = random_hermitian(n, rng) + 1j * np.eye(n)
        L = random_invertible(n, rng)
        C1 = correction_right(pair, Q)
        C2 = correction_right(pair.left_multiply(L), Q)
        worst = max(worst, np.linalg.norm(C1 - C2, 2) / max(np.linalg.norm(C1, 2), 1e-300))
    ok = worst <= 1e-9
    criterion("AC4 left-factor invariance", ok, f"max relative diff={worst:.2e}")
    assert ok


@pytest.mark.parametrize(
    "label, point, exact",
    [
        ("delta c=-2", InteractionPoint.delta_potential(0.0, -2.0), -(2.0**2) / 4),
        ("delta' beta=-2", InteractionPoint.delta_prime(0.0, -2.0), -4 / 2.0**2),
    ],
)
def test_ac05_single_point_bound_state(criterion, label, point, exact):
    model = PointModel([point])
    start = time.perf_counter()
    states = bound_states(model, build_pair(model), -10.0, -0.01)
    elapsed = time.perf_counter() - start
    zs = [s.eigenvalue for s in states]
    err = abs(zs[0] - exact) if len(zs) == 1 else np.inf
    ok = len(zs) == 1 and err <= 1e-8 and elapsed < 1.0
    criterion(
        f"AC5 {label} bound state",
        ok,
        f"roots={zs}, |z-({exact})|={err:.2e} (<=1e-8), {elapsed:.2f}s (<1s)",
    )
    assert ok


def test_ac06_double_delta_vs_fd(criterion):
    start = time.perf_counter()
    model = PointModel.deltas([-1.0, 1.0], [-2.0, -2.0])
    zs = np.array([s.eigenvalue for s in bound_states(model, build_pair(model), -10.0, -0.01)])
    ref = np.sort(fd_delta_eigenvalues([-1.0, 1.0], [-2.0, -2.0], zmin=-10.0))
    elapsed = time.perf_counter() - start
    rel = np.max(np.abs(zs - ref) / np.abs(ref)) if zs.shape == ref.shape else np.inf
    ok = zs.shape == (2,) and rel <= 1e-4 and elapsed < 60.0
    criterion(
        "AC6 double delta vs finite differences",
        ok,
        f"krein={zs.tolist()}, fd={ref.tolist()}, max rel={rel:.2e} (<=1e-4), {elapsed:.1f}s",
    )
    assert ok


def test_ac07_q_identity(criterion):
    rng = np.random.default_rng(7)
    models = [PointModel.deltas([0.0], [-2.0]), PointModel.deltas([0.0, 1.0], [-2.0, 1.0])]
    worst = 0.0
    for model in models:
        for _ in range(20):
            z = -5 + 1j * rng.uniform(-1, 1)
            zeta = -2 + 1j * rng.uniform(-1, 1)
            worst = max(worst, q_identity_residual(model, z, zeta))
    ok = worst <= 1e-6
    criterion("AC7 Q-function identity", ok, f"max residual={worst:.2e} over 40 pairs")
    assert ok


def test_ac08_green_function_vs_fd(criterion):
    rng = np.random.default_rng(8)
    model = PointModel.deltas([0.0], [-2.0])
    pair = build_pair(model)
    z = -4.0
    # sample points on the oracle grid (step 1e-3)
    xs = np.round(rng.uniform(-3, 3, 20), 3)
    ys = np.round(rng.uniform(-3, 3, 20), 3)
    worst_rel, worst_sym = 0.0, 0.0
    for x, y in zip(xs, ys):
        grid, col = fd_delta_green([0.0], [-2.0], z, y)
        ref = col[int(np.argmin(np.abs(grid - x)))]
        G = green_function(model, pair, x, y, z)
        worst_rel = max(worst_rel, abs(G - ref) / abs(ref))
        worst_sym = max(worst_sym, abs(G - green_function(model, pair, y, x, z)))
    ok = worst_rel <= 1e-3 and worst_sym <= 1e-10
    criterion(
        "AC8 Green function vs finite differences",
        ok,
        f"max rel err={worst_rel:.2e} (<=1e-3), max |G(x,y)-G(y,x)|={worst_sym:.2e} (<=1e-10)",
    )
    assert ok


def _eigenfunction_residual(model, state):
    z = state.eigenvalue
    worst = 0.0
    a = model.positions
    probes = np.concatenate([[a[0] - 1.5], (a[:-1] + a[1:]) / 2, [a[-1] + 1.5]])
    for f in state.eigenfunctions:
        for x in probes:
            worst = max(worst, abs(-second_difference(f, x) - z * f(x)))
        for p in model.points:
            left = np.array([f(p.position, -1), one_sided_derivative(f, p.position, -1)])
            right = np.array([f(p.position, +1), one_sided_derivative(f, p.position, +1)])
            worst = max(worst, np.max(np.abs(right - p.transfer_matrix @ left)))
    return worst


def test_ac09_eigenfunction_residuals(criterion):
    beta = 0.5
    models = [
        PointModel.deltas([0.0], [-2.0]),
        PointModel.deltas([-1.0, 1.0], [-2.0, -2.0]),
        PointModel([InteractionPoint.delta_prime(0.0, -2.0)]),
        PointModel(
            [
                InteractionPoint.delta_potential(-1.0, -3.0),
                InteractionPoint(0.5, 0.4, 2.0, beta, -1.0, (1 - beta) / 2.0),
                InteractionPoint.delta_prime(2.0, -1.5),
            ]
        ),
    ]
    worst, count = 0.0, 0
    for model in models:
        for state in bound_states(model, build_pair(model), -20.0, -0.01):
            worst = max(worst, _eigenfunction_residual(model, state))
            count += len(state.eigenfunctions)
    ok = count > 0 and worst <= 1e-6
    criterion(
        "AC9 eigenfunction residuals", ok, f"{count} eigenfunctions, max residual={worst:.2e}"
    )
    assert ok


def _lowest(problem):
    return min(s.eigenvalue for s in robin_bound_states(problem, -1.0, -0.05, grid=120))


def test_ac10_robin(criterion):
    P, M = 20.0, 256
    const = RobinProblem.constant(P, M, 1.0, 1.0)
    k2 = np.unique(np.round(wavenumbers(P, M) ** 2, 14))
    expected = k2[k2 < 1] - 1
    found = np.array(
        [s.eigenvalue for s in robin_bound_states(const, -1.2, -0.02, grid=300)]
    )
    disp_err = np.max(np.abs(found - expected)) if found.shape == expected.shape else np.inf

    def mixed(m):
        return RobinProblem.piecewise(10.0, m, [(-2.5, 2.5, 1.0, 1.0)])

    sizes = (64, 128, 256)
    roots = [_lowest(mixed(m)) for m in sizes]
    steps = np.abs(np.diff(roots))
    cauchy = bool(np.all(steps[1:] < steps[:-1]))
    fine = mixed(sizes[-1])
    fd = fd_halfstrip_lowest(fine.a_samples, fine.b_samples, 10.0, depth=10.0, ny=400)
    oracle_err = abs(roots[-1] - fd)
    ok = disp_err <= 1e-10 and cauchy and oracle_err <= 5e-2
    criterion(
        "AC10 Robin half-plane",
        ok,
        f"dispersion err={disp_err:.2e} (<=1e-10, {expected.size} roots); "
        f"mixed roots {['%.5f' % r for r in roots]} steps {['%.1e' % s for s in steps]} "
        f"cauchy={cauchy}; 2D FD {fd:.5f}, diff={oracle_err:.2e} (<=5e-2)",
    )
    assert ok


def _lagrangian(rng, n):
    """Random self-adjoint relation; some have forced vertical coordinate parts."""
    if rng.uniform() < 0.5 or n == 1:
        return relation_from_pair(cayley_pair(random_unitary(n, rng)))
    # U = I on k coordinates gives Gamma_1 = 0 there (the x2 axis)
    k = int(rng.integers(1, n))
    U = block_diag(np.eye(k), random_unitary(n - k, rng))
    perm = rng.permutation(n)
    U = U[np.ix_(perm, perm)]
    return relation_from_pair(cayley_pair(U))


def test_ac11_arnold_projection(criterion):
    rng = np.random.default_rng(11)
    worst_cond, nontrivial, ok_all = 0.0, 0, True
    for _ in range(100):
        n = int(rng.integers(1, 7))
        rel = _lagrangian(rng, n)
        theta = arnold_projection(rel)
        nontrivial += bool(theta)
        minor = rotate_relation(rel, theta).x1
        cond = np.linalg.cond(minor)
        worst_cond = max(worst_cond, cond)
        ok_all &= np.linalg.matrix_rank(minor) == n and cond < 1e8
        L = graph_operator(rotate_relation(rel, theta))
        ok_all &= np.allclose(L, L.conj().T, atol=1e-8)
    graphs_ok = True
    for _ in range(20):
        n = int(rng.integers(1, 7))
        H = random_hermitian(n, rng)
        rel = relation_from_span(list(np.vstack([np.eye(n), H]).T))
        graphs_ok &= arnold_projection(rel) == ()
    ok = ok_all and graphs_ok
    criterion(
        "AC11 Arnold projection",
        ok,
        f"full-rank minors={ok_all} (max cond {worst_cond:.1e}, {nontrivial} with theta != ()), "
        f"Hermitian graphs give ()={graphs_ok}",
    )
    assert ok


def test_ac12_denormalizer_recovery(criterion):
    rng = np.random.default_rng(12)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 9))
        pair = cayley_pair(random_unitary(n, rng))
        L = random_invertible(n, rng)
        L2 = recover_denormalizer(pair, pair.left_multiply(L))
        worst = max(worst, np.linalg.norm(L2 - L, 2))
    ok = worst <= 1e-10
    criterion("AC12 denormalizer recovery", ok, f"max ||L_rec - L||={worst:.2e} (<=1e-10)")
    assert ok
