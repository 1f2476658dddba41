import numpy as np
import pytest
from scipy.special import sph_harm_y

from homconv.errors import FormatError, GridError
from homconv.sphere import (
    BILINEAR_TOL,
    LINEAR_TOL,
    ZONAL_TOL,
    So3Function,
    SphereFunction,
    analyze,
    euler_zyz,
    harmonic_matrix,
    lm_index,
    random_bandlimited,
    random_so3_bandlimited,
    rot_z,
    rotate,
    so3_grid,
    so3_l1,
    sphere_convolve,
    sphere_covariance_check,
    sphere_from_json,
    sphere_grid,
    sphere_l1,
    sphere_lift,
    sphere_t_h,
    sphere_to_json,
    sphere_weil_check,
    synthesize,
    wigner_D,
    wigner_small_d,
    zonal_deviation,
    zonal_function,
)
from homconv.sphere_checks import funk_hecke_factors

L = 4


@pytest.fixture(scope="module")
def rng():
    return np.random.default_rng(12)


@pytest.fixture(scope="module")
def grids():
    return sphere_grid(L), so3_grid(L)


# -- grids ----------------------------------------------------------------------


@pytest.mark.parametrize("bw", [1, 4, 8, 16])
def test_weights_normalised(bw):
    assert abs(sphere_grid(bw).weights.sum() - 1) <= 1e-12
    assert abs(so3_grid(bw).weights.sum() - 1) <= 1e-12
    assert np.all(so3_grid(bw).weights > 0)


def test_sphere_quadrature_integrates_products_exactly(grids):
    g, _ = grids
    Y = harmonic_matrix(L, *g.angles())
    gram = 4 * np.pi * (Y.conj().T * g.weights) @ Y
    assert np.max(np.abs(gram - np.eye(Y.shape[1]))) <= 1e-12


def test_so3_quadrature_orthogonality(grids):
    _, G = grids
    a, b, c = G.angles()
    keys = [(l, m, n) for l in range(L + 1) for m in range(-l, l + 1) for n in range(-l, l + 1)]
    D = np.stack([wigner_D(l, m, n, a, b, c) for l, m, n in keys], axis=1)
    gram = (D.conj().T * G.weights) @ D
    expected = np.diag([1.0 / (2 * l + 1) for l, _, _ in keys])
    assert np.max(np.abs(gram - expected)) <= 1e-12


def test_wigner_matrices_are_a_representation(rng):
    # oracle: D(R1 R2) = D(R1) D(R2) and unitarity, with angles read back from the product matrix
    def D(l, angles):
        ms = range(-l, l + 1)
        return np.array([[wigner_D(l, m, n, *angles) for n in ms] for m in ms])

    def angles_of(R):
        b = np.arccos(np.clip(R[2, 2], -1, 1))
        return np.arctan2(R[1, 2], R[0, 2]), b, np.arctan2(R[2, 1], -R[2, 0])

    for _ in range(3):
        a1, a2 = rng.uniform(0.2, 2.8, 3), rng.uniform(0.2, 2.8, 3)
        R = euler_zyz(*a1) @ euler_zyz(*a2)
        a12 = angles_of(R)
        assert np.allclose(euler_zyz(*a12), R, atol=1e-12)
        for l in (1, 2, 3):
            M = D(l, a1)
            assert np.allclose(M @ M.conj().T, np.eye(2 * l + 1), atol=1e-12)
            assert np.allclose(D(l, a12), M @ D(l, a2), atol=1e-12)


def test_small_d_known_values():
    b = 0.7
    assert np.isclose(wigner_small_d(1, 0, 0, b), np.cos(b))
    assert np.isclose(wigner_small_d(1, 1, 1, b), (1 + np.cos(b)) / 2)
    assert np.isclose(wigner_small_d(1, 1, 0, b), -np.sin(b) / np.sqrt(2))


def test_grid_errors():
    with pytest.raises(GridError):
        sphere_grid(0)
    with pytest.raises(GridError):
        sphere_grid(17)
    a = random_bandlimited(sphere_grid(2), np.random.default_rng(0))
    b = random_bandlimited(sphere_grid(3), np.random.default_rng(0))
    with pytest.raises(GridError):
        sphere_convolve(a, b)
    with pytest.raises(GridError):
        sphere_t_h(So3Function(so3_grid(2), np.ones(so3_grid(2).size)), sphere_grid(3))
    with pytest.raises(GridError):
        SphereFunction(sphere_grid(2), np.full(sphere_grid(2).size, np.nan))


# -- T_H ------------------------------------------------------------------------------


def test_t_h_examples(grids):
    g, G = grids
    a, b, c = G.angles()
    assert np.allclose(sphere_t_h(So3Function(G, np.ones(G.size))).values, 1, atol=1e-14)
    assert np.max(np.abs(sphere_t_h(So3Function(G, np.exp(1j * c))).values)) <= LINEAR_TOL


@pytest.mark.parametrize("l,m", [(1, 0), (2, 1), (3, -2), (4, 4)])
def test_t_h_of_wigner_column_is_a_harmonic(grids, l, m):
    g, G = grids
    a, b, c = G.angles()
    out = sphere_t_h(So3Function(G, np.conj(wigner_D(l, m, 0, a, b, c)))).values
    # direct quadrature of the harmonic at the same nodes
    th, ph = g.angles()
    Y = sph_harm_y(l, m, th, ph)
    k = np.vdot(Y, out * g.weights) / np.vdot(Y, Y * g.weights)
    assert np.isclose(abs(k), np.sqrt(4 * np.pi / (2 * l + 1)))
    assert np.max(np.abs(out - k * Y)) <= 1e-12


def test_t_h_contraction_and_lift(grids, rng):
    g, G = grids
    F = random_so3_bandlimited(G, rng)
    assert sphere_l1(sphere_t_h(F)) <= so3_l1(F) + LINEAR_TOL
    phi = random_bandlimited(g, rng)
    assert np.allclose(sphere_t_h(sphere_lift(phi)).values, phi.values, atol=1e-14)


# -- Weil ------------------------------------------------------------------------------


def test_weil_examples(grids, rng):
    g, G = grids
    a, b, c = G.angles()
    w = sphere_weil_check(So3Function(G, np.ones(G.size)))
    assert abs(w.lhs - 1) <= LINEAR_TOL and abs(w.rhs - 1) <= LINEAR_TOL
    for l, m, n in [(1, 0, 0), (2, 1, -1), (4, -3, 2)]:
        w = sphere_weil_check(So3Function(G, wigner_D(l, m, n, a, b, c)))
        assert abs(w.lhs) <= LINEAR_TOL and abs(w.rhs) <= LINEAR_TOL
    assert sphere_weil_check(random_so3_bandlimited(G, rng)).deviation <= LINEAR_TOL


# -- convolution --------------------------------------------------------------------------


def test_convolve_with_constant(grids, rng):
    g, _ = grids
    phi = random_bandlimited(g, rng)
    one = SphereFunction(g, np.ones(g.size))
    out = sphere_convolve(phi, one)
    assert np.max(np.abs(out.values - np.dot(g.weights, phi.values))) <= BILINEAR_TOL


def test_convolve_y00(grids):
    g, _ = grids
    y00 = zonal_function(g, [1.0])
    out = sphere_convolve(y00, y00)
    assert np.ptp(np.abs(out.values)) <= 1e-12
    # Y00 = 1/sqrt(4 pi): the product is Y00 * integral of Y00
    assert np.allclose(out.values, 1 / (4 * np.pi), atol=1e-12)


def test_zonal_multiplier_matches_one_dimensional_quadrature(grids, rng):
    g, _ = grids
    a_l = rng.standard_normal(L + 1)
    phi = random_bandlimited(g, rng)
    got = analyze(sphere_convolve(phi, zonal_function(g, a_l)))
    ls, _ = lm_index(L)
    lam = funk_hecke_factors(a_l, L)
    assert np.max(np.abs(got - analyze(phi) * lam[ls])) <= BILINEAR_TOL


def test_zonal_closure(grids, rng):
    g, _ = grids
    out = sphere_convolve(zonal_function(g, rng.standard_normal(L + 1)), zonal_function(g, rng.standard_normal(L + 1)))
    assert zonal_deviation(out) <= ZONAL_TOL


def test_associativity(grids, rng):
    g, _ = grids
    a, b, c = (random_bandlimited(g, rng) for _ in range(3))
    lhs = sphere_convolve(sphere_convolve(a, b), c)
    rhs = sphere_convolve(a, sphere_convolve(b, c))
    assert np.max(np.abs(lhs.values - rhs.values)) <= BILINEAR_TOL


def test_convolution_is_bilinear(grids, rng):
    g, _ = grids
    a, b, c = (random_bandlimited(g, rng) for _ in range(3))
    lhs = sphere_convolve(a + b.scale(2j), c)
    rhs = sphere_convolve(a, c) + sphere_convolve(b, c).scale(2j)
    assert np.max(np.abs(lhs.values - rhs.values)) <= 1e-12


# -- rotation and covariance ------------------------------------------------------------


def test_rotation_about_pole_is_a_phase(grids):
    g, _ = grids
    ls, ms = lm_index(L)
    for idx in (5, 11, 20):
        coeffs = np.zeros(len(ls), complex)
        coeffs[idx] = 1
        f = synthesize(coeffs, g)
        out = rotate(f, (0.9, 0.0, 0.0))
        assert np.allclose(out.values, np.exp(-1j * ms[idx] * 0.9) * f.values, atol=1e-12)


def test_rotation_composes(grids, rng):
    g, _ = grids
    f = random_bandlimited(g, rng)
    R1, R2 = euler_zyz(0.3, 1.2, -0.4), euler_zyz(2.0, 0.5, 0.1)
    assert np.allclose(rotate(rotate(f, R2), R1).values, rotate(f, R1 @ R2).values, atol=1e-11)


def test_covariance_examples(grids, rng):
    g, _ = grids
    phi, psi = random_bandlimited(g, rng), random_bandlimited(g, rng)
    assert sphere_covariance_check(np.eye(3), phi, psi) <= 1e-12
    zphi, zpsi = zonal_function(g, rng.standard_normal(L + 1)), zonal_function(g, rng.standard_normal(L + 1))
    assert sphere_covariance_check(rot_z(1.1), zphi, zpsi) <= LINEAR_TOL
    assert sphere_covariance_check((0.4, 2.1, 5.0), phi, psi) <= BILINEAR_TOL


def test_bad_rotation():
    f = random_bandlimited(sphere_grid(1), np.random.default_rng(0))
    with pytest.raises(GridError):
        rotate(f, np.ones((3, 3)))


# -- JSON -----------------------------------------------------------------------------------


def test_json_round_trip(grids, rng):
    g, _ = grids
    f = random_bandlimited(g, rng)
    payload = sphere_to_json(f)
    assert payload["theta_nodes"] == payload["phi_nodes"] == 2 * L + 2
    back = sphere_from_json(payload)
    assert np.array_equal(back.values, f.values)


def test_json_errors():
    with pytest.raises(FormatError):
        sphere_from_json({"values": []})
    with pytest.raises(FormatError):
        sphere_from_json({"L": 1, "theta_nodes": 3, "phi_nodes": 4, "values": [[0, 0]] * 16})
    with pytest.raises(FormatError):
        sphere_from_json({"L": 1, "values": [[0, 0]] * 15})
