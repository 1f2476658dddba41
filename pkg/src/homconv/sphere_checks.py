"""Tolerance-based checks for the S^2 = SO(3)/SO(2) backend."""

from __future__ import annotations

import numpy as np
from scipy.integrate import quad
from scipy.special import eval_legendre

from .sphere import (
    BILINEAR_TOL,
    LINEAR_TOL,
    ZONAL_TOL,
    So3Function,
    analyze,
    lm_index,
    random_bandlimited,
    random_so3_bandlimited,
    rot_z,
    so3_grid,
    so3_l1,
    sphere_convolve,
    sphere_covariance_check,
    sphere_grid,
    sphere_l1,
    sphere_t_h,
    sphere_weil_check,
    wigner_D,
    zonal_deviation,
    zonal_function,
)
from .suites import Check


def _record(name: str, reference: str, deviation: float, tol: float, **extra) -> Check:
    status = "pass" if deviation <= tol else "fail"
    return Check(name, reference, status, {"deviation": float(deviation), "tolerance": tol, **extra})


def funk_hecke_factors(degree_coeffs, L: int) -> np.ndarray:
    """Per-degree multipliers of convolution by ``sum a_l Y_l0``, by 1-D quadrature.

    With the normalised measure the multiplier is ``(1/2) int psi0(t) P_l(t) dt``
    where ``psi0(cos theta)`` is the zonal profile.
    """
    def profile(t):
        return sum(a * np.sqrt((2 * l + 1) / (4 * np.pi)) * eval_legendre(l, t) for l, a in enumerate(degree_coeffs))

    out = []
    for l in range(L + 1):
        re = quad(lambda t: np.real(profile(t)) * eval_legendre(l, t), -1, 1, epsabs=1e-12, limit=200)[0]
        im = quad(lambda t: np.imag(profile(t)) * eval_legendre(l, t), -1, 1, epsabs=1e-12, limit=200)[0]
        out.append(0.5 * complex(re, im))
    return np.array(out)


def _random_rotation(rng: np.random.Generator) -> tuple[float, float, float]:
    a, c = rng.uniform(0, 2 * np.pi, 2)
    b = np.arccos(rng.uniform(-1, 1))
    return float(a), float(b), float(c)


def sphere_suite(L: int = 8, seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    g = sphere_grid(L)
    G = so3_grid(L)
    a, b, c = G.angles()
    checks = []

    # Weil formula
    dev = sphere_weil_check(So3Function(G, np.ones(G.size))).deviation
    checks.append(_record("weil_constant", "Weil formula", dev, LINEAR_TOL))
    worst = 0.0
    for l in range(1, L + 1):
        for m in range(-l, l + 1):
            for n in range(-l, l + 1):
                w = sphere_weil_check(So3Function(G, wigner_D(l, m, n, a, b, c)))
                worst = max(worst, w.deviation, abs(w.lhs), abs(w.rhs))
    checks.append(_record("weil_wigner", "Weil formula", worst, LINEAR_TOL))
    F = random_so3_bandlimited(G, rng)
    w = sphere_weil_check(F)
    checks.append(_record("weil_random", "Weil formula", w.deviation, LINEAR_TOL,
                          lhs=[w.lhs.real, w.lhs.imag], rhs=[w.rhs.real, w.rhs.imag]))

    # T_H
    slack = max(0.0, sphere_l1(sphere_t_h(F)) - so3_l1(F))
    checks.append(_record("t_h_contraction", "T_H is an L1 contraction", slack, LINEAR_TOL))
    dev = float(np.max(np.abs(sphere_t_h(So3Function(G, np.exp(1j * c))).values)))
    checks.append(_record("t_h_character", "gamma average of a character", dev, LINEAR_TOL))

    # convolution
    phi, psi, chi = (random_bandlimited(g, rng) for _ in range(3))
    ones = zonal_function(g, [np.sqrt(4 * np.pi)])
    integral = complex(np.dot(g.weights, phi.values))
    dev = float(np.max(np.abs(sphere_convolve(phi, ones).values - integral)))
    checks.append(_record("convolve_constant", "convolution against a constant", dev, BILINEAR_TOL))

    a_l = rng.standard_normal(L + 1)
    zpsi = zonal_function(g, a_l)
    ls, _ = lm_index(L)
    lam = funk_hecke_factors(a_l, L)
    got = analyze(sphere_convolve(phi, zpsi))
    dev = float(np.max(np.abs(got - analyze(phi) * lam[ls])))
    checks.append(_record("zonal_multiplier", "zonal kernels act diagonally on harmonics", dev, BILINEAR_TOL))

    zphi = zonal_function(g, rng.standard_normal(L + 1))
    dev = zonal_deviation(sphere_convolve(zphi, zpsi))
    checks.append(_record("zonal_closure", "zonal * zonal is zonal", dev, ZONAL_TOL))

    dev = sphere_covariance_check(np.eye(3), phi, psi)
    checks.append(_record("covariance_identity", "left translation covariance", dev, LINEAR_TOL))
    dev = sphere_covariance_check(rot_z(0.7), zphi, zpsi)
    checks.append(_record("covariance_pole", "left translation covariance", dev, LINEAR_TOL))
    R = _random_rotation(rng)
    dev = sphere_covariance_check(R, phi, psi)
    checks.append(_record("covariance_random", "left translation covariance", dev, BILINEAR_TOL,
                          rotation=list(R)))

    lhs = sphere_convolve(sphere_convolve(phi, psi), chi)
    rhs = sphere_convolve(phi, sphere_convolve(psi, chi))
    dev = float(np.max(np.abs(lhs.values - rhs.values)))
    checks.append(_record("associativity", "Banach algebra", dev, BILINEAR_TOL))
    return checks
