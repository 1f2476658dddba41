"""Quadrature backend for G = SO(3), H = SO(2), G/H = S^2.

Rotations use the ZYZ Euler convention ``R(a, b, c) = Rz(a) Ry(b) Rz(c)``.
The stabiliser of the north pole is ``{Rz(c)}`` and ``R(a, b, c)`` sends
the pole to the sphere point with polar angle ``b`` and azimuth ``a``.

Grids for bandwidth ``L`` use ``n = 2L + 2`` points per angle:
Gauss-Legendre in ``cos(b)`` and uniform in ``a`` and ``c``. Both measures
are normalised to total mass 1. Products of two degree-``L`` functions are
integrated exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import sph_harm_y

from .errors import FormatError, GridError

MAX_L = 16
OUTPUT_CHUNK = 36

# tolerances used by the sphere checks
LINEAR_TOL = 1e-10
BILINEAR_TOL = 1e-6
ZONAL_TOL = 1e-8


# ---------------------------------------------------------------------------
# grids


@dataclass(frozen=True, eq=False)
class SphereGrid:
    """Nodes ``(theta_k, phi_j)`` in theta-major order with normalised weights."""

    L: int
    theta: np.ndarray
    phi: np.ndarray
    weights: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.theta), len(self.phi)

    @property
    def size(self) -> int:
        return len(self.theta) * len(self.phi)

    def angles(self) -> tuple[np.ndarray, np.ndarray]:
        th, ph = np.meshgrid(self.theta, self.phi, indexing="ij")
        return th.ravel(), ph.ravel()

    def points(self) -> np.ndarray:
        return sphere_point(*self.angles())

    def same_as(self, other: SphereGrid) -> bool:
        return self is other or (self.L == other.L and self.shape == other.shape)


@dataclass(frozen=True, eq=False)
class So3Grid:
    """Nodes ``(alpha, beta, gamma)`` in (beta, alpha, gamma) C-order.

    Averaging over the trailing gamma axis maps onto :attr:`sphere`
    node-for-node: beta is the polar angle, alpha the azimuth.
    """

    L: int
    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray
    weights: np.ndarray
    sphere: SphereGrid

    @property
    def shape(self) -> tuple[int, int, int]:
        return len(self.beta), len(self.alpha), len(self.gamma)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    def angles(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        b, a, c = np.meshgrid(self.beta, self.alpha, self.gamma, indexing="ij")
        return a.ravel(), b.ravel(), c.ravel()

    def same_as(self, other: So3Grid) -> bool:
        return self is other or (self.L == other.L and self.shape == other.shape)


def _check_L(L: int) -> None:
    if not isinstance(L, (int, np.integer)) or L < 1:
        raise GridError(f"bandwidth L must be a positive integer, got {L!r} (degenerate grid)")
    if L > MAX_L:
        raise GridError(f"bandwidth L={L} exceeds the limit {MAX_L}")


@lru_cache(maxsize=None)
def sphere_grid(L: int) -> SphereGrid:
    _check_L(L)
    n = 2 * L + 2
    x, w = np.polynomial.legendre.leggauss(n)
    # ascending theta
    theta = np.arccos(x)[::-1].copy()
    wt = (w / 2.0)[::-1].copy()
    phi = 2 * np.pi * np.arange(n) / n
    weights = np.repeat(wt, n) / n
    return SphereGrid(L, theta, phi, weights)


@lru_cache(maxsize=None)
def so3_grid(L: int) -> So3Grid:
    s = sphere_grid(L)
    n = len(s.phi)
    gamma = 2 * np.pi * np.arange(n) / n
    weights = np.repeat(s.weights, n) / n
    return So3Grid(L, s.phi.copy(), s.theta.copy(), gamma, weights, s)


# ---------------------------------------------------------------------------
# functions


@dataclass(frozen=True, eq=False)
class SphereFunction:
    grid: SphereGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.grid.size,):
            raise GridError(f"expected {self.grid.size} values, got shape {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise GridError("sphere function has non-finite values")
        object.__setattr__(self, "values", vals)

    def __add__(self, other):
        _same_sphere(self, other)
        return SphereFunction(self.grid, self.values + other.values)

    def __sub__(self, other):
        _same_sphere(self, other)
        return SphereFunction(self.grid, self.values - other.values)

    def scale(self, c) -> SphereFunction:
        return SphereFunction(self.grid, c * self.values)

    def as_array(self) -> np.ndarray:
        return self.values.reshape(self.grid.shape)


@dataclass(frozen=True, eq=False)
class So3Function:
    grid: So3Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.grid.size,):
            raise GridError(f"expected {self.grid.size} values, got shape {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise GridError("SO(3) function has non-finite values")
        object.__setattr__(self, "values", vals)


def _same_sphere(a: SphereFunction, b: SphereFunction) -> None:
    if not a.grid.same_as(b.grid):
        raise GridError("sphere functions live on different grids")


# ---------------------------------------------------------------------------
# geometry


def sphere_point(theta, phi) -> np.ndarray:
    theta, phi = np.asarray(theta), np.asarray(phi)
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def point_angles(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    theta = np.arccos(np.clip(v[..., 2], -1.0, 1.0))
    phi = np.mod(np.arctan2(v[..., 1], v[..., 0]), 2 * np.pi)
    return theta, phi


def rot_z(a) -> np.ndarray:
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def rot_y(b) -> np.ndarray:
    c, s = np.cos(b), np.sin(b)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def euler_zyz(alpha: float, beta: float, gamma: float) -> np.ndarray:
    return rot_z(alpha) @ rot_y(beta) @ rot_z(gamma)


def _as_rotation(R) -> np.ndarray:
    R = np.asarray(R, dtype=float)
    if R.shape == (3,):
        return euler_zyz(*R)
    if R.shape != (3, 3) or not np.allclose(R @ R.T, np.eye(3), atol=1e-12):
        raise GridError("rotation must be an Euler triple or an orthogonal 3x3 matrix")
    return R


# ---------------------------------------------------------------------------
# harmonics


def lm_index(L: int) -> tuple[np.ndarray, np.ndarray]:
    ls = np.array([l for l in range(L + 1) for _ in range(-l, l + 1)])
    ms = np.array([m for l in range(L + 1) for m in range(-l, l + 1)])
    return ls, ms


def harmonic_matrix(L: int, theta, phi) -> np.ndarray:
    """``Y[p, i] = Y_{l_i m_i}(theta_p, phi_p)``, orthonormal on the unit sphere."""
    ls, ms = lm_index(L)
    return sph_harm_y(ls[None, :], ms[None, :], np.asarray(theta)[:, None], np.asarray(phi)[:, None])


def analyze(f: SphereFunction) -> np.ndarray:
    """Coefficients ``c_lm`` with ``f = sum c_lm Y_lm`` (exact for degree <= L)."""
    g = f.grid
    Y = harmonic_matrix(g.L, *g.angles())
    return 4 * np.pi * (Y.conj().T @ (g.weights * f.values))


def synthesize(coeffs: np.ndarray, grid: SphereGrid) -> SphereFunction:
    return SphereFunction(grid, harmonic_matrix(grid.L, *grid.angles()) @ coeffs)


def evaluate(coeffs: np.ndarray, L: int, theta, phi) -> np.ndarray:
    return harmonic_matrix(L, theta, phi) @ coeffs


def zonal_function(grid: SphereGrid, degree_coeffs) -> SphereFunction:
    """``sum_l a_l Y_l0``."""
    ls, ms = lm_index(grid.L)
    c = np.zeros(len(ls), dtype=complex)
    for l, a in enumerate(degree_coeffs):
        if l > grid.L:
            raise GridError(f"degree {l} exceeds grid bandwidth {grid.L}")
        c[l * l + l] = a
    return synthesize(c, grid)


def random_bandlimited(grid: SphereGrid, rng: np.random.Generator, L: int | None = None) -> SphereFunction:
    L = grid.L if L is None else L
    ls, _ = lm_index(grid.L)
    c = rng.standard_normal(len(ls)) + 1j * rng.standard_normal(len(ls))
    c[ls > L] = 0
    return synthesize(c, grid)


def wigner_small_d(l: int, m: int, n: int, beta) -> np.ndarray:
    """``d^l_{mn}(beta)`` from the explicit factorial sum."""
    beta = np.asarray(beta, dtype=float)
    c, s = np.cos(beta / 2), np.sin(beta / 2)
    f = math.factorial
    pref = math.sqrt(f(l + m) * f(l - m) * f(l + n) * f(l - n))
    out = np.zeros_like(beta)
    for k in range(max(0, n - m), min(l + n, l - m) + 1):
        den = f(l + n - k) * f(k) * f(m - n + k) * f(l - m - k)
        out = out + (-1) ** (m - n + k) * pref / den * c ** (2 * l + n - m - 2 * k) * s ** (m - n + 2 * k)
    return out


def wigner_D(l: int, m: int, n: int, alpha, beta, gamma) -> np.ndarray:
    """``D^l_{mn}(a, b, c) = exp(-i m a) d^l_{mn}(b) exp(-i n c)``."""
    return np.exp(-1j * m * np.asarray(alpha)) * wigner_small_d(l, m, n, beta) * np.exp(-1j * n * np.asarray(gamma))


def so3_from_wigner(grid: So3Grid, coeffs: dict) -> So3Function:
    """``sum c_{lmn} D^l_{mn}`` sampled on the grid; keys are ``(l, m, n)``."""
    a, b, c = grid.angles()
    vals = np.zeros(grid.size, dtype=complex)
    for (l, m, n), coef in coeffs.items():
        vals += coef * wigner_D(l, m, n, a, b, c)
    return So3Function(grid, vals)


def random_so3_bandlimited(grid: So3Grid, rng: np.random.Generator, L: int | None = None) -> So3Function:
    L = grid.L if L is None else L
    coeffs = {}
    for l in range(L + 1):
        for m in range(-l, l + 1):
            for n in range(-l, l + 1):
                coeffs[(l, m, n)] = complex(rng.standard_normal(), rng.standard_normal()) / (2 * l + 1)
    return so3_from_wigner(grid, coeffs)


# ---------------------------------------------------------------------------
# operators


def sphere_t_h(F: So3Function, sphere: SphereGrid | None = None) -> SphereFunction:
    """Average over the gamma ring: ``T_H(F)(x.pole) = (1/2pi) int F(x Rz(c)) dc``."""
    g = F.grid
    if sphere is None:
        sphere = g.sphere
    if not sphere.same_as(g.sphere):
        raise GridError("sphere grid nodes are not the gamma-orbit representatives of the SO(3) grid")
    return SphereFunction(sphere, F.values.reshape(g.shape).mean(axis=-1).ravel())


def sphere_lift(phi: SphereFunction, grid: So3Grid | None = None) -> So3Function:
    """``phi o pi``: constant along each gamma ring."""
    if grid is None:
        grid = so3_grid(phi.grid.L)
    if not grid.sphere.same_as(phi.grid):
        raise GridError("SO(3) grid does not sit over this sphere grid")
    return So3Function(grid, np.repeat(phi.values, len(grid.gamma)))


def _rotated_evaluation_points(out_pts: np.ndarray, grid: So3Grid) -> np.ndarray:
    """``Ry(-b) Rz(-a) u`` for output points ``u`` and grid (b, a): shape (P, nb, na, 3)."""
    ca, sa = np.cos(grid.alpha), np.sin(grid.alpha)
    x, y, z = out_pts[:, 0, None], out_pts[:, 1, None], out_pts[:, 2, None]
    # Rz(-a) u
    wx = ca * x + sa * y
    wy = -sa * x + ca * y
    wz = np.broadcast_to(z, wx.shape)
    cb, sb = np.cos(grid.beta)[None, :, None], np.sin(grid.beta)[None, :, None]
    wx, wy, wz = wx[:, None, :], wy[:, None, :], wz[:, None, :]
    # Ry(-b) w
    vx = cb * wx - sb * wz
    vz = sb * wx + cb * wz
    vy = np.broadcast_to(wy, vx.shape)
    return np.stack([vx, vy, vz], axis=-1)


def _lifted_convolution_on_pole_orbits(phi: SphereFunction, psi: SphereFunction, grid: So3Grid) -> np.ndarray:
    """``(phi_pi * psi_pi)(x)`` for ``x = R(a, b, 0)`` at every sphere node.

    Direct quadrature sum over all SO(3) nodes ``y``:
    ``sum_y w_y phi(y.pole) psi(y^-1 x.pole)``. ``psi`` is evaluated off-grid
    through its degree-L harmonic expansion; the gamma dependence enters as
    the phase ``exp(-i m c)``.
    """
    L = grid.L
    ls, ms = lm_index(L)
    coeffs = analyze(psi)
    nb, na, nc = grid.shape
    phase = np.exp(-1j * np.arange(-L, L + 1)[:, None] * grid.gamma[None, :])  # (2L+1, nc)
    w = grid.weights.reshape(nb, na, nc)
    phi_at_y = phi.values.reshape(nb, na)  # phi(y.pole) depends on (b, a)
    weight_phi = w * phi_at_y[:, :, None]
    m_cols = ms + L
    out_pts = phi.grid.points()
    out = np.empty(len(out_pts), dtype=complex)
    for start in range(0, len(out_pts), OUTPUT_CHUNK):
        pts = out_pts[start:start + OUTPUT_CHUNK]
        v = _rotated_evaluation_points(pts, grid)  # (P, nb, na, 3)
        th, ph = point_angles(v.reshape(-1, 3))
        Y = harmonic_matrix(L, th, ph) * coeffs[None, :]
        g_m = np.zeros((Y.shape[0], 2 * L + 1), dtype=complex)
        np.add.at(g_m.T, m_cols, Y.T)
        psi_vals = (g_m @ phase).reshape(len(pts), nb, na, nc)
        out[start:start + len(pts)] = np.einsum("pbac,bac->p", psi_vals, weight_phi)
    return out


def sphere_convolve(phi: SphereFunction, psi: SphereFunction) -> SphereFunction:
    """``T_H(phi_pi * psi_pi)`` via quadrature on the matching SO(3) grid."""
    _same_sphere(phi, psi)
    grid = so3_grid(phi.grid.L)
    pole_values = _lifted_convolution_on_pole_orbits(phi, psi, grid)
    # phi_pi * psi_pi is right-H-invariant: its value at R(a, b, c) equals the value at R(a, b, 0)
    lifted = So3Function(grid, np.repeat(pole_values, len(grid.gamma)))
    return sphere_t_h(lifted, phi.grid)


def rotate(phi: SphereFunction, R) -> SphereFunction:
    """``(L_R phi)(w) = phi(R^-1 w)``, resampled through the harmonic expansion."""
    R = _as_rotation(R)
    g = phi.grid
    pts = g.points() @ R  # rows are R^T w = R^-1 w
    th, ph = point_angles(pts)
    return SphereFunction(g, evaluate(analyze(phi), g.L, th, ph))


def sphere_covariance_check(R, phi: SphereFunction, psi: SphereFunction) -> float:
    """Max deviation between ``L_R(phi*psi)`` and ``(L_R phi)*psi``."""
    lhs = rotate(sphere_convolve(phi, psi), R)
    rhs = sphere_convolve(rotate(phi, R), psi)
    return float(np.max(np.abs(lhs.values - rhs.values)))


@dataclass(frozen=True)
class SphereWeil:
    lhs: complex
    rhs: complex
    deviation: float


def sphere_integral(phi: SphereFunction) -> complex:
    return complex(np.dot(phi.grid.weights, phi.values))


def so3_integral(F: So3Function) -> complex:
    return complex(np.dot(F.grid.weights, F.values))


def sphere_weil_check(F: So3Function) -> SphereWeil:
    lhs = sphere_integral(sphere_t_h(F))
    rhs = so3_integral(F)
    return SphereWeil(lhs, rhs, abs(lhs - rhs))


def sphere_l1(phi: SphereFunction) -> float:
    return float(np.dot(phi.grid.weights, np.abs(phi.values)))


def so3_l1(F: So3Function) -> float:
    return float(np.dot(F.grid.weights, np.abs(F.values)))


def zonal_deviation(phi: SphereFunction) -> float:
    """Largest departure from constancy along the latitude rings."""
    a = phi.as_array()
    return float(np.max(np.abs(a - a.mean(axis=1, keepdims=True))))


# ---------------------------------------------------------------------------
# JSON


def sphere_to_json(phi: SphereFunction) -> dict:
    nt, nph = phi.grid.shape
    return {
        "L": int(phi.grid.L),
        "theta_nodes": nt,
        "phi_nodes": nph,
        "values": [[float(v.real), float(v.imag)] for v in phi.values],
    }


def sphere_from_json(payload: dict) -> SphereFunction:
    try:
        L = int(payload["L"])
        values = payload["values"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"sphere JSON needs 'L' and 'values': {exc}") from exc
    grid = sphere_grid(L)
    nt, nph = grid.shape
    if payload.get("theta_nodes", nt) != nt or payload.get("phi_nodes", nph) != nph:
        raise FormatError(f"node counts do not match the L={L} grid ({nt} x {nph})")
    try:
        arr = np.array([complex(float(re), float(im)) for re, im in values])
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad sphere values: {exc}") from exc
    if arr.shape != (grid.size,):
        raise FormatError(f"expected {grid.size} values, got {arr.shape[0]}")
    return SphereFunction(grid, arr)
