"""Dirac matrix algebra and constant bispinors in the standard representation.

Conventions fixed package-wide:
  * standard (Dirac) representation of alpha_i, beta, gamma^mu;
  * spin labels s = +1/2, -1/2 map to the two-spinors (1,0)^t and (0,1)^t
    quantized along z;
  * free bispinors normalized to u^dag u = 1 (not 2 eps), which is what makes
    the twisted-beam delta normalization come out with unit coefficient.

`a_coefficients` returns the three constant bispinors a_{-1}, a_0, a_{+1}
whose azimuthal harmonics assemble both the Bessel beams and, through

    u(p(phi), s) = 2^{-1/2} sum_k a_k e^{i k phi},

the plane-wave spinors on the momentum cone.  That identity is exact and is
exercised by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .units import C

# Pauli matrices
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

_Z2 = np.zeros((2, 2), dtype=complex)
_I2 = np.eye(2, dtype=complex)

ALPHA_X = np.block([[_Z2, SIGMA_X], [SIGMA_X, _Z2]])
ALPHA_Y = np.block([[_Z2, SIGMA_Y], [SIGMA_Y, _Z2]])
ALPHA_Z = np.block([[_Z2, SIGMA_Z], [SIGMA_Z, _Z2]])
BETA = np.block([[_I2, _Z2], [_Z2, -_I2]])

GAMMA0 = BETA
GAMMA1 = BETA @ ALPHA_X
GAMMA2 = BETA @ ALPHA_Y
GAMMA3 = BETA @ ALPHA_Z

# Spin operator Sigma_z = diag(sigma_z, sigma_z); eigenvalues +-1.
SIGMA_Z4 = np.block([[SIGMA_Z, _Z2], [_Z2, SIGMA_Z]])

# (gamma^0 + gamma^3) gamma^1: the light-front matrix in the Volkov spinor
# factor.  Equals (1 - alpha_z) alpha_x.
LIGHTFRONT_MATRIX = (GAMMA0 + GAMMA3) @ GAMMA1


def energy(p) -> np.ndarray:
    """Relativistic energy eps = c sqrt(c^2 + p^2) for p of shape (..., 3)."""
    p = np.asarray(p, dtype=float)
    return C * np.sqrt(C**2 + np.sum(p * p, axis=-1))


def _chi(s: float) -> np.ndarray:
    if s > 0:
        return np.array([1.0, 0.0], dtype=complex)
    return np.array([0.0, 1.0], dtype=complex)


def _sigma_dot(unit: np.ndarray) -> np.ndarray:
    """sigma . n for unit vectors of shape (..., 3) -> (..., 2, 2)."""
    n = np.asarray(unit)
    out = np.empty(n.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = n[..., 2]
    out[..., 0, 1] = n[..., 0] - 1j * n[..., 1]
    out[..., 1, 0] = n[..., 0] + 1j * n[..., 1]
    out[..., 1, 1] = -n[..., 2]
    return out


def bispinor_u(p, s: float) -> np.ndarray:
    """Positive-energy free bispinor, (c alpha.p + beta c^2) u = eps u.

    `p` has shape (..., 3); the result has shape (..., 4) and unit norm.
    """
    p = np.asarray(p, dtype=float)
    eps = energy(p)
    n_plus = np.sqrt((eps + C**2) / (2.0 * eps))
    n_minus = np.sqrt((eps - C**2) / (2.0 * eps))
    pn = np.linalg.norm(p, axis=-1)
    safe = np.where(pn == 0.0, 1.0, pn)
    unit = p / safe[..., None]
    chi = _chi(s)
    low = np.einsum("...ij,j->...i", _sigma_dot(unit), chi)
    out = np.empty(p.shape[:-1] + (4,), dtype=complex)
    out[..., :2] = n_plus[..., None] * chi
    out[..., 2:] = n_minus[..., None] * low
    # p = 0: rest-frame spinor (upper components only)
    at_rest = pn == 0.0
    if np.any(at_rest):
        out[at_rest, 2:] = 0.0
    return out


def bispinor_v(p, s: float) -> np.ndarray:
    """Negative-energy free bispinor, (c alpha.p + beta c^2) v = -eps v.

    Orthogonal to u at the same momentum: u^dag(p, s) v(p, s') = 0.
    """
    p = np.asarray(p, dtype=float)
    eps = energy(p)
    n_plus = np.sqrt((eps + C**2) / (2.0 * eps))
    n_minus = np.sqrt((eps - C**2) / (2.0 * eps))
    pn = np.linalg.norm(p, axis=-1)
    safe = np.where(pn == 0.0, 1.0, pn)
    unit = p / safe[..., None]
    chi = _chi(s)
    up = np.einsum("...ij,j->...i", _sigma_dot(unit), chi)
    out = np.empty(p.shape[:-1] + (4,), dtype=complex)
    out[..., :2] = -n_minus[..., None] * up
    out[..., 2:] = n_plus[..., None] * chi
    at_rest = pn == 0.0
    if np.any(at_rest):
        out[at_rest, :2] = 0.0
    return out


@dataclass(frozen=True)
class SpinorCoefficients:
    """Constant bispinors a_{-1}, a_0, a_{+1} of a twisted beam.

    Components are real in this phase convention (the i^k factors of the
    beam live elsewhere); a_{-1} and a_{+1} each have a single nonzero entry.
    Arrays broadcast over the longitudinal momentum, shape (..., 4).
    """

    a_minus1: np.ndarray
    a_0: np.ndarray
    a_plus1: np.ndarray

    def stacked(self) -> np.ndarray:
        """Shape (3, ..., 4), ordered k = -1, 0, +1."""
        return np.stack([self.a_minus1, self.a_0, self.a_plus1])


def a_coefficients(p_par, p_perp: float, s: float) -> SpinorCoefficients:
    """Beam spinor coefficients for longitudinal momentum p_par (array ok).

    Requires p_perp > 0 (at p_perp = 0 the Bessel beam degenerates to a plane
    wave and the opening angle is undefined).
    """
    if p_perp <= 0.0:
        raise ValueError(f"p_perp must be > 0, got {p_perp}")
    if abs(abs(s) - 0.5) > 1e-12:
        raise ValueError(f"spin must be +-1/2, got {s}")
    p_par = np.asarray(p_par, dtype=float)
    p = np.hypot(p_par, p_perp)
    eps = C * np.sqrt(C**2 + p * p)
    cos_t = p_par / p
    sin_t = p_perp / p
    delta = (1.0 - C**2 / eps) * sin_t**2
    sqrt_p = np.sqrt(1.0 + C**2 / eps)
    sqrt_m = np.sqrt(1.0 - C**2 / eps)
    shape = p_par.shape + (4,)
    a0 = np.zeros(shape, dtype=complex)
    am1 = np.zeros(shape, dtype=complex)
    ap1 = np.zeros(shape, dtype=complex)
    if s > 0:  # w = (1, 0)
        a0[..., 0] = sqrt_p
        a0[..., 2] = sqrt_m * cos_t
        ap1[..., 3] = np.sqrt(delta)
    else:      # w = (0, 1)
        a0[..., 1] = sqrt_p
        a0[..., 3] = -sqrt_m * cos_t
        am1[..., 2] = np.sqrt(delta)
    return SpinorCoefficients(am1, a0, ap1)


def cone_bispinor(p_par, p_perp: float, phi_p, s: float) -> np.ndarray:
    """u(p, s) on the momentum cone via the a_k harmonic identity.

    Equivalent to bispinor_u at p = (p_perp cos phi_p, p_perp sin phi_p,
    p_par), broadcasting p_par against phi_p; much cheaper for tables.
    """
    coeffs = a_coefficients(p_par, p_perp, s)
    phi_p = np.asarray(phi_p, dtype=float)
    e = np.exp(1j * phi_p)
    am1, a0, ap1 = coeffs.a_minus1, coeffs.a_0, coeffs.a_plus1
    return (am1[..., None, :] / e[:, None]
            + a0[..., None, :]
            + ap1[..., None, :] * e[:, None]) / np.sqrt(2.0)
