"""Atomic-unit conventions and conversions from lab units.

Everything downstream runs in Hartree atomic units (hbar = m_e = 1, electron
charge -1), where the speed of light is 1/alpha.  Lab units (W/cm^2 for the
laser intensity, keV for the electron kinetic energy) appear only at scenario
parse time and in reports.  Constants are pinned to CODATA-2018 so results are
reproducible bit-for-bit across machines.

Peak intensity and field amplitude are related by I = E^2 / (8 pi alpha) in
atomic units, the convention used for a linearly polarized plane wave.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# CODATA-2018
_ALPHA = 7.2973525693e-3            # fine-structure constant
_HARTREE_EV = 27.211386245988       # hartree in eV
_EFIELD_AU_VPM = 5.14220674763e11   # atomic unit of electric field, V/m
_EPS0 = 8.8541878128e-12            # vacuum permittivity, F/m
_C_SI = 2.99792458e8                # speed of light, m/s

# Intensity of a 1-a.u. peak field, W/cm^2: I = eps0 c E^2 / 2.
_I_PEAKFIELD_WCM2 = 0.5 * _EPS0 * _C_SI * _EFIELD_AU_VPM**2 * 1e-4


@dataclass(frozen=True)
class PhysicalConstants:
    """Pinned unit-system constants (all strictly positive)."""

    c: float                     # speed of light in a.u. (= 1/alpha)
    alpha: float                 # fine-structure constant
    intensity_au_to_Wcm2: float  # 1 a.u. of intensity in W/cm^2
    energy_au_to_keV: float      # 1 hartree in keV

    def __post_init__(self) -> None:
        if abs(self.c * self.alpha - 1.0) > 1e-12:
            raise ValueError("c and alpha are inconsistent")
        for name in ("c", "alpha", "intensity_au_to_Wcm2", "energy_au_to_keV"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")


CONSTANTS = PhysicalConstants(
    c=1.0 / _ALPHA,
    alpha=_ALPHA,
    # Defined so that I[a.u.] = E^2/(8 pi alpha) with E in a.u. maps a unit
    # peak field to _I_PEAKFIELD_WCM2.
    intensity_au_to_Wcm2=8.0 * math.pi * _ALPHA * _I_PEAKFIELD_WCM2,
    energy_au_to_keV=_HARTREE_EV * 1e-3,
)

C = CONSTANTS.c


def intensity_to_field(intensity_Wcm2: float) -> float:
    """Peak field amplitude in a.u. for a peak intensity in W/cm^2."""
    if intensity_Wcm2 < 0.0:
        raise ValueError(f"intensity must be >= 0, got {intensity_Wcm2}")
    i_au = intensity_Wcm2 / CONSTANTS.intensity_au_to_Wcm2
    return math.sqrt(8.0 * math.pi * CONSTANTS.alpha * i_au)


def field_to_intensity(e_star: float) -> float:
    """Peak intensity in W/cm^2 for a peak field amplitude in a.u."""
    if e_star < 0.0:
        raise ValueError(f"field amplitude must be >= 0, got {e_star}")
    i_au = e_star**2 / (8.0 * math.pi * CONSTANTS.alpha)
    return i_au * CONSTANTS.intensity_au_to_Wcm2


def kinetic_energy_to_momentum(e_kin_keV: float) -> float:
    """|p| in a.u. solving eps = c sqrt(c^2 + p^2) = c^2 + E_kin."""
    if e_kin_keV < 0.0:
        raise ValueError(f"kinetic energy must be >= 0, got {e_kin_keV}")
    e_au = e_kin_keV / CONSTANTS.energy_au_to_keV
    # p = sqrt(eps^2 - c^4)/c written to avoid cancellation at small E_kin.
    return math.sqrt(e_au * (e_au + 2.0 * C**2)) / C


def momentum_to_kinetic_energy(p_au: float) -> float:
    """Kinetic energy in keV of an electron with momentum |p| in a.u."""
    if p_au < 0.0:
        raise ValueError(f"momentum must be >= 0, got {p_au}")
    # eps - c^2 = c p^2 / (sqrt(c^2 + p^2) + c), cancellation-free.
    e_au = C * p_au**2 / (math.sqrt(C**2 + p_au**2) + C)
    return e_au * CONSTANTS.energy_au_to_keV


def momentum_components(p_au: float, theta0: float) -> tuple[float, float]:
    """(p_parallel, p_perp) from |p| and the opening angle theta0."""
    return p_au * math.cos(theta0), p_au * math.sin(theta0)
