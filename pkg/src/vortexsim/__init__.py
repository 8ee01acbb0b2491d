"""Relativistic twisted-electron wavepackets in finite plane-wave laser pulses.

The package evolves Dirac wavefunctions of vortex (orbital-angular-momentum)
electron packets through a counterpropagating, linearly polarized laser pulse
by exact decomposition into Volkov states, and computes densities, coordinate
means, longitudinal currents, and angular-momentum statistics.  A classical
trajectory model serves as an independent cross-check.

All internal quantities are in Hartree atomic units (hbar = m_e = 1,
electron charge -1, c = 1/alpha).
"""

__version__ = "0.1.0"

from .units import CONSTANTS, PhysicalConstants
from .field import LaserPulse
from .beams import BeamSpec
from .evolve import MomentumAmplitude

__all__ = [
    "CONSTANTS",
    "PhysicalConstants",
    "LaserPulse",
    "BeamSpec",
    "MomentumAmplitude",
    "__version__",
]
