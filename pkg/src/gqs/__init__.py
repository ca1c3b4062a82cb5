"""Gravitational quantum states of ultracold neutrons.

Library + CLI for the bouncer/tilted-cavity eigenproblem (shifted Airy
eigenstates) and the feasibility calculus of producing spin-entangled
neutron pairs in such a cavity.
"""

from .airy import airy_ai, airy_ai_prime, airy_zero
from .bouncer1d import (
    Eigenstate1D,
    GravityScales,
    eigen_energy,
    moment,
    position_spread,
    scales,
    tail_probability,
    velocity_bounds,
    wavefunction,
)
from .cavity2d import (
    BounceStats,
    CavityState2D,
    DensityGrid,
    absorber_selectivity,
    bounce_statistics,
    cavity_state,
    density_grid,
    energy_gap,
    pair_mean_separation,
    resolution_time,
)
from .constants import PhysicalConstants, convert_energy, neutron_constants
from .experiment import (
    BeamSpec,
    ExperimentReport,
    chsh_value,
    coherence_length,
    decay_survival,
    dipole_interaction,
    full_report,
    hopper_geometry_check,
    monochromaticity_ok,
    pair_rate,
    singlet_correlation,
)

__version__ = "0.1.0"
