"""Physical constants and the few unit conversions the package needs.

All values are CODATA 2018 unless noted.  We deliberately keep this a single
frozen record so every module pulls its numbers from one auditable place.

g is taken as standard gravity, 9.80665 m/s^2 (exact by definition).  The
quoted reference figures for the characteristic bouncer scales (l0 = 6.59 um,
eps0 = 4.78e-13 eV) are reproduced within their stated tolerances under this
choice.
"""

from __future__ import annotations

from dataclasses import dataclass

# CODATA 2018
_NEUTRON_MASS = 1.67492749804e-27  # kg
_HBAR = 1.054571817e-34  # J s (exact, derived from defined h)
_G_EARTH = 9.80665  # m/s^2, standard gravity (exact by definition)
_MU0_OVER_4PI = 1.00000000055e-7  # T m / A
_NEUTRON_MAGNETIC_MOMENT = 9.6623651e-27  # J/T, magnitude
_NEUTRON_LIFETIME = 885.7  # s, mean life of the free neutron at rest
_EV_PER_JOULE = 1.0 / 1.602176634e-19  # eV/J (eV is exact in SI)

JOULE_PER_EV = 1.602176634e-19

#: supported energy unit tags and their size in joules
_ENERGY_UNITS = {
    "J": 1.0,
    "eV": JOULE_PER_EV,
    "neV": JOULE_PER_EV * 1e-9,
}


@dataclass(frozen=True)
class PhysicalConstants:
    neutron_mass: float  # kg
    hbar: float  # J s
    g_earth: float  # m/s^2
    mu0_over_4pi: float  # T m / A
    neutron_magnetic_moment: float  # J/T, magnitude; sign applied at use site
    neutron_lifetime: float  # s
    ev_per_joule: float  # eV/J


_CONSTANTS = PhysicalConstants(
    neutron_mass=_NEUTRON_MASS,
    hbar=_HBAR,
    g_earth=_G_EARTH,
    mu0_over_4pi=_MU0_OVER_4PI,
    neutron_magnetic_moment=_NEUTRON_MAGNETIC_MOMENT,
    neutron_lifetime=_NEUTRON_LIFETIME,
    ev_per_joule=_EV_PER_JOULE,
)


def neutron_constants() -> PhysicalConstants:
    """Return the fixed constant set used throughout the package."""
    return _CONSTANTS


def convert_energy(value: float, from_unit: str, to_unit: str) -> float:
    """Convert an energy between J, eV and neV.

    Raises ValueError on an unknown unit tag.  Conversions are exact linear
    rescalings, so round trips are exact at machine precision.
    """
    try:
        scale_from = _ENERGY_UNITS[from_unit]
    except KeyError:
        raise ValueError(f"unknown energy unit {from_unit!r}") from None
    try:
        scale_to = _ENERGY_UNITS[to_unit]
    except KeyError:
        raise ValueError(f"unknown energy unit {to_unit!r}") from None
    if from_unit == to_unit:
        return value
    return value * (scale_from / scale_to)
