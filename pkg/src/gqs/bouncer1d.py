"""One-dimensional gravitational bouncer above a perfect mirror.

A particle of mass m in the potential V(x) = m * g_eff * x for x >= 0 with a
hard wall at x = 0 has eigenfunctions that are shifted Airy functions,

    psi_n(x) = N_n * Ai(x / l0 - alpha_n),      E_n = alpha_n * eps0,

where l0 and eps0 are the characteristic length and energy of the problem and
alpha_n is the nth zero of Ai on the negative axis.  Everything here is exact
up to quadrature: normalization, moments, spreads and tail probabilities are
computed by adaptive quadrature on a truncated domain [0, (alpha_n + 12) l0];
the Airy tail beyond that point decays super-exponentially and contributes
less than 1e-12 of any integral.

g_eff is an explicit parameter: the vertical bouncer uses g, the tilted
square cavity uses g / sqrt(2) per axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .airy import airy_ai, airy_ai_prime, airy_zero
from .constants import neutron_constants
from .quadrature import integrate

__all__ = [
    "GravityScales",
    "Eigenstate1D",
    "scales",
    "eigen_energy",
    "wavefunction",
    "moment",
    "position_spread",
    "tail_probability",
    "velocity_bounds",
    "velocity_spread",
]

#: truncation point of all quadrature domains, in units of l0 past alpha_n
_TAIL_MARGIN = 12.0


@dataclass(frozen=True)
class GravityScales:
    """Characteristic length and energy of the bouncer for a given gravity."""

    g_eff: float  # m/s^2
    l0: float  # m
    eps0: float  # J

    @property
    def eps0_ev(self) -> float:
        return self.eps0 * neutron_constants().ev_per_joule


def scales(g_eff: float) -> GravityScales:
    """Characteristic scales l0 = (hbar^2/(2 m^2 g))^(1/3), eps0 = (m g^2 hbar^2/2)^(1/3)."""
    if not (g_eff > 0):
        raise ValueError(f"effective gravity must be positive, got {g_eff!r}")
    c = neutron_constants()
    l0 = (c.hbar**2 / (2.0 * c.neutron_mass**2 * g_eff)) ** (1.0 / 3.0)
    eps0 = (c.neutron_mass * g_eff**2 * c.hbar**2 / 2.0) ** (1.0 / 3.0)
    return GravityScales(g_eff=g_eff, l0=l0, eps0=eps0)


def eigen_energy(n: int, sc: GravityScales) -> float:
    """E_n = alpha_n * eps0 in joules."""
    return airy_zero(n) * sc.eps0


@dataclass(frozen=True)
class Eigenstate1D:
    """Normalized bouncer eigenstate; callable as psi(x) with x in metres."""

    n: int
    alpha_n: float
    energy: float  # J
    norm_const: float  # m^(-1/2)
    scales: GravityScales

    def __call__(self, x):
        xs = np.asarray(x, dtype=float)
        amp = np.zeros_like(xs)
        it = np.nditer(xs, flags=["multi_index"])
        for val in it:
            v = float(val)
            # hard wall: zero below the mirror, and exactly zero on it
            # (Ai(-alpha_n) is only zero up to the zero-finder tolerance)
            if v > 0.0:
                amp[it.multi_index] = self.norm_const * airy_ai(v / self.scales.l0 - self.alpha_n)
        if np.isscalar(x) or xs.ndim == 0:
            return float(amp)
        return amp

    @property
    def domain_cutoff(self) -> float:
        """Upper quadrature limit; the state is numerically zero beyond it."""
        return (self.alpha_n + _TAIL_MARGIN) * self.scales.l0


def wavefunction(n: int, sc: GravityScales) -> Eigenstate1D:
    """Build the normalized nth eigenstate.

    The normalization constant comes from adaptive quadrature of Ai^2 and is
    cross-checked against the closed form 1/(sqrt(l0) * |Ai'(-alpha_n)|);
    disagreement beyond 1e-6 relative means the quadrature went wrong and is
    reported as an error rather than silently accepted.
    """
    if n < 0:
        raise ValueError("quantum number must be non-negative")
    alpha = airy_zero(n)
    l0 = sc.l0
    upper = (alpha + _TAIL_MARGIN) * l0

    def ai_sq(x: float) -> float:
        v = airy_ai(x / l0 - alpha)
        return v * v

    norm_integral = integrate(ai_sq, 0.0, upper)
    norm = 1.0 / math.sqrt(norm_integral)
    analytic = 1.0 / (math.sqrt(l0) * abs(airy_ai_prime(-alpha)))
    if abs(norm - analytic) > 1e-6 * analytic:
        raise ArithmeticError(
            f"normalization quadrature for n={n} disagrees with the analytic "
            f"constant: {norm:.12e} vs {analytic:.12e}"
        )
    return Eigenstate1D(
        n=n, alpha_n=alpha, energy=alpha * sc.eps0, norm_const=norm, scales=sc
    )


def moment(state: Eigenstate1D, k: int) -> float:
    """<x^k> for k in {1, 2, 3, 4}, by adaptive quadrature."""
    if k not in (1, 2, 3, 4):
        raise ValueError(f"moment power must be in 1..4, got {k!r}")
    upper = state.domain_cutoff

    def integrand(x: float) -> float:
        a = state(x)
        return x**k * a * a

    # abs tolerance rescaled to the integrand's magnitude; rel_tol dominates
    return integrate(integrand, 0.0, upper, abs_tol=1e-12 * upper**k, rel_tol=1e-10)


def position_spread(state: Eigenstate1D) -> float:
    """Delta x = sqrt(<x^2> - <x>^2)."""
    m1 = moment(state, 1)
    m2 = moment(state, 2)
    return math.sqrt(m2 - m1 * m1)


def tail_probability(state: Eigenstate1D, cutoff: float) -> float:
    """Probability mass beyond the cutoff height, integral of psi^2 over [cutoff, inf)."""
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    upper = state.domain_cutoff
    if cutoff >= upper:
        return 0.0

    def density(x: float) -> float:
        a = state(x)
        return a * a

    p = integrate(density, cutoff, upper)
    return min(max(p, 0.0), 1.0)


def velocity_bounds(state: Eigenstate1D) -> tuple[float, float]:
    """(v_max, delta_v_min): classical turning-point speed and the Heisenberg
    lower bound hbar/(2 m Delta x) on the velocity spread."""
    c = neutron_constants()
    v_max = math.sqrt(2.0 * state.energy / c.neutron_mass)
    dv_min = c.hbar / (2.0 * c.neutron_mass * position_spread(state))
    return v_max, dv_min


def velocity_spread(state: Eigenstate1D) -> float:
    """Actual rms velocity spread sqrt(<v^2>) of the eigenstate.

    For the linear potential the virial theorem gives <T> = E/3, hence
    <p^2> = 2 m E / 3 and Delta v = sqrt(2 E / (3 m)) = v_max / sqrt(3)
    (the mean velocity vanishes in a stationary state).
    """
    c = neutron_constants()
    return math.sqrt(2.0 * state.energy / (3.0 * c.neutron_mass))
