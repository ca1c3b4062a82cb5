"""Product eigenstates of the tilted rectangular cavity.

The cavity's two lower surfaces are mirrors and form a right-angle trough
tilted so that gravity projects equally on both transverse axes; each axis
then behaves as an independent 1D bouncer with g_eff = g / sqrt(2), and

    Psi_{n,m}(x, y) = psi_n(x) * psi_m(y),       E_{n,m} = E_n + E_m.

This module builds those product states, their Fig.-2-style density grids,
the resolution time hbar / (E_{0,1} - E_{0,0}), a static absorber-overlap
selectivity metric, the two-particle mean separation, and bounce-counting
statistics inside the cavity.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .bouncer1d import (
    Eigenstate1D,
    GravityScales,
    eigen_energy,
    position_spread,
    tail_probability,
    velocity_spread,
    wavefunction,
)
from .constants import neutron_constants

__all__ = [
    "CavityState2D",
    "DensityGrid",
    "BounceStats",
    "cavity_state",
    "energy_gap",
    "resolution_time",
    "density_grid",
    "absorber_selectivity",
    "pair_mean_separation",
    "bounce_statistics",
]


@dataclass(frozen=True)
class CavityState2D:
    n: int
    m: int
    x_state: Eigenstate1D
    y_state: Eigenstate1D

    @property
    def energy(self) -> float:
        """E_{n,m} = E_n + E_m in joules."""
        return self.x_state.energy + self.y_state.energy

    def __call__(self, x, y):
        return self.x_state(x) * self.y_state(y)


def cavity_state(n: int, m: int, sc: GravityScales) -> CavityState2D:
    """Product eigenstate Psi_{n,m} for the given per-axis gravity scales."""
    if n < 0 or m < 0:
        raise ValueError("quantum numbers must be non-negative")
    x_state = wavefunction(n, sc)
    y_state = x_state if m == n else wavefunction(m, sc)
    return CavityState2D(n=n, m=m, x_state=x_state, y_state=y_state)


def energy_gap(sc: GravityScales) -> float:
    """E_{0,1} - E_{0,0} = (alpha_1 - alpha_0) * eps0, in joules."""
    return eigen_energy(1, sc) - eigen_energy(0, sc)


def resolution_time(sc: GravityScales) -> float:
    """Minimal dwell time needed to resolve the ground state from the first
    excited level: hbar / (E_{0,1} - E_{0,0})."""
    return neutron_constants().hbar / energy_gap(sc)


@dataclass(frozen=True)
class DensityGrid:
    """|Psi_{n,m}|^2 sampled on a rectangular grid, axes and values in l0 units."""

    n: int
    m: int
    extent: tuple[float, float]  # (x_max, y_max) in units of l0
    resolution: tuple[int, int]  # (nx, ny)
    values: np.ndarray  # shape (nx, ny), units l0^-2

    def axis_x(self) -> np.ndarray:
        return np.linspace(0.0, self.extent[0], self.resolution[0])

    def axis_y(self) -> np.ndarray:
        return np.linspace(0.0, self.extent[1], self.resolution[1])

    def riemann_sum(self) -> float:
        hx = self.extent[0] / (self.resolution[0] - 1)
        hy = self.extent[1] / (self.resolution[1] - 1)
        return float(self.values.sum() * hx * hy)

    def to_csv(self) -> str:
        """Serialize row-major with 12 significant digits."""
        out = io.StringIO()
        out.write("# n,m,extent_x,extent_y,nx,ny\n")
        out.write(
            f"# {self.n},{self.m},{self.extent[0]:.12g},{self.extent[1]:.12g},"
            f"{self.resolution[0]},{self.resolution[1]}\n"
        )
        xs = self.axis_x()
        ys = self.axis_y()
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                out.write(f"{x:.12g},{y:.12g},{self.values[i, j]:.12g}\n")
        return out.getvalue()


def density_grid(
    state: CavityState2D,
    extent: tuple[float, float] = (8.0, 8.0),
    resolution: tuple[int, int] = (400, 400),
) -> DensityGrid:
    """Probability density |Psi|^2 on a grid; extent in units of l0.

    The product structure makes each cell a product of two 1D samples, so the
    grid is an outer product of per-axis densities and trivially independent
    of evaluation order.
    """
    ex, ey = float(extent[0]), float(extent[1])
    nx, ny = int(resolution[0]), int(resolution[1])
    if ex <= 0 or ey <= 0:
        raise ValueError("grid extent must be positive")
    if nx < 2 or ny < 2:
        raise ValueError("grid resolution must be at least 2x2")
    l0 = state.x_state.scales.l0
    xs = np.linspace(0.0, ex, nx) * l0
    ys = np.linspace(0.0, ey, ny) * l0
    # per-axis |psi|^2 in l0^-1 units
    px = np.array([state.x_state(x) ** 2 for x in xs]) * l0
    py = np.array([state.y_state(y) ** 2 for y in ys]) * l0
    return DensityGrid(
        n=state.n,
        m=state.m,
        extent=(ex, ey),
        resolution=(nx, ny),
        values=np.outer(px, py),
    )


def absorber_selectivity(states: list[CavityState2D], cutoff: float) -> list[float]:
    """Per-state probability of reaching past absorbers at x = cutoff or
    y = cutoff (cutoff in metres): 1 - (1 - p_n)(1 - p_m) with p the 1D tail
    probabilities.  The ground state always scores lowest, which is what lets
    the cavity filter out everything else."""
    if cutoff <= 0:
        raise ValueError("absorber cutoff must be positive")
    overlaps = []
    for st in states:
        p_n = tail_probability(st.x_state, cutoff)
        p_m = tail_probability(st.y_state, cutoff)
        overlaps.append(1.0 - (1.0 - p_n) * (1.0 - p_m))
    return overlaps


def pair_mean_separation(state: CavityState2D) -> float:
    """rms distance sqrt(<r_12^2>) of two uncorrelated particles sharing the
    state: sqrt(2 dx^2 + 2 dy^2)."""
    dx = position_spread(state.x_state)
    dy = dx if state.y_state is state.x_state else position_spread(state.y_state)
    return math.sqrt(2.0 * dx * dx + 2.0 * dy * dy)


@dataclass(frozen=True)
class BounceStats:
    """Bounce-count bookkeeping for a dwell time T in a cavity of side l_x."""

    T: float  # s
    l_x: float  # m
    mean_bounces: float
    spread_bounces: float
    v_bar_x: float  # m/s
    parity_distinguishable: bool


def bounce_statistics(T: float, l_x: float, state: CavityState2D) -> BounceStats:
    """Mean number of wall bounces n = T v_bar / (2 l_x) with v_bar = v_max/2,
    and its uncertainty Delta n = T Delta v_x / (2 l_x) from the state's
    velocity spread.  Since Delta v_x = v_max/sqrt(3) > v_bar, Delta n always
    exceeds n: once n >= 1 the parity of the bounce count is undefined."""
    if T <= 0 or l_x <= 0:
        raise ValueError("dwell time and cavity side must be positive")
    v_max = math.sqrt(2.0 * state.x_state.energy / neutron_constants().neutron_mass)
    v_bar = 0.5 * v_max
    dv = velocity_spread(state.x_state)
    n_mean = T * v_bar / (2.0 * l_x)
    n_spread = T * dv / (2.0 * l_x)
    return BounceStats(
        T=T,
        l_x=l_x,
        mean_bounces=n_mean,
        spread_bounces=n_spread,
        v_bar_x=v_bar,
        parity_distinguishable=n_spread < 1.0,
    )
