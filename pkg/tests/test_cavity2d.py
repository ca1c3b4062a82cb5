import math

import numpy as np
import pytest

from gqs.bouncer1d import eigen_energy, position_spread, scales, velocity_spread
from gqs.cavity2d import (
    absorber_selectivity,
    bounce_statistics,
    cavity_state,
    density_grid,
    energy_gap,
    pair_mean_separation,
    resolution_time,
)


@pytest.fixture(scope="module")
def first_four(tilted):
    return [cavity_state(n, m, tilted) for n, m in [(0, 0), (0, 1), (1, 0), (1, 1)]]


def test_level_values(consts, first_four):
    ev = consts.ev_per_joule
    e00, e01, e10, e11 = [st.energy * ev for st in first_four]
    assert e00 == pytest.approx(2.22e-12, rel=1e-2)
    assert e01 == pytest.approx(3.06e-12, rel=1e-2)
    assert e11 == pytest.approx(3.90e-12, rel=1e-2)
    assert e01 == e10  # exact degeneracy
    assert e00 < e01 < e11


def test_energy_is_sum_of_factors(first_four):
    for st in first_four:
        assert st.energy == st.x_state.energy + st.y_state.energy


def test_swap_symmetry(tilted):
    assert cavity_state(2, 0, tilted).energy == cavity_state(0, 2, tilted).energy


def test_product_structure(first_four):
    st = first_four[1]
    x, y = 5e-6, 8e-6
    assert st(x, y) == pytest.approx(st.x_state(x) * st.y_state(y), rel=1e-14)
    assert st(-1e-6, y) == 0.0
    assert st(x, -1e-6) == 0.0


def test_invalid_quantum_numbers(tilted):
    with pytest.raises(ValueError):
        cavity_state(-1, 0, tilted)


def test_energy_gap(consts, tilted):
    gap = energy_gap(tilted)
    assert gap * consts.ev_per_joule == pytest.approx(8.4e-13, rel=1e-2)
    assert gap == pytest.approx(eigen_energy(1, tilted) - eigen_energy(0, tilted), rel=1e-14)
    doubled = scales(2.0 * tilted.g_eff)
    assert energy_gap(doubled) / gap == pytest.approx(2.0 ** (2.0 / 3.0), rel=1e-12)


def test_resolution_time(consts, tilted):
    tau = resolution_time(tilted)
    assert tau == pytest.approx(7.84e-4, rel=1e-2)
    assert tau * energy_gap(tilted) == pytest.approx(consts.hbar, rel=1e-14)
    doubled = scales(2.0 * tilted.g_eff)
    assert resolution_time(doubled) == pytest.approx(tau / 2.0 ** (2.0 / 3.0), rel=1e-12)


def test_ground_grid_mass_and_positivity(first_four):
    grid = density_grid(first_four[0], extent=(8.0, 8.0), resolution=(160, 160))
    assert np.all(grid.values >= 0.0)
    assert 0.95 <= grid.riemann_sum() <= 1.0 + 1e-3


def test_grid_boundaries_are_zero(first_four):
    grid = density_grid(first_four[3], extent=(8.0, 8.0), resolution=(64, 64))
    assert np.all(grid.values[0, :] == 0.0)
    assert np.all(grid.values[:, 0] == 0.0)


def test_ground_grid_single_interior_maximum(first_four):
    grid = density_grid(first_four[0], extent=(8.0, 8.0), resolution=(120, 120))
    v = grid.values
    interior_max = 0
    for i in range(1, v.shape[0] - 1):
        for j in range(1, v.shape[1] - 1):
            patch = v[i - 1 : i + 2, j - 1 : j + 2]
            if v[i, j] == patch.max() and np.count_nonzero(patch == v[i, j]) == 1:
                interior_max += 1
    assert interior_max == 1


def test_excited_grid_two_lobes_along_x(first_four):
    grid = density_grid(first_four[2], extent=(8.0, 8.0), resolution=(160, 160))
    # fix a small y and count maxima of the x-profile
    j = 20
    profile = grid.values[:, j]
    maxima = sum(
        1
        for i in range(1, len(profile) - 1)
        if profile[i] > profile[i - 1] and profile[i] > profile[i + 1]
    )
    assert maxima == 2


def test_grid_separability(first_four):
    grid = density_grid(first_four[1], extent=(6.0, 6.0), resolution=(40, 40))
    v = grid.values
    i0, j0 = 15, 25
    assert v[i0, j0] != 0
    # rank-1 structure: v[i,j] * v[i0,j0] == v[i,j0] * v[i0,j]
    for i in range(5, 35, 3):
        for j in range(5, 35, 3):
            lhs = v[i, j] * v[i0, j0]
            rhs = v[i, j0] * v[i0, j]
            assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-30)


def test_grid_validation(first_four):
    with pytest.raises(ValueError):
        density_grid(first_four[0], extent=(0.0, 8.0))
    with pytest.raises(ValueError):
        density_grid(first_four[0], resolution=(1, 10))


def test_grid_csv_format(first_four):
    grid = density_grid(first_four[0], extent=(4.0, 4.0), resolution=(5, 5))
    text = grid.to_csv()
    lines = text.strip().split("\n")
    assert lines[0] == "# n,m,extent_x,extent_y,nx,ny"
    assert lines[1] == "# 0,0,4,4,5,5"
    assert len(lines) == 2 + 25
    first = lines[2].split(",")
    assert first == ["0", "0", "0"]
    # deterministic serialization
    assert grid.to_csv() == text


def test_absorber_selectivity_ordering(first_four, tilted):
    cutoff = 3.0 * tilted.l0
    overlaps = absorber_selectivity(first_four, cutoff)
    assert overlaps[0] == min(overlaps)
    assert all(0.0 < p < 1.0 for p in overlaps)
    # degenerate pair absorbs identically
    assert overlaps[1] == pytest.approx(overlaps[2], rel=1e-12)


def test_absorber_selectivity_limits(first_four, tilted):
    far = absorber_selectivity(first_four, 30.0 * tilted.l0)
    assert all(p == pytest.approx(0.0, abs=1e-12) for p in far)
    near = absorber_selectivity(first_four, 1e-12)
    assert all(p == pytest.approx(1.0, abs=1e-6) for p in near)
    with pytest.raises(ValueError):
        absorber_selectivity(first_four, 0.0)


def test_pair_mean_separation(first_four):
    st = first_four[0]
    r12 = pair_mean_separation(st)
    assert r12 * 1e6 == pytest.approx(9.2, rel=1e-2)
    assert r12 == pytest.approx(2.0 * position_spread(st.x_state), rel=1e-12)


def test_bounce_statistics(first_four, tilted):
    ground = first_four[0]
    stats = bounce_statistics(2.0, 3.0 * tilted.l0, ground)
    assert stats.spread_bounces >= stats.mean_bounces
    assert stats.mean_bounces > 1.0
    assert not stats.parity_distinguishable
    # definition checks
    assert stats.mean_bounces == pytest.approx(
        stats.T * stats.v_bar_x / (2.0 * stats.l_x), rel=1e-14
    )
    dv = velocity_spread(ground.x_state)
    assert stats.spread_bounces == pytest.approx(stats.T * dv / (2.0 * stats.l_x), rel=1e-14)


def test_bounce_ratio_independent_of_geometry(first_four, tilted):
    ground = first_four[0]
    a = bounce_statistics(2.0, 3.0 * tilted.l0, ground)
    b = bounce_statistics(17.0, 11.0 * tilted.l0, ground)
    assert a.spread_bounces / a.mean_bounces == pytest.approx(
        b.spread_bounces / b.mean_bounces, rel=1e-12
    )


def test_bounce_small_time_limit(first_four, tilted):
    tiny = bounce_statistics(1e-9, 3.0 * tilted.l0, first_four[0])
    assert tiny.mean_bounces < 1e-3
    assert tiny.spread_bounces < 1e-3
    assert tiny.parity_distinguishable


def test_bounce_validation(first_four, tilted):
    with pytest.raises(ValueError):
        bounce_statistics(0.0, 3.0 * tilted.l0, first_four[0])
    with pytest.raises(ValueError):
        bounce_statistics(1.0, 0.0, first_four[0])
