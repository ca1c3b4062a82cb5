import math

import pytest

from gqs.constants import neutron_constants
from gqs.experiment import (
    ADOPTED_COHERENCE_LENGTH,
    BeamSpec,
    chsh_value,
    coherence_length,
    collision_budget,
    decay_survival,
    dipole_interaction,
    full_report,
    hopper_geometry_check,
    monochromaticity_ok,
    pair_rate,
    singlet_correlation,
)


def test_beam_defaults_and_validation():
    beam = BeamSpec()
    assert beam.entrance_area == 100.0
    assert beam.collimation_ratio == 0.2
    assert beam.delta_v == pytest.approx(5e-3, rel=1e-12)
    assert beam.rho_effective == pytest.approx(5e-3, rel=1e-12)
    with pytest.raises(ValueError):
        BeamSpec(v=-1.0)
    with pytest.raises(ValueError):
        BeamSpec(dv_over_v=1.5)
    with pytest.raises(ValueError):
        BeamSpec(mono_reduction=0.0)


def test_coherence_length_value():
    c = neutron_constants()
    lc = coherence_length(5.0, 1e-3)
    assert lc == pytest.approx(1.26e-5, rel=1e-2)
    assert lc == pytest.approx(c.hbar / (c.neutron_mass * 5e-3), rel=1e-14)


def test_coherence_length_scaling():
    assert coherence_length(5.0, 5e-4) == pytest.approx(
        2.0 * coherence_length(5.0, 1e-3), rel=1e-14
    )
    with pytest.raises(ValueError):
        coherence_length(0.0, 1e-3)


def test_monochromaticity_default_margin(tilted):
    ok, margin = monochromaticity_ok(5e-3, tilted)
    assert ok
    assert margin == pytest.approx(0.31, rel=5e-2)


def test_monochromaticity_threshold(tilted):
    c = neutron_constants()
    from gqs.cavity2d import energy_gap

    threshold = math.sqrt(energy_gap(tilted) / c.neutron_mass)
    assert threshold == pytest.approx(8.95e-3, rel=1e-2)
    _, margin = monochromaticity_ok(threshold, tilted)
    assert margin == pytest.approx(1.0, rel=1e-12)


def test_monochromaticity_monotone(tilted):
    margins = [monochromaticity_ok(dv, tilted)[1] for dv in (1e-3, 3e-3, 5e-3, 8e-3)]
    assert all(a < b for a, b in zip(margins, margins[1:]))
    with pytest.raises(ValueError):
        monochromaticity_ok(0.0, tilted)


def test_pair_rate_reference_arithmetic():
    beam = BeamSpec()  # rho_eff = 5e-3 cm^-3
    pairs, coefficient = pair_rate(beam, ADOPTED_COHERENCE_LENGTH, 12.0)
    assert coefficient == pytest.approx(3.5e3, rel=1e-2)
    assert pairs == pytest.approx(1.05, rel=2e-2)


def test_pair_rate_denser_beam_reaches_one_pair_quickly():
    beam = BeamSpec(rho_ucn=10.0)
    pairs, _ = pair_rate(beam, ADOPTED_COHERENCE_LENGTH, 3.0)
    assert pairs >= 1.0


def test_pair_rate_scalings():
    beam1 = BeamSpec(rho_ucn=5.0)
    beam2 = BeamSpec(rho_ucn=10.0)
    p1, _ = pair_rate(beam1, ADOPTED_COHERENCE_LENGTH, 12.0)
    p2, _ = pair_rate(beam2, ADOPTED_COHERENCE_LENGTH, 12.0)
    assert p2 == pytest.approx(4.0 * p1, rel=1e-12)  # quadratic in density
    p3, _ = pair_rate(beam1, ADOPTED_COHERENCE_LENGTH, 24.0)
    assert p3 == pytest.approx(2.0 * p1, rel=1e-12)  # linear in time
    p4, _ = pair_rate(beam1, 2.0 * ADOPTED_COHERENCE_LENGTH, 12.0)
    assert p4 == pytest.approx(2.0 * p1, rel=1e-12)  # linear in L_c


def test_pair_rate_unit_consistency():
    """Same arithmetic done explicitly in cm must agree to rounding."""
    beam = BeamSpec()
    pairs, _ = pair_rate(beam, ADOPTED_COHERENCE_LENGTH, 12.0)
    manual = (beam.v * 100.0) * 12.0 * (ADOPTED_COHERENCE_LENGTH * 100.0) * (
        beam.rho_effective**2
    ) * 1e4
    assert pairs == pytest.approx(manual, rel=1e-12)


def test_pair_rate_zero_density():
    pairs, _ = pair_rate(BeamSpec(rho_ucn=0.0), ADOPTED_COHERENCE_LENGTH, 12.0)
    assert pairs == 0.0
    with pytest.raises(ValueError):
        pair_rate(BeamSpec(), -1.0, 12.0)


def test_hopper_borderline_pass():
    report = hopper_geometry_check(BeamSpec())
    assert report.v_xy == pytest.approx(1.0, rel=1e-12)
    assert report.climb_height == pytest.approx(0.051, rel=2e-2)
    assert report.passed
    assert report.reasons == ()


def test_hopper_perfect_collimation():
    report = hopper_geometry_check(BeamSpec(collimation_ratio=0.0))
    assert report.climb_height == 0.0
    assert report.passed


def test_hopper_fails_on_collimation():
    report = hopper_geometry_check(BeamSpec(collimation_ratio=0.4))
    assert not report.passed
    assert "collimation" in report.reasons


def test_dipole_energy_value():
    c = neutron_constants()
    r = 9.2e-6
    u = dipole_interaction(r)
    assert u == pytest.approx(c.mu0_over_4pi * c.neutron_magnetic_moment**2 / r**3, rel=1e-14)
    assert u * c.ev_per_joule == pytest.approx(7.5e-26, rel=2e-2)


def test_dipole_cubic_law():
    assert dipole_interaction(2e-6) == pytest.approx(dipole_interaction(1e-6) / 8.0, rel=1e-12)
    with pytest.raises(ValueError):
        dipole_interaction(0.0)


def test_dipole_longitudinal_geometry():
    assert dipole_interaction(1e-6, aligned_along_z=False) == pytest.approx(
        -2.0 * dipole_interaction(1e-6), rel=1e-14
    )


def test_dipole_negligible_vs_gap(tilted):
    from gqs.cavity2d import energy_gap

    assert dipole_interaction(9.2e-6) / energy_gap(tilted) < 1e-10


def test_decay_survival():
    assert decay_survival(0.0) == 1.0
    assert decay_survival(885.7) == pytest.approx(math.exp(-1.0), rel=1e-12)
    assert decay_survival(2.0) == pytest.approx(0.99774, rel=1e-4)
    with pytest.raises(ValueError):
        decay_survival(-1.0)


def test_singlet_correlation():
    assert singlet_correlation(0.0, 0.0) == pytest.approx(-1.0, abs=1e-15)
    assert singlet_correlation(0.0, math.pi) == pytest.approx(1.0, abs=1e-15)
    assert singlet_correlation(0.3, 0.3 + math.pi / 2) == pytest.approx(0.0, abs=1e-15)


def test_chsh_tsirelson():
    assert abs(chsh_value()) == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-12)


def test_collision_budget():
    assert collision_budget() == 1000


def test_full_report_reference_numbers(tilted):
    report = full_report(BeamSpec(), tilted, 12.0)
    assert report.pairs == pytest.approx(1.05, rel=2e-2)
    assert report.pairs_computed_lc == pytest.approx(1.9, rel=5e-2)
    assert report.mono_ok
    assert report.hopper_passed
    assert report.decay_survival == pytest.approx(math.exp(-12.0 / 885.7), rel=1e-12)
    assert report.collision_budget == 1000
    assert report.dipole_energy / report.gap < 1e-10
    assert report.pair_separation * 1e6 == pytest.approx(9.2, rel=1e-2)


def test_full_report_notes_record_discrepancies(tilted):
    report = full_report(BeamSpec(), tilted, 12.0)
    joined = "\n".join(report.notes)
    assert "coherence length" in joined
    assert "dipole" in joined
    assert "1e-23" in joined


def test_full_report_zero_density(tilted):
    report = full_report(BeamSpec(rho_ucn=0.0), tilted, 12.0)
    assert report.pairs == 0.0
    assert report.n_c == 0.0


def test_full_report_linear_in_time(tilted):
    r1 = full_report(BeamSpec(), tilted, 6.0)
    r2 = full_report(BeamSpec(), tilted, 12.0)
    assert r2.pairs == pytest.approx(2.0 * r1.pairs, rel=1e-12)
    assert full_report(BeamSpec(), tilted, 0.0).pairs == 0.0
