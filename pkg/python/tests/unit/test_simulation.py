# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""Provides tests for the Monte Carlo simulation of the wiretap channel and its approximations."""

import json
import logging
import math
import pathlib

import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose
from scipy.stats import norm
from ska_pst_wiretap.channel import (
    ApproxPce,
    BinomialEstimate,
    ChannelParams,
    SimReport,
    SimulationConfig,
    approx_pcb,
    approx_pce,
    first_order_pce,
    ratio,
    sigma_sweep,
    simulate,
)
from ska_pst_wiretap.coset import QuotientCode, build_quotient
from ska_pst_wiretap.errors import DomainError
from ska_pst_wiretap.lattice import Lattice, make_named
from ska_pst_wiretap.theta import theta_closed_form


def _exact_z2_coset_probability(sigma: float) -> float:
    """Get the probability that the noise rounds to a point of 2Z^2, coordinate by coordinate."""
    k = np.arange(-50, 51)
    per_coordinate = np.sum(norm.cdf((2 * k + 0.5) / sigma) - norm.cdf((2 * k - 0.5) / sigma))
    return float(per_coordinate**2)


def test_channel_params() -> None:
    """Test the noise levels and the wiretap regime."""
    channel = ChannelParams(sigma_b=0.5, sigma_e=2.0)
    assert channel.is_wiretap_regime
    assert channel.y_e.y == pytest.approx(1.0 / (8.0 * math.pi))
    assert not ChannelParams(sigma_b=1.0, sigma_e=1.0).is_wiretap_regime

    for (sigma_b, sigma_e) in [(0.0, 1.0), (1.0, -1.0), (math.nan, 1.0), (1.0, math.inf)]:
        with pytest.raises(DomainError):
            ChannelParams(sigma_b=sigma_b, sigma_e=sigma_e)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"trials": 0},
        {"trials": 10, "seed": -1},
        {"trials": 10, "window": -1},
        {"trials": 10, "block_size": 0},
        {"trials": 10, "workers": 0},
        {"trials": 10, "theta_tol": 0.0},
    ],
)
def test_simulation_config_validation(kwargs: dict) -> None:
    """Test that invalid simulation settings are rejected."""
    with pytest.raises(DomainError):
        SimulationConfig(**kwargs)


def test_binomial_estimate() -> None:
    """Test the frequency and its standard error."""
    estimate = BinomialEstimate(successes=25, trials=100)
    assert estimate.p == 0.25
    assert estimate.stderr == pytest.approx(math.sqrt(0.25 * 0.75 / 100))


def test_results_do_not_depend_on_blocks_or_workers(z2_quotient: QuotientCode) -> None:
    """Test that counts depend on the seed and the trial count only."""
    channel = ChannelParams(sigma_b=0.3, sigma_e=0.8)
    serial = simulate(z2_quotient, channel, SimulationConfig(trials=20_000, seed=5, block_size=20_000))
    blocked = simulate(z2_quotient, channel, SimulationConfig(trials=20_000, seed=5, block_size=777, workers=4))

    assert (serial.bob, serial.eve, serial.bob_point, serial.pcb) == (
        blocked.bob,
        blocked.eve,
        blocked.bob_point,
        blocked.pcb,
    )

    other_seed = simulate(z2_quotient, channel, SimulationConfig(trials=20_000, seed=6))
    assert other_seed.eve != serial.eve


def test_eavesdropper_saturates_at_uniform_guess(z2_quotient: QuotientCode) -> None:
    """Test that at large noise the eavesdropper finds the coset with probability 2^-k."""
    report = simulate(z2_quotient, ChannelParams(sigma_b=0.1, sigma_e=10.0), SimulationConfig(trials=100_000, seed=1))

    assert abs(report.p_correct_eve - 0.25) <= 3.0 * report.stderr_eve
    assert report.p_correct_bob == pytest.approx(1.0, abs=1e-3)
    assert report.approx_pce.valid
    assert report.approx_pce.raw == pytest.approx(0.25, rel=1e-6)


def test_approximation_against_monte_carlo(z2_quotient: QuotientCode) -> None:
    """Test the large noise approximation of Z^2 / 2Z^2 at 10^6 trials per noise level."""
    grid = [1.0, 1.5, 2.0, 3.0]
    sweep = sigma_sweep(z2_quotient, 0.1, grid, SimulationConfig(trials=1_000_000, seed=2024, workers=4))

    assert_allclose(sweep.sigma_e, grid)
    for (sigma_e, p_mc, stderr, p_approx) in zip(sweep.sigma_e, sweep.p_mc, sweep.stderr, sweep.p_approx):
        exact = _exact_z2_coset_probability(sigma_e)
        assert abs(p_mc - exact) <= 3.0 * stderr, f"sigma_e={sigma_e}"
        if sigma_e > 1.0:
            assert abs(p_mc - p_approx) <= 3.0 * stderr, f"sigma_e={sigma_e}"

    # the approximation is only first order at sigma_e = 1
    assert _exact_z2_coset_probability(1.0) == pytest.approx(0.25460, abs=1e-5)
    assert sweep.p_approx[0] - sweep.p_mc[0] > 3.0 * sweep.stderr[0]


def test_approximation_is_flagged_outside_its_domain(z2_quotient: QuotientCode, caplog: pytest.LogCaptureFixture) -> None:
    """Test that a raw value above 1 at small noise is reported as invalid."""
    with caplog.at_level(logging.WARNING):
        result = approx_pce(z2_quotient, 0.2)

    assert result.raw > 1.0
    assert not result.valid
    assert result.value == 1.0
    assert "not a probability" in caplog.text


def test_approximation_matches_closed_form(e8_quotient: QuotientCode) -> None:
    """Test the approximation of E8 / 2E8 against the closed form theta series of 2E8A."""
    sigma_e = 2.0
    y = 1.0 / (2.0 * math.pi * sigma_e**2)
    expected = 16.0 * theta_closed_form("2*E8A", y) / (math.sqrt(2.0 * math.pi) * sigma_e) ** 8
    assert approx_pce(e8_quotient, sigma_e).raw == pytest.approx(expected, rel=1e-8)


def test_first_order_theta_sum() -> None:
    """Test the kissing number approximation of the E8 theta sum at small and large noise."""
    e8 = make_named("E8")
    for (sigma, close) in [(0.3, True), (1.0, False)]:
        exact = theta_closed_form("E8", 1.0 / (2.0 * math.pi * sigma**2))
        relative_error = abs(first_order_pce(e8, sigma) - exact) / exact
        assert (relative_error < 0.01) == close


def test_voronoi_estimate_of_z1() -> None:
    """Test that Gaussian noise of deviation 1/2 stays in [-1/2, 1/2] with probability 0.6827."""
    p = approx_pcb(make_named("Zn:1"), 0.5, trials=100_000, seed=3)
    stderr = math.sqrt(p * (1.0 - p) / 100_000)
    assert abs(p - (norm.cdf(1.0) - norm.cdf(-1.0))) <= 3.0 * stderr

    with pytest.raises(DomainError):
        approx_pcb(make_named("Zn:1"), 0.0, trials=10)
    with pytest.raises(DomainError):
        approx_pcb(make_named("Zn:1"), 0.5, trials=0)


def test_trivial_quotient_point_decisions(z2: Lattice) -> None:
    """Test that with k = 0 the coset is always right and point decisions follow the Voronoi estimate."""
    quotient = build_quotient(z2, z2)
    report = simulate(quotient, ChannelParams(sigma_b=0.4, sigma_e=1.0), SimulationConfig(trials=50_000, seed=9))

    assert report.p_correct_bob == 1.0
    assert report.p_correct_eve == 1.0
    combined = math.hypot(report.bob_point.stderr, report.pcb.stderr)
    assert abs(report.p_point_correct_bob - report.approx_pcb) <= 3.0 * combined


def test_e8_ratio_of_success_probabilities(e8_quotient: QuotientCode) -> None:
    """Test that the analytic and the empirical ratio of E8 / 2E8 agree in the wiretap regime."""
    channel = ChannelParams(sigma_b=1.0 / 6.0, sigma_e=4.0)
    report = simulate(e8_quotient, channel, SimulationConfig(trials=100_000, seed=8, workers=4))

    assert report.p_correct_bob > 0.99
    assert report.approx_pce.raw == pytest.approx(1.0 / 256.0, rel=1e-3)

    ratios = ratio(report)
    assert ratios.analytic == pytest.approx(report.ratio_analytic)
    assert ratios.empirical == pytest.approx(report.ratio_empirical)
    assert abs(ratios.analytic - ratios.empirical) <= 3.0 * ratios.combined_stderr


def test_undefined_ratios(caplog: pytest.LogCaptureFixture) -> None:
    """Test that ratios over a receiver that never succeeded are NaN and reported as null."""
    report = SimReport(
        channel=ChannelParams(sigma_b=1.0, sigma_e=2.0),
        config=SimulationConfig(trials=10),
        k=2,
        bob=BinomialEstimate(successes=0, trials=10),
        eve=BinomialEstimate(successes=3, trials=10),
        bob_point=BinomialEstimate(successes=0, trials=10),
        pcb=BinomialEstimate(successes=0, trials=10),
        approx_pce=ApproxPce.from_raw(0.3),
    )
    with caplog.at_level(logging.WARNING):
        ratios = ratio(report)

    assert math.isnan(ratios.analytic) and math.isnan(ratios.empirical)
    assert "undefined" in caplog.text

    data = report.to_dict()
    assert data["ratio_analytic"] is None and data["ratio_empirical"] is None
    json.dumps(data)


def test_report_to_dict(z2_quotient: QuotientCode) -> None:
    """Test the JSON-ready form of a simulation report."""
    report = simulate(z2_quotient, ChannelParams(sigma_b=0.3, sigma_e=1.5), SimulationConfig(trials=1000, seed=4))
    data = json.loads(json.dumps(report.to_dict()))

    assert data["trials"] == 1000 and data["k"] == 2 and data["seed"] == 4
    assert data["config"]["sigma_e"] == 1.5 and data["config"]["window"] == 2
    assert {"p_correct_bob", "p_correct_eve", "approx_pce", "approx_pcb", "ratio_analytic"} <= set(data)


def test_sigma_sweep_csv(z2_quotient: QuotientCode, tmp_path: pathlib.Path) -> None:
    """Test the CSV export of a sigma sweep and the empty grid check."""
    sweep = sigma_sweep(z2_quotient, 0.2, [3.0, 1.0], SimulationConfig(trials=2000, seed=1))
    assert sweep.lattice_name == "Zn:2/2*Zn:2"

    csv_path = tmp_path / "sigma.csv"
    sweep.to_csv(csv_path)
    df = pd.read_csv(csv_path)
    assert df.columns.tolist() == ["sigma_e", "p_mc", "stderr", "p_approx"]
    assert df["sigma_e"].tolist() == [3.0, 1.0]

    with pytest.raises(DomainError):
        sigma_sweep(z2_quotient, 0.2, [], SimulationConfig(trials=10))
