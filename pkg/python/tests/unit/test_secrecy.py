# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""Provides tests for the secrecy function and the secrecy gain."""

import pathlib

import mpmath
import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose
from ska_pst_wiretap.errors import DomainError
from ska_pst_wiretap.lattice import make_named
from ska_pst_wiretap.theta import (
    SearchConfig,
    VolumeNormalisation,
    log_grid,
    secrecy_function,
    secrecy_gain,
    secrecy_sweep,
)

mpmath.mp.dps = 30

D8_EQUAL_ARGMAX = 0.875465
D8_NORMALISED_GAIN = 1.21652549


def _theta(which: int, y: mpmath.mpf) -> mpmath.mpf:
    return mpmath.jtheta(which, 0, mpmath.exp(-mpmath.pi * y))


def _e8_xi_oracle(y: float) -> float:
    y = mpmath.mpf(y)
    (t2, t3, t4) = (_theta(2, y), _theta(3, y), _theta(4, y))
    return float(t3**8 / ((t2**8 + t3**8 + t4**8) / 2))


def _d8_equal_xi_oracle(y: float) -> float:
    # Z^8 rescaled to the volume 2 of D8
    y = mpmath.mpf(y)
    zn = _theta(3, y * mpmath.mpf(2) ** (mpmath.mpf(1) / 4)) ** 8
    return float(zn / ((_theta(3, y) ** 8 + _theta(4, y) ** 8) / 2))


def test_e8_secrecy_gain() -> None:
    """Test that the secrecy gain of E8 is 4/3, reached at y = 1."""
    result = secrecy_gain("E8")

    assert result.argmax_y == pytest.approx(1.0, abs=1e-3)
    assert result.gain == pytest.approx(_e8_xi_oracle(1.0), abs=1e-4)
    assert result.gain == pytest.approx(4.0 / 3.0, abs=1e-4)
    assert not result.at_boundary
    assert len(result.evaluations) > SearchConfig().points


def test_e8_secrecy_function_is_symmetric() -> None:
    """Test that a unimodular lattice has xi(y) = xi(1/y)."""
    for y in [0.3, 0.7, 2.0]:
        assert secrecy_function("E8", y) == pytest.approx(secrecy_function("E8", 1.0 / y), rel=1e-10)
        assert secrecy_function("E8", y) == pytest.approx(_e8_xi_oracle(y), rel=1e-10)


def test_d8_secrecy_function_at_one() -> None:
    """Test the unnormalised D8 secrecy function, theta3^8 / (5/8 theta3^8) at y = 1."""
    assert secrecy_function("Dn:8", 1.0) == pytest.approx(1.6, rel=1e-12)
    assert secrecy_function(make_named("D8"), 1.0) == pytest.approx(1.6, rel=1e-9)


def test_unimodular_lattice_ignores_normalisation() -> None:
    """Test that all volume normalisations agree for a unit volume lattice."""
    values = [secrecy_function("E8", 0.8, normalisation) for normalisation in VolumeNormalisation]
    assert_allclose(values, values[0], rtol=1e-12)


def test_unnormalised_d8_is_monotone() -> None:
    """Test that the D8 secrecy function has no interior maximum."""
    sweep = secrecy_sweep("Dn:8", log_grid(0.25, 4.0, 17))
    assert np.all(np.diff(sweep.xi) < 0.0)

    result = secrecy_gain("Dn:8")
    assert result.at_boundary
    assert result.argmax_y == pytest.approx(2.0**-4, rel=0.05)


def test_d8_normalised_maximum() -> None:
    """Test the maximum of the D8 secrecy function once Z^8 has the volume of D8."""
    result = secrecy_gain("Dn:8", normalisation=VolumeNormalisation.EQUAL)

    assert not result.at_boundary
    assert result.argmax_y == pytest.approx(D8_EQUAL_ARGMAX, abs=2e-3)
    assert result.gain == pytest.approx(D8_NORMALISED_GAIN, rel=1e-5)

    # a local maximum of the independent oracle
    peak = _d8_equal_xi_oracle(result.argmax_y)
    assert peak == pytest.approx(result.gain, rel=1e-9)
    assert peak >= _d8_equal_xi_oracle(result.argmax_y * 1.01)
    assert peak >= _d8_equal_xi_oracle(result.argmax_y / 1.01)


def test_unit_and_equal_normalisation_differ_by_a_scale() -> None:
    """Test that UNIT and EQUAL give the same gain at arguments 2^(1/4) apart."""
    equal = secrecy_gain("Dn:8", normalisation=VolumeNormalisation.EQUAL)
    unit = secrecy_gain("Dn:8", normalisation=VolumeNormalisation.UNIT)

    assert unit.gain == pytest.approx(equal.gain, rel=1e-9)
    assert unit.argmax_y == pytest.approx(equal.argmax_y * 2.0**0.25, rel=1e-4)


def test_enumerated_lattice_gain_matches_closed_form() -> None:
    """Test that the gain of an enumerated E8 matches the closed form."""
    search = SearchConfig(y_lo=0.5, y_hi=2.0, points=9)
    enumerated = secrecy_gain(make_named("E8"), search)
    closed = secrecy_gain("E8", search)

    assert enumerated.gain == pytest.approx(closed.gain, rel=1e-9)
    assert enumerated.argmax_y == pytest.approx(closed.argmax_y, abs=1e-3)


def test_gain_is_deterministic_across_workers() -> None:
    """Test that the coarse grid gives the same trace with threads."""
    single = secrecy_gain("E8", SearchConfig(points=16))
    threaded = secrecy_gain("E8", SearchConfig(points=16, workers=4))
    assert single.evaluations == threaded.evaluations
    assert single.to_dict() == threaded.to_dict()


def test_search_config_validation() -> None:
    """Test that the search bracket and grid are checked."""
    with pytest.raises(DomainError):
        SearchConfig(y_lo=2.0, y_hi=1.0)
    with pytest.raises(DomainError):
        SearchConfig(points=2)
    with pytest.raises(DomainError):
        SearchConfig(tol=0.0)


def test_secrecy_sweep_keeps_grid_order(tmp_path: pathlib.Path) -> None:
    """Test the sweep columns, their order and the CSV export."""
    grid = [2.0, 0.5, 1.0]
    sweep = secrecy_sweep("E8", grid)

    assert_allclose(sweep.y, grid)
    assert sweep.argmax_y == 1.0
    assert_allclose(sweep.xi, sweep.theta_zn / sweep.theta_lattice)
    assert sweep.lattice_name == "E8"

    csv_path = tmp_path / "sweep.csv"
    sweep.to_csv(csv_path)
    df = pd.read_csv(csv_path)
    assert df.columns.tolist() == ["y", "theta_lattice", "theta_Zn", "xi"]
    assert_allclose(df["xi"], sweep.xi, rtol=1e-14)


def test_empty_sweep_is_rejected() -> None:
    """Test that a sweep needs at least one grid point."""
    with pytest.raises(DomainError):
        secrecy_sweep("E8", [])
    with pytest.raises(DomainError):
        log_grid(1.0, 2.0, 0)
