# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""Provides tests for lattices, named lattices and point enumeration."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from ska_pst_wiretap.errors import (
    ConfigurationError,
    DomainError,
    InvalidDimensionError,
    InvalidLatticeError,
    ResourceLimitError,
    UnsupportedLatticeError,
)
from ska_pst_wiretap.lattice import (
    EnumerationConfig,
    Lattice,
    LatticeFamily,
    LatticeName,
    enumerate_lattice,
    enumerate_points,
    hermite_parameter,
    kissing_number,
    make_named,
    min_distance,
    volume,
)


@pytest.mark.parametrize(
    "generator, error",
    [
        (np.zeros((0, 0)), InvalidDimensionError),
        ([[1.0, 2.0], [2.0, 4.0]], InvalidLatticeError),
        ([[1.0], [2.0]], InvalidLatticeError),
        ([[1.0, np.inf], [0.0, 1.0]], InvalidLatticeError),
    ],
)
def test_invalid_generator_is_rejected(generator: list, error: type) -> None:
    """Test that rank deficient or malformed generators do not define a lattice."""
    with pytest.raises(error):
        Lattice(generator=generator)


def test_generator_is_copied_and_frozen() -> None:
    """Test that the lattice does not alias the caller's matrix."""
    generator = np.eye(2)
    lattice = Lattice(generator=generator)
    generator[0, 0] = 5.0

    assert lattice.generator[0, 0] == 1.0
    with pytest.raises(ValueError):
        lattice.generator[0, 0] = 2.0


@pytest.mark.parametrize(
    "name, dimension, expected_volume",
    [
        ("Zn:1", 1, 1.0),
        ("Z4", 4, 1.0),
        ("Dn:4", 4, 2.0),
        ("D8", 8, 2.0),
        ("E8", 8, 1.0),
        ("E8A", 8, 16.0),
        ("2*Zn:2", 2, 4.0),
        ("sqrt(2)*E8", 8, 16.0),
    ],
)
def test_named_lattice_volume(name: str, dimension: int, expected_volume: float) -> None:
    """Test the dimension and the volume of the standard generators."""
    lattice = make_named(name)
    assert lattice.dimension == dimension
    assert lattice.is_full_rank
    assert volume(lattice) == pytest.approx(expected_volume, rel=1e-12)


def test_lattice_name_parsing() -> None:
    """Test the text grammar of lattice names."""
    assert LatticeName.parse("Zn:3") == LatticeName(family=LatticeFamily.ZN, n=3)
    assert LatticeName.parse("D4") == LatticeName(family=LatticeFamily.DN, n=4)
    assert LatticeName.parse("Leech").dimension == 24
    assert LatticeName.parse("1/2*E8A").scale == 0.5
    assert str(LatticeName.parse("2*Dn:8")) == "2*Dn:8"

    for text in ["Q8", "E7", "Zn:", "x*Z2"]:
        with pytest.raises(ConfigurationError):
            LatticeName.parse(text)


def test_invalid_named_dimensions() -> None:
    """Test that Zn needs n >= 1 and Dn needs n >= 2, and that Leech has no generator."""
    with pytest.raises(InvalidDimensionError):
        make_named("Zn:0")
    with pytest.raises(InvalidDimensionError):
        make_named("Dn:1")
    with pytest.raises(UnsupportedLatticeError):
        make_named("Leech")


def test_e8_construction_a_is_scaled_e8() -> None:
    """Test that 2Z^8 + RM(8,4,4) has the volume and the norm spectrum of sqrt(2) E8."""
    e8a = make_named("E8A")
    scaled_e8 = make_named("E8").scaled(math.sqrt(2.0))

    assert all(e8a.contains(row) for row in 2.0 * np.eye(8))
    assert e8a.volume == pytest.approx(scaled_e8.volume)
    spectrum = enumerate_lattice(e8a, 8.0)
    assert_allclose(spectrum.norms, [0.0, 4.0, 8.0], atol=1e-9)
    assert spectrum.counts.tolist() == [1, 240, 2160]


def test_dual_and_scaling() -> None:
    """Test the dual generator and the volume of scaled lattices."""
    d4 = make_named("D4")
    dual = d4.dual
    assert dual.volume == pytest.approx(1.0 / d4.volume)
    assert_allclose(d4.generator @ dual.generator.T, np.eye(4), atol=1e-12)

    assert d4.scaled(3.0).volume == pytest.approx(81.0 * d4.volume)
    assert d4.scaled(3.0).name == "3*Dn:4"
    with pytest.raises(DomainError):
        d4.scaled(0.0)


def test_contains_and_coordinates() -> None:
    """Test lattice membership of D4 points."""
    d4 = make_named("D4")
    assert d4.contains([1.0, 1.0, 0.0, 0.0])
    assert d4.contains([2.0, 0.0, 0.0, 0.0])
    assert not d4.contains([1.0, 0.0, 0.0, 0.0])
    assert not d4.contains([0.5, 0.5, 0.0, 0.0])

    coords = d4.coordinates(np.array([1.0, 1.0, 0.0, 0.0]))
    assert_allclose(coords @ d4.generator, [1.0, 1.0, 0.0, 0.0], atol=1e-12)
    with pytest.raises(InvalidDimensionError):
        d4.coordinates(np.zeros(3))


def test_z2_spectrum() -> None:
    """Test the norm spectrum of Z^2 and its data frame export."""
    spectrum = enumerate_lattice(make_named("Z2"), 4.0)
    assert_allclose(spectrum.norms, [0.0, 1.0, 2.0, 4.0], atol=1e-9)
    assert spectrum.counts.tolist() == [1, 4, 4, 4]
    assert spectrum.total == 13
    assert spectrum.minimum_norm == pytest.approx(1.0)
    assert spectrum.truncated(2.0).total == 9

    df = spectrum.to_dataframe()
    assert len(df) == 4
    assert df.iloc[:, 1].tolist() == [1, 4, 4, 4]

    with pytest.raises(DomainError):
        spectrum.truncated(5.0)


@pytest.mark.parametrize(
    "name, radius_sq, expected",
    [
        ("Zn:2", 1.0, {0: 1, 1: 4}),
        ("E8", 2.0, {0: 1, 2: 240}),
        ("Dn:4", 2.0, {0: 1, 2: 24}),
    ],
)
def test_spectrum_of_named_lattices(name: str, radius_sq: float, expected: dict) -> None:
    """Test that short vector counts emerge from enumeration."""
    spectrum = enumerate_lattice(make_named(name), radius_sq)
    assert {round(n): int(c) for (n, c) in zip(spectrum.norms, spectrum.counts)} == expected
    assert all(c % 2 == 0 for (n, c) in zip(spectrum.norms, spectrum.counts) if n > 0)


@pytest.mark.parametrize("factor", [0.5, 2.0, 3.0])
def test_volume_of_scaled_lattices(factor: float) -> None:
    """Test that scaling by a multiplies the volume by a^n."""
    for name in ["Zn:3", "Dn:4", "E8A"]:
        lattice = make_named(name)
        assert volume(lattice.scaled(factor)) == pytest.approx(factor**lattice.dimension * volume(lattice), rel=1e-9)


def test_enumerate_points_are_ordered_by_norm() -> None:
    """Test that enumerated vectors are sorted by norm and then by coordinates."""
    (vectors, coords) = enumerate_points(make_named("Z2"), 1.0)

    assert_allclose(vectors[0], [0.0, 0.0])
    assert coords[1:].tolist() == [[-1, 0], [0, -1], [0, 1], [1, 0]]
    assert_allclose(np.einsum("ij,ij->i", vectors, vectors), [0.0, 1.0, 1.0, 1.0, 1.0])


def test_enumeration_agrees_with_brute_force(rng: np.random.Generator) -> None:
    """Test enumeration of a random 3 dimensional lattice against a box search."""
    generator = np.array([[1.0, 0.2, 0.0], [0.3, 1.1, 0.1], [0.0, 0.4, 0.9]])
    lattice = Lattice(generator=generator)
    radius_sq = 4.0

    box = np.array(np.meshgrid(*[np.arange(-6, 7)] * 3, indexing="ij")).reshape(3, -1).T
    points = box @ generator
    norms = np.einsum("ij,ij->i", points, points)
    expected = int(np.count_nonzero(norms <= radius_sq + 1e-9))

    assert enumerate_lattice(lattice, radius_sq).total == expected


@pytest.mark.parametrize(
    "name, d_min_sq, tau",
    [
        ("Zn:3", 1.0, 6),
        ("Dn:4", 2.0, 24),
        ("E8", 2.0, 240),
        ("E8A", 4.0, 240),
    ],
)
def test_min_distance_and_kissing_number(name: str, d_min_sq: float, tau: int) -> None:
    """Test the shortest vectors of named lattices."""
    lattice = make_named(name)
    assert min_distance(lattice) ** 2 == pytest.approx(d_min_sq)
    assert kissing_number(lattice) == tau


@pytest.mark.parametrize(
    "name, gamma",
    [
        ("Zn:4", 1.0),
        ("Dn:4", math.sqrt(2.0)),
        ("E8", 2.0),
        ("E8A", 2.0),
    ],
)
def test_hermite_parameter_is_scale_invariant(name: str, gamma: float) -> None:
    """Test the Hermite parameter of named lattices and its invariance under scaling."""
    lattice = make_named(name)
    assert hermite_parameter(lattice) == pytest.approx(gamma, rel=1e-9)
    for factor in [0.5, 3.0, math.pi]:
        assert hermite_parameter(lattice.scaled(factor)) == pytest.approx(gamma, rel=1e-9)


def test_enumeration_cap_is_enforced() -> None:
    """Test that an enumeration predicted to exceed the point cap is refused."""
    config = EnumerationConfig(max_points=1000)
    with pytest.raises(ResourceLimitError):
        enumerate_lattice(make_named("E8"), 16.0, config)


def test_negative_radius_is_rejected() -> None:
    """Test that the squared radius must be non-negative."""
    with pytest.raises(DomainError):
        enumerate_lattice(make_named("Z2"), -1.0)


def test_rank_deficient_lattice_is_unsupported_for_hermite_parameter() -> None:
    """Test that operations needing a square generator refuse m < n."""
    lattice = Lattice(generator=[[1.0, 1.0, 0.0], [0.0, 1.0, 1.0]])
    assert lattice.rank == 2 and lattice.dimension == 3
    assert lattice.volume == pytest.approx(math.sqrt(3.0))

    with pytest.raises(UnsupportedLatticeError):
        hermite_parameter(lattice)
    with pytest.raises(UnsupportedLatticeError):
        _ = lattice.dual


def test_tiny_lattice_spectrum() -> None:
    """Test that the shells of 1e-5 Z^2 are kept apart although their norms are below 1e-9."""
    spectrum = enumerate_lattice(Lattice(generator=1e-5 * np.eye(2)), 4e-10)

    assert spectrum.counts.tolist() == [1, 4, 4, 4]
    assert_allclose(spectrum.norms, [0.0, 1e-10, 2e-10, 4e-10], rtol=1e-9)


@pytest.mark.parametrize("factor", [1e-5, 1e5])
def test_shortest_vectors_are_scale_invariant(factor: float) -> None:
    """Test that scaling E8 far from unit volume keeps its kissing number and Hermite parameter."""
    lattice = make_named("E8").scaled(factor)

    assert lattice.norm_scale == pytest.approx(factor**2, rel=1e-9)
    assert min_distance(lattice) == pytest.approx(math.sqrt(2.0) * factor, rel=1e-9)
    assert kissing_number(lattice) == 240
    assert hermite_parameter(lattice) == pytest.approx(2.0, rel=1e-9)
