# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""
This module provides exhaustive lattice point enumeration and the geometric parameters built on it.

The enumeration is a breadth first Fincke-Pohst search. With the Gram matrix
factored as ``R^T R`` the squared distance of ``u . generator`` from a centre
``c . generator`` splits into one term per coordinate, and every level of the
search only keeps partial coordinate vectors whose accumulated terms fit in
the squared radius. All partial vectors of one level are expanded at once with
NumPy.
"""

from __future__ import annotations

__all__ = [
    "enumerate_coordinates",
    "enumerate_lattice",
    "enumerate_points",
    "hermite_parameter",
    "kissing_number",
    "min_distance",
    "predicted_point_count",
]

import logging
import math
from typing import Literal, Tuple

import nptyping as npt
import numpy as np
from scipy.special import gammaln
from ska_pst_wiretap.errors import DomainError, ResourceLimitError
from ska_pst_wiretap.lattice.model import EnumerationConfig, Lattice, NormSpectrum

logger = logging.getLogger(__name__)


def predicted_point_count(lattice: Lattice, radius_sq: float) -> float:
    """
    Estimate the number of lattice points in a ball from the ratio of volumes.

    :param lattice: the lattice to enumerate.
    :param radius_sq: the squared radius of the ball.
    :return: ``vol(ball) / vol(lattice)``, at least 1.
    """
    m = lattice.rank
    if radius_sq <= 0.0:
        return 1.0

    log_ball = 0.5 * m * math.log(math.pi * radius_sq) - float(gammaln(0.5 * m + 1.0))
    return max(1.0, math.exp(log_ball - math.log(lattice.volume)))


def enumerate_coordinates(
    lattice: Lattice,
    radius_sq: float,
    centre: npt.NDArray[Literal["M"], npt.Float64] | None = None,
    config: EnumerationConfig | None = None,
) -> npt.NDArray[Literal["NPoint, M"], npt.Int64]:
    """
    Get the integer coordinates of every lattice point within a ball.

    The ball is centred on the point with (real) coordinates ``centre``, the
    origin by default. The returned set may contain a few points just outside
    the radius, within the configured norm tolerance; callers filter on the
    exact distance.

    :param lattice: the lattice to enumerate.
    :param radius_sq: the squared radius of the ball.
    :param centre: the coordinates of the centre with respect to the generator rows.
    :param config: the enumeration configuration.
    :return: an ``(npoint, m)`` array of integer coordinates.
    :raises ResourceLimitError: if a level of the search exceeds ``config.max_points``.
    """
    config = config or EnumerationConfig()
    if radius_sq < 0.0 or not math.isfinite(radius_sq):
        raise DomainError(f"radius_sq must be finite and non-negative, got {radius_sq}")

    m = lattice.rank
    r = lattice.cholesky
    centre = np.zeros(m) if centre is None else np.asarray(centre, dtype=np.float64)

    slack = config.norm_tolerance * max(lattice.norm_scale, radius_sq)
    coords = np.zeros((1, m), dtype=np.int64)
    budget = np.array([radius_sq + slack])

    for level in reversed(range(m)):
        diag = r[level, level]
        if level < m - 1:
            offset = (coords[:, level + 1 :] - centre[level + 1 :]) @ (r[level, level + 1 :] / diag)
        else:
            offset = np.zeros(len(coords))

        mid = centre[level] - offset
        half_width = np.sqrt(np.maximum(budget, 0.0)) / diag
        lower = np.ceil(mid - half_width).astype(np.int64)
        upper = np.floor(mid + half_width).astype(np.int64)
        widths = np.maximum(upper - lower + 1, 0)

        total = int(widths.sum())
        if total > config.max_points:
            raise ResourceLimitError(
                f"enumeration of {lattice!r} to radius_sq={radius_sq:g} needs more than "
                f"{config.max_points} points at level {level}; reduce the radius or raise max_points"
            )

        parent = np.repeat(np.arange(len(coords)), widths)
        starts = np.cumsum(widths) - widths
        values = lower[parent] + (np.arange(total) - starts[parent])

        coords = coords[parent]
        coords[:, level] = values
        budget = budget[parent] - (diag * (values - mid[parent])) ** 2

        keep = budget >= 0.0
        coords = coords[keep]
        budget = budget[keep]

    return coords


def _guard_prediction(lattice: Lattice, radius_sq: float, config: EnumerationConfig) -> None:
    predicted = predicted_point_count(lattice, radius_sq)
    if predicted > config.max_points:
        raise ResourceLimitError(
            f"enumeration of {lattice!r} to radius_sq={radius_sq:g} is predicted to produce "
            f"{predicted:.3g} points, above the cap of {config.max_points}"
        )


def enumerate_points(
    lattice: Lattice,
    radius_sq: float,
    config: EnumerationConfig | None = None,
) -> Tuple[npt.NDArray[Literal["NPoint, N"], npt.Float64], npt.NDArray[Literal["NPoint, M"], npt.Int64]]:
    """
    Get every lattice vector with squared norm at most ``radius_sq``.

    Vectors are ordered by squared norm and then lexicographically by their
    integer coordinates.

    :param lattice: the lattice to enumerate.
    :param radius_sq: the squared radius.
    :param config: the enumeration configuration.
    :return: a tuple of the ``(npoint, n)`` vectors and their ``(npoint, m)`` coordinates.
    """
    config = config or EnumerationConfig()
    _guard_prediction(lattice, radius_sq, config)

    coords = enumerate_coordinates(lattice, radius_sq, config=config)
    vectors = coords @ lattice.generator
    norms = np.einsum("ij,ij->i", vectors, vectors)

    slack = config.norm_tolerance * max(lattice.norm_scale, radius_sq)
    keep = norms <= radius_sq + slack
    (coords, vectors, norms) = (coords[keep], vectors[keep], norms[keep])

    bucket = max(config.norm_tolerance, 1e-15) * lattice.norm_scale
    order = np.lexsort((*coords.T[::-1], np.round(norms / bucket)))
    logger.debug(f"enumerated {len(coords)} points of {lattice!r} with radius_sq={radius_sq:g}")
    return (vectors[order], coords[order])


def _spectrum_from_norms(norms: npt.NDArray, radius_sq: float, tol: float) -> NormSpectrum:
    norms = np.sort(norms)
    starts = np.concatenate(([0], np.flatnonzero(np.diff(norms) > tol) + 1))
    counts = np.diff(np.append(starts, len(norms))).astype(np.int64)
    values = np.add.reduceat(norms, starts) / counts
    values[0] = 0.0
    return NormSpectrum(norms=values, counts=counts, radius_sq=radius_sq)


def enumerate_lattice(
    lattice: Lattice,
    radius_sq: float,
    config: EnumerationConfig | None = None,
) -> NormSpectrum:
    """
    Get the norm spectrum of a lattice up to a squared radius.

    Squared norms closer than ``config.norm_tolerance`` times the larger of
    ``radius_sq`` and :py:attr:`Lattice.norm_scale` are grouped into one entry,
    so a scaled lattice has the same shells as the original.

    :param lattice: the lattice to enumerate.
    :param radius_sq: the squared radius up to which the spectrum is exhaustive.
    :param config: the enumeration configuration.
    :return: the norm spectrum.
    :raises ResourceLimitError: if the predicted or actual number of points exceeds the cap.
    """
    config = config or EnumerationConfig()
    _guard_prediction(lattice, radius_sq, config)

    coords = enumerate_coordinates(lattice, radius_sq, config=config)
    vectors = coords @ lattice.generator
    norms = np.einsum("ij,ij->i", vectors, vectors)
    slack = config.norm_tolerance * max(lattice.norm_scale, radius_sq)
    norms = norms[norms <= radius_sq + slack]

    spectrum = _spectrum_from_norms(norms, radius_sq, slack)
    logger.debug(f"spectrum of {lattice!r} up to {radius_sq:g} has {len(spectrum.norms)} shells, {spectrum.total} points")
    return spectrum


def min_distance(lattice: Lattice, config: EnumerationConfig | None = None) -> float:
    """
    Get the length of the shortest non-zero lattice vector.

    The search radius starts at half the shortest basis row and doubles until a
    non-zero vector is enumerated. The shortest row bounds the answer so the
    second pass always succeeds.

    :param lattice: the lattice.
    :param config: the enumeration configuration.
    :return: ``d_min``.
    """
    row_norms = np.einsum("ij,ij->i", lattice.generator, lattice.generator)
    shortest = float(row_norms.min())

    radius_sq = shortest / 4.0
    while True:
        spectrum = enumerate_lattice(lattice, radius_sq, config)
        if spectrum.minimum_norm is not None:
            return math.sqrt(spectrum.minimum_norm)
        radius_sq = min(4.0 * radius_sq, shortest)


def kissing_number(lattice: Lattice, config: EnumerationConfig | None = None) -> int:
    """
    Get the number of lattice vectors of minimal non-zero length.

    :param lattice: the lattice.
    :param config: the enumeration configuration.
    :return: the kissing number ``tau``.
    """
    config = config or EnumerationConfig()
    d_min_sq = min_distance(lattice, config) ** 2
    spectrum = enumerate_lattice(lattice, d_min_sq, config)
    return spectrum.count_at(d_min_sq, tol=config.norm_tolerance * max(lattice.norm_scale, d_min_sq))


def hermite_parameter(lattice: Lattice, config: EnumerationConfig | None = None) -> float:
    """
    Get the Hermite parameter ``d_min^2 / det(gram)^(1/n)``.

    :param lattice: a full rank lattice.
    :param config: the enumeration configuration.
    :return: the Hermite parameter, invariant under scaling.
    :raises UnsupportedLatticeError: if the lattice is not full rank.
    """
    lattice.require_full_rank("hermite_parameter")
    d_min_sq = min_distance(lattice, config) ** 2
    return d_min_sq / lattice.det_gram ** (1.0 / lattice.dimension)
