# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""
This module provides closest vector decoding for full rank lattices.

:py:func:`closest_point` is an exact sphere decoder: the search radius is the
distance to the rounded coordinate (Babai) point and every lattice point in
that ball is enumerated. Equidistant points are resolved towards the
lexicographically smallest integer coordinate vector.

:py:func:`closest_points` decodes many targets at once. Each target is first
rounded and then moved by Voronoi-relevant vectors while that strictly
reduces its distance; a point is closest exactly when no relevant vector
improves it. Targets that end on a Voronoi facet fall back to
:py:func:`closest_point` so that the tie-break is the same.
"""

from __future__ import annotations

__all__ = [
    "RelevantVectors",
    "closest_point",
    "closest_point_ties",
    "closest_points",
    "in_voronoi_cell",
    "relevant_vectors",
]

import logging
from dataclasses import dataclass
from typing import Literal, Tuple

import nptyping as npt
import numpy as np
from ska_pst_wiretap.errors import InvalidDimensionError
from ska_pst_wiretap.lattice.enumeration import enumerate_coordinates
from ska_pst_wiretap.lattice.model import EnumerationConfig, Lattice

logger = logging.getLogger(__name__)

MAX_DESCENT_STEPS: int = 10_000
TIE_TOLERANCE: float = 1e-9


def _as_target(lattice: Lattice, target: npt.NDArray) -> npt.NDArray[Literal["N"], npt.Float64]:
    target = np.asarray(target, dtype=np.float64)
    if target.shape != (lattice.dimension,):
        raise InvalidDimensionError(f"expected a target of length {lattice.dimension}, got shape {target.shape}")
    return target


def _lexicographic_order(coords: npt.NDArray) -> npt.NDArray:
    # np.lexsort treats the last key as primary
    return np.lexsort(coords.T[::-1])


def closest_point_ties(
    lattice: Lattice,
    target: npt.NDArray[Literal["N"], npt.Float64],
    config: EnumerationConfig | None = None,
) -> npt.NDArray[Literal["NTie, N"], npt.Int64]:
    """
    Get the integer coordinates of every lattice point closest to a target.

    :param lattice: a full rank lattice.
    :param target: the target vector.
    :param config: the enumeration configuration.
    :return: the coordinates of all minimisers, in lexicographic order.
    """
    lattice.require_full_rank("closest_point")
    target = _as_target(lattice, target)

    centre = lattice.coordinates(target)
    babai = np.rint(centre)
    residual = target - babai @ lattice.generator
    radius_sq = float(residual @ residual)

    coords = enumerate_coordinates(lattice, radius_sq, centre=centre, config=config)
    diffs = target - coords @ lattice.generator
    dists = np.einsum("ij,ij->i", diffs, diffs)

    best = dists.min()
    ties = coords[dists <= best + TIE_TOLERANCE * max(lattice.norm_scale, best)]
    return ties[_lexicographic_order(ties)]


def closest_point(
    lattice: Lattice,
    target: npt.NDArray[Literal["N"], npt.Float64],
    config: EnumerationConfig | None = None,
) -> Tuple[npt.NDArray[Literal["N"], npt.Float64], npt.NDArray[Literal["N"], npt.Int64]]:
    """
    Get the lattice point closest to a target.

    :param lattice: a full rank lattice.
    :param target: the target vector of length ``n``.
    :param config: the enumeration configuration.
    :return: the closest point and its integer coordinates in the generator basis.
    :raises UnsupportedLatticeError: if the lattice is not full rank.
    """
    coords = closest_point_ties(lattice, target, config)[0]
    return (coords @ lattice.generator, coords)


def in_voronoi_cell(lattice: Lattice, noise: npt.NDArray[Literal["N"], npt.Float64]) -> bool:
    """Check whether a vector lies in the Voronoi cell of the origin, facets resolved by the CVP tie-break."""
    (_, coords) = closest_point(lattice, noise)
    return bool(np.all(coords == 0))


@dataclass(kw_only=True, frozen=True, eq=False)
class RelevantVectors:
    """
    Data class holding the Voronoi-relevant vectors of a lattice.

    :ivar vectors: the relevant vectors, closed under negation.
    :vartype vectors: npt.NDArray[Literal["NRelevant, N"], npt.Float64]
    :ivar coords: their integer coordinates.
    :vartype coords: npt.NDArray[Literal["NRelevant, N"], npt.Int64]
    """

    vectors: npt.NDArray[Literal["NRelevant, N"], npt.Float64]
    coords: npt.NDArray[Literal["NRelevant, N"], npt.Int64]

    @property
    def half_norms(self: RelevantVectors) -> npt.NDArray[Literal["NRelevant"], npt.Float64]:
        """Get half of the squared norm of every relevant vector."""
        return 0.5 * np.einsum("ij,ij->i", self.vectors, self.vectors)

    def __len__(self: RelevantVectors) -> int:
        """Get the number of relevant vectors."""
        return len(self.vectors)


def relevant_vectors(lattice: Lattice, config: EnumerationConfig | None = None) -> RelevantVectors:
    """
    Get the Voronoi-relevant vectors of a full rank lattice.

    A non-zero vector is relevant exactly when it and its negative are the only
    shortest vectors of its class modulo twice the lattice. The enumeration
    radius doubles until every non-zero class has been reached.

    :param lattice: a full rank lattice.
    :param config: the enumeration configuration.
    :return: the relevant vectors.
    """
    lattice.require_full_rank("relevant_vectors")
    m = lattice.rank
    nclasses = 1 << m
    weights = 1 << np.arange(m, dtype=np.int64)

    radius_sq = float(np.einsum("ij,ij->i", lattice.generator, lattice.generator).min())
    while True:
        coords = enumerate_coordinates(lattice, radius_sq, config=config)
        classes = (coords & 1) @ weights
        if len(np.unique(classes)) == nclasses:
            break
        radius_sq *= 2.0

    vectors = coords @ lattice.generator
    norms = np.einsum("ij,ij->i", vectors, vectors)

    class_min = np.full(nclasses, np.inf)
    np.minimum.at(class_min, classes, norms)
    shortest = norms <= class_min[classes] + TIE_TOLERANCE * np.maximum(lattice.norm_scale, class_min[classes])
    class_size = np.bincount(classes[shortest], minlength=nclasses)

    relevant = shortest & (classes != 0) & (class_size[classes] == 2)
    logger.debug(f"{lattice!r} has {int(relevant.sum())} relevant vectors (radius_sq={radius_sq:g})")
    return RelevantVectors(vectors=vectors[relevant], coords=coords[relevant])


def closest_points(
    lattice: Lattice,
    targets: npt.NDArray[Literal["NTarget, N"], npt.Float64],
    relevant: RelevantVectors | None = None,
    config: EnumerationConfig | None = None,
) -> Tuple[npt.NDArray[Literal["NTarget, N"], npt.Float64], npt.NDArray[Literal["NTarget, N"], npt.Int64]]:
    """
    Get the closest lattice point of every row of ``targets``.

    The result is identical to calling :py:func:`closest_point` on every row.

    :param lattice: a full rank lattice.
    :param targets: an ``(ntarget, n)`` array.
    :param relevant: precomputed relevant vectors of the lattice.
    :param config: the enumeration configuration.
    :return: the closest points and their integer coordinates.
    """
    lattice.require_full_rank("closest_points")
    targets = np.asarray(targets, dtype=np.float64)
    if targets.ndim != 2 or targets.shape[1] != lattice.dimension:
        raise InvalidDimensionError(f"expected targets of shape (k, {lattice.dimension}), got {targets.shape}")

    relevant = relevant or relevant_vectors(lattice, config)
    half_norms = relevant.half_norms
    tol = TIE_TOLERANCE * max(lattice.norm_scale, float(half_norms.max(initial=0.0)))

    coords = np.rint(targets @ lattice.generator_inverse).astype(np.int64)
    residual = targets - coords @ lattice.generator
    facet = np.zeros(len(targets), dtype=bool)

    active = np.arange(len(targets))
    for _ in range(MAX_DESCENT_STEPS):
        if len(active) == 0:
            break

        # half of |e|^2 - |e - v|^2 for every relevant v
        gains = residual[active] @ relevant.vectors.T - half_norms
        best = np.argmax(gains, axis=1)
        best_gain = gains[np.arange(len(active)), best]

        move = best_gain > tol
        facet[active[~move]] = best_gain[~move] >= -tol

        moving = active[move]
        residual[moving] -= relevant.vectors[best[move]]
        coords[moving] += relevant.coords[best[move]]
        active = moving
    else:
        raise RuntimeError(f"closest vector descent did not converge for {len(active)} targets")

    for idx in np.flatnonzero(facet):
        coords[idx] = closest_point_ties(lattice, targets[idx], config)[0]

    return (coords @ lattice.generator, coords)
