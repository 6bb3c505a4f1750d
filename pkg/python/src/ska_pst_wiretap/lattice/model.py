# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module defines the model classes for lattices and their norm spectra."""

from __future__ import annotations

__all__ = [
    "EnumerationConfig",
    "Lattice",
    "NormSpectrum",
    "volume",
]

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Literal, Tuple

import nptyping as npt
import numpy as np
import pandas as pd
from ska_pst_wiretap.errors import DomainError, InvalidDimensionError, InvalidLatticeError, UnsupportedLatticeError

logger = logging.getLogger(__name__)

# The following are used as headers within Pandas data frames
SQUARED_NORM = "Squared norm"
COUNT = "Count"

VOLUME_RELATIVE_TOLERANCE: float = 1e-9
DEFAULT_MAX_POINTS: int = 10_000_000


@dataclass(kw_only=True)
class EnumerationConfig:
    """
    A data class used as configuration for lattice point enumeration.

    :ivar max_points: the maximum number of points (or partial enumeration
        nodes) that an enumeration is allowed to produce, default 10^7.
    :vartype max_points: int
    :ivar norm_tolerance: absolute tolerance used to group squared norms
        into one spectrum entry, default 1e-9.
    :vartype norm_tolerance: float
    :ivar volume_guard: multiplicative guard applied to the volume heuristic
        when predicting the number of points in a ball, default 4.
    :vartype volume_guard: float
    """

    max_points: int = DEFAULT_MAX_POINTS
    norm_tolerance: float = 1e-9
    volume_guard: float = 4.0

    def __post_init__(self: EnumerationConfig) -> None:
        """Ensure configuration is valid."""
        assert self.max_points > 0, "expected max_points to be positive"
        assert self.norm_tolerance >= 0.0, "expected norm_tolerance to be non-negative"
        assert self.volume_guard >= 1.0, "expected volume_guard to be at least 1"


@dataclass(kw_only=True, frozen=True, eq=False)
class Lattice:
    """
    Data class modelling a lattice given by the rows of a generator matrix.

    The generator has ``m`` rows (the basis vectors) and ``n`` columns (the
    ambient dimension) with ``m <= n``. Instances are immutable and the
    derived quantities are cached on first use.

    :ivar generator: the ``m x n`` generator matrix, rows are basis vectors.
    :vartype generator: npt.NDArray[Literal["M, N"], npt.Float64]
    :ivar name: an optional label used in logs and output files.
    :vartype name: str | None
    """

    generator: npt.NDArray[Literal["M, N"], npt.Float64]
    name: str | None = field(default=None)

    def __post_init__(self: Lattice) -> None:
        """Validate the generator matrix and freeze a float copy of it."""
        generator = np.array(self.generator, dtype=np.float64, copy=True)
        if generator.ndim == 1:
            generator = generator.reshape(1, -1)
        if generator.ndim != 2 or generator.size == 0:
            raise InvalidDimensionError(f"generator must be a non-empty 2-D matrix, got shape {generator.shape}")

        (m, n) = generator.shape
        if m > n:
            raise InvalidLatticeError(f"generator has {m} rows but only {n} columns")
        if not np.all(np.isfinite(generator)):
            raise InvalidLatticeError("generator contains non-finite entries")
        if np.linalg.matrix_rank(generator) != m:
            raise InvalidLatticeError("generator rows are not linearly independent")

        generator.setflags(write=False)
        object.__setattr__(self, "generator", generator)

        if self.det_gram <= 0.0:
            raise InvalidLatticeError(f"Gram determinant must be positive, got {self.det_gram}")

    def __repr__(self: Lattice) -> str:
        """Get a short representation of the lattice."""
        return f"Lattice(name={self.name!r}, rank={self.rank}, dimension={self.dimension})"

    @property
    def rank(self: Lattice) -> int:
        """Get the number of basis vectors ``m``."""
        return int(self.generator.shape[0])

    @property
    def dimension(self: Lattice) -> int:
        """Get the ambient dimension ``n``."""
        return int(self.generator.shape[1])

    @property
    def is_full_rank(self: Lattice) -> bool:
        """Check whether the generator is square."""
        return self.rank == self.dimension

    @cached_property
    def gram(self: Lattice) -> npt.NDArray[Literal["M, M"], npt.Float64]:
        """Get the Gram matrix ``generator . generator^T``."""
        gram = self.generator @ self.generator.T
        gram.setflags(write=False)
        return gram

    @cached_property
    def det_gram(self: Lattice) -> float:
        """Get the determinant of the Gram matrix."""
        return float(np.linalg.det(self.gram))

    @cached_property
    def volume(self: Lattice) -> float:
        """Get the volume of a fundamental region, ``det(gram)^(1/2)``."""
        return float(np.sqrt(self.det_gram))

    @cached_property
    def norm_scale(self: Lattice) -> float:
        """
        Get ``volume^(2/m)``, the squared length of the lattice's unit of scale.

        Norm tolerances are relative to this so that ``aL`` and ``L`` group and
        compare squared norms identically.
        """
        (_, logdet) = np.linalg.slogdet(self.gram)
        return float(np.exp(logdet / self.rank))

    @cached_property
    def cholesky(self: Lattice) -> npt.NDArray[Literal["M, M"], npt.Float64]:
        """
        Get the upper triangular factor ``R`` with ``gram = R^T R``.

        For integer coordinates ``u`` the squared norm of ``u . generator`` is ``|R u^T|^2``.
        """
        return np.linalg.cholesky(self.gram).T

    @cached_property
    def generator_inverse(self: Lattice) -> npt.NDArray[Literal["N, N"], npt.Float64]:
        """Get the inverse of a square generator matrix."""
        self.require_full_rank("inverting the generator")
        return np.linalg.inv(self.generator)

    def require_full_rank(self: Lattice, operation: str) -> None:
        """
        Assert that the generator is square.

        :param operation: a description of the operation used in the error message.
        :raises UnsupportedLatticeError: if ``m < n``.
        """
        if not self.is_full_rank:
            raise UnsupportedLatticeError(
                f"{operation} requires a full rank lattice, got rank {self.rank} in dimension {self.dimension}"
            )

    def coordinates(self: Lattice, points: npt.NDArray) -> npt.NDArray:
        """
        Get the real coordinates of points with respect to the generator rows.

        :param points: a vector of length ``n`` or a ``(k, n)`` array of vectors.
        :return: the coordinates ``u`` such that ``u . generator = points``.
        """
        points = np.asarray(points, dtype=np.float64)
        if points.shape[-1] != self.dimension:
            raise InvalidDimensionError(f"expected vectors of length {self.dimension}, got shape {points.shape}")
        if self.is_full_rank:
            return points @ self.generator_inverse

        (coords, *_) = np.linalg.lstsq(self.generator.T, points.T, rcond=None)
        return coords.T

    def contains(self: Lattice, point: npt.NDArray, tol: float = 1e-8) -> bool:
        """
        Check whether a vector is a lattice point.

        :param point: the vector to check.
        :param tol: the absolute tolerance on the coordinates and on the reconstruction.
        """
        point = np.asarray(point, dtype=np.float64)
        coords = self.coordinates(point)
        rounded = np.rint(coords)
        if np.max(np.abs(coords - rounded), initial=0.0) > tol:
            return False

        scale = max(1.0, float(np.max(np.abs(point), initial=0.0)))
        return bool(np.max(np.abs(rounded @ self.generator - point), initial=0.0) <= tol * scale)

    def scaled(self: Lattice, factor: float) -> Lattice:
        """
        Get the lattice scaled by a positive factor.

        :param factor: the scaling factor ``a``, the volume scales by ``a^m``.
        :raises DomainError: if the factor is not positive.
        """
        if not factor > 0.0:
            raise DomainError(f"scaling factor must be positive, got {factor}")

        name = f"{factor:g}*{self.name}" if self.name else None
        return Lattice(generator=factor * self.generator, name=name)

    @cached_property
    def dual(self: Lattice) -> Lattice:
        """Get the dual lattice, generated by ``generator^-T`` for a square generator."""
        self.require_full_rank("the dual lattice")
        name = f"{self.name}*" if self.name else None
        return Lattice(generator=self.generator_inverse.T, name=name)


def volume(lattice: Lattice) -> float:
    """
    Get the volume of the fundamental region of a lattice.

    :param lattice: the lattice.
    :return: ``det(gram)^(1/2)``.
    """
    return lattice.volume


@dataclass(kw_only=True, frozen=True, eq=False)
class NormSpectrum:
    """
    Data class modelling the multiset of squared norms of a lattice.

    The spectrum is exhaustive up to ``radius_sq``: every lattice vector with
    squared norm at most ``radius_sq`` is counted exactly once.

    :ivar norms: the distinct squared norms, strictly increasing, first is 0.
    :vartype norms: npt.NDArray[Literal["NEntry"], npt.Float64]
    :ivar counts: the number of lattice vectors with each squared norm.
    :vartype counts: npt.NDArray[Literal["NEntry"], npt.Int64]
    :ivar radius_sq: the squared radius up to which the enumeration is exhaustive.
    :vartype radius_sq: float
    """

    norms: npt.NDArray[Literal["NEntry"], npt.Float64]
    counts: npt.NDArray[Literal["NEntry"], npt.Int64]
    radius_sq: float

    def __post_init__(self: NormSpectrum) -> None:
        """Ensure the spectrum is well formed."""
        assert len(self.norms) == len(self.counts), "expected one count per squared norm"
        assert len(self.norms) > 0 and self.norms[0] == 0.0 and self.counts[0] == 1, "expected (0, 1) as first entry"
        assert np.all(np.diff(self.norms) > 0.0), "expected squared norms to be strictly increasing"
        assert np.all(self.counts[1:] % 2 == 0), "expected every non-zero shell to have an even count"

    @property
    def entries(self: NormSpectrum) -> List[Tuple[float, int]]:
        """Get the spectrum as a list of ``(squared_norm, count)`` pairs."""
        return [(float(norm), int(count)) for (norm, count) in zip(self.norms, self.counts)]

    def as_dict(self: NormSpectrum) -> dict[float, int]:
        """Get the spectrum as a mapping of squared norm to count."""
        return dict(self.entries)

    @property
    def total(self: NormSpectrum) -> int:
        """Get the total number of enumerated lattice points."""
        return int(self.counts.sum())

    @property
    def minimum_norm(self: NormSpectrum) -> float | None:
        """Get the smallest non-zero squared norm, or None if only the origin was enumerated."""
        if len(self.norms) < 2:
            return None
        return float(self.norms[1])

    def count_at(self: NormSpectrum, norm_sq: float, tol: float = 1e-9) -> int:
        """Get the number of vectors with a given squared norm, 0 if absent."""
        matches = np.abs(self.norms - norm_sq) <= tol
        return int(self.counts[matches].sum())

    def truncated(self: NormSpectrum, radius_sq: float) -> NormSpectrum:
        """Get the spectrum restricted to squared norms at most ``radius_sq``."""
        if radius_sq > self.radius_sq:
            raise DomainError(f"cannot extend a spectrum exhaustive to {self.radius_sq} up to {radius_sq}")
        keep = self.norms <= radius_sq
        return NormSpectrum(norms=self.norms[keep], counts=self.counts[keep], radius_sq=radius_sq)

    def to_dataframe(self: NormSpectrum) -> pd.DataFrame:
        """Get the spectrum as a Pandas data frame with one row per shell."""
        return pd.DataFrame({SQUARED_NORM: self.norms, COUNT: self.counts})
