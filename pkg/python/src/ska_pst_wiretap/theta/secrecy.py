# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""
This module provides the secrecy function of a lattice and its maximisation.

The secrecy function compares the theta series of ``Z^n`` with that of the
lattice,

.. math::

    \\Xi_L(y) = \\frac{\\Theta_{Z^n}(y)}{\\Theta_L(y)}

and the secrecy gain is its supremum over ``y > 0``. The plain definition
does not normalise volumes; :py:class:`VolumeNormalisation` selects between it
and the two equal-volume variants.
"""

from __future__ import annotations

__all__ = [
    "SearchConfig",
    "SecrecyResult",
    "SecrecySweep",
    "VolumeNormalisation",
    "log_grid",
    "secrecy_function",
    "secrecy_gain",
    "secrecy_sweep",
]

import logging
import math
import pathlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Literal, Sequence, Tuple

import nptyping as npt
import numpy as np
import pandas as pd
from scipy.optimize import minimize_scalar
from ska_pst_wiretap.errors import DomainError
from ska_pst_wiretap.lattice import Lattice, LatticeName
from ska_pst_wiretap.theta.jacobi import JacobiTheta, ThetaArg, jacobi_theta_at
from ska_pst_wiretap.theta.series import LatticeTheta, ThetaConfig, named_volume, theta_closed_form

logger = logging.getLogger(__name__)

# Column names of the secrecy function sweep
Y = "y"
THETA_LATTICE = "theta_lattice"
THETA_ZN = "theta_Zn"
XI = "xi"


class VolumeNormalisation(str, Enum):
    """An enum used to select how the secrecy function accounts for the lattice volume."""

    NONE = "none"
    """Numerator ``theta3(y)^n``, whatever the volume of the lattice."""

    UNIT = "unit"
    """The lattice is rescaled to unit volume before the ratio is taken."""

    EQUAL = "equal"
    """``Z^n`` is rescaled to the volume of the lattice before the ratio is taken."""


@dataclass(kw_only=True)
class SearchConfig:
    """
    A data class used as configuration for the secrecy gain search.

    :ivar y_lo: the lower end of the search bracket, default 2^-4.
    :vartype y_lo: float
    :ivar y_hi: the upper end of the search bracket, default 2^4.
    :vartype y_hi: float
    :ivar tol: the stopping width of the refinement in ``log y``, default 1e-6.
    :vartype tol: float
    :ivar points: the number of points of the coarse log-spaced grid, default 64.
    :vartype points: int
    :ivar workers: the number of threads used for the coarse grid, default 1.
    :vartype workers: int
    """

    y_lo: float = 2.0**-4
    y_hi: float = 2.0**4
    tol: float = 1e-6
    points: int = 64
    workers: int = 1

    def __post_init__(self: SearchConfig) -> None:
        """Ensure configuration is valid."""
        if not 0.0 < self.y_lo < self.y_hi:
            raise DomainError(f"expected 0 < y_lo < y_hi, got [{self.y_lo}, {self.y_hi}]")
        if not self.tol > 0.0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.points < 3:
            raise DomainError(f"the coarse grid needs at least 3 points, got {self.points}")
        assert self.workers >= 1, "expected at least one worker"


@dataclass(kw_only=True, frozen=True)
class SecrecyResult:
    """
    Data class modelling the outcome of a secrecy gain search.

    :ivar gain: the largest secrecy function value found.
    :vartype gain: float
    :ivar argmax_y: the argument at which it was found.
    :vartype argmax_y: float
    :ivar evaluations: every ``(y, xi)`` pair evaluated, in evaluation order.
    :vartype evaluations: List[Tuple[float, float]]
    :ivar at_boundary: True when the maximum of the coarse grid was at an end of
        the bracket, in which case the supremum may lie outside it.
    :vartype at_boundary: bool
    :ivar normalisation: the volume normalisation used.
    :vartype normalisation: VolumeNormalisation
    """

    gain: float
    argmax_y: float
    evaluations: List[Tuple[float, float]] = field(default_factory=list)
    at_boundary: bool = False
    normalisation: VolumeNormalisation = VolumeNormalisation.NONE

    def to_dict(self: SecrecyResult) -> dict:
        """Get the JSON-ready form of the result, without the trace."""
        return {
            "gain": self.gain,
            "argmax_y": self.argmax_y,
            "at_boundary": self.at_boundary,
            "normalisation": self.normalisation.value,
            "evaluations": len(self.evaluations),
        }


class _SecrecyEvaluator:
    """Evaluates both theta series of the secrecy function for one lattice."""

    def __init__(
        self: _SecrecyEvaluator,
        lattice: Lattice | LatticeName | str,
        normalisation: VolumeNormalisation,
        config: ThetaConfig,
    ) -> None:
        if isinstance(lattice, str):
            lattice = LatticeName.parse(lattice)

        self._theta: Callable[[ThetaArg], float]
        if isinstance(lattice, Lattice):
            evaluator = LatticeTheta(lattice, config)
            self._theta = evaluator
            (self.dimension, self.volume) = (lattice.dimension, lattice.volume)
        else:
            name = lattice
            self._theta = lambda arg: theta_closed_form(name, arg, config.jacobi_tol)
            (self.dimension, self.volume) = (name.dimension, named_volume(name))

        self.normalisation = VolumeNormalisation(normalisation)
        self._jacobi_tol = config.jacobi_tol

    def evaluate(self: _SecrecyEvaluator, y: ThetaArg | float) -> Tuple[float, float, float]:
        """Get ``(theta_lattice, theta_Zn, xi)`` at one argument."""
        arg = y if isinstance(y, ThetaArg) else ThetaArg(y=float(y))
        # squared scale that maps a lattice of this volume to unit volume
        unit_scale_sq = self.volume ** (-2.0 / self.dimension)

        lattice_arg = arg.scaled(unit_scale_sq) if self.normalisation == VolumeNormalisation.UNIT else arg
        zn_arg = arg.scaled(1.0 / unit_scale_sq) if self.normalisation == VolumeNormalisation.EQUAL else arg

        theta_lattice = self._theta(lattice_arg)
        theta_zn = jacobi_theta_at(JacobiTheta.THETA3, zn_arg, self._jacobi_tol) ** self.dimension
        return (theta_lattice, theta_zn, theta_zn / theta_lattice)

    def xi(self: _SecrecyEvaluator, y: float) -> float:
        return self.evaluate(y)[2]


def secrecy_function(
    lattice: Lattice | LatticeName | str,
    y: ThetaArg | float,
    normalisation: VolumeNormalisation = VolumeNormalisation.NONE,
    config: ThetaConfig | None = None,
) -> float:
    """
    Evaluate the secrecy function ``Theta_Zn(y) / Theta_L(y)``.

    A :py:class:`Lattice` is evaluated by enumeration, a named lattice from its
    closed form theta series.

    :param lattice: the lattice or the name of a lattice.
    :param y: the theta argument.
    :param normalisation: how the volume of the lattice is accounted for.
    :param config: the theta configuration.
    :return: the secrecy function value.
    """
    return _SecrecyEvaluator(lattice, normalisation, config or ThetaConfig()).evaluate(y)[2]


def log_grid(y_min: float, y_max: float, points: int) -> npt.NDArray[Literal["NPoint"], npt.Float64]:
    """
    Get a log-spaced grid of theta arguments including both ends.

    :raises DomainError: for an empty grid or an invalid bracket.
    """
    if points < 1:
        raise DomainError(f"a grid needs at least one point, got {points}")
    if not 0.0 < y_min <= y_max:
        raise DomainError(f"expected 0 < y_min <= y_max, got [{y_min}, {y_max}]")
    return np.geomspace(y_min, y_max, points)


def _refine(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float,
    trace: List[Tuple[float, float]],
) -> None:
    """Maximise ``func(exp(t))`` over ``t`` in ``[lo, hi]``, recording every evaluation."""

    def _negated(t: float) -> float:
        y = math.exp(t)
        value = func(y)
        trace.append((y, value))
        return -value

    if hi - lo <= tol:
        return
    result = minimize_scalar(_negated, bounds=(lo, hi), method="bounded", options={"xatol": tol})
    logger.debug(f"bounded search on log y in [{lo:.6g}, {hi:.6g}] took {result.nfev} evaluations")


def _argmax(trace: Sequence[Tuple[float, float]]) -> Tuple[float, float]:
    # ties resolve towards the smaller y
    return max(trace, key=lambda item: (item[1], -item[0]))


def secrecy_gain(
    lattice: Lattice | LatticeName | str,
    search: SearchConfig | None = None,
    normalisation: VolumeNormalisation = VolumeNormalisation.NONE,
    config: ThetaConfig | None = None,
) -> SecrecyResult:
    """
    Maximise the secrecy function over a bracket of ``y``.

    A coarse log-spaced grid locates the peak, then a bounded Brent search on
    ``log y`` refines it between the grid neighbours of the best grid point.

    :param lattice: the lattice or the name of a lattice.
    :param search: the search configuration.
    :param normalisation: how the volume of the lattice is accounted for.
    :param config: the theta configuration.
    :return: the gain, its argument and the full evaluation trace.
    """
    search = search or SearchConfig()
    evaluator = _SecrecyEvaluator(lattice, normalisation, config or ThetaConfig())

    grid = log_grid(search.y_lo, search.y_hi, search.points)
    if search.workers > 1:
        with ThreadPoolExecutor(max_workers=search.workers) as executor:
            values = list(executor.map(evaluator.xi, grid))
    else:
        values = [evaluator.xi(y) for y in grid]

    trace: List[Tuple[float, float]] = [(float(y), float(v)) for (y, v) in zip(grid, values)]
    best = int(np.argmax(values))
    interior_max = max(values[1:-1], default=-math.inf)
    at_boundary = best in (0, len(grid) - 1) and values[best] > interior_max

    log_grid_points = np.log(grid)
    lo = log_grid_points[max(best - 1, 0)]
    hi = log_grid_points[min(best + 1, len(grid) - 1)]
    _refine(evaluator.xi, lo, hi, search.tol, trace)

    (argmax_y, gain) = _argmax(trace)
    if at_boundary:
        logger.warning(
            f"secrecy function maximum at the search boundary y={argmax_y:.6g}; "
            f"the supremum may lie outside [{search.y_lo:g}, {search.y_hi:g}]"
        )

    logger.debug(f"secrecy gain {gain:.10g} at y={argmax_y:.8g} after {len(trace)} evaluations")
    return SecrecyResult(
        gain=gain,
        argmax_y=argmax_y,
        evaluations=trace,
        at_boundary=at_boundary,
        normalisation=evaluator.normalisation,
    )


@dataclass(kw_only=True, frozen=True, eq=False)
class SecrecySweep:
    """
    Data class holding the secrecy function evaluated over a grid.

    :ivar y: the grid, in the order it was requested.
    :vartype y: npt.NDArray[Literal["NPoint"], npt.Float64]
    :ivar theta_lattice: the theta series of the lattice (after normalisation).
    :vartype theta_lattice: npt.NDArray[Literal["NPoint"], npt.Float64]
    :ivar theta_zn: the theta series of the cubic lattice (after normalisation).
    :vartype theta_zn: npt.NDArray[Literal["NPoint"], npt.Float64]
    :ivar xi: the secrecy function.
    :vartype xi: npt.NDArray[Literal["NPoint"], npt.Float64]
    :ivar lattice_name: the name of the lattice.
    :vartype lattice_name: str
    :ivar normalisation: the volume normalisation used.
    :vartype normalisation: VolumeNormalisation
    """

    y: npt.NDArray[Literal["NPoint"], npt.Float64]
    theta_lattice: npt.NDArray[Literal["NPoint"], npt.Float64]
    theta_zn: npt.NDArray[Literal["NPoint"], npt.Float64]
    xi: npt.NDArray[Literal["NPoint"], npt.Float64]
    lattice_name: str = ""
    normalisation: VolumeNormalisation = VolumeNormalisation.NONE

    @property
    def argmax_y(self: SecrecySweep) -> float:
        """Get the grid point with the largest secrecy function value."""
        return float(self.y[int(np.argmax(self.xi))])

    def to_dataframe(self: SecrecySweep) -> pd.DataFrame:
        """Get the sweep as a data frame with columns ``y,theta_lattice,theta_Zn,xi``."""
        return pd.DataFrame({Y: self.y, THETA_LATTICE: self.theta_lattice, THETA_ZN: self.theta_zn, XI: self.xi})

    def to_csv(self: SecrecySweep, file_path: pathlib.Path | str) -> None:
        """Write the sweep as CSV with 15 significant digits."""
        self.to_dataframe().to_csv(file_path, index=False, float_format="%.15g")


def secrecy_sweep(
    lattice: Lattice | LatticeName | str,
    grid: Sequence[float] | npt.NDArray,
    normalisation: VolumeNormalisation = VolumeNormalisation.NONE,
    config: ThetaConfig | None = None,
    workers: int = 1,
) -> SecrecySweep:
    """
    Evaluate the secrecy function over a grid of arguments.

    :param lattice: the lattice or the name of a lattice.
    :param grid: the arguments, kept in the given order.
    :param normalisation: how the volume of the lattice is accounted for.
    :param config: the theta configuration.
    :param workers: the number of threads to use.
    :return: the sweep.
    :raises DomainError: if the grid is empty.
    """
    grid = np.asarray(grid, dtype=np.float64)
    if grid.size == 0:
        raise DomainError("the secrecy function grid is empty")

    evaluator = _SecrecyEvaluator(lattice, normalisation, config or ThetaConfig())
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(evaluator.evaluate, grid))
    else:
        rows = [evaluator.evaluate(y) for y in grid]

    values = np.array(rows, dtype=np.float64).reshape(-1, 3)
    name = lattice.name if isinstance(lattice, Lattice) else str(lattice)
    return SecrecySweep(
        y=grid,
        theta_lattice=values[:, 0],
        theta_zn=values[:, 1],
        xi=values[:, 2],
        lattice_name=name or "",
        normalisation=evaluator.normalisation,
    )
