# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""
This module provides the configuration of the command line interface.

Lattices are selected either by name (see :py:class:`LatticeName`) or by the
path of a generator matrix file: plain text, one basis vector per line,
whitespace separated entries written as decimals or rationals ``p/q``. Blank
lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

__all__ = [
    "CliConfig",
    "Command",
    "OutputFormat",
    "parse_float_list",
    "parse_int_list",
    "read_generator_file",
    "resolve_lattice",
    "resolve_theta_lattice",
]

import logging
import math
import pathlib
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Sequence

import numpy as np
from ska_pst_wiretap.coset import LabelPreset
from ska_pst_wiretap.errors import ConfigurationError
from ska_pst_wiretap.lattice import Lattice, LatticeName, make_named
from ska_pst_wiretap.lattice.model import DEFAULT_MAX_POINTS
from ska_pst_wiretap.theta import VolumeNormalisation
from ska_pst_wiretap.theta.series import DEFAULT_ENUMERATED_TOL

logger = logging.getLogger(__name__)

DEFAULT_POINTS: int = 64
DEFAULT_TRIALS: int = 100_000


class Command(str, Enum):
    """An enum used to represent the commands of the command line interface."""

    THETA = "theta"
    SECRECY_FUNCTION = "secrecy-function"
    SECRECY_GAIN = "secrecy-gain"
    QUOTIENT = "quotient"
    ENCODE = "encode"
    DECODE = "decode"
    SIMULATE = "simulate"
    E8_DEMO = "e8-demo"


class OutputFormat(str, Enum):
    """An enum used to represent the format of the output artifact."""

    CSV = "csv"
    JSON = "json"
    HDF5 = "hdf5"


def _parse_number(text: str) -> float:
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigurationError(f"invalid number {text!r}") from exc


def parse_float_list(text: str) -> List[float]:
    """Parse a comma separated list of decimals or rationals ``p/q``."""
    items = [item for item in text.split(",") if item.strip()]
    if not items:
        raise ConfigurationError(f"expected a comma separated list of numbers, got {text!r}")
    return [_parse_number(item) for item in items]


def parse_int_list(text: str) -> List[int]:
    """Parse a comma separated list of integers."""
    values = parse_float_list(text)
    if any(v != int(v) for v in values):
        raise ConfigurationError(f"expected a comma separated list of integers, got {text!r}")
    return [int(v) for v in values]


def read_generator_file(file_path: pathlib.Path | str) -> Lattice:
    """
    Read a lattice from a generator matrix file.

    :param file_path: the path of the file.
    :return: the lattice, named after the file.
    :raises ConfigurationError: if the file is missing or malformed.
    """
    file_path = pathlib.Path(file_path)
    if not file_path.is_file():
        raise ConfigurationError(f"Expected {file_path} to exist.")

    rows: List[List[float]] = []
    for line in file_path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append([_parse_number(entry) for entry in line.split()])

    if not rows or any(len(row) != len(rows[0]) for row in rows):
        raise ConfigurationError(f"{file_path} must hold a non-empty matrix with rows of equal length")

    logger.debug(f"read a {len(rows)}x{len(rows[0])} generator from {file_path}")
    return Lattice(generator=np.array(rows, dtype=np.float64), name=file_path.stem)


def _is_file_selector(selector: str) -> bool:
    return pathlib.Path(selector).is_file()


def resolve_theta_lattice(selector: str) -> Lattice | LatticeName:
    """Get a generator file as a lattice, or a name for its closed form theta series."""
    if _is_file_selector(selector):
        return read_generator_file(selector)
    return LatticeName.parse(selector)


def resolve_lattice(selector: str) -> Lattice:
    """Get the lattice of a name or of a generator file."""
    if _is_file_selector(selector):
        return read_generator_file(selector)
    return make_named(selector)


@dataclass(kw_only=True)
class CliConfig:
    """
    A data class used as configuration of one command line invocation.

    :ivar command: the command to run.
    :vartype command: Command
    :ivar lattice: the lattice selector of the theta and secrecy commands.
    :vartype lattice: str | None
    :ivar lattice_b: the legitimate receiver's lattice selector.
    :vartype lattice_b: str | None
    :ivar lattice_e: the eavesdropper's lattice selector.
    :vartype lattice_e: str | None
    :ivar y: a single theta argument.
    :vartype y: float | None
    :ivar y_min: the lower end of a ``y`` grid or search bracket.
    :vartype y_min: float | None
    :ivar y_max: the upper end of a ``y`` grid or search bracket.
    :vartype y_max: float | None
    :ivar points: the number of grid points.
    :vartype points: int
    :ivar sigma_b: the legitimate receiver's noise standard deviation.
    :vartype sigma_b: float | None
    :ivar sigma_e: one or more eavesdropper noise standard deviations.
    :vartype sigma_e: List[float]
    :ivar trials: the number of Monte Carlo trials.
    :vartype trials: int
    :ivar seed: the seed of all randomness.
    :vartype seed: int
    :ivar tol: the absolute error target of enumerated theta series.
    :vartype tol: float
    :ivar window: the half width of the window of the random point of ``Le``.
    :vartype window: int
    :ivar out: the output path, standard output when omitted.
    :vartype out: pathlib.Path | None
    :ivar format: the output format.
    :vartype format: OutputFormat
    :ivar normalisation: the volume normalisation of the secrecy function.
    :vartype normalisation: VolumeNormalisation
    :ivar bits: the information bits to encode.
    :vartype bits: str | None
    :ivar random: the window coordinates of the random point of ``Le``.
    :vartype random: List[int] | None
    :ivar received: the received vector to decode.
    :vartype received: List[float] | None
    :ivar preset: the bit-to-coset labelling.
    :vartype preset: LabelPreset
    :ivar workers: the number of threads.
    :vartype workers: int
    :ivar max_points: the enumeration point cap.
    :vartype max_points: int
    :ivar verbose: whether to log at DEBUG level.
    :vartype verbose: bool
    """

    command: Command
    lattice: str | None = None
    lattice_b: str | None = None
    lattice_e: str | None = None
    y: float | None = None
    y_min: float | None = None
    y_max: float | None = None
    points: int = DEFAULT_POINTS
    sigma_b: float | None = None
    sigma_e: List[float] = field(default_factory=list)
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    tol: float = DEFAULT_ENUMERATED_TOL
    window: int = 2
    out: pathlib.Path | None = None
    format: OutputFormat = OutputFormat.JSON
    normalisation: VolumeNormalisation = VolumeNormalisation.NONE
    bits: str | None = None
    random: List[int] | None = None
    received: List[float] | None = None
    preset: LabelPreset = LabelPreset.SNF
    workers: int = 1
    max_points: int = DEFAULT_MAX_POINTS
    verbose: bool = False

    def __post_init__(self: CliConfig) -> None:
        """Ensure the configuration is valid before anything is computed."""
        self.command = Command(self.command)
        self.format = OutputFormat(self.format)
        self.normalisation = VolumeNormalisation(self.normalisation)
        self.preset = LabelPreset(self.preset)

        self._require_positive("y", self.y)
        self._require_positive("y-min", self.y_min)
        self._require_positive("y-max", self.y_max)
        self._require_positive("sigma-b", self.sigma_b)
        self._require_positive("tol", self.tol)
        for sigma_e in self.sigma_e:
            self._require_positive("sigma-e", sigma_e)
        if self.y_min is not None and self.y_max is not None and self.y_min > self.y_max:
            raise ConfigurationError(f"--y-min {self.y_min} exceeds --y-max {self.y_max}")

        for (name, value, minimum) in (
            ("points", self.points, 1),
            ("trials", self.trials, 1),
            ("seed", self.seed, 0),
            ("window", self.window, 0),
            ("workers", self.workers, 1),
            ("max-points", self.max_points, 1),
        ):
            if value < minimum:
                raise ConfigurationError(f"--{name} must be at least {minimum}, got {value}")

        self._require_selectors()
        if self.format == OutputFormat.HDF5 and not self.is_sweep:
            raise ConfigurationError(f"--format hdf5 applies to sweeps, not to {self.command.value}")
        if self.format == OutputFormat.HDF5 and self.out is None:
            raise ConfigurationError("--format hdf5 requires --out")

    @staticmethod
    def _require_positive(name: str, value: float | None) -> None:
        if value is not None and not (value > 0.0 and math.isfinite(value)):
            raise ConfigurationError(f"--{name} must be positive, got {value}")

    def _require_selectors(self: CliConfig) -> None:
        needed: Sequence[str]
        if self.command in (Command.THETA, Command.SECRECY_FUNCTION, Command.SECRECY_GAIN):
            needed = ("lattice",)
        elif self.command in (Command.QUOTIENT, Command.ENCODE, Command.DECODE, Command.SIMULATE):
            needed = ("lattice_b", "lattice_e")
        else:
            needed = ()

        for name in needed:
            selector = getattr(self, name)
            if selector is None:
                raise ConfigurationError(f"{self.command.value} requires --{name.replace('_', '-')}")
            if not _is_file_selector(selector):
                # rejects unknown names before any computation
                LatticeName.parse(selector)

        if self.command == Command.THETA and self.y is None:
            raise ConfigurationError("theta requires --y")
        if self.command == Command.ENCODE and self.bits is None:
            raise ConfigurationError("encode requires --bits")
        if self.command == Command.DECODE and self.received is None:
            raise ConfigurationError("decode requires --received")
        if self.command == Command.SIMULATE and (self.sigma_b is None or not self.sigma_e):
            raise ConfigurationError("simulate requires --sigma-b and --sigma-e")

    @property
    def is_sweep(self: CliConfig) -> bool:
        """Check whether the command produces a sweep over a grid."""
        if self.command == Command.SECRECY_FUNCTION:
            return self.y is None
        return self.command == Command.SIMULATE and len(self.sigma_e) > 1
