# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module defines the model classes of HDF5 sweep files."""

from __future__ import annotations

__all__ = [
    "HDF5_HEADER_TYPE",
    "SweepFile",
    "SweepMetadata",
    "map_hdf5_key",
]

import pathlib
from dataclasses import dataclass
from typing import Dict

import h5py
import numpy as np
import pandas as pd
from ska_pst_wiretap.errors import ConfigurationError
from ska_pst_wiretap.hdf5.consts import (
    HDF5_DATA_KEYS,
    HDF5_FILE_FORMAT_VERSION,
    HDF5_HEADER,
    HDF5_LATTICE,
    HDF5_NORMALISATION,
    HDF5_NPOINT,
    HDF5_SEED,
    HDF5_SIGMA_B,
    HDF5_SWEEP_KIND,
    HDF5_THETA_ZN,
    HDF5_TRIALS,
    HDF5_WINDOW,
    SweepKind,
)

KEY_MAP: Dict[str, str] = {
    HDF5_THETA_ZN: "theta_Zn",
}


def map_hdf5_key(hdf5_key: str) -> str:
    """Map a key of a HDF5 dataset to a CSV column name."""
    try:
        return KEY_MAP[hdf5_key]
    except KeyError:
        return hdf5_key.lower()


string_dt = h5py.string_dtype(encoding="utf-8")
uint32_dt = np.uint32
uint64_dt = np.uint64
double_dt = np.float64


HDF5_HEADER_TYPE = np.dtype(
    [
        (HDF5_SWEEP_KIND, uint32_dt),
        (HDF5_LATTICE, string_dt),
        (HDF5_NORMALISATION, string_dt),
        (HDF5_NPOINT, uint32_dt),
        (HDF5_SIGMA_B, double_dt),
        (HDF5_TRIALS, uint64_dt),
        (HDF5_SEED, uint64_dt),
        (HDF5_WINDOW, uint32_dt),
    ]
)


def _as_str(value: bytes | str) -> str:
    return value.decode("utf-8") if isinstance(value, bytes) else str(value)


@dataclass(kw_only=True, frozen=True)
class SweepMetadata:
    """
    Data class modelling the header of a HDF5 sweep file.

    :ivar file_format_version: the format of the file. Default is "1.0.0"
    :vartype file_format_version: str
    :ivar kind: which sweep the file holds.
    :vartype kind: SweepKind
    :ivar lattice: the lattice, or ``Lb/Le`` for a sigma sweep.
    :vartype lattice: str
    :ivar normalisation: the volume normalisation of a secrecy function sweep, empty otherwise.
    :vartype normalisation: str
    :ivar npoint: the number of grid points.
    :vartype npoint: int
    :ivar sigma_b: the legitimate receiver's noise of a sigma sweep, NaN otherwise.
    :vartype sigma_b: float
    :ivar trials: the number of trials per grid point of a sigma sweep, 0 otherwise.
    :vartype trials: int
    :ivar seed: the seed of a sigma sweep, 0 otherwise.
    :vartype seed: int
    :ivar window: the window half width of a sigma sweep, 0 otherwise.
    :vartype window: int
    """

    file_format_version: str
    kind: SweepKind
    lattice: str
    normalisation: str
    npoint: int
    sigma_b: float
    trials: int
    seed: int
    window: int

    def to_header(self: SweepMetadata) -> np.ndarray:
        """Get the metadata as a one element array of :py:data:`HDF5_HEADER_TYPE`."""
        return np.array(
            [
                (
                    int(self.kind),
                    self.lattice,
                    self.normalisation,
                    self.npoint,
                    self.sigma_b,
                    self.trials,
                    self.seed,
                    self.window,
                )
            ],
            dtype=HDF5_HEADER_TYPE,
        )


@dataclass(kw_only=True, frozen=True)
class SweepFile:
    """
    Data class used to abstract over a HDF5 sweep file.

    Instances of this should be created by passing the location of a sweep
    file to the :py:meth:`load_from_file` method.

    :ivar metadata: the header of the file.
    :vartype metadata: SweepMetadata
    :ivar data: one column per data set, named as in the CSV export.
    :vartype data: pd.DataFrame
    """

    metadata: SweepMetadata
    data: pd.DataFrame

    @staticmethod
    def load_from_file(file_path: pathlib.Path | str) -> SweepFile:
        """
        Load a HDF5 sweep file.

        :param file_path: the path to the file to load the sweep from
        :type file_path: pathlib.Path | str
        :return: the sweep as a Python class
        :rtype: SweepFile
        :raises ConfigurationError: if the file does not exist.
        """
        file_path = pathlib.Path(file_path)
        if not file_path.exists():
            raise ConfigurationError(f"Expected {file_path} to exist.")

        with h5py.File(file_path, "r") as f:
            file_format_version = f[HDF5_FILE_FORMAT_VERSION][()]  # pylint: disable=E1101
            hdf5_header = f[HDF5_HEADER][0]

            kind = SweepKind(int(hdf5_header[HDF5_SWEEP_KIND]))
            metadata = SweepMetadata(
                file_format_version=_as_str(file_format_version),
                kind=kind,
                lattice=_as_str(hdf5_header[HDF5_LATTICE]),
                normalisation=_as_str(hdf5_header[HDF5_NORMALISATION]),
                npoint=int(hdf5_header[HDF5_NPOINT]),
                sigma_b=float(hdf5_header[HDF5_SIGMA_B]),
                trials=int(hdf5_header[HDF5_TRIALS]),
                seed=int(hdf5_header[HDF5_SEED]),
                window=int(hdf5_header[HDF5_WINDOW]),
            )
            data = pd.DataFrame({map_hdf5_key(key): f[key][...] for key in HDF5_DATA_KEYS[kind]})

        return SweepFile(metadata=metadata, data=data)
