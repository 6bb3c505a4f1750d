# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module writes secrecy function and sigma sweeps as HDF5 files."""

from __future__ import annotations

__all__ = [
    "write_sweep",
]

import logging
import math
import pathlib
from typing import Dict, Tuple

import h5py
import numpy as np
from ska_pst_wiretap.channel import SigmaSweep
from ska_pst_wiretap.hdf5.consts import (
    FILE_FORMAT_VERSION_1_0_0,
    HDF5_FILE_FORMAT_VERSION,
    HDF5_HEADER,
    HDF5_P_APPROX,
    HDF5_P_MC,
    HDF5_SIGMA_E,
    HDF5_STDERR,
    HDF5_THETA_LATTICE,
    HDF5_THETA_ZN,
    HDF5_XI,
    HDF5_Y,
    SweepKind,
)
from ska_pst_wiretap.hdf5.model import HDF5_HEADER_TYPE, SweepMetadata, string_dt
from ska_pst_wiretap.theta import SecrecySweep

logger = logging.getLogger(__name__)


def _secrecy_function_file(sweep: SecrecySweep) -> Tuple[SweepMetadata, Dict[str, np.ndarray]]:
    metadata = SweepMetadata(
        file_format_version=FILE_FORMAT_VERSION_1_0_0,
        kind=SweepKind.SECRECY_FUNCTION,
        lattice=sweep.lattice_name,
        normalisation=sweep.normalisation.value,
        npoint=len(sweep.y),
        sigma_b=math.nan,
        trials=0,
        seed=0,
        window=0,
    )
    data = {HDF5_Y: sweep.y, HDF5_THETA_LATTICE: sweep.theta_lattice, HDF5_THETA_ZN: sweep.theta_zn, HDF5_XI: sweep.xi}
    return (metadata, data)


def _sigma_file(sweep: SigmaSweep) -> Tuple[SweepMetadata, Dict[str, np.ndarray]]:
    metadata = SweepMetadata(
        file_format_version=FILE_FORMAT_VERSION_1_0_0,
        kind=SweepKind.SIGMA,
        lattice=sweep.lattice_name,
        normalisation="",
        npoint=len(sweep.sigma_e),
        sigma_b=sweep.sigma_b,
        trials=sweep.trials,
        seed=sweep.seed,
        window=sweep.window,
    )
    data = {HDF5_SIGMA_E: sweep.sigma_e, HDF5_P_MC: sweep.p_mc, HDF5_STDERR: sweep.stderr, HDF5_P_APPROX: sweep.p_approx}
    return (metadata, data)


def _create_data_set(file: h5py.File, key: str, data: np.ndarray) -> None:
    data = np.asarray(data, dtype=np.float64)
    ds = file.create_dataset(key, data.shape, dtype=data.dtype)
    ds[...] = data


def write_sweep(sweep: SecrecySweep | SigmaSweep, file_path: pathlib.Path | str) -> None:
    """
    Write a sweep as a HDF5 file, replacing any existing file.

    The file holds a ``FILE_FORMAT_VERSION`` string, a one element ``HEADER``
    compound dataset and one dataset per column.

    :param sweep: a secrecy function or a sigma sweep.
    :param file_path: the path of the file to write.
    """
    file_path = pathlib.Path(file_path)
    if file_path.exists():
        file_path.unlink()

    if isinstance(sweep, SecrecySweep):
        (metadata, data) = _secrecy_function_file(sweep)
    else:
        (metadata, data) = _sigma_file(sweep)

    with h5py.File(file_path, "w") as f:
        file_format_ds = f.create_dataset(HDF5_FILE_FORMAT_VERSION, shape=(), dtype=string_dt)
        file_format_ds[()] = metadata.file_format_version

        header_ds = f.create_dataset(HDF5_HEADER, 1, dtype=HDF5_HEADER_TYPE)
        header_ds[...] = metadata.to_header()

        for (key, values) in data.items():
            _create_data_set(f, key, values)

    logger.debug(f"wrote {metadata.kind.text} sweep of {metadata.npoint} points to {file_path}")
