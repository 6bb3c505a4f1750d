# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""Provides tests for writing and loading of HDF5 sweep files."""
import math
import pathlib
from typing import cast

import h5py
import numpy as np
import pytest
from numpy.testing import assert_allclose
from ska_pst_wiretap.channel import SigmaSweep
from ska_pst_wiretap.errors import ConfigurationError
from ska_pst_wiretap.hdf5 import SweepFile, SweepKind, map_hdf5_key, write_sweep
from ska_pst_wiretap.theta import VolumeNormalisation, log_grid, secrecy_sweep

# Note not using the constants to ensure the file layout does not drift
EXPECTED_HEADER_KEYS = {
    "SWEEP_KIND",
    "LATTICE",
    "NORMALISATION",
    "NPOINT",
    "SIGMA_B",
    "TRIALS",
    "SEED",
    "WINDOW",
}


def _read_file_format_version(h5_file: h5py.File) -> str:
    value = h5_file["FILE_FORMAT_VERSION"][()]
    if isinstance(value, bytes):
        value = cast(bytes, value).decode("utf-8")
    return value


def test_load_secrecy_function_file(file_path: pathlib.Path) -> None:
    """Test that a secrecy function sweep can be written and loaded."""
    sweep = secrecy_sweep("D8", log_grid(0.5, 2.0, 9), VolumeNormalisation.EQUAL)

    assert not file_path.exists(), "file should not exist"
    write_sweep(sweep, file_path)
    assert file_path.exists(), "file should exist"

    with h5py.File(file_path, "r") as h5_file:
        assert {*h5_file.keys()} == {"FILE_FORMAT_VERSION", "HEADER", "Y", "THETA_LATTICE", "THETA_ZN", "XI"}
        assert _read_file_format_version(h5_file) == "1.0.0"
        header = h5_file["HEADER"][()]
        assert {h for h in header.dtype.names} == EXPECTED_HEADER_KEYS
        for key in ["Y", "THETA_LATTICE", "THETA_ZN", "XI"]:
            assert h5_file[key].shape == (9,)
            assert h5_file[key].dtype == np.float64

    loaded = SweepFile.load_from_file(file_path)
    metadata = loaded.metadata
    assert metadata.file_format_version == "1.0.0"
    assert metadata.kind == SweepKind.SECRECY_FUNCTION
    assert metadata.lattice == "D8"
    assert metadata.normalisation == "equal"
    assert metadata.npoint == 9
    assert math.isnan(metadata.sigma_b)
    assert (metadata.trials, metadata.seed, metadata.window) == (0, 0, 0)

    assert loaded.data.columns.tolist() == sweep.to_dataframe().columns.tolist()
    assert_allclose(loaded.data["y"], sweep.y)
    assert_allclose(loaded.data["theta_lattice"], sweep.theta_lattice)
    assert_allclose(loaded.data["theta_Zn"], sweep.theta_zn)
    assert_allclose(loaded.data["xi"], sweep.xi)


def test_load_sigma_file(file_path: pathlib.Path) -> None:
    """Test that a sigma sweep can be written, overwritten and loaded."""
    file_path.write_bytes(b"not a HDF5 file")

    sweep = SigmaSweep(
        sigma_e=np.array([3.0, 1.5, 2.0]),
        p_mc=np.array([0.2501, 0.2502, 0.2498]),
        stderr=np.array([0.0004, 0.0004, 0.0004]),
        p_approx=np.array([0.25, 0.250015, 0.25]),
        lattice_name="Zn:2/2*Zn:2",
        sigma_b=0.1,
        trials=1_000_000,
        seed=2024,
        window=2,
    )
    write_sweep(sweep, file_path)

    loaded = SweepFile.load_from_file(file_path)
    metadata = loaded.metadata
    assert metadata.kind == SweepKind.SIGMA
    assert metadata.lattice == "Zn:2/2*Zn:2"
    assert metadata.normalisation == ""
    assert metadata.npoint == 3
    assert metadata.sigma_b == 0.1
    assert (metadata.trials, metadata.seed, metadata.window) == (1_000_000, 2024, 2)

    for key in ["SIGMA_E", "P_MC", "STDERR", "P_APPROX"]:
        column = map_hdf5_key(key)
        assert_allclose(loaded.data[column], getattr(sweep, column), err_msg=f"column {column} of {key}")


def test_load_missing_file(file_path: pathlib.Path) -> None:
    """Test that loading a file that does not exist is a configuration error."""
    with pytest.raises(ConfigurationError):
        SweepFile.load_from_file(file_path)
