# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module is used for handling HDF5 sweep files."""

__all__ = [
    "HDF5_HEADER_TYPE",
    "SweepFile",
    "SweepKind",
    "SweepMetadata",
    "map_hdf5_key",
    "write_sweep",
]

from .consts import SweepKind
from .model import HDF5_HEADER_TYPE, SweepFile, SweepMetadata, map_hdf5_key
from .writer import write_sweep
