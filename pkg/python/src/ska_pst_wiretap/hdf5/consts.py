# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module defines constants, such as HDF5 keys."""

from __future__ import annotations

from enum import IntEnum
from typing import Dict, List

FILE_FORMAT_VERSION_1_0_0 = "1.0.0"


class SweepKind(IntEnum):
    """An enum used to represent which sweep a HDF5 file holds."""

    SECRECY_FUNCTION = 0
    SIGMA = 1

    @property
    def text(self: SweepKind) -> str:
        """
        Map sweep kind enum value to text used in file names and logs.

        :return: 'secrecy-function' if value is SECRECY_FUNCTION else 'sigma'
        :rtype: str
        """
        return "secrecy-function" if self == SweepKind.SECRECY_FUNCTION else "sigma"


# Header Key
HDF5_HEADER: str = "HEADER"
HDF5_FILE_FORMAT_VERSION: str = "FILE_FORMAT_VERSION"
HDF5_SWEEP_KIND: str = "SWEEP_KIND"
HDF5_LATTICE: str = "LATTICE"
HDF5_NORMALISATION: str = "NORMALISATION"
HDF5_NPOINT: str = "NPOINT"
HDF5_SIGMA_B: str = "SIGMA_B"
HDF5_TRIALS: str = "TRIALS"
HDF5_SEED: str = "SEED"
HDF5_WINDOW: str = "WINDOW"

# Data keys
HDF5_Y: str = "Y"
HDF5_THETA_LATTICE: str = "THETA_LATTICE"
HDF5_THETA_ZN: str = "THETA_ZN"
HDF5_XI: str = "XI"
HDF5_SIGMA_E: str = "SIGMA_E"
HDF5_P_MC: str = "P_MC"
HDF5_STDERR: str = "STDERR"
HDF5_P_APPROX: str = "P_APPROX"

HDF5_HEADER_KEYS: List[str] = [
    HDF5_SWEEP_KIND,
    HDF5_LATTICE,
    HDF5_NORMALISATION,
    HDF5_NPOINT,
    HDF5_SIGMA_B,
    HDF5_TRIALS,
    HDF5_SEED,
    HDF5_WINDOW,
]

HDF5_DATA_KEYS: Dict[SweepKind, List[str]] = {
    SweepKind.SECRECY_FUNCTION: [HDF5_Y, HDF5_THETA_LATTICE, HDF5_THETA_ZN, HDF5_XI],
    SweepKind.SIGMA: [HDF5_SIGMA_E, HDF5_P_MC, HDF5_STDERR, HDF5_P_APPROX],
}
