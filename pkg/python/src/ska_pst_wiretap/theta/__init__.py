# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module is used for theta series, the secrecy function and the secrecy gain."""

__all__ = [
    "JacobiTheta",
    "LatticeTheta",
    "SearchConfig",
    "SecrecyResult",
    "SecrecySweep",
    "ThetaArg",
    "ThetaConfig",
    "VolumeNormalisation",
    "jacobi_theta",
    "jacobi_theta_at",
    "log_grid",
    "named_volume",
    "secrecy_function",
    "secrecy_gain",
    "secrecy_sweep",
    "sigma_to_y",
    "theta_closed_form",
    "theta_enumerated",
]

from .jacobi import JacobiTheta, ThetaArg, jacobi_theta, jacobi_theta_at, sigma_to_y
from .series import LatticeTheta, ThetaConfig, named_volume, theta_closed_form, theta_enumerated
from .secrecy import (
    SearchConfig,
    SecrecyResult,
    SecrecySweep,
    VolumeNormalisation,
    log_grid,
    secrecy_function,
    secrecy_gain,
    secrecy_sweep,
)
