# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module is used for simulating coset codes over the Gaussian wiretap channel."""

__all__ = [
    "ApproxPce",
    "BinomialEstimate",
    "ChannelParams",
    "CounterStream",
    "RatioReport",
    "SigmaSweep",
    "SimReport",
    "SimulationConfig",
    "approx_pcb",
    "approx_pce",
    "first_order_pce",
    "ratio",
    "sigma_sweep",
    "simulate",
]

from .model import ApproxPce, BinomialEstimate, ChannelParams, RatioReport, SigmaSweep, SimReport, SimulationConfig
from .rng import CounterStream
from .approximations import approx_pce, first_order_pce, ratio
from .simulation import approx_pcb, sigma_sweep, simulate
