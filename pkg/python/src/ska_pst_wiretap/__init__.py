# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""
This module for any Python related code for wiretap lattice coset codes.

The package is split into submodules that build on each other:

* :py:mod:`ska_pst_wiretap.lattice` lattices, enumeration and closest point search
* :py:mod:`ska_pst_wiretap.theta` theta series, the secrecy function and secrecy gain
* :py:mod:`ska_pst_wiretap.coset` quotients ``Lb / Le`` with their bit labels
* :py:mod:`ska_pst_wiretap.channel` Monte Carlo simulation of the wiretap channel
* :py:mod:`ska_pst_wiretap.hdf5` HDF5 files of secrecy function and sigma sweeps

This package depends on Pandas, Numpy, SciPy and H5Py and the dependencies
should get installed automatically when installing this package.

The following code snippet computes the secrecy gain of ``E8`` and simulates
the ``E8 / 2E8`` coset code.

.. code-block:: python

    from ska_pst_wiretap.channel import ChannelParams, SimulationConfig, simulate
    from ska_pst_wiretap.coset import build_quotient
    from ska_pst_wiretap.lattice import make_named
    from ska_pst_wiretap.theta import secrecy_gain

    print(secrecy_gain("E8").gain)  # 4/3

    e8 = make_named("E8A")
    quotient = build_quotient(e8, e8.scaled(2.0))
    report = simulate(
        quotient,
        ChannelParams(sigma_b=0.2, sigma_e=1.0),
        SimulationConfig(trials=100_000, seed=42),
    )
    print(report.p_correct_bob, report.p_correct_eve, report.ratio_analytic)
"""

__all__ = [
    "WiretapError",
]

from .errors import WiretapError
