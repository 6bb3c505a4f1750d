# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""
This module provides the analytic approximations of the correct decision probabilities.

At large noise the Gaussian density is almost constant over a Voronoi cell of
``Lb`` so the eavesdropper's probability of finding the right coset is

.. math::

    P_{c,e} \\simeq \\frac{\\mathrm{vol}(L_b)}{(\\sqrt{2\\pi}\\sigma_e)^n} \\Theta_{L_e}\\left(\\frac{1}{2\\pi\\sigma_e^2}\\right)

which tends to ``vol(Lb) / vol(Le) = 2^-k``. The kissing number gives the
first order expansion ``1 + tau(Le) exp(-d_min(Le)^2 / (2 sigma_e^2))`` of the
theta series.
"""

from __future__ import annotations

__all__ = [
    "approx_pce",
    "first_order_pce",
    "ratio",
]

import logging
import math

from ska_pst_wiretap.channel.model import ApproxPce, RatioReport, SimReport, require_positive_sigma
from ska_pst_wiretap.coset import QuotientCode
from ska_pst_wiretap.lattice import EnumerationConfig, Lattice, kissing_number, min_distance
from ska_pst_wiretap.theta import LatticeTheta, ThetaConfig, sigma_to_y
from ska_pst_wiretap.theta.series import DEFAULT_ENUMERATED_TOL

logger = logging.getLogger(__name__)


def approx_pce(
    quotient: QuotientCode,
    sigma_e: float,
    theta_tol: float = DEFAULT_ENUMERATED_TOL,
    config: ThetaConfig | None = None,
    theta: LatticeTheta | None = None,
) -> ApproxPce:
    """
    Get the large noise approximation of the eavesdropper's coset success probability.

    :param quotient: the coset code.
    :param sigma_e: the eavesdropper's noise standard deviation.
    :param theta_tol: the absolute error target of the theta series of ``Le``.
    :param config: the theta configuration.
    :param theta: a theta evaluator of ``Le`` to reuse across calls.
    :return: the raw approximation, its clamped value and whether it is a probability.
    :raises DomainError: if ``sigma_e`` is not positive.
    :raises ResourceLimitError: if the theta series needs too many points.
    """
    require_positive_sigma("sigma_e", sigma_e)
    theta = theta or LatticeTheta(quotient.lattice_e, config)

    n = quotient.dimension
    theta_e = theta(sigma_to_y(sigma_e), theta_tol)
    raw = quotient.lattice_b.volume * theta_e / (math.sqrt(2.0 * math.pi) * sigma_e) ** n

    result = ApproxPce.from_raw(raw)
    if not result.valid:
        logger.warning(f"large noise approximation {raw:.6g} at sigma_e={sigma_e:g} is not a probability")
    return result


def first_order_pce(
    lattice_e: Lattice,
    sigma_e: float,
    config: EnumerationConfig | None = None,
) -> float:
    """
    Get the kissing number approximation ``1 + tau exp(-d_min^2 / (2 sigma_e^2))`` of the theta sum.

    :param lattice_e: the eavesdropper's lattice.
    :param sigma_e: the noise standard deviation.
    :param config: the enumeration configuration.
    :return: the two term approximation of ``sum_(r in Le) exp(-|r|^2 / (2 sigma_e^2))``.
    """
    require_positive_sigma("sigma_e", sigma_e)
    d_min = min_distance(lattice_e, config)
    tau = kissing_number(lattice_e, config)
    return 1.0 + tau * math.exp(-(d_min**2) / (2.0 * sigma_e**2))


def ratio(report: SimReport) -> RatioReport:
    """
    Get the analytic and the empirical ratio of the success probabilities.

    The analytic ratio divides the large noise approximation by the Voronoi
    estimate of the legitimate receiver, which equals
    ``(sigma_b / sigma_e)^n vol(Lb) Theta_Le / integral`` over the Voronoi cell.

    :param report: a simulation report.
    :return: both ratios with their standard errors, NaN where the receiver never succeeded.
    """
    (bob, eve, pcb) = (report.bob, report.eve, report.pcb)

    if pcb.successes:
        analytic = report.approx_pce.raw / pcb.p
        analytic_stderr = analytic * pcb.stderr / pcb.p
    else:
        logger.warning("the Voronoi estimate of the legitimate receiver is 0, the analytic ratio is undefined")
        (analytic, analytic_stderr) = (math.nan, math.nan)

    if bob.successes:
        empirical = eve.p / bob.p
        empirical_stderr = empirical * math.hypot(bob.stderr / bob.p, eve.stderr / eve.p if eve.successes else 0.0)
    else:
        logger.warning("the legitimate receiver never decoded the right coset, the empirical ratio is undefined")
        (empirical, empirical_stderr) = (math.nan, math.nan)

    return RatioReport(
        analytic=analytic,
        analytic_stderr=analytic_stderr,
        empirical=empirical,
        empirical_stderr=empirical_stderr,
    )
