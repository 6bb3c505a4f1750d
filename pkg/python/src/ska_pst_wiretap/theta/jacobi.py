# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module provides the Jacobi theta functions and the theta argument ``y``."""

from __future__ import annotations

__all__ = [
    "JacobiTheta",
    "ThetaArg",
    "jacobi_theta",
    "jacobi_theta_at",
    "sigma_to_y",
]

import logging
import math
import sys
from dataclasses import dataclass
from enum import IntEnum

import numpy as np
from ska_pst_wiretap.errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_JACOBI_TOL: float = 1e-12


class JacobiTheta(IntEnum):
    """An enum used to select one of the Jacobi theta functions."""

    THETA2 = 2
    THETA3 = 3
    THETA4 = 4

    @property
    def text(self: JacobiTheta) -> str:
        """Get the name used on the command line, e.g. ``theta3``."""
        return f"theta{self.value}"


@dataclass(kw_only=True, frozen=True)
class ThetaArg:
    """
    Data class modelling the real argument of a theta series.

    :ivar y: the positive real argument, ``q = exp(-pi y)``.
    :vartype y: float
    """

    y: float

    def __post_init__(self: ThetaArg) -> None:
        """Ensure the argument is in the domain ``y > 0``."""
        if not (self.y > 0.0 and math.isfinite(self.y)):
            raise DomainError(f"theta argument y must be finite and positive, got {self.y}")

    @staticmethod
    def from_q(q: float) -> ThetaArg:
        """Get the argument corresponding to a nome ``q`` in (0, 1)."""
        if not 0.0 < q < 1.0:
            raise DomainError(f"q must lie in (0, 1), got {q}")
        return ThetaArg(y=-math.log(q) / math.pi)

    @property
    def q(self: ThetaArg) -> float:
        """Get the nome ``exp(-pi y)``."""
        return math.exp(-math.pi * self.y)

    @property
    def log_q(self: ThetaArg) -> float:
        """Get ``log(q) = -pi y`` without the rounding of ``q``."""
        return -math.pi * self.y

    def scaled(self: ThetaArg, factor: float) -> ThetaArg:
        """Get the argument ``factor * y``; the theta series of ``aL`` at ``y`` is that of ``L`` at ``a^2 y``."""
        return ThetaArg(y=factor * self.y)

    @property
    def inverse(self: ThetaArg) -> ThetaArg:
        """Get the argument ``1 / y`` used by the dual lattice transform."""
        return ThetaArg(y=1.0 / self.y)


# theta2 and theta4 exchange under y -> 1/y
_MODULAR_PARTNER = {
    JacobiTheta.THETA2: JacobiTheta.THETA4,
    JacobiTheta.THETA3: JacobiTheta.THETA3,
    JacobiTheta.THETA4: JacobiTheta.THETA2,
}


def _theta_series(which: JacobiTheta, log_q: float, tol: float) -> float:
    # the terms are q^(k^2) (or q^((k + 1/2)^2)) for k >= 1, doubled for the symmetric half
    nterms = int(math.ceil(math.sqrt(max(math.log(tol / 2.0) / log_q, 0.0)))) + 2
    k = np.arange(nterms, dtype=np.float64)

    if which == JacobiTheta.THETA2:
        terms = 2.0 * np.exp(log_q * (k + 0.5) ** 2)
        return math.fsum(terms[terms >= tol])

    terms = 2.0 * np.exp(log_q * k[1:] ** 2)
    if which == JacobiTheta.THETA4:
        terms *= np.where(k[1:] % 2 == 1, -1.0, 1.0)
    return 1.0 + math.fsum(terms[np.abs(terms) >= tol])


def _theta_from_log_q(which: JacobiTheta, log_q: float, tol: float) -> float:
    y = -log_q / math.pi
    if y >= 1.0:
        return _theta_series(which, log_q, tol)

    # theta_i(y) = y^(-1/2) theta_j(1/y), which keeps the term count that of some y >= 1
    scale = 1.0 / math.sqrt(y)
    inner_tol = max(tol / scale, sys.float_info.min)
    return scale * _theta_series(_MODULAR_PARTNER[which], -math.pi / y, inner_tol)


def jacobi_theta(which: JacobiTheta | int, q: float, tol: float = DEFAULT_JACOBI_TOL) -> float:
    """
    Evaluate a Jacobi theta function at the nome ``q``.

    The defining series are summed until the next term is smaller than ``tol``:

    * ``theta2(q) = sum_k q^((k + 1/2)^2)``
    * ``theta3(q) = sum_k q^(k^2)``
    * ``theta4(q) = sum_k (-1)^k q^(k^2)``

    with ``k`` over all integers. For ``q > exp(-pi)`` the series is evaluated at
    ``1 / y`` through ``theta3(y) = y^(-1/2) theta3(1/y)`` and
    ``theta2(y) = y^(-1/2) theta4(1/y)``, so the term count stays small as ``q`` approaches 1.

    :param which: the function to evaluate.
    :param q: the nome in (0, 1).
    :param tol: the truncation threshold on the term magnitude.
    :return: the value of the series.
    :raises DomainError: if ``q`` is outside (0, 1) or ``tol`` is not positive.
    """
    if not 0.0 < q < 1.0:
        raise DomainError(f"q must lie in (0, 1), got {q}")
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol}")

    return _theta_from_log_q(JacobiTheta(which), math.log(q), tol)


def jacobi_theta_at(which: JacobiTheta | int, arg: ThetaArg, tol: float = DEFAULT_JACOBI_TOL) -> float:
    """Evaluate a Jacobi theta function at ``q = exp(-pi y)`` using ``log q`` directly."""
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol}")
    return _theta_from_log_q(JacobiTheta(which), arg.log_q, tol)


def sigma_to_y(sigma_e: float) -> ThetaArg:
    """
    Map the eavesdropper noise standard deviation to the theta argument.

    :param sigma_e: the noise standard deviation, positive.
    :return: ``y = 1 / (2 pi sigma_e^2)``.
    """
    if not sigma_e > 0.0:
        raise DomainError(f"sigma_e must be positive, got {sigma_e}")
    return ThetaArg(y=1.0 / (2.0 * math.pi * sigma_e**2))
