# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""
This module evaluates lattice theta series, either in closed form or by enumeration.

The enumerated series ``sum_x q^|x|^2`` is truncated at a radius chosen from a
volume heuristic for the tail,

.. math::

    \\text{guard} \\cdot \\frac{\\Gamma(n/2, \\pi y R^2)}{\\Gamma(n/2)} \\cdot \\frac{1}{\\mathrm{vol}(L)\\, y^{n/2}} < \\text{tol}

and, for a full rank lattice, is evaluated on whichever of the lattice and
its dual needs fewer points, using
``Theta_L(y) = Theta_L*(1/y) / (vol(L) y^(n/2))``.
"""

from __future__ import annotations

__all__ = [
    "LatticeTheta",
    "ThetaConfig",
    "named_volume",
    "theta_closed_form",
    "theta_enumerated",
]

import logging
import math
import threading
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from scipy.special import gammainccinv
from ska_pst_wiretap.errors import DomainError
from ska_pst_wiretap.lattice import EnumerationConfig, Lattice, LatticeFamily, LatticeName, NormSpectrum
from ska_pst_wiretap.lattice.enumeration import enumerate_lattice, predicted_point_count
from ska_pst_wiretap.theta.jacobi import DEFAULT_JACOBI_TOL, JacobiTheta, ThetaArg, jacobi_theta_at

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATED_TOL: float = 1e-10


@dataclass(kw_only=True)
class ThetaConfig:
    """
    A data class used as configuration for evaluating theta series.

    :ivar jacobi_tol: truncation threshold of the Jacobi theta series, default 1e-12.
    :vartype jacobi_tol: float
    :ivar enumerated_tol: absolute error target of enumerated theta series, default 1e-10.
    :vartype enumerated_tol: float
    :ivar use_dual: whether the dual lattice may be enumerated instead, default True.
    :vartype use_dual: bool
    :ivar enumeration: the configuration of the underlying enumeration.
    :vartype enumeration: EnumerationConfig
    """

    jacobi_tol: float = DEFAULT_JACOBI_TOL
    enumerated_tol: float = DEFAULT_ENUMERATED_TOL
    use_dual: bool = True
    enumeration: EnumerationConfig = field(default_factory=EnumerationConfig)

    def __post_init__(self: ThetaConfig) -> None:
        """Ensure configuration is valid."""
        if not self.jacobi_tol > 0.0:
            raise DomainError(f"jacobi_tol must be positive, got {self.jacobi_tol}")
        if not self.enumerated_tol > 0.0:
            raise DomainError(f"enumerated_tol must be positive, got {self.enumerated_tol}")


def _as_arg(y: ThetaArg | float) -> ThetaArg:
    return y if isinstance(y, ThetaArg) else ThetaArg(y=float(y))


def named_volume(name: LatticeName | str) -> float:
    """Get the volume of a named lattice, including the Leech lattice."""
    if isinstance(name, str):
        name = LatticeName.parse(name)

    base = {
        LatticeFamily.ZN: 1.0,
        LatticeFamily.DN: 2.0,
        LatticeFamily.E8: 1.0,
        LatticeFamily.E8A: 16.0,
        LatticeFamily.LEECH: 1.0,
    }[name.family]
    return base * name.scale**name.dimension


def theta_closed_form(
    family: LatticeName | str,
    y: ThetaArg | float,
    tol: float = DEFAULT_JACOBI_TOL,
) -> float:
    """
    Evaluate the theta series of a named lattice from Jacobi theta functions.

    * ``Z^n``: ``theta3^n``
    * ``D_n``: ``(theta3^n + theta4^n) / 2``
    * ``E8``: ``(theta2^8 + theta3^8 + theta4^8) / 2``
    * Leech: ``(theta2^8 + theta3^8 + theta4^8)^3 / 8 - 45/16 theta2^8 theta3^8 theta4^8``

    ``E8A`` is E8 scaled by the square root of 2 and a scaled lattice ``aL``
    is evaluated as ``Theta_L(a^2 y)``.

    :param family: the named lattice.
    :param y: the theta argument.
    :param tol: the truncation threshold of the Jacobi series.
    :return: the value of the theta series.
    """
    name = LatticeName.parse(family) if isinstance(family, str) else family
    arg = _as_arg(y).scaled(name.scale**2)
    if name.family == LatticeFamily.E8A:
        arg = arg.scaled(2.0)

    theta3 = jacobi_theta_at(JacobiTheta.THETA3, arg, tol)
    if name.family == LatticeFamily.ZN:
        return theta3**name.dimension

    theta4 = jacobi_theta_at(JacobiTheta.THETA4, arg, tol)
    if name.family == LatticeFamily.DN:
        n = name.dimension
        return 0.5 * (theta3**n + theta4**n)

    theta2 = jacobi_theta_at(JacobiTheta.THETA2, arg, tol)
    (a, b, c) = (theta2**8, theta3**8, theta4**8)
    if name.family in (LatticeFamily.E8, LatticeFamily.E8A):
        return 0.5 * (a + b + c)

    return (a + b + c) ** 3 / 8.0 - 45.0 / 16.0 * a * b * c


def tail_radius_sq(lattice: Lattice, arg: ThetaArg, tol: float, guard: float) -> float:
    """
    Get the squared radius beyond which the theta series tail is below ``tol``.

    :param lattice: the lattice.
    :param arg: the theta argument.
    :param tol: the absolute tail bound.
    :param guard: the multiplicative guard on the volume heuristic.
    :return: the squared truncation radius, 0 when the origin alone is enough.
    """
    half_n = 0.5 * lattice.rank
    log_p = math.log(tol) + math.log(lattice.volume) + half_n * math.log(arg.y) - math.log(guard)
    if log_p >= 0.0:
        return 0.0

    return float(gammainccinv(half_n, math.exp(log_p))) / (math.pi * arg.y)


class _SpectrumCache:
    """Holds the largest norm spectrum enumerated so far for one lattice."""

    def __init__(self: _SpectrumCache, lattice: Lattice, config: EnumerationConfig) -> None:
        self._lattice = lattice
        self._config = config
        self._spectrum: NormSpectrum | None = None
        self._lock = threading.Lock()

    def spectrum(self: _SpectrumCache, radius_sq: float) -> NormSpectrum:
        with self._lock:
            if self._spectrum is None or radius_sq > self._spectrum.radius_sq:
                self._spectrum = enumerate_lattice(self._lattice, radius_sq, self._config)
            return self._spectrum


def _sum_spectrum(spectrum: NormSpectrum, arg: ThetaArg) -> float:
    return math.fsum(spectrum.counts * np.exp(arg.log_q * spectrum.norms))


class LatticeTheta:
    """
    Evaluates the theta series of one lattice at many arguments.

    Norm spectra of the lattice and of its dual are cached and only
    re-enumerated when a larger radius is needed, so sweeps enumerate once.
    Instances can be shared between threads.
    """

    def __init__(self: LatticeTheta, lattice: Lattice, config: ThetaConfig | None = None) -> None:
        """
        Create an evaluator.

        :param lattice: a full rank lattice.
        :param config: the theta configuration.
        """
        lattice.require_full_rank("theta_enumerated")
        self.lattice = lattice
        self.config = config or ThetaConfig()
        self._primal = _SpectrumCache(lattice, self.config.enumeration)
        self._dual: _SpectrumCache | None = None

    def _dual_cache(self: LatticeTheta) -> _SpectrumCache:
        if self._dual is None:
            self._dual = _SpectrumCache(self.lattice.dual, self.config.enumeration)
        return self._dual

    def plan(self: LatticeTheta, y: ThetaArg | float, tol: float | None = None) -> Tuple[bool, float]:
        """
        Choose between the lattice and its dual for one argument.

        :return: a tuple of whether the dual is used and the squared radius to enumerate.
        """
        arg = _as_arg(y)
        tol = tol or self.config.enumerated_tol
        guard = self.config.enumeration.volume_guard

        primal_radius_sq = tail_radius_sq(self.lattice, arg, tol, guard)
        if not self.config.use_dual:
            return (False, primal_radius_sq)

        n = self.lattice.dimension
        dual_tol = tol * self.lattice.volume * arg.y ** (0.5 * n)
        dual = self.lattice.dual
        dual_radius_sq = tail_radius_sq(dual, arg.inverse, dual_tol, guard)

        primal_count = predicted_point_count(self.lattice, primal_radius_sq)
        dual_count = predicted_point_count(dual, dual_radius_sq)
        if dual_count < primal_count:
            return (True, dual_radius_sq)
        return (False, primal_radius_sq)

    def __call__(self: LatticeTheta, y: ThetaArg | float, tol: float | None = None) -> float:
        """
        Evaluate the theta series.

        :param y: the theta argument.
        :param tol: the absolute error target, defaults to the configured one.
        :return: ``sum_x q^|x|^2`` to within ``tol``.
        :raises ResourceLimitError: if the enumeration needed exceeds the point cap.
        """
        arg = _as_arg(y)
        (use_dual, radius_sq) = self.plan(arg, tol)

        if use_dual:
            spectrum = self._dual_cache().spectrum(radius_sq)
            n = self.lattice.dimension
            value = _sum_spectrum(spectrum, arg.inverse) / (self.lattice.volume * arg.y ** (0.5 * n))
        else:
            spectrum = self._primal.spectrum(radius_sq)
            value = _sum_spectrum(spectrum, arg)

        logger.debug(
            f"theta of {self.lattice!r} at y={arg.y:.6g}: {value:.15g} "
            f"({'dual' if use_dual else 'primal'}, radius_sq={radius_sq:.4g})"
        )
        return value


def theta_enumerated(
    lattice: Lattice,
    y: ThetaArg | float,
    tol: float = DEFAULT_ENUMERATED_TOL,
    config: ThetaConfig | None = None,
) -> float:
    """
    Evaluate the theta series of a lattice by enumerating its points.

    :param lattice: a full rank lattice.
    :param y: the theta argument, ``q = exp(-pi y)``.
    :param tol: the absolute error target.
    :param config: the theta configuration.
    :return: the theta series value.
    :raises ResourceLimitError: if the enumeration needed exceeds the point cap.
    """
    return LatticeTheta(lattice, config)(y, tol)
