# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module provides the data classes of the wiretap channel simulation."""

from __future__ import annotations

__all__ = [
    "ApproxPce",
    "BinomialEstimate",
    "ChannelParams",
    "RatioReport",
    "SigmaSweep",
    "SimReport",
    "SimulationConfig",
    "require_positive_sigma",
]

import math
import pathlib
from dataclasses import asdict, dataclass
from typing import Literal

import nptyping as npt
import pandas as pd
from ska_pst_wiretap.errors import DomainError
from ska_pst_wiretap.theta.jacobi import ThetaArg, sigma_to_y
from ska_pst_wiretap.theta.series import DEFAULT_ENUMERATED_TOL

# Column names of the sigma sweep
SIGMA_E = "sigma_e"
P_MC = "p_mc"
STDERR = "stderr"
P_APPROX = "p_approx"

DEFAULT_BLOCK_SIZE: int = 8192


def require_positive_sigma(name: str, sigma: float) -> None:
    """
    Check a noise standard deviation.

    :raises DomainError: if it is not positive and finite.
    """
    if not (sigma > 0.0 and math.isfinite(sigma)):
        raise DomainError(f"{name} must be positive and finite, got {sigma}")


@dataclass(kw_only=True, frozen=True)
class ChannelParams:
    """
    Data class modelling the noise of the two Gaussian channels.

    :ivar sigma_b: the noise standard deviation of the legitimate receiver.
    :vartype sigma_b: float
    :ivar sigma_e: the noise standard deviation of the eavesdropper.
    :vartype sigma_e: float
    """

    sigma_b: float
    sigma_e: float

    def __post_init__(self: ChannelParams) -> None:
        """Ensure both noise levels are positive."""
        require_positive_sigma("sigma_b", self.sigma_b)
        require_positive_sigma("sigma_e", self.sigma_e)

    @property
    def is_wiretap_regime(self: ChannelParams) -> bool:
        """Check whether the eavesdropper is noisier than the legitimate receiver."""
        return self.sigma_b < self.sigma_e

    @property
    def y_e(self: ChannelParams) -> ThetaArg:
        """Get the theta argument ``1 / (2 pi sigma_e^2)`` of the eavesdropper's channel."""
        return sigma_to_y(self.sigma_e)


@dataclass(kw_only=True)
class SimulationConfig:
    """
    A data class used as configuration for Monte Carlo simulations.

    :ivar trials: the number of transmitted points.
    :vartype trials: int
    :ivar seed: the seed keying every random stream.
    :vartype seed: int
    :ivar window: the half width ``L`` of the window ``[-L, L)^n`` of the
        coordinates of the random point of ``Le``, 0 transmits the representative.
    :vartype window: int
    :ivar block_size: the number of trials generated and decoded together.
    :vartype block_size: int
    :ivar workers: the number of threads decoding blocks.
    :vartype workers: int
    :ivar theta_tol: the absolute error target of the theta series in the approximations.
    :vartype theta_tol: float
    """

    trials: int
    seed: int = 0
    window: int = 2
    block_size: int = DEFAULT_BLOCK_SIZE
    workers: int = 1
    theta_tol: float = DEFAULT_ENUMERATED_TOL

    def __post_init__(self: SimulationConfig) -> None:
        """Ensure configuration is valid."""
        if self.trials < 1:
            raise DomainError(f"trials must be at least 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be in [0, 2^64), got {self.seed}")
        if self.window < 0:
            raise DomainError(f"window must be non-negative, got {self.window}")
        if self.block_size < 1:
            raise DomainError(f"block_size must be at least 1, got {self.block_size}")
        if self.workers < 1:
            raise DomainError(f"workers must be at least 1, got {self.workers}")
        if not self.theta_tol > 0.0:
            raise DomainError(f"theta_tol must be positive, got {self.theta_tol}")

    def to_dict(self: SimulationConfig) -> dict:
        """Get the configuration as a dictionary."""
        return asdict(self)


@dataclass(kw_only=True, frozen=True)
class BinomialEstimate:
    """
    Data class modelling a Monte Carlo estimate of a probability.

    :ivar successes: the number of successful trials.
    :vartype successes: int
    :ivar trials: the number of trials.
    :vartype trials: int
    """

    successes: int
    trials: int

    def __post_init__(self: BinomialEstimate) -> None:
        """Ensure the counts are consistent."""
        assert self.trials >= 1, f"expected at least one trial, got {self.trials}"
        assert 0 <= self.successes <= self.trials, f"expected 0 <= {self.successes} <= {self.trials}"

    @property
    def p(self: BinomialEstimate) -> float:
        """Get the success frequency."""
        return self.successes / self.trials

    @property
    def stderr(self: BinomialEstimate) -> float:
        """Get the binomial standard error ``sqrt(p (1 - p) / trials)``."""
        p = self.p
        return math.sqrt(p * (1.0 - p) / self.trials)


@dataclass(kw_only=True, frozen=True)
class ApproxPce:
    """
    Data class modelling the large noise approximation of the eavesdropper's success probability.

    :ivar raw: the value of the approximation.
    :vartype raw: float
    :ivar value: the value clamped to ``[0, 1]``.
    :vartype value: float
    :ivar valid: whether the raw value is a probability; the approximation only
        holds when the eavesdropper's noise is large.
    :vartype valid: bool
    """

    raw: float
    value: float
    valid: bool

    @staticmethod
    def from_raw(raw: float) -> ApproxPce:
        """Create the approximation from its raw value."""
        return ApproxPce(raw=raw, value=min(1.0, max(0.0, raw)), valid=0.0 <= raw <= 1.0)

    def to_dict(self: ApproxPce) -> dict:
        """Get the approximation as a dictionary."""
        return asdict(self)


@dataclass(kw_only=True, frozen=True)
class RatioReport:
    """
    Data class modelling the ratio of the eavesdropper's to the legitimate receiver's success probability.

    :ivar analytic: the large noise approximation divided by the Voronoi estimate of the receiver.
    :vartype analytic: float
    :ivar analytic_stderr: the standard error carried by the Voronoi estimate.
    :vartype analytic_stderr: float
    :ivar empirical: the ratio of the two Monte Carlo coset success frequencies.
    :vartype empirical: float
    :ivar empirical_stderr: the first order standard error of the empirical ratio.
    :vartype empirical_stderr: float
    """

    analytic: float
    analytic_stderr: float
    empirical: float
    empirical_stderr: float

    @property
    def combined_stderr(self: RatioReport) -> float:
        """Get the standard error of the difference of the two ratios."""
        return math.hypot(self.analytic_stderr, self.empirical_stderr)


@dataclass(kw_only=True, frozen=True)
class SimReport:
    """
    Data class modelling the outcome of a wiretap channel simulation.

    :ivar channel: the simulated noise levels.
    :vartype channel: ChannelParams
    :ivar config: the simulation configuration.
    :vartype config: SimulationConfig
    :ivar k: the number of information bits of the coset code.
    :vartype k: int
    :ivar bob: coset decisions of the legitimate receiver.
    :vartype bob: BinomialEstimate
    :ivar eve: coset decisions of the eavesdropper.
    :vartype eve: BinomialEstimate
    :ivar bob_point: exact point decisions of the legitimate receiver.
    :vartype bob_point: BinomialEstimate
    :ivar pcb: the noise-only Voronoi estimate of the receiver's success probability.
    :vartype pcb: BinomialEstimate
    :ivar approx_pce: the large noise approximation of the eavesdropper's success probability.
    :vartype approx_pce: ApproxPce
    """

    channel: ChannelParams
    config: SimulationConfig
    k: int
    bob: BinomialEstimate
    eve: BinomialEstimate
    bob_point: BinomialEstimate
    pcb: BinomialEstimate
    approx_pce: ApproxPce

    @property
    def trials(self: SimReport) -> int:
        """Get the number of trials."""
        return self.config.trials

    @property
    def seed(self: SimReport) -> int:
        """Get the seed."""
        return self.config.seed

    @property
    def p_correct_bob(self: SimReport) -> float:
        """Get the legitimate receiver's coset success frequency."""
        return self.bob.p

    @property
    def p_correct_eve(self: SimReport) -> float:
        """Get the eavesdropper's coset success frequency."""
        return self.eve.p

    @property
    def stderr_bob(self: SimReport) -> float:
        """Get the standard error of :py:attr:`p_correct_bob`."""
        return self.bob.stderr

    @property
    def stderr_eve(self: SimReport) -> float:
        """Get the standard error of :py:attr:`p_correct_eve`."""
        return self.eve.stderr

    @property
    def p_point_correct_bob(self: SimReport) -> float:
        """Get the frequency at which the legitimate receiver decodes the transmitted point itself."""
        return self.bob_point.p

    @property
    def approx_pcb(self: SimReport) -> float:
        """Get the Voronoi estimate of the legitimate receiver's success probability."""
        return self.pcb.p

    @property
    def ratio_analytic(self: SimReport) -> float:
        """Get ``approx_pce / approx_pcb``, NaN when the denominator is 0."""
        return self.approx_pce.raw / self.pcb.p if self.pcb.successes else math.nan

    @property
    def ratio_empirical(self: SimReport) -> float:
        """Get ``p_correct_eve / p_correct_bob``, NaN when the denominator is 0."""
        return self.eve.p / self.bob.p if self.bob.successes else math.nan

    def to_dict(self: SimReport) -> dict:
        """Get the JSON-ready form of the report."""
        return {
            "trials": self.trials,
            "k": self.k,
            "p_correct_bob": self.p_correct_bob,
            "p_correct_eve": self.p_correct_eve,
            "stderr_bob": self.stderr_bob,
            "stderr_eve": self.stderr_eve,
            "p_point_correct_bob": self.p_point_correct_bob,
            "stderr_point_bob": self.bob_point.stderr,
            "approx_pcb": self.approx_pcb,
            "stderr_pcb": self.pcb.stderr,
            "approx_pce": self.approx_pce.raw,
            "approx_pce_clamped": self.approx_pce.value,
            "approx_pce_valid": self.approx_pce.valid,
            "ratio_analytic": _json_float(self.ratio_analytic),
            "ratio_empirical": _json_float(self.ratio_empirical),
            "seed": self.seed,
            "config": {
                "sigma_b": self.channel.sigma_b,
                "sigma_e": self.channel.sigma_e,
                **self.config.to_dict(),
            },
        }


def _json_float(value: float) -> float | None:
    return value if math.isfinite(value) else None


@dataclass(kw_only=True, frozen=True, eq=False)
class SigmaSweep:
    """
    Data class holding the eavesdropper's success probability over a grid of noise levels.

    :ivar sigma_e: the noise levels, in the order they were requested.
    :vartype sigma_e: npt.NDArray[Literal["NPoint"], npt.Float64]
    :ivar p_mc: the Monte Carlo coset success frequencies.
    :vartype p_mc: npt.NDArray[Literal["NPoint"], npt.Float64]
    :ivar stderr: their standard errors.
    :vartype stderr: npt.NDArray[Literal["NPoint"], npt.Float64]
    :ivar p_approx: the raw large noise approximation.
    :vartype p_approx: npt.NDArray[Literal["NPoint"], npt.Float64]
    :ivar lattice_name: the name of the coset code, ``Lb/Le``.
    :vartype lattice_name: str
    :ivar sigma_b: the legitimate receiver's noise standard deviation.
    :vartype sigma_b: float
    :ivar trials: the number of trials per grid point.
    :vartype trials: int
    :ivar seed: the seed shared by all grid points.
    :vartype seed: int
    :ivar window: the half width of the window of the random point of ``Le``.
    :vartype window: int
    """

    sigma_e: npt.NDArray[Literal["NPoint"], npt.Float64]
    p_mc: npt.NDArray[Literal["NPoint"], npt.Float64]
    stderr: npt.NDArray[Literal["NPoint"], npt.Float64]
    p_approx: npt.NDArray[Literal["NPoint"], npt.Float64]
    lattice_name: str = ""
    sigma_b: float = math.nan
    trials: int = 0
    seed: int = 0
    window: int = 0

    def to_dataframe(self: SigmaSweep) -> pd.DataFrame:
        """Get the sweep as a data frame with columns ``sigma_e,p_mc,stderr,p_approx``."""
        return pd.DataFrame({SIGMA_E: self.sigma_e, P_MC: self.p_mc, STDERR: self.stderr, P_APPROX: self.p_approx})

    def to_csv(self: SigmaSweep, file_path: pathlib.Path | str) -> None:
        """Write the sweep as CSV with 15 significant digits."""
        self.to_dataframe().to_csv(file_path, index=False, float_format="%.15g")
