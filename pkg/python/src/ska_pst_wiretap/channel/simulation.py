# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""
This module provides the Monte Carlo simulation of the Gaussian wiretap channel.

Each trial draws a uniform label, a random point ``r`` of ``Le`` from the
window and two independent Gaussian noise vectors; the transmitted point
``x = r + c`` is decoded on the infinite lattice ``Lb`` by both receivers and
the coset decisions are counted. Trial ``t`` consumes record ``t`` of a
:py:class:`CounterStream` laid out as

* word ``0``: the label, its ``k`` low bits;
* words ``1 .. n``: the window coordinates of ``r``;
* the next ``2 ceil(n/2)`` words: the legitimate receiver's noise;
* the next ``2 ceil(n/2)`` words: the eavesdropper's noise.

Results therefore depend on the seed and the trial count only, not on the
block size or on the number of workers.
"""

from __future__ import annotations

__all__ = [
    "approx_pcb",
    "sigma_sweep",
    "simulate",
]

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Callable, List, Sequence, Tuple

import nptyping as npt
import numpy as np
from ska_pst_wiretap.channel.approximations import approx_pce
from ska_pst_wiretap.channel.model import (
    BinomialEstimate,
    ChannelParams,
    SigmaSweep,
    SimReport,
    SimulationConfig,
    require_positive_sigma,
)
from ska_pst_wiretap.channel.rng import CounterStream, box_muller, to_uniform
from ska_pst_wiretap.coset import QuotientCode, decode_values, window_point
from ska_pst_wiretap.errors import DomainError
from ska_pst_wiretap.lattice import Lattice, RelevantVectors, closest_points, relevant_vectors
from ska_pst_wiretap.theta import LatticeTheta, ThetaConfig

logger = logging.getLogger(__name__)

CODING_STREAM: int = 0
VORONOI_STREAM: int = 1

Counts = Tuple[int, ...]


def _noise_words(n: int) -> int:
    return 2 * math.ceil(n / 2)


def _blocks(trials: int, block_size: int) -> List[Tuple[int, int]]:
    return [(start, min(block_size, trials - start)) for start in range(0, trials, block_size)]


def _run_blocks(
    trials: int,
    config: SimulationConfig,
    run_block: Callable[[Tuple[int, int]], Counts],
) -> Counts:
    blocks = _blocks(trials, config.block_size)
    if config.workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as executor:
            results = list(executor.map(run_block, blocks))
    else:
        results = [run_block(block) for block in blocks]

    return tuple(int(sum(column)) for column in zip(*results))


class _CosetTrials:
    """Runs blocks of coded transmissions over both channels."""

    def __init__(
        self: _CosetTrials,
        quotient: QuotientCode,
        channel: ChannelParams,
        config: SimulationConfig,
        with_bob: bool = True,
    ) -> None:
        self.quotient = quotient
        self.channel = channel
        self.config = config
        self.with_bob = with_bob

        n = quotient.dimension
        self.stream = CounterStream(config.seed, 1 + n + 2 * _noise_words(n), CODING_STREAM)
        # build the shared tables before any thread needs them
        self.table = quotient.table
        _ = quotient.relevant_b

    def transmitted(self: _CosetTrials, words: npt.NDArray) -> Tuple[npt.NDArray, npt.NDArray]:
        """Get the sent label values and transmitted points of a block of records."""
        (quotient, window) = (self.quotient, self.config.window)
        n = quotient.dimension

        index = (words[:, 0] & np.uint64(quotient.index - 1)).astype(np.int64)
        x = self.table.representatives[index]
        if window > 0:
            offsets = np.floor(to_uniform(words[:, 1 : 1 + n]) * (2 * window)).astype(np.int64) - window
            x = x + window_point(quotient, offsets)
        return (self.table.values[index], x)

    def __call__(self: _CosetTrials, block: Tuple[int, int]) -> Counts:
        (start, count) = block
        n = self.quotient.dimension
        words = self.stream.records(start, count)
        (sent, x) = self.transmitted(words)

        bob_offset = 1 + n
        eve_offset = bob_offset + _noise_words(n)

        eve_noise = box_muller(words[:, eve_offset : eve_offset + _noise_words(n)], n)
        (eve_values, _) = decode_values(self.quotient, x + self.channel.sigma_e * eve_noise)
        eve_correct = int(np.count_nonzero(eve_values == sent))

        (bob_correct, bob_point_correct) = (0, 0)
        if self.with_bob:
            bob_noise = box_muller(words[:, bob_offset:eve_offset], n)
            (bob_values, bob_coords) = decode_values(self.quotient, x + self.channel.sigma_b * bob_noise)
            x_coords = np.rint(self.quotient.lattice_b.coordinates(x)).astype(np.int64)
            bob_correct = int(np.count_nonzero(bob_values == sent))
            bob_point_correct = int(np.count_nonzero(np.all(bob_coords == x_coords, axis=1)))

        logger.debug(f"trials {start}..{start + count - 1}: bob={bob_correct} eve={eve_correct}")
        return (bob_correct, eve_correct, bob_point_correct)


class _VoronoiTrials:
    """Runs blocks of noise-only trials testing whether the noise stays in the Voronoi cell of the origin."""

    def __init__(self: _VoronoiTrials, lattice: Lattice, sigma: float, seed: int) -> None:
        self.lattice = lattice
        self.sigma = sigma
        self.n = lattice.dimension
        self.stream = CounterStream(seed, _noise_words(self.n), VORONOI_STREAM)
        self.relevant: RelevantVectors = relevant_vectors(lattice)

    def __call__(self: _VoronoiTrials, block: Tuple[int, int]) -> Counts:
        (start, count) = block
        noise = self.sigma * box_muller(self.stream.records(start, count), self.n)
        (_, coords) = closest_points(self.lattice, noise, relevant=self.relevant)
        return (int(np.count_nonzero(np.all(coords == 0, axis=1))),)


def _voronoi_estimate(lattice: Lattice, sigma_b: float, config: SimulationConfig) -> BinomialEstimate:
    lattice.require_full_rank("approx_pcb")
    (successes,) = _run_blocks(config.trials, config, _VoronoiTrials(lattice, sigma_b, config.seed))
    return BinomialEstimate(successes=successes, trials=config.trials)


def approx_pcb(
    lattice_b: Lattice,
    sigma_b: float,
    trials: int,
    seed: int = 0,
    config: SimulationConfig | None = None,
) -> float:
    """
    Estimate the probability that Gaussian noise stays in the Voronoi cell of the origin.

    :param lattice_b: the legitimate receiver's lattice.
    :param sigma_b: the noise standard deviation.
    :param trials: the number of noise samples.
    :param seed: the seed of the noise stream.
    :param config: block size and workers; its trials and seed are replaced by the arguments.
    :return: the fraction of noise samples decoded to the origin.
    :raises DomainError: if ``sigma_b`` is not positive or ``trials`` is less than 1.
    """
    require_positive_sigma("sigma_b", sigma_b)
    config = replace(config or SimulationConfig(trials=trials), trials=trials, seed=seed)
    return _voronoi_estimate(lattice_b, sigma_b, config).p


def simulate(
    quotient: QuotientCode,
    channel: ChannelParams,
    config: SimulationConfig,
    theta_config: ThetaConfig | None = None,
) -> SimReport:
    """
    Simulate coset coded transmissions over the legitimate and the eavesdropper's channels.

    :param quotient: the coset code, transmitted with the representatives of its label table.
    :param channel: the two noise levels.
    :param config: trials, seed, window and parallelism.
    :param theta_config: the theta configuration of the large noise approximation.
    :return: the Monte Carlo estimates and the analytic approximations.
    :raises ResourceLimitError: if the label table or the theta series is too large.
    """
    logger.debug(f"simulating {config.trials} trials of {quotient.lattice_b!r}/{quotient.lattice_e!r} over {channel}")
    (bob, eve, bob_point) = _run_blocks(config.trials, config, _CosetTrials(quotient, channel, config))
    pcb = _voronoi_estimate(quotient.lattice_b, channel.sigma_b, config)
    pce = approx_pce(quotient, channel.sigma_e, config.theta_tol, theta_config)

    trials = config.trials
    return SimReport(
        channel=channel,
        config=config,
        k=quotient.k,
        bob=BinomialEstimate(successes=bob, trials=trials),
        eve=BinomialEstimate(successes=eve, trials=trials),
        bob_point=BinomialEstimate(successes=bob_point, trials=trials),
        pcb=pcb,
        approx_pce=pce,
    )


def sigma_sweep(
    quotient: QuotientCode,
    sigma_b: float,
    sigma_e_grid: Sequence[float] | npt.NDArray,
    config: SimulationConfig,
    theta_config: ThetaConfig | None = None,
) -> SigmaSweep:
    """
    Get the eavesdropper's coset success probability over a grid of noise levels.

    Every grid point reuses the same seed, so the noise directions are common to
    all points and only their scale changes.

    :param quotient: the coset code.
    :param sigma_b: the legitimate receiver's noise standard deviation.
    :param sigma_e_grid: the eavesdropper's noise levels, kept in the given order.
    :param config: trials, seed, window and parallelism.
    :param theta_config: the theta configuration of the large noise approximation.
    :return: the Monte Carlo and approximate probabilities.
    :raises DomainError: if the grid is empty.
    """
    require_positive_sigma("sigma_b", sigma_b)
    grid = np.asarray(sigma_e_grid, dtype=np.float64)
    if grid.size == 0:
        raise DomainError("the sigma_e grid is empty")

    theta = LatticeTheta(quotient.lattice_e, theta_config)
    (p_mc, stderr, p_approx) = ([], [], [])
    for sigma_e in grid:
        channel = ChannelParams(sigma_b=sigma_b, sigma_e=float(sigma_e))
        (_, eve, _) = _run_blocks(config.trials, config, _CosetTrials(quotient, channel, config, with_bob=False))
        estimate = BinomialEstimate(successes=eve, trials=config.trials)
        p_mc.append(estimate.p)
        stderr.append(estimate.stderr)
        p_approx.append(approx_pce(quotient, float(sigma_e), config.theta_tol, theta=theta).raw)
        logger.debug(f"sigma_e={sigma_e:g}: p_mc={estimate.p:.6g} p_approx={p_approx[-1]:.6g}")

    return SigmaSweep(
        sigma_e=grid,
        p_mc=np.array(p_mc),
        stderr=np.array(stderr),
        p_approx=np.array(p_approx),
        lattice_name=f"{quotient.lattice_b.name or 'Lb'}/{quotient.lattice_e.name or 'Le'}",
        sigma_b=sigma_b,
        trials=config.trials,
        seed=config.seed,
        window=config.window,
    )
