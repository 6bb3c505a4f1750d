# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""
This module provides counter-based random streams for reproducible simulations.

Every trial owns a fixed-size record of 64-bit words produced by the Philox
counter-based bit generator keyed by the seed. Record ``t`` starts at counter
``t * words / 4`` so any block of trials can be generated independently, in any
order and on any thread, and always gives the same words.
"""

from __future__ import annotations

__all__ = [
    "CounterStream",
    "box_muller",
    "to_uniform",
]

import logging
import math
from typing import Literal

import nptyping as npt
import numpy as np

logger = logging.getLogger(__name__)

PHILOX_WORDS_PER_COUNTER: int = 4
UNIFORM_BITS: int = 53


class CounterStream:
    """A keyed stream of fixed-size records of random 64-bit words."""

    def __init__(self: CounterStream, seed: int, words_per_record: int, stream_id: int = 0) -> None:
        """
        Create a stream.

        :param seed: the simulation seed, any integer in ``[0, 2^64)``.
        :param words_per_record: the number of words needed per record, rounded up to a multiple of 4.
        :param stream_id: distinguishes independent streams sharing one seed.
        """
        assert seed >= 0, f"expected a non-negative seed, got {seed}"
        assert words_per_record > 0, f"expected a positive record size, got {words_per_record}"

        self.seed = seed
        self.stream_id = stream_id
        self.words = PHILOX_WORDS_PER_COUNTER * math.ceil(words_per_record / PHILOX_WORDS_PER_COUNTER)
        self._key = np.array([seed % (1 << 64), stream_id], dtype=np.uint64)

    def records(self: CounterStream, start: int, count: int) -> npt.NDArray[Literal["NRecord, NWord"], npt.UInt64]:
        """
        Get the words of records ``start .. start + count - 1``.

        :param start: the index of the first record.
        :param count: the number of records.
        :return: one row of words per record.
        """
        counter = start * (self.words // PHILOX_WORDS_PER_COUNTER)
        bit_generator = np.random.Philox(counter=counter, key=self._key)
        raw = bit_generator.random_raw(count * self.words)
        return np.asarray(raw, dtype=np.uint64).reshape(count, self.words)


def to_uniform(words: npt.NDArray) -> npt.NDArray[Literal["*"], npt.Float64]:
    """Map 64-bit words to uniforms in ``[0, 1)`` with 53 bits of precision."""
    return (np.asarray(words, dtype=np.uint64) >> np.uint64(64 - UNIFORM_BITS)).astype(np.float64) * 2.0**-UNIFORM_BITS


def box_muller(words: npt.NDArray[Literal["NRecord, NWord"], npt.UInt64], count: int) -> npt.NDArray:
    """
    Get standard normal variates from pairs of words.

    Column ``2j`` and ``2j + 1`` of ``words`` give normals ``2j`` and ``2j + 1``.

    :param words: at least ``2 ceil(count / 2)`` words per row.
    :param count: the number of normals wanted per row.
    :return: a ``(rows, count)`` array of standard normals.
    """
    pairs = math.ceil(count / 2)
    assert words.shape[1] >= 2 * pairs, f"need {2 * pairs} words per row, got {words.shape[1]}"

    u1 = to_uniform(words[:, 0 : 2 * pairs : 2])
    u2 = to_uniform(words[:, 1 : 2 * pairs : 2])
    radius = np.sqrt(-2.0 * np.log1p(-u1))
    angle = 2.0 * np.pi * u2

    normals = np.empty((words.shape[0], 2 * pairs))
    normals[:, 0::2] = radius * np.cos(angle)
    normals[:, 1::2] = radius * np.sin(angle)
    return normals[:, :count]
