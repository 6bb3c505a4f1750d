# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""Provides tests for the counter-based random streams."""

import numpy as np
import pytest
from numpy.testing import assert_array_equal
from ska_pst_wiretap.channel import CounterStream
from ska_pst_wiretap.channel.rng import box_muller, to_uniform


def test_records_are_addressable() -> None:
    """Test that any block of records can be generated on its own."""
    stream = CounterStream(seed=7, words_per_record=6)
    assert stream.words == 8

    whole = stream.records(0, 100)
    assert whole.shape == (100, 8)
    assert whole.dtype == np.uint64
    assert_array_equal(stream.records(37, 20), whole[37:57])
    assert_array_equal(CounterStream(seed=7, words_per_record=6).records(99, 1), whole[99:])


def test_streams_are_keyed() -> None:
    """Test that seeds and stream ids select different words."""
    base = CounterStream(seed=1, words_per_record=4).records(0, 10)
    assert not np.array_equal(base, CounterStream(seed=2, words_per_record=4).records(0, 10))
    assert not np.array_equal(base, CounterStream(seed=1, words_per_record=4, stream_id=1).records(0, 10))


def test_uniforms() -> None:
    """Test the mapping of words to 53 bit uniforms."""
    words = np.array([0, 2**11 - 1, 2**64 - 1], dtype=np.uint64)
    assert to_uniform(words).tolist() == [0.0, 0.0, 1.0 - 2.0**-53]

    uniforms = to_uniform(CounterStream(seed=3, words_per_record=4).records(0, 25_000))
    assert 0.0 <= uniforms.min() and uniforms.max() < 1.0
    assert uniforms.mean() == pytest.approx(0.5, abs=0.01)


@pytest.mark.parametrize("count", [1, 2, 7, 8])
def test_box_muller(count: int) -> None:
    """Test that pairs of words give standard normal variates."""
    words = CounterStream(seed=11, words_per_record=8).records(0, 50_000)
    normals = box_muller(words, count)

    assert normals.shape == (50_000, count)
    assert np.all(np.isfinite(normals))
    assert normals.mean() == pytest.approx(0.0, abs=0.02)
    assert normals.std() == pytest.approx(1.0, abs=0.02)
