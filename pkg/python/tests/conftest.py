# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module defines elements of the pytest test harness shared by all tests."""

from __future__ import annotations

import logging
import pathlib
import tempfile
import uuid
from typing import Generator

import numpy as np
import pytest
from ska_pst_wiretap.coset import LabelPreset, QuotientCode, build_quotient
from ska_pst_wiretap.lattice import Lattice, make_named


@pytest.fixture(scope="session")
def logger() -> logging.Logger:
    """Fixture that returns a default logger for tests."""
    logger = logging.getLogger("TEST_LOGGER")
    logger.setLevel(logging.DEBUG)
    return logger


@pytest.fixture
def rng() -> np.random.Generator:
    """Return a seeded random generator so failures are reproducible."""
    return np.random.Generator(np.random.Philox(20231018))


@pytest.fixture(scope="session")
def z2() -> Lattice:
    """Return the cubic lattice Z^2."""
    return make_named("Zn:2")


@pytest.fixture(scope="session")
def e8a() -> Lattice:
    """Return E8 in its Construction A form 2Z^8 + RM(8,4,4)."""
    return make_named("E8A")


@pytest.fixture(scope="session")
def z2_quotient(z2: Lattice) -> QuotientCode:
    """Return the coset code Z^2 / 2Z^2 with the Smith normal form labelling."""
    return build_quotient(z2, z2.scaled(2.0))


@pytest.fixture(scope="session")
def z2_example_quotient(z2: Lattice) -> QuotientCode:
    """Return the coset code Z^2 / 2Z^2 with bits s1 s2 labelling the coset of (s1, s2)."""
    return build_quotient(z2, z2.scaled(2.0), LabelPreset.Z2_EXAMPLE)


@pytest.fixture(scope="session")
def e8_quotient(e8a: Lattice) -> QuotientCode:
    """Return the coset code E8 / 2E8 with the Smith normal form labelling."""
    return build_quotient(e8a, e8a.scaled(2.0))


@pytest.fixture(scope="session")
def e8_example_quotient(e8a: Lattice) -> QuotientCode:
    """Return the coset code E8 / 2E8 labelled by the Reed-Muller encoder."""
    return build_quotient(e8a, e8a.scaled(2.0), LabelPreset.E8_EXAMPLE)


def _tmp_path(suffix: str) -> Generator[pathlib.Path, None, None]:
    tmp_dir = pathlib.Path(tempfile.gettempdir())
    file_path = tmp_dir / f"test_wiretap_{uuid.uuid4().hex}{suffix}"
    if file_path.exists():
        file_path.unlink()

    yield file_path

    if file_path.exists():
        file_path.unlink()


@pytest.fixture
def file_path() -> Generator[pathlib.Path, None, None]:
    """Return the file name for a test HDF5 file, removed after the test."""
    yield from _tmp_path(".h5")


@pytest.fixture
def out_path() -> Generator[pathlib.Path, None, None]:
    """Return the file name for a test CLI artifact, removed after the test."""
    yield from _tmp_path(".out")
