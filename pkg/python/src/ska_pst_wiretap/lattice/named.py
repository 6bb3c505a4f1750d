# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""
This module provides the named lattices and the grammar used to select them.

The generators are the standard ones of the sphere packing literature and are
reproduced in the repository documentation. All of them have exact rational
entries.
"""

from __future__ import annotations

__all__ = [
    "LatticeFamily",
    "LatticeName",
    "RM_8_4_4_GENERATOR",
    "checkerboard",
    "cubic",
    "e8_construction_a",
    "e8_unimodular",
    "make_named",
    "scaled",
]

import logging
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np
from ska_pst_wiretap.errors import ConfigurationError, InvalidDimensionError, UnsupportedLatticeError
from ska_pst_wiretap.lattice.model import Lattice

logger = logging.getLogger(__name__)

RM_8_4_4_GENERATOR = np.array(
    [
        [0, 0, 0, 0, 1, 1, 1, 1],
        [0, 0, 1, 1, 0, 0, 1, 1],
        [0, 1, 0, 1, 0, 1, 0, 1],
        [1, 1, 1, 1, 1, 1, 1, 1],
    ],
    dtype=np.int64,
)
"""Generator of the first order Reed-Muller code (8,4,4); row ``i`` is information bit ``i``."""

E8_UNIMODULAR_GENERATOR = np.array(
    [
        [2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [-1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, -1.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, -1.0, 1.0, 0.0],
        [0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5],
    ]
)

# 2Z^8 + RM(8,4,4): the code generators completed by 2e_i on the non-pivot columns
E8_CONSTRUCTION_A_GENERATOR = np.vstack(
    [
        RM_8_4_4_GENERATOR.astype(np.float64),
        2.0 * np.eye(8)[[3, 5, 6, 7]],
    ]
)


class LatticeFamily(str, Enum):
    """An enum used to represent the families of named lattices."""

    ZN = "Zn"
    DN = "Dn"
    E8 = "E8"
    E8A = "E8A"
    LEECH = "Leech"

    @property
    def has_dimension_parameter(self: LatticeFamily) -> bool:
        """Check if the family is parameterised by the dimension."""
        return self in (LatticeFamily.ZN, LatticeFamily.DN)

    @property
    def default_dimension(self: LatticeFamily) -> int | None:
        """Get the fixed dimension of the family, None for Zn and Dn."""
        return {LatticeFamily.E8: 8, LatticeFamily.E8A: 8, LatticeFamily.LEECH: 24}.get(self)


_NAME_PATTERN = re.compile(r"^(?:(?P<family>Zn|Dn):(?P<n>\d+)|(?P<short>[ZD])(?P<short_n>\d+)|(?P<fixed>E8A|E8|Leech))$")


def _parse_scale(text: str) -> float:
    text = text.strip()
    try:
        if text.startswith("sqrt(") and text.endswith(")"):
            return float(np.sqrt(float(Fraction(text[5:-1]))))
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigurationError(f"invalid scale factor {text!r}") from exc


@dataclass(kw_only=True, frozen=True)
class LatticeName:
    """
    Data class modelling a selection of a named lattice.

    The text grammar is ``Zn:<n>``, ``Dn:<n>``, ``E8``, ``E8A``, ``Leech`` with
    ``Z<n>`` and ``D<n>`` accepted as short forms, optionally prefixed by
    ``<a>*`` to scale the lattice by ``a`` (a decimal, ``p/q`` or ``sqrt(p/q)``).

    :ivar family: the lattice family.
    :vartype family: LatticeFamily
    :ivar n: the dimension, required for Zn and Dn.
    :vartype n: int | None
    :ivar scale: the scaling factor applied to the standard generator.
    :vartype scale: float
    """

    family: LatticeFamily
    n: int | None = None
    scale: float = 1.0

    @staticmethod
    def parse(text: str) -> LatticeName:
        """
        Parse a lattice name.

        :param text: the name, e.g. ``Zn:2``, ``D8``, ``2*E8A``.
        :return: the parsed name.
        :raises ConfigurationError: if the name does not follow the grammar.
        """
        text = text.strip()
        scale = 1.0
        if "*" in text:
            (scale_text, _, text) = text.partition("*")
            scale = _parse_scale(scale_text)
            text = text.strip()

        match = _NAME_PATTERN.match(text)
        if match is None:
            raise ConfigurationError(f"unknown lattice name {text!r}, expected Zn:<n>, Dn:<n>, E8, E8A or Leech")

        if match.group("family"):
            return LatticeName(family=LatticeFamily(match.group("family")), n=int(match.group("n")), scale=scale)
        if match.group("short"):
            family = LatticeFamily.ZN if match.group("short") == "Z" else LatticeFamily.DN
            return LatticeName(family=family, n=int(match.group("short_n")), scale=scale)

        return LatticeName(family=LatticeFamily(match.group("fixed")), scale=scale)

    @property
    def dimension(self: LatticeName) -> int:
        """Get the dimension of the named lattice."""
        if self.family.has_dimension_parameter:
            assert self.n is not None, f"expected a dimension for {self.family.value}"
            return self.n

        dimension = self.family.default_dimension
        assert dimension is not None
        return dimension

    def __str__(self: LatticeName) -> str:
        """Get the name in the text grammar."""
        base = f"{self.family.value}:{self.n}" if self.family.has_dimension_parameter else self.family.value
        return base if self.scale == 1.0 else f"{self.scale:g}*{base}"


def cubic(n: int) -> Lattice:
    """Get the cubic lattice ``Z^n`` with the identity generator."""
    if n < 1:
        raise InvalidDimensionError(f"Zn requires n >= 1, got {n}")
    return Lattice(generator=np.eye(n), name=f"Zn:{n}")


def checkerboard(n: int) -> Lattice:
    """
    Get ``D_n``, the integer vectors with even coordinate sum.

    The generator rows are ``-e_1 - e_2`` and ``e_i - e_(i+1)`` for ``i < n``,
    the volume is 2.
    """
    if n < 2:
        raise InvalidDimensionError(f"Dn requires n >= 2, got {n}")

    generator = np.zeros((n, n))
    generator[0, 0:2] = [-1.0, -1.0]
    for i in range(1, n):
        generator[i, i - 1] = 1.0
        generator[i, i] = -1.0
    return Lattice(generator=generator, name=f"Dn:{n}")


def e8_unimodular() -> Lattice:
    """Get the unit volume E8 lattice in the even coordinate system."""
    return Lattice(generator=E8_UNIMODULAR_GENERATOR, name="E8")


def e8_construction_a() -> Lattice:
    """Get ``2Z^8 + RM(8,4,4)``, a copy of E8 scaled by the square root of 2 with volume 16."""
    return Lattice(generator=E8_CONSTRUCTION_A_GENERATOR, name="E8A")


def scaled(lattice: Lattice, factor: float) -> Lattice:
    """Get a lattice scaled by a positive factor."""
    return lattice.scaled(factor)


def make_named(name: LatticeName | str) -> Lattice:
    """
    Get a named lattice with its standard generator.

    :param name: a :py:class:`LatticeName` or its text form.
    :return: the lattice.
    :raises InvalidDimensionError: for ``Zn`` with n = 0 or ``Dn`` with n < 2.
    :raises UnsupportedLatticeError: for the Leech lattice which only has a closed form theta series.
    """
    if isinstance(name, str):
        name = LatticeName.parse(name)

    if name.family == LatticeFamily.ZN:
        lattice = cubic(name.n or 0)
    elif name.family == LatticeFamily.DN:
        lattice = checkerboard(name.n or 0)
    elif name.family == LatticeFamily.E8:
        lattice = e8_unimodular()
    elif name.family == LatticeFamily.E8A:
        lattice = e8_construction_a()
    else:
        raise UnsupportedLatticeError("the Leech lattice is only available through its closed form theta series")

    if name.scale != 1.0:
        lattice = lattice.scaled(name.scale)

    logger.debug(f"constructed {name} with volume {lattice.volume:g}")
    return lattice
