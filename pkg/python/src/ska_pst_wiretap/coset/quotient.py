# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""
This module provides coset codes built from a lattice and one of its sublattices.

The legitimate lattice ``Lb`` is partitioned into the ``2^k`` cosets of the
eavesdropper lattice ``Le``. With ``Me = B Mb`` and the Smith normal form
``B = U D V``, the rows of ``V Mb`` are a basis of ``Lb`` in which ``Le`` is
spanned by the rows of ``D V Mb``. A point with coordinates ``u'`` in that
basis belongs to the coset with digits ``t_i = u'_i mod d_i``.

Digits are packed into bits with a mixed-radix little-endian order: the packed
value is ``sum_i t_i prod_(j<i) d_j`` and bit ``b`` of the string is bit ``b``
of that value.
"""

from __future__ import annotations

__all__ = [
    "CosetLabel",
    "LabelPreset",
    "LabelTable",
    "QuotientCode",
    "build_quotient",
    "codebook",
    "decode",
    "decode_values",
    "encode",
    "label_of",
    "min_energy_representative",
    "rate_per_complex_symbol",
    "sample_window_point",
    "window_point",
]

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property
from typing import Dict, List, Literal, Sequence, Tuple

import nptyping as npt
import numpy as np
from ska_pst_wiretap.coset.reed_muller import bits_to_index, parse_bits, rm_code
from ska_pst_wiretap.coset.snf import SmithNormalForm, smith_normal_form
from ska_pst_wiretap.errors import (
    ConfigurationError,
    DomainError,
    InvalidDimensionError,
    MembershipError,
    RateError,
    ResourceLimitError,
    SublatticeError,
)
from ska_pst_wiretap.lattice import Lattice, RelevantVectors, closest_point, closest_point_ties, relevant_vectors
from ska_pst_wiretap.lattice.cvp import closest_points

logger = logging.getLogger(__name__)

RELATION_TOLERANCE: float = 1e-9
MEMBERSHIP_TOLERANCE: float = 1e-6
MAX_TABLE_BITS: int = 16
DEFAULT_WINDOW: int = 2


class LabelPreset(str, Enum):
    """An enum used to select the bit-to-coset labelling of a quotient code."""

    SNF = "snf"
    """Mixed-radix Smith normal form digits with minimum energy representatives."""

    Z2_EXAMPLE = "z2-example"
    """``Z^2 / 2Z^2`` with bits ``s1 s2`` labelling the coset of ``(s1, s2)``."""

    E8_EXAMPLE = "e8-example"
    """``E8 / 2E8`` with bits labelling the coset of ``c + 2 l``, see :py:func:`e8_example_encoder`."""


@dataclass(kw_only=True, frozen=True)
class CosetLabel:
    """
    Data class modelling the label of a coset.

    :ivar digits: the Smith normal form digits ``0 <= t_i < d_i``.
    :vartype digits: Tuple[int, ...]
    :ivar moduli: the diagonal ``d_1 .. d_n`` of the Smith normal form.
    :vartype moduli: Tuple[int, ...]
    """

    digits: Tuple[int, ...]
    moduli: Tuple[int, ...]

    def __post_init__(self: CosetLabel) -> None:
        """Ensure the digits are reduced."""
        assert len(self.digits) == len(self.moduli), "expected one digit per modulus"
        assert all(0 <= t < d for (t, d) in zip(self.digits, self.moduli)), "expected reduced digits"

    @property
    def k(self: CosetLabel) -> int:
        """Get the number of bits of the label."""
        return int(math.log2(math.prod(self.moduli)))

    @property
    def value(self: CosetLabel) -> int:
        """Get the mixed-radix packed value of the digits."""
        (value, radix) = (0, 1)
        for (t, d) in zip(self.digits, self.moduli):
            value += t * radix
            radix *= d
        return value

    @property
    def bits(self: CosetLabel) -> str:
        """Get the ``k`` bit string, character ``b`` is bit ``b`` of the packed value."""
        value = self.value
        return "".join(str((value >> b) & 1) for b in range(self.k))

    @staticmethod
    def from_value(value: int, moduli: Sequence[int]) -> CosetLabel:
        """Unpack a mixed-radix value."""
        digits = []
        for d in moduli:
            digits.append(value % d)
            value //= d
        return CosetLabel(digits=tuple(digits), moduli=tuple(int(d) for d in moduli))

    @staticmethod
    def from_bits(bits: str, moduli: Sequence[int]) -> CosetLabel:
        """Unpack a ``k`` bit string."""
        k = int(math.log2(math.prod(moduli)))
        return CosetLabel.from_value(bits_to_index(parse_bits(bits, k)), moduli)

    def __add__(self: CosetLabel, other: CosetLabel) -> CosetLabel:
        """Add two labels in ``Z_d1 x ... x Z_dn``."""
        assert self.moduli == other.moduli, "expected labels of the same quotient"
        digits = tuple((a + b) % d for (a, b, d) in zip(self.digits, other.digits, self.moduli))
        return CosetLabel(digits=digits, moduli=self.moduli)


@dataclass(kw_only=True, frozen=True, eq=False)
class LabelTable:
    """
    Data class mapping every bit string of a quotient code to a coset and a representative.

    Tables are indexed by the little-endian integer of the bit string.

    :ivar preset: the labelling this table implements.
    :vartype preset: LabelPreset
    :ivar values: the packed digit value of the coset labelled by each bit string.
    :vartype values: npt.NDArray[Literal["NLabel"], npt.Int64]
    :ivar bit_index: the inverse of ``values``.
    :vartype bit_index: npt.NDArray[Literal["NLabel"], npt.Int64]
    :ivar representatives: the coset representative transmitted for each bit string.
    :vartype representatives: npt.NDArray[Literal["NLabel, N"], npt.Float64]
    """

    preset: LabelPreset
    values: npt.NDArray[Literal["NLabel"], npt.Int64]
    bit_index: npt.NDArray[Literal["NLabel"], npt.Int64]
    representatives: npt.NDArray[Literal["NLabel, N"], npt.Float64]


@dataclass(kw_only=True, frozen=True, eq=False)
class QuotientCode:
    """
    Data class modelling the coset code ``Lb / Le``.

    :ivar lattice_b: the legitimate receiver's lattice.
    :vartype lattice_b: Lattice
    :ivar lattice_e: the sublattice whose cosets carry the information.
    :vartype lattice_e: Lattice
    :ivar relation: the integer matrix ``B`` with ``Me = B Mb``.
    :vartype relation: npt.NDArray[Literal["N, N"], npt.Int64]
    :ivar snf: the Smith normal form of ``B``.
    :vartype snf: SmithNormalForm
    :ivar k: the number of information bits, ``|Lb / Le| = 2^k``.
    :vartype k: int
    :ivar preset: the bit-to-coset labelling.
    :vartype preset: LabelPreset
    """

    lattice_b: Lattice
    lattice_e: Lattice
    relation: npt.NDArray[Literal["N, N"], npt.Int64]
    snf: SmithNormalForm
    k: int
    preset: LabelPreset = LabelPreset.SNF

    @property
    def dimension(self: QuotientCode) -> int:
        """Get the ambient dimension ``n``."""
        return self.lattice_b.dimension

    @property
    def moduli(self: QuotientCode) -> Tuple[int, ...]:
        """Get the Smith normal form diagonal."""
        return tuple(int(d) for d in self.snf.d)

    @property
    def index(self: QuotientCode) -> int:
        """Get the number of cosets."""
        return 1 << self.k

    @cached_property
    def radix(self: QuotientCode) -> npt.NDArray[Literal["N"], npt.Int64]:
        """Get the mixed-radix place values ``prod_(j<i) d_j``."""
        return np.concatenate(([1], np.cumprod(self.snf.d)[:-1])).astype(np.int64)

    @cached_property
    def basis_b(self: QuotientCode) -> npt.NDArray[Literal["N, N"], npt.Float64]:
        """Get the basis ``V Mb`` of ``Lb`` adapted to the quotient."""
        return self.snf.v.astype(np.float64) @ self.lattice_b.generator

    @cached_property
    def basis_e(self: QuotientCode) -> npt.NDArray[Literal["N, N"], npt.Float64]:
        """Get the basis ``D V Mb`` of ``Le`` adapted to the quotient."""
        return self.snf.d[:, None].astype(np.float64) * self.basis_b

    @cached_property
    def relevant_b(self: QuotientCode) -> RelevantVectors:
        """Get the relevant vectors of ``Lb`` used for batch decoding."""
        return relevant_vectors(self.lattice_b)

    @cached_property
    def table(self: QuotientCode) -> LabelTable:
        """Get the label table of the configured preset."""
        return _build_table(self, self.preset)

    def with_preset(self: QuotientCode, preset: LabelPreset | str) -> QuotientCode:
        """
        Get the same quotient with another labelling.

        :raises ConfigurationError: if the preset does not apply to this quotient.
        """
        quotient = replace(self, preset=LabelPreset(preset))
        _ = quotient.table
        return quotient

    def values_of_coordinates(self: QuotientCode, coords: npt.NDArray) -> npt.NDArray:
        """Get the packed label values of points given by integer coordinates in ``Mb``."""
        transformed = np.asarray(coords, dtype=np.int64) @ self.snf.v_inv
        return np.mod(transformed, self.snf.d) @ self.radix


def _integral_relation(lattice_b: Lattice, lattice_e: Lattice) -> npt.NDArray:
    relation = lattice_e.generator @ lattice_b.generator_inverse
    rounded = np.rint(relation)
    residual = np.abs(rounded @ lattice_b.generator - lattice_e.generator).max()
    scale = float(np.abs(lattice_e.generator).max())
    if residual > RELATION_TOLERANCE * scale:
        raise SublatticeError(f"{lattice_e!r} is not a sublattice of {lattice_b!r} (residual {residual:.3g})")
    return rounded.astype(np.int64)


def build_quotient(
    lattice_b: Lattice,
    lattice_e: Lattice,
    preset: LabelPreset | str = LabelPreset.SNF,
) -> QuotientCode:
    """
    Build the coset code of a lattice and one of its sublattices.

    :param lattice_b: the legitimate receiver's lattice.
    :param lattice_e: a sublattice of ``lattice_b``.
    :param preset: the bit-to-coset labelling.
    :return: the quotient code.
    :raises SublatticeError: if ``lattice_e`` is not contained in ``lattice_b``.
    :raises RateError: if the number of cosets is not a power of two.
    """
    lattice_b.require_full_rank("build_quotient")
    lattice_e.require_full_rank("build_quotient")
    if lattice_b.dimension != lattice_e.dimension:
        raise InvalidDimensionError(
            f"lattices have different dimensions {lattice_b.dimension} and {lattice_e.dimension}"
        )

    relation = _integral_relation(lattice_b, lattice_e)
    snf = smith_normal_form(relation)
    index = snf.index
    if index & (index - 1):
        raise RateError(f"|Lb/Le| = {index} is not a power of two")

    k = index.bit_length() - 1
    logger.debug(f"quotient {lattice_b!r}/{lattice_e!r}: d={snf.d.tolist()}, k={k}")
    quotient = QuotientCode(lattice_b=lattice_b, lattice_e=lattice_e, relation=relation, snf=snf, k=k)
    return quotient.with_preset(preset) if LabelPreset(preset) != LabelPreset.SNF else quotient


def _lattice_coordinates(lattice: Lattice, x: npt.NDArray, what: str) -> npt.NDArray[Literal["N"], npt.Int64]:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (lattice.dimension,):
        raise InvalidDimensionError(f"expected a vector of length {lattice.dimension}, got shape {x.shape}")
    if not lattice.contains(x, tol=MEMBERSHIP_TOLERANCE):
        raise MembershipError(f"{x.tolist()} is not a point of {what}")
    return np.rint(lattice.coordinates(x)).astype(np.int64)


def label_of(quotient: QuotientCode, x: npt.NDArray | Sequence[float]) -> CosetLabel:
    """
    Get the label of the coset of ``Le`` containing a point of ``Lb``.

    :param quotient: the quotient code.
    :param x: a point of ``Lb``.
    :return: the coset label, constant on cosets.
    :raises MembershipError: if ``x`` is not in ``Lb``.
    """
    coords = _lattice_coordinates(quotient.lattice_b, np.asarray(x), "Lb")
    value = int(quotient.values_of_coordinates(coords))
    return CosetLabel.from_value(value, quotient.moduli)


def min_energy_representative(quotient: QuotientCode, label: CosetLabel) -> npt.NDArray[Literal["N"], npt.Float64]:
    """
    Get the coset member of minimum norm.

    Any member ``c0`` of the coset is reduced by its closest point of ``Le``.
    When several members share the minimum norm the one with the
    lexicographically smallest integer coordinates in ``Mb`` is returned.

    :param quotient: the quotient code.
    :param label: the coset label.
    :return: the representative.
    """
    if label.moduli != quotient.moduli:
        raise DomainError(f"label moduli {label.moduli} do not match the quotient {quotient.moduli}")

    c0 = np.asarray(label.digits, dtype=np.float64) @ quotient.basis_b
    ties = closest_point_ties(quotient.lattice_e, c0)
    candidates = c0 - ties @ quotient.lattice_e.generator

    coords = np.rint(quotient.lattice_b.coordinates(candidates)).astype(np.int64)
    best = np.lexsort(coords.T[::-1])[0]
    return candidates[best]


def _snf_representatives(quotient: QuotientCode) -> npt.NDArray:
    reps = [
        min_energy_representative(quotient, CosetLabel.from_value(value, quotient.moduli))
        for value in range(quotient.index)
    ]
    return np.array(reps, dtype=np.float64).reshape(quotient.index, quotient.dimension)


def _z2_example_representatives(quotient: QuotientCode) -> npt.NDArray:
    if quotient.dimension != 2 or quotient.k != 2:
        raise ConfigurationError("the z2-example preset applies to Z^2 / 2Z^2 only")
    # bit string s1 s2 has index s1 + 2 s2
    return np.array([[index & 1, (index >> 1) & 1] for index in range(4)], dtype=np.float64)


def _e8_example_representatives(quotient: QuotientCode) -> npt.NDArray:
    if quotient.dimension != 8 or quotient.k != 8:
        raise ConfigurationError("the e8-example preset applies to E8 / 2E8 in Construction A form only")

    code = rm_code()
    reps = []
    for index in range(256):
        bits = (index >> np.arange(8)) & 1
        reps.append(code.encode(bits[:4]) + 2 * code.coset_leaders[bits_to_index(bits[4:])])
    return np.array(reps, dtype=np.float64)


def _build_table(quotient: QuotientCode, preset: LabelPreset) -> LabelTable:
    if quotient.k > MAX_TABLE_BITS:
        raise ResourceLimitError(f"a label table of 2^{quotient.k} entries exceeds the limit of 2^{MAX_TABLE_BITS}")

    if preset == LabelPreset.SNF:
        identity = np.arange(quotient.index, dtype=np.int64)
        return LabelTable(
            preset=preset, values=identity, bit_index=identity.copy(), representatives=_snf_representatives(quotient)
        )

    if preset == LabelPreset.Z2_EXAMPLE:
        representatives = _z2_example_representatives(quotient)
    else:
        representatives = _e8_example_representatives(quotient)

    lattice_b = quotient.lattice_b
    if not all(lattice_b.contains(rep, tol=MEMBERSHIP_TOLERANCE) for rep in representatives):
        raise ConfigurationError(f"the {preset.value} preset representatives are not points of {lattice_b!r}")

    coords = np.rint(lattice_b.coordinates(representatives)).astype(np.int64)
    values = quotient.values_of_coordinates(coords).astype(np.int64)
    if len(np.unique(values)) != quotient.index:
        raise ConfigurationError(f"the {preset.value} preset does not label distinct cosets of {quotient.lattice_e!r}")

    bit_index = np.empty_like(values)
    bit_index[values] = np.arange(quotient.index)
    return LabelTable(preset=preset, values=values, bit_index=bit_index, representatives=representatives)


def window_point(quotient: QuotientCode, coords: Sequence[int] | npt.NDArray) -> npt.NDArray[Literal["N"], npt.Float64]:
    """Get the point of ``Le`` with the given integer coordinates in the basis ``D V Mb``."""
    coords = np.asarray(coords, dtype=np.int64)
    if coords.shape[-1] != quotient.dimension:
        raise InvalidDimensionError(f"expected {quotient.dimension} window coordinates, got shape {coords.shape}")
    return coords @ quotient.basis_e


def sample_window_point(
    quotient: QuotientCode,
    rng: np.random.Generator,
    window: int = DEFAULT_WINDOW,
) -> npt.NDArray[Literal["N"], npt.Float64]:
    """
    Draw ``r`` uniformly from the points of ``Le`` with coordinates in ``[-window, window)^n``.

    :param quotient: the quotient code.
    :param rng: the random generator.
    :param window: the half width ``L`` of the window; 0 always returns the origin.
    :return: the random point of ``Le``.
    """
    if window < 0:
        raise DomainError(f"window must be non-negative, got {window}")
    if window == 0:
        return np.zeros(quotient.dimension)
    return window_point(quotient, rng.integers(-window, window, size=quotient.dimension))


def encode(
    quotient: QuotientCode,
    bits: str,
    randomness: npt.NDArray | Sequence[float] | None = None,
) -> npt.NDArray[Literal["N"], npt.Float64]:
    """
    Encode ``k`` bits as a random point of the labelled coset.

    :param quotient: the quotient code.
    :param bits: the ``k`` information bits.
    :param randomness: the point ``r`` of ``Le`` to add, the origin when omitted.
    :return: ``x = r + c`` where ``c`` is the representative of the labelled coset.
    :raises BitLengthError: if ``bits`` is not a ``k`` bit string.
    :raises MembershipError: if ``randomness`` is not a point of ``Le``.
    """
    index = bits_to_index(parse_bits(bits, quotient.k))
    r = np.zeros(quotient.dimension) if randomness is None else np.asarray(randomness, dtype=np.float64)
    _lattice_coordinates(quotient.lattice_e, r, "Le")

    if quotient.preset == LabelPreset.SNF:
        representative = min_energy_representative(quotient, CosetLabel.from_value(index, quotient.moduli))
    else:
        representative = quotient.table.representatives[index]
    return r + representative


def _bits_of_value(quotient: QuotientCode, value: int) -> str:
    index = value if quotient.preset == LabelPreset.SNF else int(quotient.table.bit_index[value])
    return "".join(str((index >> b) & 1) for b in range(quotient.k))


def decode(
    quotient: QuotientCode,
    received: npt.NDArray | Sequence[float],
) -> Tuple[str, npt.NDArray[Literal["N"], npt.Float64]]:
    """
    Decode a received vector to the bits of the coset of its closest point of ``Lb``.

    :param quotient: the quotient code.
    :param received: the received vector.
    :return: the decoded bits and the decoded point.
    """
    (point, coords) = closest_point(quotient.lattice_b, np.asarray(received, dtype=np.float64))
    value = int(quotient.values_of_coordinates(coords))
    return (_bits_of_value(quotient, value), point)


def decode_values(
    quotient: QuotientCode,
    received: npt.NDArray[Literal["NTrial, N"], npt.Float64],
) -> Tuple[npt.NDArray[Literal["NTrial"], npt.Int64], npt.NDArray[Literal["NTrial, N"], npt.Int64]]:
    """
    Decode many received vectors to packed label values.

    :return: the packed label values and the integer coordinates of the decoded points.
    """
    (_, coords) = closest_points(quotient.lattice_b, received, relevant=quotient.relevant_b)
    return (quotient.values_of_coordinates(coords), coords)


def rate_per_complex_symbol(quotient: QuotientCode) -> float:
    """Get the information rate ``k / (n / 2)`` in bits per complex symbol."""
    return quotient.k / (quotient.dimension / 2.0)


def codebook(quotient: QuotientCode) -> List[Dict[str, object]]:
    """
    Get the transmitted representative of every label.

    :return: a JSON-ready list of ``{label_bits, representative_coordinates}`` in bit string order.
    """
    table = quotient.table
    return [
        {
            "label_bits": "".join(str((index >> b) & 1) for b in range(quotient.k)),
            "representative_coordinates": [float(x) for x in table.representatives[index]],
        }
        for index in range(quotient.index)
    ]
