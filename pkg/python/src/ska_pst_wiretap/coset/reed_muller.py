# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""
This module provides the (8,4,4) Reed-Muller code and the E8 encoder built on it.

E8 is obtained by Construction A as ``2Z^8 + RM(8,4,4)`` and
``E8 / 2E8 = RM(8,4,4) + 2 C`` where ``C`` are the 16 minimum weight coset
leaders of the code. Bit strings are little-endian: bit ``i`` multiplies
generator row ``i`` and coset leader ``j`` is selected by the integer whose
bit ``i`` is the ``i``-th character of the string.
"""

from __future__ import annotations

__all__ = [
    "BinaryCode",
    "e8_example_encoder",
    "parse_bits",
    "rm_code",
]

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Literal, Sequence, Tuple

import nptyping as npt
import numpy as np
from ska_pst_wiretap.errors import BitLengthError, DomainError
from ska_pst_wiretap.lattice.named import RM_8_4_4_GENERATOR

logger = logging.getLogger(__name__)

DEFAULT_WINDOW: int = 2


def parse_bits(bits: str, length: int) -> npt.NDArray[Literal["NBit"], npt.Int64]:
    """
    Convert a bit string to an integer array.

    :param bits: a string of ``0`` and ``1`` characters.
    :param length: the expected length.
    :return: the bits as integers.
    :raises BitLengthError: for a wrong length or alphabet.
    """
    if len(bits) != length or any(ch not in "01" for ch in bits):
        raise BitLengthError(f"expected a string of {length} bits, got {bits!r}")
    return np.array([int(ch) for ch in bits], dtype=np.int64)


def bits_to_index(bits: npt.NDArray) -> int:
    """Get the little-endian integer of a bit array."""
    return int(sum(int(b) << i for (i, b) in enumerate(bits)))


@dataclass(kw_only=True, frozen=True, eq=False)
class BinaryCode:
    """
    Data class modelling a binary linear code with its coset leaders.

    :ivar generator: the ``k x n`` generator matrix over GF(2).
    :vartype generator: npt.NDArray[Literal["K, N"], npt.Int64]
    :ivar codewords: all ``2^k`` codewords, codeword ``i`` encodes the little-endian bits of ``i``.
    :vartype codewords: npt.NDArray[Literal["NCodeword, N"], npt.Int64]
    :ivar coset_leaders: one minimum weight word per coset of the code, ordered by weight then
        lexicographically; ties within a coset resolve to the lexicographically smallest word.
    :vartype coset_leaders: npt.NDArray[Literal["NCoset, N"], npt.Int64]
    """

    generator: npt.NDArray[Literal["K, N"], npt.Int64]
    codewords: npt.NDArray[Literal["NCodeword, N"], npt.Int64]
    coset_leaders: npt.NDArray[Literal["NCoset, N"], npt.Int64]

    @property
    def length(self: BinaryCode) -> int:
        """Get the code length ``n``."""
        return int(self.generator.shape[1])

    @property
    def dimension(self: BinaryCode) -> int:
        """Get the code dimension ``k``."""
        return int(self.generator.shape[0])

    @property
    def minimum_distance(self: BinaryCode) -> int:
        """Get the smallest weight of a non-zero codeword."""
        weights = self.codewords.sum(axis=1)
        return int(weights[weights > 0].min())

    def weight_distribution(self: BinaryCode) -> Dict[int, int]:
        """Get the number of codewords of every weight."""
        (weights, counts) = np.unique(self.codewords.sum(axis=1), return_counts=True)
        return {int(w): int(c) for (w, c) in zip(weights, counts)}

    def encode(self: BinaryCode, bits: npt.NDArray | Sequence[int]) -> npt.NDArray[Literal["N"], npt.Int64]:
        """Get the codeword of ``k`` information bits."""
        bits = np.asarray(bits, dtype=np.int64)
        if bits.shape != (self.dimension,):
            raise BitLengthError(f"expected {self.dimension} information bits, got {len(bits)}")
        return (bits @ self.generator) % 2


def _coset_leaders(codewords: npt.NDArray) -> npt.NDArray:
    length = codewords.shape[1]
    leaders: Dict[Tuple[int, ...], Tuple[int, Tuple[int, ...]]] = {}
    for word in itertools.product((0, 1), repeat=length):
        coset = (np.array(word) + codewords) % 2
        key = min(tuple(int(x) for x in member) for member in coset)
        candidate = (sum(word), word)
        if key not in leaders or candidate < leaders[key]:
            leaders[key] = candidate

    ordered = sorted(leaders.values())
    return np.array([word for (_, word) in ordered], dtype=np.int64)


@lru_cache(maxsize=1)
def rm_code() -> BinaryCode:
    """Get the (8,4,4) first order Reed-Muller code and its 16 coset leaders."""
    generator = RM_8_4_4_GENERATOR.copy()
    k = generator.shape[0]
    messages = (np.arange(1 << k)[:, None] >> np.arange(k)) & 1
    codewords = (messages @ generator) % 2

    for array in (generator, codewords):
        array.setflags(write=False)
    leaders = _coset_leaders(codewords)
    leaders.setflags(write=False)

    logger.debug(f"RM(8,4,4) has {len(codewords)} codewords and {len(leaders)} coset leaders")
    return BinaryCode(generator=generator, codewords=codewords, coset_leaders=leaders)


def e8_example_encoder(
    info_bits: str,
    code_bits: str,
    z: Sequence[int] | npt.NDArray,
    window: int = DEFAULT_WINDOW,
) -> npt.NDArray[Literal["8"], npt.Int64]:
    """
    Encode 8 information bits into a point of ``2Z^8 + RM(8,4,4)``.

    The point is ``c + 2 l + 2 c' + 4 z`` where ``c`` is the codeword of the
    first 4 information bits, ``l`` the coset leader selected by the last 4,
    ``c'`` the codeword of the 4 random code bits and ``z`` a random integer
    vector. ``2 c' + 4 z`` lies in twice the lattice, so the coset carries the
    information bits and the rest is randomness.

    :param info_bits: the 8 information bits.
    :param code_bits: the 4 random bits selecting ``c'``.
    :param z: 8 random integers in ``[-window, window)``.
    :param window: the half width of the window of ``z``.
    :return: the lattice point.
    :raises BitLengthError: for malformed bit strings.
    :raises DomainError: if ``z`` has the wrong length or leaves the window.
    """
    code = rm_code()
    info = parse_bits(info_bits, 8)
    random_code = parse_bits(code_bits, 4)

    z = np.asarray(z, dtype=np.int64)
    if z.shape != (8,):
        raise DomainError(f"expected 8 random integers, got shape {z.shape}")
    if np.any(z < -window) or np.any(z >= window):
        raise DomainError(f"random integers must lie in [{-window}, {window}), got {z.tolist()}")

    c = code.encode(info[:4])
    leader = code.coset_leaders[bits_to_index(info[4:])]
    c_prime = code.encode(random_code)
    return c + 2 * leader + 2 * c_prime + 4 * z
