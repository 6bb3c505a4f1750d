# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module is used for coset codes of a lattice pair: labelling, encoding and decoding."""

__all__ = [
    "BinaryCode",
    "CosetLabel",
    "LabelPreset",
    "LabelTable",
    "QuotientCode",
    "SmithNormalForm",
    "build_quotient",
    "codebook",
    "decode",
    "decode_values",
    "e8_example_encoder",
    "encode",
    "label_of",
    "min_energy_representative",
    "rate_per_complex_symbol",
    "rm_code",
    "sample_window_point",
    "smith_normal_form",
    "window_point",
]

from .snf import SmithNormalForm, smith_normal_form
from .reed_muller import BinaryCode, e8_example_encoder, rm_code
from .quotient import (
    CosetLabel,
    LabelPreset,
    LabelTable,
    QuotientCode,
    build_quotient,
    codebook,
    decode,
    decode_values,
    encode,
    label_of,
    min_energy_representative,
    rate_per_complex_symbol,
    sample_window_point,
    window_point,
)
