# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""Provides tests for Smith normal forms, quotient codes and their labels."""

import itertools

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from ska_pst_wiretap.coset import (
    CosetLabel,
    LabelPreset,
    QuotientCode,
    build_quotient,
    codebook,
    decode,
    decode_values,
    e8_example_encoder,
    encode,
    label_of,
    min_energy_representative,
    rate_per_complex_symbol,
    rm_code,
    sample_window_point,
    smith_normal_form,
    window_point,
)
from ska_pst_wiretap.errors import (
    BitLengthError,
    ConfigurationError,
    DomainError,
    InvalidLatticeError,
    MembershipError,
    RateError,
    SublatticeError,
)
from ska_pst_wiretap.lattice import Lattice, make_named


def _all_bits(k: int) -> list:
    return ["".join(bits) for bits in itertools.product("01", repeat=k)]


@pytest.mark.parametrize(
    "matrix, diagonal",
    [
        ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
        ([[2, 0], [0, 3]], [1, 6]),
        ([[2, 0], [0, 2]], [2, 2]),
        ([[0, 1], [1, 0]], [1, 1]),
        ([[-4]], [4]),
    ],
)
def test_smith_normal_form(matrix: list, diagonal: list) -> None:
    """Test the diagonal, the divisibility chain and the unimodular factors."""
    snf = smith_normal_form(matrix)

    assert snf.d.tolist() == diagonal
    assert all(b % a == 0 for (a, b) in zip(snf.d, snf.d[1:]))
    assert_array_equal(snf.reconstruct(), matrix)
    assert_array_equal(snf.u @ snf.u_inv, np.eye(len(matrix), dtype=np.int64))
    assert_array_equal(snf.v @ snf.v_inv, np.eye(len(matrix), dtype=np.int64))
    assert snf.index == abs(round(np.linalg.det(np.array(matrix, dtype=float))))


def test_smith_normal_form_rejects_singular_matrices() -> None:
    """Test that singular or non-square matrices have no quotient."""
    with pytest.raises(InvalidLatticeError):
        smith_normal_form([[1, 2], [2, 4]])
    with pytest.raises(InvalidLatticeError):
        smith_normal_form([[1, 2, 3], [4, 5, 6]])


def test_quotient_sizes(z2_quotient: QuotientCode, e8_quotient: QuotientCode) -> None:
    """Test that Z^2 / 2Z^2 has 4 cosets and E8 / 2E8 has 256 at 2 bits per complex symbol."""
    assert z2_quotient.index == 4
    assert z2_quotient.k == 2
    assert z2_quotient.moduli == (2, 2)

    assert e8_quotient.index == 256
    assert e8_quotient.k == 8
    assert e8_quotient.moduli == (2,) * 8
    assert rate_per_complex_symbol(e8_quotient) == 2.0


def test_trivial_quotient_has_no_bits(z2: Lattice) -> None:
    """Test that Lb / Lb carries k = 0 bits and decodes the empty string."""
    quotient = build_quotient(z2, z2)
    assert quotient.k == 0 and quotient.index == 1
    assert encode(quotient, "").tolist() == [0.0, 0.0]
    assert decode(quotient, [0.3, -0.2])[0] == ""


def test_quotient_errors(z2: Lattice) -> None:
    """Test the sublattice and power of two checks."""
    with pytest.raises(SublatticeError):
        build_quotient(z2, z2.scaled(0.5))
    with pytest.raises(RateError):
        build_quotient(z2, z2.scaled(3.0))
    with pytest.raises(SublatticeError):
        build_quotient(make_named("D4"), make_named("Zn:4"))


def test_d4_in_z4_has_two_cosets() -> None:
    """Test a quotient with a non-trivial Smith normal form basis."""
    quotient = build_quotient(make_named("Zn:4"), make_named("Dn:4"))
    assert quotient.k == 1
    assert label_of(quotient, [1.0, 0.0, 0.0, 0.0]).bits == "1"
    assert label_of(quotient, [1.0, 1.0, 0.0, 0.0]).bits == "0"


def test_worked_z2_example(z2_example_quotient: QuotientCode) -> None:
    """Test that bits 01 with r = 2(1, 1) encode to (2, 3) and decoding (2.1, 2.9) returns 01."""
    r = window_point(z2_example_quotient, [1, 1])
    assert r.tolist() == [2.0, 2.0]

    x = encode(z2_example_quotient, "01", r)
    assert x.tolist() == [2.0, 3.0]

    (bits, point) = decode(z2_example_quotient, [2.1, 2.9])
    assert bits == "01"
    assert point.tolist() == [2.0, 3.0]


def test_z2_example_codebook(z2_example_quotient: QuotientCode) -> None:
    """Test that bits s1 s2 are sent as the point (s1, s2)."""
    assert codebook(z2_example_quotient) == [
        {"label_bits": "00", "representative_coordinates": [0.0, 0.0]},
        {"label_bits": "10", "representative_coordinates": [1.0, 0.0]},
        {"label_bits": "01", "representative_coordinates": [0.0, 1.0]},
        {"label_bits": "11", "representative_coordinates": [1.0, 1.0]},
    ]


def test_minimum_energy_representatives(z2_quotient: QuotientCode) -> None:
    """Test that equal energy representatives resolve to the smallest coordinates."""
    representatives = [entry["representative_coordinates"] for entry in codebook(z2_quotient)]
    assert representatives == [[0.0, 0.0], [-1.0, 0.0], [0.0, -1.0], [-1.0, -1.0]]

    label = CosetLabel.from_bits("11", z2_quotient.moduli)
    assert min_energy_representative(z2_quotient, label).tolist() == [-1.0, -1.0]


def test_labels_are_a_homomorphism(e8_quotient: QuotientCode, rng: np.random.Generator) -> None:
    """Test that the label of a sum is the sum of the labels and labels are constant on cosets."""
    generator = e8_quotient.lattice_b.generator
    le = e8_quotient.lattice_e.generator
    for _ in range(50):
        x = rng.integers(-3, 4, size=8) @ generator
        y = rng.integers(-3, 4, size=8) @ generator
        e = rng.integers(-3, 4, size=8) @ le

        assert label_of(e8_quotient, x + y) == label_of(e8_quotient, x) + label_of(e8_quotient, y)
        assert label_of(e8_quotient, x + e) == label_of(e8_quotient, x)
        assert label_of(e8_quotient, e).value == 0


def test_label_packing() -> None:
    """Test the mixed-radix little-endian packing of digits."""
    label = CosetLabel(digits=(1, 0, 3), moduli=(2, 2, 4))
    assert label.value == 1 + 3 * 4
    assert label.k == 4
    assert label.bits == "1011"
    assert CosetLabel.from_bits("1011", (2, 2, 4)) == label


@pytest.mark.parametrize("fixture", ["z2_quotient", "z2_example_quotient", "e8_quotient", "e8_example_quotient"])
def test_zero_noise_round_trip(fixture: str, request: pytest.FixtureRequest, rng: np.random.Generator) -> None:
    """Test that every label decodes exactly for 50 random points of Le each."""
    quotient: QuotientCode = request.getfixturevalue(fixture)
    for bits in _all_bits(quotient.k):
        r = sample_window_point(quotient, rng)
        x = encode(quotient, bits, r)
        assert quotient.lattice_b.contains(x)
        assert decode(quotient, x)[0] == bits

        offsets = window_point(quotient, rng.integers(-2, 2, size=(50, quotient.dimension)))
        (values, _) = decode_values(quotient, x + offsets)
        assert np.all(values == label_of(quotient, x).value)


def test_batch_decoding_matches_single(z2_quotient: QuotientCode, rng: np.random.Generator) -> None:
    """Test that packed label values from the batch decoder match the single decoder."""
    received = rng.normal(scale=2.0, size=(100, 2))
    (values, _) = decode_values(z2_quotient, received)
    for (y, value) in zip(received, values):
        assert decode(z2_quotient, y)[0] == CosetLabel.from_value(int(value), z2_quotient.moduli).bits


def test_encoding_errors(z2_quotient: QuotientCode) -> None:
    """Test bit string and membership checks of the encoder."""
    for bits in ["0", "011", "0a"]:
        with pytest.raises(BitLengthError):
            encode(z2_quotient, bits)
    with pytest.raises(MembershipError):
        encode(z2_quotient, "01", [1.0, 0.0])
    with pytest.raises(MembershipError):
        label_of(z2_quotient, [0.5, 0.0])


def test_sample_window_point(z2_quotient: QuotientCode, rng: np.random.Generator) -> None:
    """Test that the random point lies in Le and in the window."""
    points = np.array([sample_window_point(z2_quotient, rng, window=3) for _ in range(200)])
    assert np.all(points % 2 == 0)
    assert points.min() == -6.0 and points.max() == 4.0
    assert sample_window_point(z2_quotient, rng, window=0).tolist() == [0.0, 0.0]
    with pytest.raises(DomainError):
        sample_window_point(z2_quotient, rng, window=-1)


def test_reed_muller_code() -> None:
    """Test the (8,4,4) code and its 16 coset leaders."""
    code = rm_code()
    assert (code.length, code.dimension, code.minimum_distance) == (8, 4, 4)
    assert code.weight_distribution() == {0: 1, 4: 14, 8: 1}

    leaders = code.coset_leaders
    assert len(leaders) == 16
    assert sorted(int(w) for w in leaders.sum(axis=1)) == [0] + [1] * 8 + [2] * 7


def test_e8_example_encoder(e8_example_quotient: QuotientCode, rng: np.random.Generator) -> None:
    """Test that the Reed-Muller encoder lands in E8 and its coset carries only the information bits."""
    bits = "10110100"
    reference = e8_example_encoder(bits, "0000", np.zeros(8, dtype=int))
    for _ in range(20):
        code_bits = "".join(str(b) for b in rng.integers(0, 2, size=4))
        z = rng.integers(-2, 2, size=8)
        x = e8_example_encoder(bits, code_bits, z)

        assert e8_example_quotient.lattice_b.contains(x)
        assert label_of(e8_example_quotient, x) == label_of(e8_example_quotient, reference)
        assert decode(e8_example_quotient, x)[0] == bits

    assert_allclose(encode(e8_example_quotient, bits), reference)


def test_e8_example_encoder_errors() -> None:
    """Test the input checks of the Reed-Muller encoder."""
    with pytest.raises(BitLengthError):
        e8_example_encoder("1011", "0000", np.zeros(8, dtype=int))
    with pytest.raises(BitLengthError):
        e8_example_encoder("10110100", "00", np.zeros(8, dtype=int))
    with pytest.raises(DomainError):
        e8_example_encoder("10110100", "0000", np.full(8, 2))
    with pytest.raises(DomainError):
        e8_example_encoder("10110100", "0000", np.zeros(7, dtype=int))


def test_presets_only_apply_to_their_quotient(z2_quotient: QuotientCode, e8_quotient: QuotientCode) -> None:
    """Test that the fixed presets refuse other quotients."""
    with pytest.raises(ConfigurationError):
        e8_quotient.with_preset(LabelPreset.Z2_EXAMPLE)
    with pytest.raises(ConfigurationError):
        z2_quotient.with_preset(LabelPreset.E8_EXAMPLE)
    with pytest.raises(ConfigurationError):
        build_quotient(make_named("Zn:8"), make_named("2*Zn:8"), LabelPreset.E8_EXAMPLE)
