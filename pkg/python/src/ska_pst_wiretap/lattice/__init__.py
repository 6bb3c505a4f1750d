# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module is used for representing lattices, enumerating their points and decoding to them."""

__all__ = [
    "EnumerationConfig",
    "Lattice",
    "LatticeFamily",
    "LatticeName",
    "NormSpectrum",
    "RelevantVectors",
    "closest_point",
    "closest_point_ties",
    "closest_points",
    "enumerate_lattice",
    "enumerate_points",
    "hermite_parameter",
    "in_voronoi_cell",
    "kissing_number",
    "make_named",
    "min_distance",
    "relevant_vectors",
    "scaled",
    "volume",
]

from .model import EnumerationConfig, Lattice, NormSpectrum, volume
from .named import LatticeFamily, LatticeName, make_named, scaled
from .enumeration import enumerate_lattice, enumerate_points, hermite_parameter, kissing_number, min_distance
from .cvp import (
    RelevantVectors,
    closest_point,
    closest_point_ties,
    closest_points,
    in_voronoi_cell,
    relevant_vectors,
)
