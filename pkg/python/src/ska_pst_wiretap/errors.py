# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""
This module defines the exceptions raised by the wiretap library.

Every exception derives from :py:class:`WiretapError` and also from the
builtin exception that best describes the failure, so callers can either
catch the whole family or rely on ``ValueError``/``RuntimeError``.
The :py:attr:`WiretapError.exit_code` is used by the command line
interface to map failures onto process exit statuses; any other exception
reaching the command line interface exits with ``EXIT_INTERNAL``.
"""

from __future__ import annotations

__all__ = [
    "WiretapError",
    "InvalidDimensionError",
    "InvalidLatticeError",
    "UnsupportedLatticeError",
    "DomainError",
    "ResourceLimitError",
    "SublatticeError",
    "RateError",
    "MembershipError",
    "BitLengthError",
    "ConfigurationError",
    "EXIT_VALIDATION",
    "EXIT_RESOURCE",
    "EXIT_INTERNAL",
]

EXIT_VALIDATION: int = 2
EXIT_RESOURCE: int = 3
EXIT_INTERNAL: int = 1


class WiretapError(Exception):
    """Base class of all errors raised by this package."""

    exit_code: int = EXIT_VALIDATION


class InvalidDimensionError(WiretapError, ValueError):
    """Raised when a dimension is zero or too small for the requested lattice."""


class InvalidLatticeError(WiretapError, ValueError):
    """Raised when a generator matrix does not define a lattice (rank deficient)."""


class UnsupportedLatticeError(WiretapError, ValueError):
    """Raised when an operation does not support the given lattice, e.g. m < n for CVP."""


class DomainError(WiretapError, ValueError):
    """Raised when a numeric argument lies outside the domain of an operation."""


class ResourceLimitError(WiretapError, RuntimeError):
    """Raised when a lattice enumeration would exceed the configured point cap."""

    exit_code: int = EXIT_RESOURCE


class SublatticeError(WiretapError, ValueError):
    """Raised when the eavesdropper lattice is not contained in the legitimate lattice."""


class RateError(WiretapError, ValueError):
    """Raised when a quotient has an index that is not a power of two."""


class MembershipError(WiretapError, ValueError):
    """Raised when a point is expected to be a lattice point but is not."""


class BitLengthError(WiretapError, ValueError):
    """Raised when a bit string has the wrong length or contains symbols other than 0 and 1."""


class ConfigurationError(WiretapError, ValueError):
    """Raised when a command line configuration fails validation."""
