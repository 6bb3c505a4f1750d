# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This submodule provides the ``ska-pst-wiretap`` command line interface."""

__all__ = [
    "CliConfig",
    "Command",
    "OutputFormat",
    "build_parser",
    "main",
    "parse_config",
    "read_generator_file",
    "run",
    "sweep",
]

from .config import CliConfig, Command, OutputFormat, read_generator_file
from .main import build_parser, main, parse_config, run, sweep
