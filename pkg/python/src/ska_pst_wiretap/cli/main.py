# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""
This module provides the ``ska-pst-wiretap`` command line interface.

Every command writes one artifact, JSON by default, to ``--out`` or to standard
output. Failures print ``{"error", "message", "exit_code"}`` as JSON on
standard error and exit with 2 for invalid input, 3 when a resource cap
refuses the computation and 1 for an unexpected failure.
"""

from __future__ import annotations

__all__ = [
    "build_parser",
    "main",
    "parse_config",
    "run",
    "sweep",
]

import argparse
import json
import logging
import math
import pathlib
import sys
from typing import Any, Dict, List, Sequence

import numpy as np
import pandas as pd
from ska_pst_wiretap.channel import (
    ChannelParams,
    SigmaSweep,
    SimulationConfig,
    first_order_pce,
    ratio,
    sigma_sweep,
    simulate,
)
from ska_pst_wiretap.cli.config import (
    DEFAULT_POINTS,
    DEFAULT_TRIALS,
    CliConfig,
    Command,
    OutputFormat,
    parse_float_list,
    parse_int_list,
    resolve_lattice,
    resolve_theta_lattice,
)
from ska_pst_wiretap.coset import (
    LabelPreset,
    QuotientCode,
    build_quotient,
    codebook,
    decode,
    e8_example_encoder,
    encode,
    label_of,
    rate_per_complex_symbol,
    rm_code,
    sample_window_point,
    window_point,
)
from ska_pst_wiretap.errors import EXIT_INTERNAL, ConfigurationError, WiretapError
from ska_pst_wiretap.hdf5 import write_sweep
from ska_pst_wiretap.lattice import (
    EnumerationConfig,
    LatticeName,
    hermite_parameter,
    kissing_number,
    make_named,
    min_distance,
)
from ska_pst_wiretap.theta import (
    SearchConfig,
    SecrecySweep,
    ThetaConfig,
    log_grid,
    secrecy_function,
    secrecy_gain,
    secrecy_sweep,
    theta_closed_form,
    theta_enumerated,
)

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s [%(levelname)8s] [%(threadName)s] %(message)s (%(filename)s:%(lineno)s)"
MAX_CODEBOOK_BITS: int = 8
E8_DEMO_LATTICE: str = "E8A"

Payload = Dict[str, Any]


class _ArgumentParser(argparse.ArgumentParser):
    """Raises a :py:class:`ConfigurationError` instead of exiting on invalid arguments."""

    def error(self: _ArgumentParser, message: str) -> None:  # type: ignore[override]
        raise ConfigurationError(message)


def build_parser() -> argparse.ArgumentParser:
    """Get the argument parser of the command line interface."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lattice", help="Lattice name (Zn:<n>, Dn:<n>, E8, E8A, Leech, <a>*<name>) or generator file")
    common.add_argument("--lattice-b", help="Legitimate receiver's lattice name or generator file")
    common.add_argument("--lattice-e", help="Eavesdropper's lattice name or generator file")
    common.add_argument("--y", type=float, help="Theta argument, q = exp(-pi y)")
    common.add_argument("--y-min", type=float, help="Lower end of the y grid or search bracket")
    common.add_argument("--y-max", type=float, help="Upper end of the y grid or search bracket")
    common.add_argument("--points", type=int, default=DEFAULT_POINTS, help="Number of grid points")
    common.add_argument("--sigma-b", type=float, help="Legitimate receiver's noise standard deviation")
    common.add_argument(
        "--sigma-e",
        type=parse_float_list,
        default=[],
        help="Eavesdropper's noise standard deviation, a comma separated list sweeps",
    )
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="Number of Monte Carlo trials")
    common.add_argument("--seed", type=int, default=0, help="Seed of all randomness")
    common.add_argument("--tol", type=float, help="Absolute error target of enumerated theta series")
    common.add_argument("--window", type=int, default=2, help="Half width L of the window [-L, L)^n of r")
    common.add_argument("--out", type=pathlib.Path, help="Output file, standard output when omitted")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.JSON.value)
    common.add_argument("--normalisation", choices=["none", "unit", "equal"], default="none")
    common.add_argument("--bits", help="Information bits, e.g. 01")
    common.add_argument("--random", type=parse_int_list, help="Window coordinates of r, e.g. 1,1")
    common.add_argument("--received", type=parse_float_list, help="Received vector, e.g. --received=2.1,2.9")
    common.add_argument("--preset", choices=[p.value for p in LabelPreset], default=LabelPreset.SNF.value)
    common.add_argument("--workers", type=int, default=1, help="Number of threads")
    common.add_argument("--max-points", type=int, default=EnumerationConfig().max_points, help="Enumeration cap")
    common.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level")

    parser = _ArgumentParser(prog="ska-pst-wiretap", description="Wiretap lattice coset codes over AWGN channels")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)
    helps = {
        Command.THETA: "Evaluate a theta series",
        Command.SECRECY_FUNCTION: "Evaluate the secrecy function at --y or over a grid",
        Command.SECRECY_GAIN: "Maximise the secrecy function",
        Command.QUOTIENT: "Describe the coset code of --lattice-b / --lattice-e",
        Command.ENCODE: "Encode --bits as a point of the labelled coset",
        Command.DECODE: "Decode --received to the bits of its coset",
        Command.SIMULATE: "Monte Carlo simulation of both channels",
        Command.E8_DEMO: "Walk through the E8 / 2E8 coset code",
    }
    for (command, text) in helps.items():
        subparsers.add_parser(command.value, parents=[common], help=text)
    return parser


def parse_config(argv: Sequence[str] | None = None) -> CliConfig:
    """
    Parse command line arguments.

    :raises ConfigurationError: for invalid arguments.
    """
    args = build_parser().parse_args(argv)
    options = vars(args)
    if options.pop("tol") is None:
        options["tol"] = ThetaConfig().enumerated_tol
    return CliConfig(**options)


def _theta_config(config: CliConfig) -> ThetaConfig:
    return ThetaConfig(enumerated_tol=config.tol, enumeration=EnumerationConfig(max_points=config.max_points))


def _search_config(config: CliConfig) -> SearchConfig:
    defaults = SearchConfig()
    return SearchConfig(
        y_lo=config.y_min or defaults.y_lo,
        y_hi=config.y_max or defaults.y_hi,
        points=max(config.points, 3),
        workers=config.workers,
    )


def _simulation_config(config: CliConfig) -> SimulationConfig:
    return SimulationConfig(
        trials=config.trials,
        seed=config.seed,
        window=config.window,
        workers=config.workers,
        theta_tol=config.tol,
    )


def _quotient(config: CliConfig) -> QuotientCode:
    assert config.lattice_b is not None and config.lattice_e is not None
    return build_quotient(resolve_lattice(config.lattice_b), resolve_lattice(config.lattice_e), config.preset)


def _rng(config: CliConfig) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(config.seed))


def _floats(values: np.ndarray) -> List[float]:
    return [float(x) for x in values]


def _finite_or_none(value: float) -> float | None:
    return value if math.isfinite(value) else None


def _run_theta(config: CliConfig) -> Payload:
    assert config.lattice is not None and config.y is not None
    lattice = resolve_theta_lattice(config.lattice)
    if isinstance(lattice, LatticeName):
        (value, method) = (theta_closed_form(lattice, config.y, config.tol), "closed-form")
    else:
        (value, method) = (theta_enumerated(lattice, config.y, config.tol, _theta_config(config)), "enumerated")

    logger.info(f"theta of {config.lattice} at y={config.y:g} is {value:.15g}")
    return {"lattice": config.lattice, "y": config.y, "theta": value, "method": method}


def _run_secrecy_function(config: CliConfig) -> Payload:
    assert config.lattice is not None and config.y is not None
    lattice = resolve_theta_lattice(config.lattice)
    xi = secrecy_function(lattice, config.y, config.normalisation, _theta_config(config))
    return {"lattice": config.lattice, "y": config.y, "xi": xi, "normalisation": config.normalisation.value}


def _run_secrecy_gain(config: CliConfig) -> Payload:
    assert config.lattice is not None
    lattice = resolve_theta_lattice(config.lattice)
    result = secrecy_gain(lattice, _search_config(config), config.normalisation, _theta_config(config))
    logger.info(f"secrecy gain of {config.lattice} is {result.gain:.10g} at y={result.argmax_y:.8g}")
    return {"lattice": config.lattice, **result.to_dict()}


def _describe_quotient(quotient: QuotientCode) -> Payload:
    payload: Payload = {
        "lattice_b": quotient.lattice_b.name,
        "lattice_e": quotient.lattice_e.name,
        "index": quotient.index,
        "k": quotient.k,
        "d": list(quotient.moduli),
        "rate": rate_per_complex_symbol(quotient),
        "preset": quotient.preset.value,
    }
    if quotient.k <= MAX_CODEBOOK_BITS:
        payload["codebook"] = codebook(quotient)
    return payload


def _run_quotient(config: CliConfig) -> Payload:
    return _describe_quotient(_quotient(config))


def _run_encode(config: CliConfig) -> Payload:
    assert config.bits is not None
    quotient = _quotient(config)
    if config.random is not None:
        r = window_point(quotient, config.random)
    else:
        r = sample_window_point(quotient, _rng(config), config.window)

    x = encode(quotient, config.bits, r)
    return {"bits": config.bits, "r": _floats(r), "x": _floats(x), "label": label_of(quotient, x).bits}


def _run_decode(config: CliConfig) -> Payload:
    assert config.received is not None
    quotient = _quotient(config)
    (bits, point) = decode(quotient, config.received)
    return {"received": config.received, "bits": bits, "point": _floats(point)}


def _run_simulate(config: CliConfig) -> Payload:
    assert config.sigma_b is not None
    quotient = _quotient(config)
    channel = ChannelParams(sigma_b=config.sigma_b, sigma_e=config.sigma_e[0])
    report = simulate(quotient, channel, _simulation_config(config), _theta_config(config))
    ratios = ratio(report)

    logger.info(f"p_correct_bob={report.p_correct_bob:.6g} p_correct_eve={report.p_correct_eve:.6g}")
    return {
        "lattice_b": quotient.lattice_b.name,
        "lattice_e": quotient.lattice_e.name,
        **report.to_dict(),
        "ratio_analytic_stderr": _finite_or_none(ratios.analytic_stderr),
        "ratio_empirical_stderr": _finite_or_none(ratios.empirical_stderr),
        "first_order_theta_sum": first_order_pce(quotient.lattice_e, channel.sigma_e),
    }


def _run_e8_demo(config: CliConfig) -> Payload:
    lattice = make_named(E8_DEMO_LATTICE)
    quotient = build_quotient(lattice, lattice.scaled(2.0), LabelPreset.E8_EXAMPLE)
    code = rm_code()
    rng = _rng(config)

    window = max(config.window, 1)
    bits = config.bits or "".join(str(b) for b in rng.integers(0, 2, size=8))
    code_bits = "".join(str(b) for b in rng.integers(0, 2, size=4))
    z = rng.integers(-window, window, size=8)
    x = e8_example_encoder(bits, code_bits, z, window)
    (decoded_bits, point) = decode(quotient, x)

    gain = secrecy_gain(LatticeName.parse("E8"))
    return {
        **_describe_quotient(quotient),
        "volume_b": lattice.volume,
        "min_distance_b": min_distance(lattice),
        "kissing_number_b": kissing_number(lattice),
        "hermite_parameter_b": hermite_parameter(lattice),
        "code": {
            "length": code.length,
            "dimension": code.dimension,
            "minimum_distance": code.minimum_distance,
            "weight_distribution": {str(w): c for (w, c) in code.weight_distribution().items()},
            "coset_leaders": [[int(b) for b in leader] for leader in code.coset_leaders],
        },
        "secrecy_gain": {"gain": gain.gain, "argmax_y": gain.argmax_y},
        "example": {
            "bits": bits,
            "code_bits": code_bits,
            "z": [int(v) for v in z],
            "x": _floats(x),
            "decoded_bits": decoded_bits,
            "decoded_point": _floats(point),
            "round_trip": decoded_bits == bits,
        },
    }


def sweep(config: CliConfig) -> SecrecySweep | SigmaSweep:
    """
    Run a sweep command and write its artifact.

    ``secrecy-function`` without ``--y`` sweeps a log grid of ``y`` and
    ``simulate`` with several ``--sigma-e`` values sweeps the eavesdropper's noise.

    :param config: the parsed configuration.
    :return: the sweep, rows in grid order.
    :raises DomainError: if the grid is empty.
    """
    if config.command == Command.SECRECY_FUNCTION:
        assert config.lattice is not None
        defaults = SearchConfig()
        grid = log_grid(config.y_min or defaults.y_lo, config.y_max or defaults.y_hi, config.points)
        result: SecrecySweep | SigmaSweep = secrecy_sweep(
            resolve_theta_lattice(config.lattice),
            grid,
            config.normalisation,
            _theta_config(config),
            workers=config.workers,
        )
    else:
        assert config.sigma_b is not None
        result = sigma_sweep(
            _quotient(config),
            config.sigma_b,
            config.sigma_e,
            _simulation_config(config),
            _theta_config(config),
        )

    _write_sweep(result, config)
    return result


def _write_text(text: str, config: CliConfig) -> None:
    if config.out is None:
        sys.stdout.write(text)
    else:
        config.out.write_text(text, encoding="utf-8")


def _write_payload(payload: Payload, config: CliConfig) -> None:
    if config.format == OutputFormat.CSV:
        flat = {key: value for (key, value) in payload.items() if not isinstance(value, (list, dict))}
        _write_text(pd.DataFrame([flat]).to_csv(index=False, float_format="%.15g"), config)
    else:
        _write_text(json.dumps(payload, indent=2) + "\n", config)


def _write_sweep(result: SecrecySweep | SigmaSweep, config: CliConfig) -> None:
    if config.format == OutputFormat.HDF5:
        assert config.out is not None
        write_sweep(result, config.out)
    elif config.format == OutputFormat.CSV:
        _write_text(result.to_dataframe().to_csv(index=False, float_format="%.15g"), config)
    else:
        _write_text(json.dumps(result.to_dataframe().to_dict(orient="records"), indent=2) + "\n", config)


HANDLERS = {
    Command.THETA: _run_theta,
    Command.SECRECY_FUNCTION: _run_secrecy_function,
    Command.SECRECY_GAIN: _run_secrecy_gain,
    Command.QUOTIENT: _run_quotient,
    Command.ENCODE: _run_encode,
    Command.DECODE: _run_decode,
    Command.SIMULATE: _run_simulate,
    Command.E8_DEMO: _run_e8_demo,
}


def _report_error(exc: Exception) -> int:
    exit_code = exc.exit_code if isinstance(exc, WiretapError) else EXIT_INTERNAL
    error = {"error": type(exc).__name__, "message": str(exc), "exit_code": exit_code}
    sys.stderr.write(json.dumps(error) + "\n")
    return exit_code


def run(config: CliConfig) -> int:
    """
    Run one command and write its artifact.

    :param config: the parsed configuration.
    :return: the exit status, 0 on success, 2 for invalid input, 3 when a resource cap was hit
        and 1 for any other failure.
    """
    try:
        if config.is_sweep:
            sweep(config)
        else:
            _write_payload(HANDLERS[config.command](config), config)
    except WiretapError as exc:
        logger.debug("command failed", exc_info=True)
        return _report_error(exc)
    except Exception as exc:
        logger.error(f"{config.command.value} failed unexpectedly", exc_info=True)
        return _report_error(exc)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line interface."""
    try:
        config = parse_config(argv)
    except WiretapError as exc:
        return _report_error(exc)

    logging.basicConfig(
        level=logging.DEBUG if config.verbose else logging.WARNING,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
