#!/usr/bin/env python3
"""
Command-line front end.

    cv-storage compare --preset worked-example
    cv-storage sweep --config configs/atomic_noise_map.ini --out map.csv --grid 13x13
    cv-storage verify core --seed 1
    cv-storage presets

Exit codes: 0 success, 1 failed verification, 2 invalid input, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import configparser
import json
import logging
import sys
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from cv_storage.analysis import fidelity_criterion, ideal_criterion
from cv_storage.exceptions import ConfigError, CvStorageError
from cv_storage.memory import DEFAULT_CONVENTION, LossNoiseConvention, MemoryCellParams, MemoryChannel, channel_from_cells
from cv_storage.presets import PRESETS, Preset
from cv_storage.reports import (
    format_compare_report,
    format_preset_list,
    format_sweep_summary,
    format_verification_report,
)
from cv_storage.scenarios import InputStateParams, compare
from cv_storage.sweep import CELL_KEYS, OUTPUT_FORMATS, SWEEPABLE, Baseline, SweepAxis, SweepRunner, write_result
from cv_storage.verification import SUITES, VerifySettings, all_hard_checks_passed, run_suite

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INVALID = 2
EXIT_IO = 3

KNOWN_SECTIONS = {
    "input_state": SWEEPABLE["input_state"],
    "cell1": CELL_KEYS,
    "cell2": CELL_KEYS,
    "channel": SWEEPABLE["channel"],
    "sweep": ("axis1", "axis2"),
    "output": ("path", "format"),
    "run": ("seed", "convention"),
}


def configure_logging(verbosity: int = 0) -> None:
    """Log to stderr; -v shows DEBUG, -q only WARNING and above."""
    if verbosity > 0:
        level = logging.DEBUG
    elif verbosity < 0:
        level = logging.WARNING
    else:
        level = logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger("cv_storage").setLevel(level)


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs: physics, sweep axes, output and seed."""

    input_state: InputStateParams = InputStateParams()
    cell1: MemoryCellParams = MemoryCellParams()
    cell2: MemoryCellParams = MemoryCellParams()
    channel_override: Optional[MemoryChannel] = None
    axes: Tuple[SweepAxis, ...] = ()
    output_path: Optional[Path] = None
    output_format: str = "csv"
    seed: int = 0
    convention: LossNoiseConvention = DEFAULT_CONVENTION

    def __post_init__(self):
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"unknown output format {self.output_format!r} (expected csv or json)")
        if self.seed < 0:
            raise ConfigError(f"seed must be non-negative, got {self.seed}")
        if len(self.axes) > 2:
            raise ConfigError(f"at most 2 sweep axes, got {len(self.axes)}")

    def channel(self) -> MemoryChannel:
        if self.channel_override is not None:
            return self.channel_override
        return channel_from_cells(self.cell1, self.cell2, self.convention)

    def baseline(self) -> Baseline:
        return Baseline(
            input_state=self.input_state,
            cell1=self.cell1,
            cell2=self.cell2,
            channel=self.channel_override,
            convention=self.convention,
        )

    def with_grid(self, steps: Sequence[int]) -> "RunConfig":
        """Replace the step counts of the configured axes, in order."""
        if not self.axes:
            raise ConfigError("--grid given but no sweep axes are configured")
        if len(steps) == 1:
            steps = tuple(steps) * len(self.axes)
        if len(steps) != len(self.axes):
            raise ConfigError(f"--grid has {len(steps)} sizes for {len(self.axes)} axes")
        axes = tuple(replace(axis, steps=n) for axis, n in zip(self.axes, steps))
        return replace(self, axes=axes)

    @classmethod
    def from_preset(cls, preset: Preset) -> "RunConfig":
        return cls(
            input_state=preset.input_state,
            cell1=preset.cell1,
            cell2=preset.cell2,
            axes=preset.axes,
            convention=preset.convention,
        )


def _float_section(parser: configparser.ConfigParser, section: str) -> Dict[str, float]:
    values = {}
    for key, raw in parser.items(section):
        try:
            values[key] = float(raw)
        except ValueError:
            raise ConfigError(f"[{section}] {key} = {raw!r} is not a number") from None
    return values


def load_config(path) -> RunConfig:
    """
    Read an INI run configuration.

    Sections: [input_state], [cell1], [cell2], optional [channel], [sweep]
    (axis1, axis2), [output] (path, format) and [run] (seed, convention).
    Missing sections keep their defaults.

    Raises:
        ConfigError: On unreadable syntax, unknown sections/keys or bad values
        OSError: If the file cannot be read
    """
    path = Path(path)
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with path.open(encoding="utf-8") as handle:
            parser.read_file(handle)
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from None

    for section in parser.sections():
        if section not in KNOWN_SECTIONS:
            raise ConfigError(f"{path}: unknown section [{section}]")
        unknown = set(parser.options(section)) - set(KNOWN_SECTIONS[section])
        if unknown:
            raise ConfigError(f"{path}: unknown key(s) in [{section}]: {', '.join(sorted(unknown))}")

    config = RunConfig()
    if parser.has_section("input_state"):
        config = replace(config, input_state=InputStateParams(**_float_section(parser, "input_state")))
    for name in ("cell1", "cell2"):
        if parser.has_section(name):
            config = replace(config, **{name: MemoryCellParams(**_float_section(parser, name))})
    if parser.has_section("channel"):
        config = replace(config, channel_override=MemoryChannel(**_float_section(parser, "channel")))
    if parser.has_section("sweep"):
        axes = tuple(
            SweepAxis.parse(parser.get("sweep", key)) for key in ("axis1", "axis2") if parser.has_option("sweep", key)
        )
        config = replace(config, axes=axes)
    if parser.has_section("output"):
        out = parser["output"]
        config = replace(
            config,
            output_path=Path(out["path"]) if "path" in out else None,
            output_format=out.get("format", config.output_format).strip().lower(),
        )
    if parser.has_section("run"):
        run = parser["run"]
        try:
            seed = int(run.get("seed", str(config.seed)))
        except ValueError:
            raise ConfigError(f"{path}: [run] seed must be an integer") from None
        config = replace(config, seed=seed, convention=LossNoiseConvention.parse(run.get("convention", config.convention.value)))
    logger.debug("loaded %s: %s", path, config)
    return config


def parse_grid(text: str) -> Tuple[int, ...]:
    """'25' or '25x13' -> step counts."""
    try:
        steps = tuple(int(part) for part in text.lower().split("x"))
    except ValueError:
        raise ConfigError(f"--grid must look like N or NxM, got {text!r}") from None
    if not 1 <= len(steps) <= 2 or min(steps) < 2:
        raise ConfigError(f"--grid needs one or two sizes of at least 2, got {text!r}")
    return steps


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Base from --preset or --config, then command-line overrides."""
    if args.preset:
        if args.preset not in PRESETS:
            raise ConfigError(f"unknown preset {args.preset!r} (see 'cv-storage presets')")
        config = RunConfig.from_preset(PRESETS[args.preset])
    elif args.config:
        config = load_config(args.config)
    else:
        config = RunConfig()

    overrides = {}
    if args.out is not None:
        overrides["output_path"] = Path(args.out)
    if args.format is not None:
        overrides["output_format"] = args.format
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.convention is not None:
        overrides["convention"] = LossNoiseConvention.parse(args.convention)
    config = replace(config, **overrides)
    if getattr(args, "grid", None):
        config = config.with_grid(parse_grid(args.grid))
    return config


def compare_payload(config: RunConfig) -> Tuple[str, dict]:
    params, channel = config.input_state, config.channel()
    pair = compare(params, channel)
    verdicts = {
        "negativity": ideal_criterion(params, channel),
        "fidelity": fidelity_criterion(params, channel),
    }
    report = format_compare_report(params, channel, pair, verdicts, config.convention)
    payload = {
        "input_state": asdict(params),
        "channel": asdict(channel),
        "convention": config.convention.value,
        "a": asdict(pair.metrics_a),
        "b": asdict(pair.metrics_b),
        "delta_e_n": pair.delta_logneg,
        "delta_f_bar": pair.delta_fidelity,
        "criteria": {name: asdict(v) for name, v in verdicts.items()},
        "channel_physical": pair.channel_physical,
        "state_a_physical": pair.state_a_physical,
        "state_b_physical": pair.state_b_physical,
    }
    return report, payload


def cmd_compare(config: RunConfig) -> int:
    if config.axes:
        logger.warning("compare evaluates the baseline only; %d sweep axis/axes ignored", len(config.axes))
    report, payload = compare_payload(config)
    print(report)
    if config.output_path is not None:
        with config.output_path.open("w", encoding="utf-8", newline="\n") as handle:
            json.dump(payload, handle, indent=2)
            handle.write("\n")
        logger.info("wrote comparison to %s", config.output_path)
    return EXIT_OK


def cmd_sweep(config: RunConfig, jobs: int = 1) -> int:
    if not config.axes:
        raise ConfigError("sweep needs 1 or 2 axes ([sweep] axis1/axis2 or a preset)")
    path = config.output_path or Path(f"sweep.{config.output_format}")
    result = SweepRunner(config.baseline(), jobs=jobs).run(config.axes)
    write_result(result, path, config.output_format)
    print(format_sweep_summary(result))
    print(f"records written to {path}")
    return EXIT_OK


def cmd_verify(suite: str, settings: VerifySettings) -> int:
    results = run_suite(suite, settings)
    print(format_verification_report(results))
    return EXIT_OK if all_hard_checks_passed(results) else EXIT_VERIFICATION_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="debug logging")
    common.add_argument("-q", "--quiet", action="count", default=0, help="warnings only")
    common.add_argument("--seed", type=int, default=None, help="random seed (default 0)")
    common.add_argument("--jobs", type=int, default=1, help="joblib worker count")

    run = argparse.ArgumentParser(add_help=False)
    source = run.add_mutually_exclusive_group()
    source.add_argument("--config", help="INI run configuration")
    source.add_argument("--preset", help="named parameter set (see 'presets')")
    run.add_argument("--out", help="output file")
    run.add_argument("--format", choices=OUTPUT_FORMATS, default=None, help="sweep output format")
    run.add_argument(
        "--convention",
        default=None,
        help="loss-noise convention: literal (default), attenuation or input-referred",
    )

    parser = argparse.ArgumentParser(
        prog="cv-storage",
        description="Compare storing squeezing with storing entanglement in noisy Gaussian memories",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("compare", parents=[common, run], help="evaluate both strategies once")
    sweep = commands.add_parser("sweep", parents=[common, run], help="evaluate over a 1-D or 2-D grid")
    sweep.add_argument("--grid", help="steps per axis, N or NxM (default 25)")
    verify = commands.add_parser("verify", parents=[common], help="run property suites")
    verify.add_argument("suite", nargs="?", default="all", choices=SUITES + ("all",))
    verify.add_argument("--samples", type=int, default=None, help="override every Monte-Carlo sample count")
    commands.add_parser("presets", parents=[common], help="list the named parameter sets")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose - args.quiet)

    try:
        if args.command == "presets":
            print(format_preset_list(PRESETS.values()))
            return EXIT_OK
        if args.command == "verify":
            if args.samples is not None and args.samples < 1:
                raise ConfigError(f"--samples must be positive, got {args.samples}")
            settings = VerifySettings(seed=args.seed or 0, samples=args.samples, jobs=args.jobs)
            return cmd_verify(args.suite, settings)

        config = resolve_config(args)
        if args.command == "compare":
            return cmd_compare(config)
        return cmd_sweep(config, jobs=args.jobs)
    except CvStorageError as exc:
        logger.debug("invalid input", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
