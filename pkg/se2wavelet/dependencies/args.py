import argparse
import logging
import math
import os
import sys
from typing import Optional

from se2wavelet.config import get_settings
from se2wavelet.exceptions import ParameterCapError
from se2wavelet.routers.wavelet.wavelet_model import GridSpec

logger: logging.Logger = logging.getLogger("cli")

DEFAULT_GRID = "64x64x32"
DEFAULT_EXTENT = 8.0


def positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got '{text}'")
    if not math.isfinite(value) or value <= 0.0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got '{text}'")
    return value


def non_negative_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got '{text}'")
    if not math.isfinite(value) or value < 0.0:
        raise argparse.ArgumentTypeError(f"expected a non-negative number, got '{text}'")
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got '{text}'")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got '{text}'")
    return value


def add_omega(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--omega", type=positive_float, required=required, help="Frequency radius Omega > 0")


def add_samples(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--samples", type=positive_int, default=None,
                        help="Circle grid size n (default CIRCLE_SAMPLES)")


def add_grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--grid", default=DEFAULT_GRID, help=f"Field grid MxMxT (default {DEFAULT_GRID})")
    parser.add_argument("--extent", type=positive_float, default=DEFAULT_EXTENT,
                        help=f"Spatial half-width L (default {DEFAULT_EXTENT})")


def resolve_samples(args: argparse.Namespace) -> int:
    return args.samples if getattr(args, "samples", None) else get_settings().CIRCLE_SAMPLES


def resolve_grid(args: argparse.Namespace) -> GridSpec:
    """
    Grid from --grid/--extent.

    Raises:
        FormatError: malformed grid text
        ParameterCapError: more samples than MAX_GRID_POINTS
    """
    grid = GridSpec.parse(args.grid, args.extent)
    points = grid.m * grid.m * grid.n_theta
    cap = get_settings().MAX_GRID_POINTS
    if points > cap:
        raise ParameterCapError(f"Grid {args.grid} has {points} samples, above MAX_GRID_POINTS = {cap}")
    return grid


def write_text(path: Optional[str], text: str) -> None:
    """Write to a file, or to stdout when no path is given"""
    if not path or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info(f"💾 Wrote {path}")
