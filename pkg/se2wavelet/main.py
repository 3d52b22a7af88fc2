import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from se2wavelet import __version__
from se2wavelet.config import Settings, get_settings
from se2wavelet.exceptions import EXIT_USAGE, SE2Exception
from se2wavelet.logging.logging_config import (LOGGER_PRESETS, configure_from_settings, setup_specific_logging,
                                               use_preset)
from se2wavelet.routers import include_routers
from se2wavelet.utils.advanced_performance import tracker
from se2wavelet.workers.grid_worker import shutdown_pools

logger: logging.Logger = logging.getLogger("cli")


def build_parser() -> argparse.ArgumentParser:
    settings: Settings = get_settings()
    parser = argparse.ArgumentParser(
        prog="se2wavelet",
        description=f"{settings.APP_NAME}: SE(2) wavelet transforms, ring projections and numerical checks",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--logs", default=None,
                        help=f"Comma separated loggers, or a preset ({', '.join(LOGGER_PRESETS)})")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug level logging")

    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    include_routers(subparsers)
    return parser


def configure_logging(settings: Settings, logs: Optional[str], verbose: bool) -> List[str]:
    """--logs overrides LOG_ONLY/LOG_PRESET; a preset name is accepted as well as a list"""
    level = logging.DEBUG if verbose else logging.INFO
    if logs:
        if logs in LOGGER_PRESETS:
            return use_preset(logs, level=level)
        return setup_specific_logging([name.strip() for name in logs.split(",") if name.strip()], level=level)
    return configure_from_settings(settings.LOG_ONLY, settings.LOG_PRESET, level=level)


def main(argv: Optional[List[str]] = None) -> int:
    settings: Settings = get_settings()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help/--version
        return int(e.code or 0)

    configure_logging(settings, args.logs, args.verbose)
    logger.debug(f"🔧 {settings.APP_NAME} ({settings.APP_ENV}), {settings.worker_count} worker(s)")

    try:
        return args.handler(args)
    except SE2Exception as e:
        logger.error(f"❌ {type(e).__name__}: {e.detail}")
        print(f"error: {e.detail}", file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        print(f"error: invalid input: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        shutdown_pools()
        if settings.PERFORMANCE_LOG:
            try:
                tracker.export_to_json(settings.PERFORMANCE_LOG)
            except OSError as e:
                logger.warning(f"Error exporting performance data: {e}")


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
