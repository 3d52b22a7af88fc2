import argparse
import logging
import os
from typing import Dict, Optional

from se2wavelet.config import get_settings
from se2wavelet.dependencies.args import positive_float, positive_int, write_text
from se2wavelet.exceptions import EXIT_OK, EXIT_VERIFICATION_FAILED
from se2wavelet.routers.verify.verify_model import SUITES, SuiteResult, VerifyOptions
from se2wavelet.routers.verify.verify_service import VerifyService
from se2wavelet.utils.advanced_performance import tracker
from se2wavelet.utils.csv_processor import write_table_csv
from se2wavelet.utils.serializers import dumps, list_serial

logger: logging.Logger = logging.getLogger("cli")

verify_service = VerifyService()


def register(subparsers: argparse._SubParsersAction) -> None:
    verify = subparsers.add_parser("verify", help="Run seeded numerical checks and emit a JSON report")
    verify.add_argument("suite", choices=SUITES + ["all"], help="Suite to run")
    verify.add_argument("--seed", type=int, default=1, help="Generator seed (default 1)")
    verify.add_argument("--omega", type=positive_float, default=2.0, help="Frequency radius (default 2)")
    verify.add_argument("--sigma", type=positive_float, default=1.0, help="Bargmann Gaussian width (default 1)")
    verify.add_argument("--samples", type=positive_int, default=256, help="Circle grid size (default 256)")
    verify.add_argument("--n-theta", dest="n_theta", type=positive_int, default=64,
                        help="Angular field samples (default 64)")
    verify.add_argument("--report", default=None, metavar="FILE", help="Report file (default stdout)")
    verify.add_argument("--tables-dir", dest="tables_dir", default=None, metavar="DIR",
                        help="Directory for the CSV tables (default: next to --report)")
    verify.add_argument("--timings", action="store_true", help="Record wall-clock runtime_ms in the report")
    verify.set_defaults(handler=cmd_verify)


def table_paths(result: SuiteResult, report: Optional[str] = None,
                tables_dir: Optional[str] = None) -> Dict[str, str]:
    """<stem>_<table>.csv next to the report, or in tables_dir"""
    if report is None and tables_dir is None:
        return {}
    stem = os.path.splitext(os.path.basename(report))[0] if report else "verify"
    directory = tables_dir if tables_dir is not None else os.path.dirname(report)
    return {name: os.path.join(directory, f"{stem}_{name}.csv") for name in sorted(result.tables)}


@tracker.measure_time
def cmd_verify(args: argparse.Namespace) -> int:
    """
    🧪 Verify

    Exit code 0 only when every check passed, 1 otherwise.
    """
    options = VerifyOptions(
        seed=args.seed,
        omega=args.omega,
        sigma=args.sigma,
        n_samples=args.samples,
        n_theta=args.n_theta,
        timings=args.timings or get_settings().REPORT_TIMINGS,
    )
    result = verify_service.run(args.suite, options)

    write_text(args.report, dumps(list_serial(result.reports)))
    paths = table_paths(result, args.report, args.tables_dir)
    for name, path in paths.items():
        if os.path.dirname(path):
            os.makedirs(os.path.dirname(path), exist_ok=True)
        write_table_csv(path, result.tables[name])
        logger.info(f"💾 Wrote table '{name}' to {path}")

    failed = [r.check_name for r in result.reports if not r.passed]
    if failed:
        logger.warning(f"❌ {len(failed)} of {len(result.reports)} checks failed: {', '.join(failed)}")
        return EXIT_VERIFICATION_FAILED
    logger.info(f"✅ All {len(result.reports)} checks passed")
    return EXIT_OK
