#!/usr/bin/env python
"""
Runs the se2wavelet test suite through pytest with marker presets.

    python run_tests.py --unit --fast
    python run_tests.py --cli -vv
"""

import argparse
import subprocess
import sys
from typing import List

MARKER_FLAGS = ("unit", "integration", "cli")


def parse_args(argv=None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Run the se2wavelet tests")
    parser.add_argument("--unit", action="store_true", help="Only tests marked unit")
    parser.add_argument("--integration", action="store_true", help="Only tests marked integration")
    parser.add_argument("--cli", action="store_true", help="Only command-line tests")
    parser.add_argument("--fast", action="store_true", help="Leave out tests marked slow")
    parser.add_argument("--cov", action="store_true", help="Coverage report for the se2wavelet package")
    parser.add_argument("--file", help="Single test file or node id")
    parser.add_argument("--verbose", "-v", action="count", default=1, help="pytest verbosity (repeat for more)")
    return parser.parse_args(argv)


def marker_expression(args: argparse.Namespace) -> str:
    selected = " or ".join(flag for flag in MARKER_FLAGS if getattr(args, flag))
    if not args.fast:
        return selected
    return f"({selected}) and not slow" if selected else "not slow"


def build_command(args: argparse.Namespace) -> List[str]:
    cmd = ["pytest", "-" + "v" * args.verbose]

    expression = marker_expression(args)
    if expression:
        cmd += ["-m", expression]
    if args.cov:
        cmd += ["--cov=se2wavelet", "--cov-report=term-missing", "--cov-report=html"]
    if args.file:
        cmd.append(args.file)
    return cmd


if __name__ == "__main__":
    command = build_command(parse_args())
    print(f"🧪 {' '.join(command)}")
    sys.exit(subprocess.run(command).returncode)
