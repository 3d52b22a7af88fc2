import argparse
import logging

from se2wavelet.dependencies.args import (DEFAULT_EXTENT, add_omega, add_samples, positive_float, positive_int,
                                          resolve_samples, write_text)
from se2wavelet.exceptions import EXIT_OK
from se2wavelet.routers.irrep.irrep_model import IrrepParams
from se2wavelet.routers.plane.plane_repository import PlaneRepository
from se2wavelet.routers.plane.plane_service import PlaneService, relative_l2_error
from se2wavelet.utils.advanced_performance import tracker
from se2wavelet.utils.csv_processor import circle_csv_text
from se2wavelet.utils.serializers import dumps

logger: logging.Logger = logging.getLogger("cli")

plane_service = PlaneService()
plane_repository = PlaneRepository()


def _add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, metavar="FILE", help="SE2F plane file or binary PGM (P5) image")
    parser.add_argument("--extent", type=positive_float, default=DEFAULT_EXTENT,
                        help=f"Half-width L used for PGM inputs (default {DEFAULT_EXTENT})")


def register(subparsers: argparse._SubParsersAction) -> None:
    project = subparsers.add_parser("project", help="Ring density of a plane function at one frequency radius")
    add_omega(project)
    _add_input(project)
    add_samples(project)
    project.add_argument("-o", "--output", default=None, metavar="FILE", help="Ring CSV (default stdout)")
    project.add_argument("--render", default=None, metavar="FILE", help="Also write P_Omega f as an SE2F plane")
    project.set_defaults(handler=cmd_project)

    reconstruct = subparsers.add_parser("reconstruct", help="Direct-integral reconstruction of a plane function")
    _add_input(reconstruct)
    reconstruct.add_argument("--omega-max", dest="omega_max", type=positive_float, default=8.0,
                             help="Upper frequency radius (default 8)")
    reconstruct.add_argument("--nodes", type=positive_int, default=48, help="Gauss-Legendre nodes (default 48)")
    add_samples(reconstruct)
    reconstruct.add_argument("-o", "--output", default=None, metavar="FILE", help="Write the result as an SE2F plane")
    reconstruct.set_defaults(handler=cmd_reconstruct)


@tracker.measure_time
def cmd_project(args: argparse.Namespace) -> int:
    """
    🔵 Project onto a ring

    Emits the density of f-hat on |k| = Omega as phi,re,im CSV.
    """
    p = IrrepParams(omega=args.omega)
    f = plane_repository.load_any(args.input, args.extent)
    ring = plane_service.ring_restrict(f, p, resolve_samples(args))

    if args.render:
        plane_repository.save(args.render, plane_service.render(ring, f.m, f.extent))
        logger.info(f"💾 Wrote P_Omega f to {args.render}")

    write_text(args.output, circle_csv_text(ring.density.values))
    return EXIT_OK


@tracker.measure_time
def cmd_reconstruct(args: argparse.Namespace) -> int:
    """
    🔁 Reconstruct from rings

    Prints a JSON record with the relative L2 error of the reconstruction against the input.
    """
    f = plane_repository.load_any(args.input, args.extent)
    approx = plane_service.reconstruct(f, args.omega_max, args.nodes, resolve_samples(args))
    error = relative_l2_error(approx, f)
    logger.info(f"Relative L2 error {error:.3e} with {args.nodes} nodes up to omega={args.omega_max}")

    if args.output:
        plane_repository.save(args.output, approx)
    write_text(None, dumps({
        "input": args.input,
        "omega_max": args.omega_max,
        "nodes": args.nodes,
        "relative_l2_error": error,
    }))
    return EXIT_OK
