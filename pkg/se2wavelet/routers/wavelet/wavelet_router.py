import argparse
import logging

from se2wavelet.dependencies.args import (DEFAULT_EXTENT, add_grid, add_omega, add_samples, non_negative_float,
                                          positive_float, resolve_grid, resolve_samples)
from se2wavelet.exceptions import EXIT_OK
from se2wavelet.routers.circle.circle_repository import CircleRepository
from se2wavelet.routers.irrep.irrep_model import IrrepParams
from se2wavelet.routers.plane.plane_repository import PlaneRepository
from se2wavelet.routers.plane.plane_service import PlaneService
from se2wavelet.routers.wavelet.wavelet_repository import WaveletRepository
from se2wavelet.routers.wavelet.wavelet_service import WaveletService
from se2wavelet.utils.advanced_performance import tracker

logger: logging.Logger = logging.getLogger("cli")

wavelet_service = WaveletService()
plane_service = PlaneService()
circle_repository = CircleRepository()
plane_repository = PlaneRepository()
wavelet_repository = WaveletRepository()


def register(subparsers: argparse._SubParsersAction) -> None:
    transform = subparsers.add_parser("transform", help="Analyze a circle function into an SE(2) field")
    add_omega(transform)
    transform.add_argument("--phi", required=True, metavar="FILE", help="Input circle function (phi,re,im CSV)")
    source = transform.add_mutually_exclusive_group(required=True)
    source.add_argument("--lambda", dest="lam", type=non_negative_float,
                        help="Use the minimal uncertainty wavelet with this lambda")
    source.add_argument("--wavelet", metavar="FILE", help="Mother wavelet u0 (phi,re,im CSV)")
    add_grid(transform)
    transform.add_argument("-o", "--output", required=True, metavar="FILE", help="Output SE2F field file")
    transform.set_defaults(handler=cmd_transform)

    lift = subparsers.add_parser("lift", help="Lift a PGM image to its SE(2)-Bargmann field")
    add_omega(lift)
    lift.add_argument("--input", required=True, metavar="FILE", help="Binary PGM (P5) image or SE2F plane")
    lift.add_argument("--lambda", dest="lam", type=non_negative_float, default=1.0,
                      help="Minimal wavelet lambda (default 1.0)")
    lift.add_argument("--grid", default=None, help="Field grid MxMxT (default: image size x 32)")
    lift.add_argument("--extent", type=positive_float, default=DEFAULT_EXTENT,
                      help=f"Half-width L of the image square (default {DEFAULT_EXTENT})")
    add_samples(lift)
    lift.add_argument("-o", "--output", required=True, metavar="FILE", help="Output SE2F field file")
    lift.set_defaults(handler=cmd_lift)


@tracker.measure_time
def cmd_transform(args: argparse.Namespace) -> int:
    """
    🌀 Transform a circle function

    Writes A^Omega Phi on the requested grid. With --lambda the mother wavelet is the
    minimal uncertainty state u^{lambda, Omega}; with --wavelet it is read from CSV and
    must have unit norm.
    """
    grid = resolve_grid(args)
    p = IrrepParams(omega=args.omega)
    phi = circle_repository.load(args.phi)

    if args.wavelet:
        u0 = circle_repository.load(args.wavelet)
        wavelet_service.check_normalized(u0)
        F = wavelet_service.analyze(p, u0, phi, grid)
    else:
        F = wavelet_service.bargmann_se2(args.lam, p, phi, grid)

    wavelet_repository.save(args.output, F)
    logger.info(f"✅ Wrote {grid.m}x{grid.m}x{grid.n_theta} field at omega={args.omega} to {args.output}")
    return EXIT_OK


@tracker.measure_time
def cmd_lift(args: argparse.Namespace) -> int:
    """
    🖼️ Lift an image

    The image is centered on an even square grid, its ring density at Omega becomes Phi,
    and Phi is transformed with the minimal uncertainty wavelet.
    """
    p = IrrepParams(omega=args.omega)
    image = plane_repository.load_any(args.input, args.extent)
    if args.grid is None:
        args.grid = f"{image.m}x{image.m}x32"
    grid = resolve_grid(args)

    ring = plane_service.ring_restrict(image, p, resolve_samples(args))
    F = wavelet_service.bargmann_se2(args.lam, p, ring.density, grid)

    wavelet_repository.save(args.output, F)
    logger.info(f"✅ Lifted {args.input} to {args.output}")
    return EXIT_OK
