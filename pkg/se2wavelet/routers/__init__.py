import argparse

from se2wavelet.routers.plane.plane_router import register as register_plane
from se2wavelet.routers.verify.verify_router import register as register_verify
from se2wavelet.routers.wavelet.wavelet_router import register as register_wavelet


def include_routers(subparsers: argparse._SubParsersAction) -> None:
    """Attach every command to the main parser"""
    register_wavelet(subparsers)
    register_plane(subparsers)
    register_verify(subparsers)
