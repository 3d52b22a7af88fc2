import logging
import os

import numpy as np
from pydantic import ValidationError

from se2wavelet.exceptions import FormatError
from se2wavelet.routers.plane.plane_model import MIN_PLANE_SIZE, PlaneFunction
from se2wavelet.utils.binary_format import KIND_PLANE, read_pgm, read_se2f, write_se2f

logger: logging.Logger = logging.getLogger("plane")


def pad_image(pixels: np.ndarray) -> np.ndarray:
    """Center an image on an even square grid of side >= MIN_PLANE_SIZE, zero padded"""
    height, width = pixels.shape
    m = max(height, width, MIN_PLANE_SIZE)
    m += m % 2
    canvas = np.zeros((m, m), dtype=float)
    top, left = (m - height) // 2, (m - width) // 2
    canvas[top:top + height, left:left + width] = pixels
    return canvas


class PlaneRepository:
    def save(self, path: str, f: PlaneFunction) -> None:
        write_se2f(path, KIND_PLANE, f.extent, f.values)

    def load(self, path: str) -> PlaneFunction:
        payload = read_se2f(path)
        if payload.kind != KIND_PLANE:
            raise FormatError(f"{path}: expected a plane payload (kind {KIND_PLANE}), got kind {payload.kind}")
        try:
            return PlaneFunction(extent=payload.extent, values=payload.values)
        except ValidationError as e:
            raise FormatError(f"{path}: {e.errors()[0]['msg']}")

    def load_image(self, path: str, extent: float) -> PlaneFunction:
        """
        PGM image as a plane function: pixel rows run along x1, values in [0, 1],
        centered on the grid [-extent, extent)^2.
        """
        pixels = read_pgm(path)
        canvas = pad_image(pixels)
        logger.info(f"Loaded {pixels.shape[1]}x{pixels.shape[0]} image from {path} onto a {canvas.shape[0]}^2 grid")
        return PlaneFunction(extent=extent, values=canvas)

    def load_any(self, path: str, extent: float) -> PlaneFunction:
        """SE2F plane file, or PGM image when the file starts with the P5 magic"""
        if not os.path.isfile(path):
            raise FormatError(f"Input file not found: {path}")
        with open(path, "rb") as f:
            magic = f.read(2)
        if magic == b"P5":
            return self.load_image(path, extent)
        return self.load(path)
