"""
Binary grid formats: SE2F (plane and field samples) and binary PGM (P5) images.

SE2F layout, little-endian:
    magic "SE2F" | version u16 | payload kind u16 | m u32 | n_theta u32 | extent f64
    then the samples row-major as interleaved (re, im) f64 pairs.
Field files (kind 2) continue with omega f64, a block count u32 and, per block,
a sample count u32 followed by that many (phi, re, im) f64 rows.
"""
import logging
import os
import re
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from se2wavelet.exceptions import FormatError

logger: logging.Logger = logging.getLogger("plane")

SE2F_MAGIC = b"SE2F"
SE2F_VERSION = 1
KIND_PLANE = 1
KIND_FIELD = 2

HEADER_DTYPE = np.dtype([
    ("magic", "S4"),
    ("version", "<u2"),
    ("kind", "<u2"),
    ("m", "<u4"),
    ("n_theta", "<u4"),
    ("extent", "<f8"),
])
SAMPLE_DTYPE = np.dtype("<c16")
BLOCK_ROW_DTYPE = np.dtype([("phi", "<f8"), ("re", "<f8"), ("im", "<f8")])

_PGM_TOKEN = re.compile(rb"(?:\s|#[^\n]*\n?)*([^\s#]+)")


class SE2FPayload(BaseModel):
    """Decoded contents of an SE2F file"""
    kind: int
    m: int
    n_theta: int
    extent: float
    values: np.ndarray
    omega: Optional[float] = None
    blocks: List[np.ndarray] = []

    class Config:
        arbitrary_types_allowed = True


def _ensure_dir(path: str) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)


def encode_se2f(kind: int, extent: float, values: np.ndarray, omega: Optional[float] = None,
                blocks: Optional[List[np.ndarray]] = None) -> bytes:
    """Serialize samples (m x m for planes, m x m x n_theta for fields) with optional trailer"""
    m = values.shape[0]
    n_theta = values.shape[2] if kind == KIND_FIELD else 0
    header = np.zeros(1, dtype=HEADER_DTYPE)
    header[0] = (SE2F_MAGIC, SE2F_VERSION, kind, m, n_theta, extent)
    parts = [header.tobytes(), np.ascontiguousarray(values, dtype=SAMPLE_DTYPE).tobytes()]

    if kind == KIND_FIELD:
        blocks = blocks or []
        parts.append(np.array([omega], dtype="<f8").tobytes())
        parts.append(np.array([len(blocks)], dtype="<u4").tobytes())
        for block in blocks:
            n = block.shape[0]
            rows = np.zeros(n, dtype=BLOCK_ROW_DTYPE)
            rows["phi"] = 2.0 * np.pi * np.arange(n) / n
            rows["re"] = np.real(block)
            rows["im"] = np.imag(block)
            parts.append(np.array([n], dtype="<u4").tobytes())
            parts.append(rows.tobytes())
    return b"".join(parts)


def decode_se2f(data: bytes, source: str = "<bytes>") -> SE2FPayload:
    """
    Parse SE2F bytes.

    Raises:
        FormatError: bad magic/version/kind, truncated payload or trailing garbage
    """
    if len(data) < HEADER_DTYPE.itemsize:
        raise FormatError(f"{source}: file too short for an SE2F header")
    header = np.frombuffer(data, dtype=HEADER_DTYPE, count=1)[0]
    if bytes(header["magic"]) != SE2F_MAGIC:
        raise FormatError(f"{source}: bad magic {bytes(header['magic'])!r}, expected {SE2F_MAGIC!r}")
    if int(header["version"]) != SE2F_VERSION:
        raise FormatError(f"{source}: unsupported SE2F version {int(header['version'])}")
    kind = int(header["kind"])
    m, n_theta, extent = int(header["m"]), int(header["n_theta"]), float(header["extent"])
    if kind == KIND_PLANE:
        if n_theta != 0:
            raise FormatError(f"{source}: plane payload must have n_theta = 0, got {n_theta}")
        shape: Tuple[int, ...] = (m, m)
    elif kind == KIND_FIELD:
        if n_theta == 0:
            raise FormatError(f"{source}: field payload needs n_theta > 0")
        shape = (m, m, n_theta)
    else:
        raise FormatError(f"{source}: unknown payload kind {kind}")

    offset = HEADER_DTYPE.itemsize
    count = int(np.prod(shape))
    end = offset + count * SAMPLE_DTYPE.itemsize
    if len(data) < end:
        raise FormatError(f"{source}: truncated sample payload ({len(data)} bytes, need {end})")
    values = np.frombuffer(data, dtype=SAMPLE_DTYPE, count=count, offset=offset).reshape(shape).astype(complex)
    offset = end

    omega: Optional[float] = None
    blocks: List[np.ndarray] = []
    if kind == KIND_FIELD:
        try:
            omega = float(np.frombuffer(data, dtype="<f8", count=1, offset=offset)[0])
            n_blocks = int(np.frombuffer(data, dtype="<u4", count=1, offset=offset + 8)[0])
            offset += 12
            for _ in range(n_blocks):
                n = int(np.frombuffer(data, dtype="<u4", count=1, offset=offset)[0])
                offset += 4
                rows = np.frombuffer(data, dtype=BLOCK_ROW_DTYPE, count=n, offset=offset)
                offset += n * BLOCK_ROW_DTYPE.itemsize
                blocks.append(rows["re"] + 1j * rows["im"])
        except ValueError as e:
            raise FormatError(f"{source}: truncated field trailer: {str(e)}")
    if offset != len(data):
        raise FormatError(f"{source}: {len(data) - offset} unexpected trailing bytes")

    return SE2FPayload(kind=kind, m=m, n_theta=n_theta, extent=extent, values=values,
                       omega=omega, blocks=blocks)


def write_se2f(path: str, kind: int, extent: float, values: np.ndarray, omega: Optional[float] = None,
               blocks: Optional[List[np.ndarray]] = None) -> None:
    _ensure_dir(path)
    with open(path, "wb") as f:
        f.write(encode_se2f(kind, extent, values, omega, blocks))
    logger.debug(f"Wrote SE2F kind={kind} {values.shape} to {path}")


def read_se2f(path: str) -> SE2FPayload:
    if not os.path.exists(path):
        raise FormatError(f"Input file not found: {path}")
    with open(path, "rb") as f:
        return decode_se2f(f.read(), source=path)


def decode_pgm(data: bytes, source: str = "<bytes>") -> np.ndarray:
    """
    Parse a binary PGM (P5) image into an array of reals in [0, 1].

    Raises:
        FormatError: not P5, malformed header or truncated raster
    """
    tokens: List[bytes] = []
    offset = 0
    while len(tokens) < 4:
        match = _PGM_TOKEN.match(data, offset)
        if match is None:
            raise FormatError(f"{source}: malformed PGM header")
        tokens.append(match.group(1))
        offset = match.end()
    if tokens[0] != b"P5":
        raise FormatError(f"{source}: only binary PGM (P5) is supported, got {tokens[0]!r}")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise FormatError(f"{source}: non-numeric PGM header field")
    if width <= 0 or height <= 0 or not 0 < maxval < 65536:
        raise FormatError(f"{source}: invalid PGM geometry {width}x{height}, maxval {maxval}")
    # exactly one whitespace byte separates the header from the raster
    offset += 1

    dtype = np.dtype("u1") if maxval < 256 else np.dtype(">u2")
    count = width * height
    if len(data) < offset + count * dtype.itemsize:
        raise FormatError(f"{source}: truncated PGM raster")
    raster = np.frombuffer(data, dtype=dtype, count=count, offset=offset).reshape(height, width)
    return raster.astype(float) / maxval


def encode_pgm(pixels: np.ndarray, maxval: int = 255) -> bytes:
    """Binary PGM from an array of reals in [0, 1]"""
    height, width = pixels.shape
    dtype = np.dtype("u1") if maxval < 256 else np.dtype(">u2")
    raster = np.clip(np.rint(np.asarray(pixels, dtype=float) * maxval), 0, maxval).astype(dtype)
    return f"P5\n{width} {height}\n{maxval}\n".encode("ascii") + raster.tobytes()


def read_pgm(path: str) -> np.ndarray:
    if not os.path.exists(path):
        raise FormatError(f"Input file not found: {path}")
    with open(path, "rb") as f:
        return decode_pgm(f.read(), source=path)


def write_pgm(path: str, pixels: np.ndarray, maxval: int = 255) -> None:
    _ensure_dir(path)
    with open(path, "wb") as f:
        f.write(encode_pgm(pixels, maxval))
