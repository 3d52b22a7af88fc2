import math
import re
from typing import Optional

import numpy as np
from pydantic import BaseModel, root_validator, validator

from se2wavelet.exceptions import FormatError, GridIncompatibilityError
from se2wavelet.routers.circle.circle_model import CircleFunction, TWO_PI
from se2wavelet.routers.plane.plane_model import MIN_PLANE_SIZE, plane_axis

MIN_THETA_SAMPLES = 8

_GRID_PATTERN = re.compile(r"^\s*(\d+)\s*[xX]\s*(\d+)\s*[xX]\s*(\d+)\s*$")


def theta_grid(n_theta: int) -> np.ndarray:
    return TWO_PI * np.arange(n_theta) / n_theta


class GridSpec(BaseModel):
    """Sampling of SE(2): an m x m spatial grid on [-extent, extent)^2 times n_theta angles"""
    m: int
    extent: float
    n_theta: int

    class Config:
        allow_mutation = False

    @validator("m")
    def validate_m(cls, v):
        if v < MIN_PLANE_SIZE:
            raise ValueError(f"m must be >= {MIN_PLANE_SIZE}, got {v}")
        return v

    @validator("extent")
    def validate_extent(cls, v):
        if not math.isfinite(v) or v <= 0.0:
            raise ValueError(f"extent must be a finite positive number, got {v}")
        return float(v)

    @validator("n_theta")
    def validate_n_theta(cls, v):
        if v < MIN_THETA_SAMPLES or v % 2 != 0:
            raise ValueError(f"n_theta must be even and >= {MIN_THETA_SAMPLES}, got {v}")
        return v

    @property
    def spacing(self) -> float:
        return 2.0 * self.extent / self.m

    @property
    def axis(self) -> np.ndarray:
        return plane_axis(self.m, self.extent)

    @property
    def theta(self) -> np.ndarray:
        return theta_grid(self.n_theta)

    @classmethod
    def parse(cls, text: str, extent: float) -> "GridSpec":
        """Parse 'MxMxT' (the two spatial sizes must agree)"""
        match = _GRID_PATTERN.match(text)
        if match is None:
            raise FormatError(f"Grid must be 'MxMxT', got '{text}'")
        m1, m2, n_theta = (int(g) for g in match.groups())
        if m1 != m2:
            raise FormatError(f"Spatial grid must be square, got {m1}x{m2}")
        return cls(m=m1, extent=extent, n_theta=n_theta)


def check_theta_alignment(n_samples: int, n_theta: int) -> int:
    """Circle samples per theta step; n_theta must divide the circle grid size"""
    if n_samples % n_theta != 0:
        raise GridIncompatibilityError(
            f"n_theta = {n_theta} must divide the circle grid size {n_samples}"
        )
    return n_samples // n_theta


def ring_densities_from_provenance(u0: CircleFunction, phi: CircleFunction, n_theta: int) -> np.ndarray:
    """
    Ring density of every theta slice of the analysis field: d_l(phi) = conj(u0(phi - theta_l)) Phi(phi).
    Shape (n_theta, n_samples); rotations are exact index shifts.
    """
    if u0.n_samples != phi.n_samples:
        raise GridIncompatibilityError(
            f"Wavelet and signal grids differ: {u0.n_samples} vs {phi.n_samples} samples"
        )
    step = check_theta_alignment(u0.n_samples, n_theta)
    conj_u0 = np.conj(u0.values)
    shifted = np.stack([np.roll(conj_u0, l * step) for l in range(n_theta)])
    return shifted * phi.values[None, :]


class WaveletField(BaseModel):
    """
    A function F(q, theta) on SE(2) at frequency omega.

    The ring densities (one circle function per theta slice) determine the field;
    values are an optional m x m x n_theta rendering on the spatial grid.
    """
    omega: float
    grid: GridSpec
    values: Optional[np.ndarray] = None
    ring_densities: Optional[np.ndarray] = None
    u0: Optional[CircleFunction] = None
    phi: Optional[CircleFunction] = None
    valid_mask: Optional[np.ndarray] = None

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @validator("omega")
    def validate_omega(cls, v):
        if not math.isfinite(v) or v <= 0.0:
            raise ValueError(f"omega must be a finite positive number, got {v}")
        return float(v)

    @validator("values", "ring_densities", pre=True)
    def validate_samples(cls, v):
        if v is None:
            return v
        arr = np.array(v, dtype=complex)
        if not np.all(np.isfinite(arr)):
            raise ValueError("field samples must be finite")
        arr.setflags(write=False)
        return arr

    @validator("valid_mask", pre=True)
    def validate_mask(cls, v):
        if v is None:
            return v
        arr = np.array(v, dtype=bool)
        arr.setflags(write=False)
        return arr

    @root_validator(skip_on_failure=True)
    def validate_shapes(cls, values):
        grid: GridSpec = values["grid"]
        field = values.get("values")
        if field is not None and field.shape != (grid.m, grid.m, grid.n_theta):
            raise ValueError(f"field samples must have shape {(grid.m, grid.m, grid.n_theta)}, got {field.shape}")
        rings = values.get("ring_densities")
        if rings is not None and (rings.ndim != 2 or rings.shape[0] != grid.n_theta):
            raise ValueError(f"ring densities must have shape (n_theta={grid.n_theta}, n), got {rings.shape}")
        mask = values.get("valid_mask")
        if mask is not None and mask.shape != (grid.m, grid.m):
            raise ValueError(f"valid mask must have shape {(grid.m, grid.m)}, got {mask.shape}")
        if field is None and rings is None:
            raise ValueError("a field needs rendered values or ring densities")
        return values

    @property
    def has_provenance(self) -> bool:
        return self.u0 is not None and self.phi is not None

    @property
    def n_samples(self) -> Optional[int]:
        if self.ring_densities is None:
            return None
        return int(self.ring_densities.shape[1])

    def mask(self) -> np.ndarray:
        """Valid spatial points (all of them unless a derivative trimmed the border)"""
        if self.valid_mask is None:
            return np.ones((self.grid.m, self.grid.m), dtype=bool)
        return self.valid_mask
