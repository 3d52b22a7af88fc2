import math
from typing import Any, Callable, Dict, Tuple

import numpy as np
from pydantic import BaseModel, Field, validator

from se2wavelet.routers.circle.circle_model import CircleFunction

MIN_PLANE_SIZE = 16


def plane_axis(m: int, extent: float) -> np.ndarray:
    """Sample positions -L + j*Delta, Delta = 2L/m"""
    return -extent + np.arange(m) * (2.0 * extent / m)


class PlaneFunction(BaseModel):
    """
    Complex samples of a function on R^2; values[j, k] = f(x1_j, x2_k).
    """
    extent: float
    values: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @validator("extent")
    def validate_extent(cls, v):
        if not math.isfinite(v) or v <= 0.0:
            raise ValueError(f"extent must be a finite positive number, got {v}")
        return float(v)

    @validator("values", pre=True)
    def validate_values(cls, v):
        arr = np.array(v, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"plane samples must be a square m x m array, got shape {arr.shape}")
        if arr.shape[0] < MIN_PLANE_SIZE:
            raise ValueError(f"m must be >= {MIN_PLANE_SIZE}, got {arr.shape[0]}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("plane samples must be finite")
        arr.setflags(write=False)
        return arr

    @property
    def m(self) -> int:
        return int(self.values.shape[0])

    @property
    def spacing(self) -> float:
        return 2.0 * self.extent / self.m

    @property
    def axis(self) -> np.ndarray:
        return plane_axis(self.m, self.extent)

    def coordinates(self) -> Tuple[np.ndarray, np.ndarray]:
        """Meshgrid (x1, x2) with the first array index running along x1"""
        x = self.axis
        return np.meshgrid(x, x, indexing="ij")

    def norm(self) -> float:
        """Discrete L2(R^2) norm"""
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2)) * self.spacing)

    @classmethod
    def from_function(cls, fn: Callable[[np.ndarray, np.ndarray], np.ndarray],
                      m: int, extent: float) -> "PlaneFunction":
        x = plane_axis(m, extent)
        x1, x2 = np.meshgrid(x, x, indexing="ij")
        return cls(extent=extent, values=np.broadcast_to(fn(x1, x2), (m, m)))

    @classmethod
    def zeros(cls, m: int, extent: float) -> "PlaneFunction":
        return cls(extent=extent, values=np.zeros((m, m), dtype=complex))


class RingDistribution(BaseModel):
    """
    Angular density of a distribution supported on the frequency circle of radius omega.
    """
    omega: float
    density: CircleFunction
    metadata: Dict[str, Any] = Field(default_factory=dict)

    class Config:
        allow_mutation = False

    @validator("omega")
    def validate_omega(cls, v):
        if not math.isfinite(v) or v <= 0.0:
            raise ValueError(f"omega must be a finite positive number, got {v}")
        return float(v)

    @property
    def warnings(self):
        return self.metadata.get("warnings", [])


class RingComponent(BaseModel):
    """One Gauss-Legendre node of the direct integral over omega"""
    weight: float
    ring: RingDistribution

    class Config:
        allow_mutation = False

    @property
    def omega(self) -> float:
        return self.ring.omega
