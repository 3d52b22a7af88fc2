from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel, validator

TWO_PI = 2.0 * np.pi
MIN_SAMPLES = 8


def circle_grid(n_samples: int) -> np.ndarray:
    """Uniform grid phi_j = 2*pi*j/n on [0, 2*pi)"""
    return TWO_PI * np.arange(n_samples) / n_samples


class CircleFunction(BaseModel):
    """
    Complex function on S^1 sampled on a uniform grid: values[j] = u(2*pi*j/n).

    The sample array is stored read-only; operations return new instances.
    """
    values: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @validator("values", pre=True)
    def validate_values(cls, v):
        arr = np.array(v, dtype=complex).reshape(-1)
        n = arr.shape[0]
        if n < MIN_SAMPLES or n % 2 != 0:
            raise ValueError(f"n_samples must be even and >= {MIN_SAMPLES}, got {n}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("circle samples must be finite")
        arr.setflags(write=False)
        return arr

    @property
    def n_samples(self) -> int:
        return int(self.values.shape[0])

    @property
    def phi(self) -> np.ndarray:
        return circle_grid(self.n_samples)

    @classmethod
    def from_function(cls, fn: Callable[[np.ndarray], np.ndarray], n_samples: int) -> "CircleFunction":
        return cls(values=fn(circle_grid(n_samples)))

    @classmethod
    def constant(cls, value: complex, n_samples: int) -> "CircleFunction":
        return cls(values=np.full(n_samples, value, dtype=complex))

    @classmethod
    def zeros(cls, n_samples: int) -> "CircleFunction":
        return cls.constant(0.0, n_samples)

    @classmethod
    def band_limited(cls, rng: np.random.Generator, n_samples: int, max_mode: int = 8,
                     scale: Optional[float] = None) -> "CircleFunction":
        """Random trigonometric polynomial with modes |m| <= max_mode drawn from rng"""
        modes = np.arange(-max_mode, max_mode + 1)
        coeffs = rng.standard_normal(modes.size) + 1j * rng.standard_normal(modes.size)
        if scale is not None:
            coeffs *= scale
        phi = circle_grid(n_samples)
        return cls(values=np.exp(1j * np.outer(phi, modes)) @ coeffs)

    def scaled(self, factor: complex) -> "CircleFunction":
        return CircleFunction(values=self.values * factor)

    def __add__(self, other: "CircleFunction") -> "CircleFunction":
        return CircleFunction(values=self.values + other.values)

    def __sub__(self, other: "CircleFunction") -> "CircleFunction":
        return CircleFunction(values=self.values - other.values)

    def __mul__(self, other: "CircleFunction") -> "CircleFunction":
        return CircleFunction(values=self.values * other.values)

    def conj(self) -> "CircleFunction":
        return CircleFunction(values=np.conj(self.values))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))
