import math
from typing import Tuple

import numpy as np
from pydantic import BaseModel, validator

from se2wavelet.exceptions import FormatError

TWO_PI = 2.0 * math.pi


def reduce_angle(theta: float) -> float:
    """Representative of theta in [0, 2*pi)"""
    reduced = math.fmod(theta, TWO_PI)
    if reduced < 0.0:
        reduced += TWO_PI
    # fmod + shift can round up to exactly 2*pi
    if reduced >= TWO_PI:
        reduced = 0.0
    return reduced


def angle_distance(a: float, b: float) -> float:
    """Shortest arc length between two angles"""
    d = reduce_angle(a - b)
    return min(d, TWO_PI - d)


def rotation_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


class GroupElement(BaseModel):
    """An element (q, theta) of SE(2); theta is stored in [0, 2*pi)"""
    q1: float = 0.0
    q2: float = 0.0
    theta: float = 0.0

    class Config:
        allow_mutation = False

    @validator("q1", "q2")
    def validate_translation(cls, v):
        if not math.isfinite(v):
            raise ValueError("translation components must be finite")
        return float(v)

    @validator("theta")
    def validate_theta(cls, v):
        if not math.isfinite(v):
            raise ValueError("theta must be finite")
        return reduce_angle(float(v))

    @property
    def q(self) -> np.ndarray:
        return np.array([self.q1, self.q2])

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.q1, self.q2, self.theta)

    def is_close(self, other: "GroupElement", tol: float = 1e-12) -> bool:
        """Componentwise comparison; theta is compared on the circle"""
        return (abs(self.q1 - other.q1) <= tol and abs(self.q2 - other.q2) <= tol
                and angle_distance(self.theta, other.theta) <= tol)

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(q1=0.0, q2=0.0, theta=0.0)

    @classmethod
    def random(cls, rng: np.random.Generator, radius: float = 2.0) -> "GroupElement":
        q = rng.uniform(-radius, radius, size=2)
        return cls(q1=q[0], q2=q[1], theta=rng.uniform(0.0, TWO_PI))

    @classmethod
    def parse(cls, text: str) -> "GroupElement":
        """Parse the textual form 'q1,q2,theta'"""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise FormatError(f"Group element must be 'q1,q2,theta', got '{text}'")
        try:
            q1, q2, theta = (float(p) for p in parts)
        except ValueError:
            raise FormatError(f"Group element must be numeric 'q1,q2,theta', got '{text}'")
        return cls(q1=q1, q2=q2, theta=theta)

    def __str__(self) -> str:
        return f"{self.q1!r},{self.q2!r},{self.theta!r}"
