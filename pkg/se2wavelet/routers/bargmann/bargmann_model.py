import math

from pydantic import BaseModel, validator


class BargmannParams(BaseModel):
    """Width sigma of the L2-normalized Gaussian window g0"""
    sigma: float

    class Config:
        allow_mutation = False

    @validator("sigma")
    def validate_sigma(cls, v):
        if not math.isfinite(v) or v <= 0.0:
            raise ValueError(f"sigma must be a finite positive number, got {v}")
        return float(v)

    def complex_structure(self, p_norm: float) -> float:
        """lambda = sigma^2 |p|"""
        return self.sigma ** 2 * p_norm
