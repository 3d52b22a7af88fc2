import math

from pydantic import BaseModel, validator


class IrrepParams(BaseModel):
    """Frequency radius of the representation acting on L2(S^1)"""
    omega: float

    class Config:
        allow_mutation = False

    @validator("omega")
    def validate_omega(cls, v):
        if not math.isfinite(v) or v <= 0.0:
            raise ValueError(f"omega must be a finite positive number, got {v}")
        return float(v)


class UncertaintyTerms(BaseModel):
    """Both sides of ||X1 u|| * ||X2 u|| >= |<X3 u, u>| / 2"""
    x1_norm: float
    x2_norm: float
    commutator_term: float

    @property
    def product(self) -> float:
        return self.x1_norm * self.x2_norm

    @property
    def gap(self) -> float:
        return self.product - self.commutator_term
