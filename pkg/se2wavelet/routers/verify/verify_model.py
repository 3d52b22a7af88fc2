from typing import Dict, List

import pandas as pd
from pydantic import BaseModel, Field, validator

from se2wavelet.api.schemas import VerificationReport

SUITES = ["parseval", "reproducing", "uncertainty", "cr", "reconstruction", "bargmann", "surjectivity", "weak"]


class VerifyOptions(BaseModel):
    """Knobs shared by every verification suite"""
    seed: int = 1
    omega: float = 2.0
    sigma: float = 1.0
    n_samples: int = 256
    n_theta: int = 64
    timings: bool = False

    class Config:
        allow_mutation = False

    @validator("omega", "sigma")
    def validate_positive(cls, v):
        if v <= 0.0:
            raise ValueError(f"must be positive, got {v}")
        return v


class SuiteResult(BaseModel):
    reports: List[VerificationReport] = Field(default_factory=list)
    tables: Dict[str, pd.DataFrame] = Field(default_factory=dict)

    class Config:
        arbitrary_types_allowed = True

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def extend(self, other: "SuiteResult") -> None:
        self.reports.extend(other.reports)
        self.tables.update(other.tables)
