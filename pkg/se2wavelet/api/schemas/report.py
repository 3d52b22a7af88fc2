import math
from typing import Any, Dict, Literal

from pydantic import BaseModel, Field, root_validator


class VerificationReport(BaseModel):
    """
    Outcome of one numerical check

    Structure:
    {
        "check_name": "parseval",      # Name of the check
        "parameters": {...},           # Inputs that identify the run
        "observed": 1.0000000000002,   # Measured value
        "expected": 1.0,               # Target value, or upper bound for "bound" checks
        "tolerance": 1e-10,            # Allowed |observed - expected| ("difference" checks)
        "comparison": "difference",    # "difference" or "bound"
        "passed": true,
        "runtime_ms": 0                # Wall clock, 0 unless timings are requested
    }
    """
    check_name: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    observed: float
    expected: float
    tolerance: float = 0.0
    comparison: Literal["difference", "bound"] = "difference"
    passed: bool
    runtime_ms: int = 0

    @staticmethod
    def decide(observed: float, expected: float, tolerance: float, comparison: str) -> bool:
        if not math.isfinite(observed):
            return False
        if comparison == "bound":
            return observed <= expected
        return abs(observed - expected) <= tolerance

    @root_validator(skip_on_failure=True)
    def validate_passed(cls, values):
        verdict = cls.decide(values["observed"], values["expected"], values["tolerance"], values["comparison"])
        if values["passed"] != verdict:
            raise ValueError(f"passed={values['passed']} contradicts the comparison (expected {verdict})")
        return values

    @classmethod
    def difference(cls, check_name: str, observed: float, expected: float, tolerance: float,
                   parameters: Dict[str, Any], runtime_ms: int = 0) -> "VerificationReport":
        observed, expected = float(observed), float(expected)
        return cls(check_name=check_name, parameters=parameters, observed=observed, expected=expected,
                   tolerance=float(tolerance), comparison="difference",
                   passed=cls.decide(observed, expected, tolerance, "difference"), runtime_ms=runtime_ms)

    @classmethod
    def bound(cls, check_name: str, observed: float, bound: float,
              parameters: Dict[str, Any], runtime_ms: int = 0) -> "VerificationReport":
        observed, bound = float(observed), float(bound)
        return cls(check_name=check_name, parameters=parameters, observed=observed, expected=bound,
                   tolerance=0.0, comparison="bound",
                   passed=cls.decide(observed, bound, 0.0, "bound"), runtime_ms=runtime_ms)
