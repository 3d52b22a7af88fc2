from .report import VerificationReport

__all__ = ["VerificationReport"]
