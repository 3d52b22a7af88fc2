from pydantic import BaseSettings
from functools import lru_cache
import os


class Settings(BaseSettings):
    # Application
    APP_NAME: str = "SE2-Wavelet"
    APP_ENV: str = "development"

    # Parallelism (0 = one worker per CPU)
    SE2_THREADS: int = 0

    # Circle grid
    CIRCLE_SAMPLES: int = 256

    # Minimal-uncertainty wavelet
    MINIMAL_WAVELET_CAP: float = 30.0
    RESOLUTION_TOLERANCE: float = 1e-14

    # Quadrature checks
    TRUNCATION_TOLERANCE: float = 1e-10
    NORMALIZATION_TOLERANCE: float = 1e-10
    TAIL_TOLERANCE: float = 1e-8
    CR_TOLERANCE: float = 1e-8
    BARGMANN_WINDOW_SIGMAS: float = 5.0

    # Command-line caps
    MAX_GRID_POINTS: int = 16_777_216

    # Reports
    REPORT_TIMINGS: bool = False
    PERFORMANCE_LOG: str = ""

    # Log
    LOG_ONLY: str = ""
    LOG_PRESET: str = "minimal"

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"

    @property
    def worker_count(self) -> int:
        if self.SE2_THREADS > 0:
            return self.SE2_THREADS
        return os.cpu_count() or 1


@lru_cache()
def get_settings() -> Settings:
    return Settings()
