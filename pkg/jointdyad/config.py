"""
Configuration management for the jointdyad toolkit.

Uses pydantic-settings for environment variable management. Every
group reads ``.env`` and variables prefixed with ``JOINTDYAD_``.
"""

import os
from typing import Optional
from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field


class LoggingConfig(BaseSettings):
    """Logging configuration"""

    log_level: str = Field(default="INFO")
    log_format: str = Field(default="console")

    model_config = SettingsConfigDict(
        env_prefix="JOINTDYAD_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore"
    )


class RuntimeConfig(BaseSettings):
    """Parallelism"""

    # Worker cap for fit restarts, CV folds and sampling
    threads: Optional[int] = Field(default=None, ge=1)

    model_config = SettingsConfigDict(
        env_prefix="JOINTDYAD_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore"
    )

    def resolve_threads(self, override: Optional[int] = None) -> int:
        """Flag beats environment, environment beats the core count."""
        if override is not None:
            return max(1, override)
        if self.threads is not None:
            return self.threads
        return os.cpu_count() or 1


class FitDefaults(BaseSettings):
    """Default EM policy values"""

    max_iter: int = Field(default=1000, ge=1)
    tol: float = Field(default=1e-4, gt=0)
    check_every: int = Field(default=10, ge=1)
    n_restarts: int = Field(default=10, ge=1)
    init_scale: float = Field(default=1.0, gt=0)
    eta_floor: float = Field(default=1e-12, gt=0)

    model_config = SettingsConfigDict(
        env_prefix="JOINTDYAD_FIT_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore"
    )


class BenchmarkDefaults(BaseSettings):
    """Default planted-benchmark shape"""

    overlap_fraction: float = Field(default=0.2, ge=0, le=1)
    dirichlet_alpha: float = Field(default=0.1, gt=0)
    assortativity_ratio: float = Field(default=0.1, gt=0, le=1)

    model_config = SettingsConfigDict(
        env_prefix="JOINTDYAD_BENCHMARK_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore"
    )


class Settings:
    """Combined settings"""

    def __init__(self):
        self.logging = LoggingConfig()
        self.runtime = RuntimeConfig()
        self.fit = FitDefaults()
        self.benchmark = BenchmarkDefaults()


# Global settings instance
settings = Settings()
