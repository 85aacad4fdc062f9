"""Runtime configuration shared by the verifier and the CLI."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .jfun import DEFAULT_PRECISION, MAX_SERIES_TERMS, PRECISION_CAP


@dataclass
class Config:
    precision_bits: int = DEFAULT_PRECISION
    precision_cap: int = PRECISION_CAP
    max_coefficients: int = MAX_SERIES_TERMS
    jobs: int = 1
    cache_dir: Optional[str] = None
    report_path: Optional[str] = None

    def __post_init__(self):
        if self.precision_bits < 8:
            raise ValueError("precision_bits must be at least 8")
        if self.precision_bits > self.precision_cap:
            raise ValueError("precision_bits must not exceed precision_cap")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")

    def to_json_dict(self) -> dict:
        return {
            "precision_bits": self.precision_bits,
            "precision_cap": self.precision_cap,
            "max_coefficients": self.max_coefficients,
            "jobs": self.jobs,
            "cache_dir": self.cache_dir,
            "report_path": self.report_path,
        }
