from typing import Any, Optional

from pydantic import BaseModel, validator

from .types import NumberMode, Suite

MIN_PRECISION_BITS = 60
MIN_ORDER = 2


class RunConfig(BaseModel):
    command: str
    suite: Optional[Suite] = None
    labels: Optional[list[int]] = None
    max_label: Optional[int] = None
    samples: Optional[int] = None
    exact_samples: Optional[int] = None
    seed: int = 0
    precision_bits: int = 64
    order: int = 16
    mode: Optional[NumberMode] = None
    workers: int = 1
    tolerance: float = 1e-10
    psd_tolerance: float = 1e-9
    json_path: Optional[str] = None

    @validator("precision_bits")
    def enough_precision(cls, value):
        if value < MIN_PRECISION_BITS:
            raise ValueError(f"precision_bits must be at least {MIN_PRECISION_BITS}, got {value}")
        return value

    @validator("order")
    def enough_order(cls, value):
        if value < MIN_ORDER:
            raise ValueError(f"order must be at least {MIN_ORDER}, got {value}")
        return value

    @validator("workers")
    def positive_workers(cls, value):
        if value < 1:
            raise ValueError(f"workers must be positive, got {value}")
        return value


class Outcome(BaseModel):
    key: list[Any]
    passed: bool = True
    skipped: bool = False
    deviation: Optional[float] = None
    data: dict[str, Any] = {}


class SuiteReport(BaseModel):
    suite: Suite
    config: RunConfig
    instances: int = 0
    skipped: int = 0
    failures: list[Outcome] = []
    max_deviation: Optional[float] = None

    @property
    def passed(self) -> bool:
        return not self.failures
