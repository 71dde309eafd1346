import dataclasses
import logging
import time
from fractions import Fraction
from typing import Any

import numpy as np
from mpmath import mp

from .exact import SignedSqrtRational

logger = logging.getLogger(__name__)


class Timer:
    def __init__(self, name: str):
        self.name = name

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.elapsed = time.perf_counter() - self.start
        logger.info(f"{self.name} took {self.elapsed:.6f} seconds")


def make_rng(seed: int) -> np.random.Generator:
    logger.info(f"Sampling with numpy PCG64 seeded by {seed}")
    return np.random.default_rng(seed % 2**64)


def to_jsonable(data: Any) -> Any:
    """Exact values become sign/square or numerator/denominator records, complex values [re, im].

    Dictionary entries whose value is None are dropped.
    """
    if isinstance(data, SignedSqrtRational):
        return data.to_dict()
    if isinstance(data, Fraction):
        return f"{data.numerator}/{data.denominator}"
    if data is None or isinstance(data, (bool, int, float, str)):
        return data
    if isinstance(data, (mp.mpf, np.floating)):
        return float(data)
    if isinstance(data, (complex, mp.mpc, np.complexfloating)):
        return [float(data.real), float(data.imag)]
    if isinstance(data, np.integer):
        return int(data)
    if isinstance(data, np.ndarray):
        return to_jsonable(data.tolist())
    if isinstance(data, dict):
        return {str(k): to_jsonable(v) for k, v in data.items() if v is not None}
    if isinstance(data, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in data]
        return sorted(items, key=str) if isinstance(data, (set, frozenset)) else items
    if hasattr(data, "to_dict"):
        return to_jsonable(data.to_dict())
    if dataclasses.is_dataclass(data) and not isinstance(data, type):
        return to_jsonable({f.name: getattr(data, f.name) for f in dataclasses.fields(data)})
    if hasattr(data, "dict"):
        return to_jsonable(data.dict())
    return data
