from dataclasses import dataclass, fields
from enum import Enum
from typing import Iterator


class NumberMode(str, Enum):
    Exact = "exact"
    Float = "float"


class Suite(str, Enum):
    Regge = "regge"
    Orbit = "orbit"
    Oracle = "oracle"
    U3 = "u3"
    Duality = "duality"
    CM = "cm"
    Lemma = "lemma"
    Theorem = "theorem"
    Backlund = "backlund"
    Spherical = "spherical"
    Orthogonality = "orthogonality"
    Dims = "dims"


class CouplingMode(int, Enum):
    Mode12 = 12
    Mode23 = 23


@dataclass(frozen=True, order=True)
class SixJLabels:
    """Twice-spin labels; (a, c), (b, d) and (e, f) are pairs of opposite edges."""

    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    def __iter__(self) -> Iterator[int]:
        return (getattr(self, f.name) for f in fields(self))

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return tuple(self)

    @property
    def perimeter(self) -> int:
        return self.a + self.b + self.c + self.d

    def triads(self) -> dict[str, tuple[int, int, int]]:
        return {
            "abe": (self.a, self.b, self.e),
            "cde": (self.c, self.d, self.e),
            "adf": (self.a, self.d, self.f),
            "bcf": (self.b, self.c, self.f),
        }

    def __str__(self) -> str:
        return " ".join(str(x) for x in self)
