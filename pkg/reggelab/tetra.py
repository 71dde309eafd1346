import itertools
import math
from dataclasses import dataclass, fields
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterator, Sequence, Union

import numpy as np
import sympy as sp

from .exact import ExactMatrix, SignedSqrtRational

Length = Union[float, Fraction, SignedSqrtRational]


class NegativeLength(ValueError):
    pass


class NotRealizable(ValueError):
    pass


@dataclass(frozen=True)
class EdgeLengths:
    """Lengths of |A1|, |A2|, |A3|, |A1+A2+A3|, |A1+A2|, |A2+A3|.

    Faces are (a, b, e), (c, d, e), (a, d, f) and (b, c, f); (a, c), (b, d), (e, f) are opposite.
    """

    a: Any
    b: Any
    c: Any
    d: Any
    e: Any
    f: Any

    def __iter__(self) -> Iterator[Length]:
        return (getattr(self, f.name) for f in fields(self))

    @property
    def exact(self) -> bool:
        return not any(isinstance(x, float) for x in self)

    def squares(self) -> tuple:
        return tuple(_square(x) for x in self)

    def faces(self) -> list[tuple[Length, Length, Length]]:
        return [(self.a, self.b, self.e), (self.c, self.d, self.e), (self.a, self.d, self.f), (self.b, self.c, self.f)]

    def to_floats(self) -> tuple[float, ...]:
        return tuple(float(x) for x in self)


def _square(x: Length):
    if isinstance(x, SignedSqrtRational):
        return x.square
    if isinstance(x, (int, Fraction)):
        return Fraction(x) ** 2
    return x * x


def to_fraction(x) -> Fraction:
    x = sp.Rational(x)
    return Fraction(int(x.p), int(x.q))


def phi_embed(v: Sequence, exact: bool = False):
    """Isometry from R^3 onto traceless Hermitian 2x2 matrices under <A, B> = 2 Tr(AB)."""
    x, y, z = v
    if exact:
        x, y, z = (sp.Rational(Fraction(t).numerator, Fraction(t).denominator) for t in v)
        return sp.Matrix([[x, y + sp.I * z], [y - sp.I * z, -x]]) / 2
    return 0.5 * np.array([[x, y + 1j * z], [y - 1j * z, -x]], dtype=complex)


def herm_inner(A, B):
    if isinstance(A, sp.MatrixBase):
        return to_fraction(sp.re(sp.expand(2 * (A * B).trace())))
    return float(np.real(2 * np.trace(A @ B)))


def _norm(A) -> Length:
    square = herm_inner(A, A)
    if isinstance(square, Fraction):
        return SignedSqrtRational.sqrt(square)
    return math.sqrt(max(square, 0.0))


def edge_lengths(A1, A2, A3) -> EdgeLengths:
    return EdgeLengths(_norm(A1), _norm(A2), _norm(A3), _norm(A1 + A2 + A3), _norm(A1 + A2), _norm(A2 + A3))


def cayley_menger_matrix(l: EdgeLengths) -> list[list]:
    a, b, c, d, e, f = l.squares()
    return [
        [0, a, e, d, 1],
        [a, 0, b, f, 1],
        [e, b, 0, c, 1],
        [d, f, c, 0, 1],
        [1, 1, 1, 1, 0],
    ]


def cayley_menger_det(l: EdgeLengths):
    if l.exact:
        return ExactMatrix(cayley_menger_matrix(l)).det()
    return float(np.linalg.det(np.array(cayley_menger_matrix(l), dtype=float)))


def regge_lengths(l: EdgeLengths) -> EdgeLengths:
    a, b, c, d, e, f = l
    if l.exact:
        p = (a + b + c + d) * Fraction(1, 2)
        image = EdgeLengths(p - a, p - b, p - c, p - d, e, f)
        negative = [x for x in image if _sign(x) < 0]
    else:
        p = (a + b + c + d) / 2
        image = EdgeLengths(p - a, p - b, p - c, p - d, e, f)
        negative = [x for x in image if x < 0]
    if negative:
        raise NegativeLength(f"Regge image of {l} has negative lengths {negative}")
    return image


def _sign(x) -> int:
    if isinstance(x, SignedSqrtRational):
        return x.sign
    return (x > 0) - (x < 0)


def _heron(x, y, z):
    """16 times the squared area of a triangle given its squared sides."""
    return 2 * (x * y + y * z + z * x) - x * x - y * y - z * z


def triangle_slacks(l: EdgeLengths) -> list[float]:
    """The twelve values x + y - z over the faces; Regge permutes them."""
    slacks = []
    for face in l.faces():
        x, y, z = (float(t) for t in face)
        slacks.extend([x + y - z, y + z - x, z + x - y])
    return sorted(slacks)


def is_euclidean_tetra(l: EdgeLengths) -> bool:
    squares = dict(zip("abcdef", l.squares()))
    for face in ("abe", "cde", "adf", "bcf"):
        if _heron(*(squares[s] for s in face)) <= 0:
            return False
    return cayley_menger_det(l) > 0


def gram_from_lengths(l: EdgeLengths):
    """Gram matrix of the edge vectors a1, a2, a3 by polarization."""
    a, b, c, d, e, f = l.squares()
    g12 = (e - a - b) / 2
    g23 = (f - b - c) / 2
    g13 = (d - a - b - c) / 2 - g12 - g23
    rows = [[a, g12, g13], [g12, b, g23], [g13, g23, c]]
    if l.exact:
        return ExactMatrix(rows)
    return np.array(rows, dtype=float)


def realize_from_lengths(l: EdgeLengths) -> np.ndarray:
    """Edge vectors a1, a2, a3 as rows; a1 lies on the first axis and det > 0."""
    if not is_euclidean_tetra(l):
        raise NotRealizable(f"{l} is not a nondegenerate Euclidean tetrahedron")
    gram = np.array(gram_from_lengths(EdgeLengths(*l.to_floats())), dtype=float)
    try:
        return np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as e:
        raise NotRealizable(f"Gram matrix of {l} is not positive definite") from e


def hermitian_lengths(vectors: Sequence[Sequence], exact: bool = False) -> EdgeLengths:
    return edge_lengths(*(phi_embed(v, exact) for v in vectors))


def random_su2(rng: np.random.Generator) -> np.ndarray:
    q0, q1, q2, q3 = rng.normal(size=4)
    q0, q1, q2, q3 = np.array([q0, q1, q2, q3]) / math.sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3)
    return np.array([[q0 + 1j * q3, q2 + 1j * q1], [-q2 + 1j * q1, q0 - 1j * q3]], dtype=complex)


def _angle(M: np.ndarray) -> float:
    return math.acos(min(1.0, max(-1.0, float(np.real(np.trace(M))) / 2)))


def spherical_lengths(M1: np.ndarray, M2: np.ndarray, M3: np.ndarray) -> EdgeLengths:
    M4 = np.linalg.inv(M1 @ M2 @ M3)
    return EdgeLengths(_angle(M1), _angle(M2), _angle(M3), _angle(M4), _angle(M1 @ M2), _angle(M2 @ M3))


def spherical_gram(l: EdgeLengths) -> np.ndarray:
    """Cosines of distances between the vertices I, M1, M1M2, M1M2M3."""
    c1, c2, c3, c4, c5, c6 = (math.cos(x) for x in l.to_floats())
    return np.array(
        [
            [1.0, c1, c5, c4],
            [c1, 1.0, c2, c6],
            [c5, c2, 1.0, c3],
            [c4, c6, c3, 1.0],
        ]
    )


def spherical_realizable(l: EdgeLengths, tolerance: float = 1e-9) -> bool:
    if any(not -tolerance <= x <= math.pi + tolerance for x in l.to_floats()):
        return False
    return float(np.linalg.eigvalsh(spherical_gram(l)).min()) >= -tolerance


def spherical_regge(l: EdgeLengths) -> EdgeLengths:
    return regge_lengths(EdgeLengths(*l.to_floats()))


@lru_cache(maxsize=None)
def _integer_norm_vectors(bound: int) -> tuple[tuple[tuple[int, int, int], int], ...]:
    vectors = []
    for v in itertools.product(range(-bound, bound + 1), repeat=3):
        n = math.isqrt(sum(x * x for x in v))
        if any(v) and n * n == sum(x * x for x in v):
            vectors.append((v, n))
    return tuple(vectors)


def lattice_tetrahedron(
    rng: np.random.Generator, bound: int = 6, attempts: int = 100_000
) -> list[tuple[int, int, int]]:
    """Integer edge vectors a1, a2, a3 with |a1|, |a2|, |a3|, |a1+a2+a3| integral and nonzero volume."""
    vectors = _integer_norm_vectors(bound)
    for _ in range(attempts):
        picks = [vectors[i][0] for i in rng.integers(len(vectors), size=3)]
        total = [sum(col) for col in zip(*picks)]
        norm = sum(x * x for x in total)
        if norm == 0 or math.isqrt(norm) ** 2 != norm:
            continue
        if round(np.linalg.det(np.array(picks, dtype=float))) != 0:
            return picks
    raise NotRealizable(f"no lattice tetrahedron found in {attempts} attempts")
