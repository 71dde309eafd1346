"""Coupling-basis oracle on polynomials in the entries of a k x 3 matrix.

Rows and columns are 0-based throughout. A monomial is stored as its row-major
tuple of exponents; a polynomial maps monomials to rational coefficients.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, Optional, Sequence

from . import racah, tableaux
from .exact import ExactMatrix, InconsistentSystem, SignedSqrtRational, eigensplit, nullspace, sign_of, solve
from .types import CouplingMode, SixJLabels

logger = logging.getLogger(__name__)

MONOMIAL_LIMIT = 200_000

Monomial = tuple[int, ...]

MODE_COLUMNS = {
    CouplingMode.Mode12: (0, 1),
    CouplingMode.Mode23: (1, 2),
}
ALL_COLUMNS = (0, 1, 2)


class EmptySpace(ValueError):
    pass


class SpaceTooLarge(MemoryError):
    pass


class ClosureFailure(ArithmeticError):
    pass


class MultiplicityFailure(ArithmeticError):
    pass


class DegreeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class MultiPoly:
    k: int
    terms: Mapping[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        terms = {tuple(m): Fraction(c) for m, c in self.terms.items() if c != 0}
        for monomial in terms:
            if len(monomial) != 3 * self.k:
                raise ValueError(f"monomial {monomial} does not fit a {self.k}x3 matrix")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def constant(cls, k: int, value=1) -> "MultiPoly":
        return cls(k, {(0,) * (3 * k): value})

    @classmethod
    def variable(cls, k: int, row: int, col: int) -> "MultiPoly":
        exponents = [0] * (3 * k)
        exponents[3 * row + col] = 1
        return cls(k, {tuple(exponents): 1})

    def __hash__(self):
        return hash((self.k, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    def leading_monomial(self) -> Monomial:
        return min(self.terms)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_k(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return MultiPoly(self.k, terms)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.k, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return MultiPoly(self.k, {m: c * other for m, c in self.terms.items()})
        self._check_k(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return MultiPoly(self.k, terms)

    __rmul__ = __mul__

    def row_degrees(self) -> set[tuple[int, ...]]:
        return {tuple(sum(m[3 * i : 3 * i + 3]) for i in range(self.k)) for m in self.terms}

    def column_degrees(self) -> set[tuple[int, ...]]:
        return {tuple(sum(m[c::3]) for c in range(3)) for m in self.terms}

    def _check_k(self, other: "MultiPoly") -> None:
        if other.k != self.k:
            raise ValueError(f"cannot combine k={self.k} and k={other.k} polynomials")


def _polarize_monomial(monomial: Monomial, i: int, j: int, columns: Sequence[int]) -> Iterator[tuple[Monomial, int]]:
    for c in columns:
        e = monomial[3 * j + c]
        if e:
            image = list(monomial)
            image[3 * j + c] -= 1
            image[3 * i + c] += 1
            yield tuple(image), e


def polarization(poly: MultiPoly, i: int, j: int, columns: Sequence[int] = ALL_COLUMNS) -> MultiPoly:
    """Applies sum over c in columns of x_{ic} d/dx_{jc}."""
    terms: dict[Monomial, Fraction] = {}
    for m, coefficient in poly.terms.items():
        for image, e in _polarize_monomial(m, i, j, columns):
            terms[image] = terms.get(image, 0) + coefficient * e
    return MultiPoly(poly.k, terms)


def raising_operator_apply(poly: MultiPoly, i: int, j: int) -> MultiPoly:
    if not 0 <= i < j < poly.k:
        raise ValueError(f"({i}, {j}) is not a raising pair for k={poly.k}")
    return polarization(poly, i, j)


def fock_inner(f: MultiPoly, g: MultiPoly) -> Fraction:
    f._check_k(g)
    total = Fraction(0)
    for m, c in f.terms.items():
        d = g.terms.get(m)
        if d is not None:
            total += c * d * math.prod(math.factorial(e) for e in m)
    return total


def embed(poly: MultiPoly, k: int = 3) -> MultiPoly:
    """Views a polynomial on k' x 3 matrices as one on the first k' rows of k x 3 matrices."""
    if k < poly.k:
        raise ValueError(f"cannot embed k={poly.k} into k={k}")
    padding = (0,) * (3 * (k - poly.k))
    return MultiPoly(k, {m + padding: c for m, c in poly.terms.items()})


def determinant() -> MultiPoly:
    terms = {}
    for sigma in itertools.permutations(range(3)):
        inversions = sum(1 for x, y in itertools.combinations(sigma, 2) if x > y)
        exponents = [0] * 9
        for row, col in enumerate(sigma):
            exponents[3 * row + col] = 1
        terms[tuple(exponents)] = (-1) ** inversions
    return MultiPoly(3, terms)


@lru_cache(maxsize=None)
def det_power(p: int) -> MultiPoly:
    if p == 0:
        return MultiPoly.constant(3)
    return det_power(p - 1) * determinant()


def casimir_eigenvalue(label: Sequence[int]) -> int:
    m = list(label)
    return sum(x * x for x in m) + sum(m[i] - m[j] for i, j in itertools.combinations(range(len(m)), 2))


def _compositions(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    if len(caps) == 1:
        if total <= caps[0]:
            yield (total,)
        return
    for v in range(min(total, caps[0]), -1, -1):
        for rest in _compositions(total - v, caps[1:]):
            yield (v,) + rest


def monomials(row_degrees: Sequence[int], column_degrees: Sequence[int]) -> list[Monomial]:
    """All k x 3 exponent matrices with the given row and column sums, sorted."""
    k = len(row_degrees)
    if sum(row_degrees) != sum(column_degrees):
        return []

    def fill(c: int, remaining: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
        if c == 3:
            if not any(remaining):
                yield ()
            return
        for column in _compositions(column_degrees[c], remaining):
            rest = tuple(r - v for r, v in zip(remaining, column))
            for tail in fill(c + 1, rest):
                yield (column,) + tail

    return sorted(tuple(cols[c][i] for i in range(k) for c in range(3)) for cols in fill(0, tuple(row_degrees)))


@dataclass(frozen=True)
class MultSpaceBasis:
    k: int
    mu: tuple[int, int, int]
    lam: tuple[int, ...]
    lowest: bool
    monomials: tuple[Monomial, ...]
    basis: tuple[MultiPoly, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def row_degrees(self) -> tuple[int, ...]:
        return tuple(reversed(self.lam)) if self.lowest else self.lam

    def coordinates(self, polys: Sequence[MultiPoly]) -> ExactMatrix:
        """Coefficients of each poly in this basis, one column per poly."""
        index = {m: n for n, m in enumerate(self.monomials)}
        basis_matrix = ExactMatrix.from_columns([_dense(b, index) for b in self.basis])
        try:
            rhs = ExactMatrix.from_columns([_dense(p, index) for p in polys])
            return solve(basis_matrix, rhs)
        except (InconsistentSystem, KeyError) as e:
            raise ClosureFailure(f"image leaves the multiplicity space for mu={self.mu}, lam={self.lam}") from e

    def combine(self, coefficients: Sequence[Fraction]) -> MultiPoly:
        total = MultiPoly(self.k)
        for c, b in zip(coefficients, self.basis):
            total = total + b * c
        return total


def _dense(poly: MultiPoly, index: Mapping[Monomial, int]) -> list[Fraction]:
    vector = [Fraction(0)] * len(index)
    for m, c in poly.terms.items():
        vector[index[m]] = c
    return vector


def _pad(lam: Sequence[int], k: int) -> tuple[int, ...]:
    lam = tuple(lam)
    if len(lam) > k:
        if any(lam[k:]):
            raise ValueError(f"{lam} has more than {k} rows")
        lam = lam[:k]
    return lam + (0,) * (k - len(lam))


@lru_cache(maxsize=None)
def _multiplicity_space(
    k: int, mu: tuple[int, int, int], lam: tuple[int, ...], lowest: bool, limit: int
) -> MultSpaceBasis:
    row_degrees = tuple(reversed(lam)) if lowest else lam
    monos = monomials(row_degrees, mu)
    if len(monos) > limit:
        raise SpaceTooLarge(f"{len(monos)} monomials for k={k}, mu={mu}, lam={lam} exceeds {limit}")
    logger.debug("k=%d mu=%s lam=%s lowest=%s: %d monomials", k, mu, lam, lowest, len(monos))
    if not monos:
        return MultSpaceBasis(k, mu, lam, lowest, (), ())

    # annihilated by E_{i,i+1} (highest weight) or E_{i+1,i} (lowest weight)
    operators = [(i + 1, i) if lowest else (i, i + 1) for i in range(k - 1)]
    rows: dict[tuple[int, Monomial], list[Fraction]] = {}
    for col, m in enumerate(monos):
        for n, (i, j) in enumerate(operators):
            for image, e in _polarize_monomial(m, i, j, ALL_COLUMNS):
                row = rows.setdefault((n, image), [Fraction(0)] * len(monos))
                row[col] += e

    if rows:
        kernel = nullspace(ExactMatrix(tuple(tuple(r) for r in rows.values())))
    else:
        kernel = [tuple(Fraction(int(i == j)) for j in range(len(monos))) for i in range(len(monos))]
    basis = tuple(MultiPoly(k, dict(zip(monos, v))) for v in kernel)
    return MultSpaceBasis(k, mu, lam, lowest, tuple(monos), basis)


def multiplicity_space(
    k: int, mu: Sequence[int], lam: Sequence[int], lowest: bool = False, limit: Optional[int] = None
) -> MultSpaceBasis:
    """Highest weight vectors of weight lam inside S^mu C^k.

    With lowest=True, the lowest weight vectors of the irrep lam instead; their
    row degrees are lam reversed.
    """
    return _multiplicity_space(
        k, tuple(mu), _pad(lam, k), lowest, limit if limit is not None else MONOMIAL_LIMIT
    )


def casimir_matrix(space: MultSpaceBasis, columns: Sequence[int]) -> ExactMatrix:
    if not space.dim:
        raise EmptySpace(f"multiplicity space for mu={space.mu}, lam={space.lam} is zero")
    images = []
    for b in space.basis:
        image = MultiPoly(space.k)
        for i in range(space.k):
            for j in range(space.k):
                image = image + polarization(polarization(b, j, i, columns), i, j, columns)
        images.append(image)
    return space.coordinates(images)


def casimir12_matrix(space: MultSpaceBasis) -> ExactMatrix:
    return casimir_matrix(space, MODE_COLUMNS[CouplingMode.Mode12])


def intermediate_labels(mu: Sequence[int], lam: Sequence[int], mode: CouplingMode) -> list[tuple[int, int]]:
    """Pieri-admissible labels of the pair coupled first (columns 1,2 or 2,3)."""
    a, b, c = mu
    first, second, last = (a, b, c) if mode == CouplingMode.Mode12 else (b, c, a)
    target = tableaux.as_partition(lam)
    return [
        (r, s)
        for r, s, _ in tableaux.pieri((first,), second)
        if target in tableaux.pieri((r, s), last)
    ]


@dataclass(frozen=True)
class CouplingVector:
    label: tuple[int, int]
    mode: CouplingMode
    poly: MultiPoly
    norm_square: Fraction

    def pair(self, other: "CouplingVector") -> SignedSqrtRational:
        """Fock inner product of the two unit vectors."""
        x = fock_inner(self.poly, other.poly)
        return SignedSqrtRational(sign_of(x), x * x / (self.norm_square * other.norm_square))


@lru_cache(maxsize=None)
def _coupling_basis(
    k: int, mu: tuple[int, int, int], lam: tuple[int, ...], mode: CouplingMode, lowest: bool
) -> tuple[CouplingVector, ...]:
    space = multiplicity_space(k, mu, lam, lowest)
    if not space.dim:
        return ()

    labels = intermediate_labels(mu, lam, mode)
    eigenvalues = {casimir_eigenvalue(_pad(label, k)): label for label in labels}
    if len(eigenvalues) != len(labels):
        raise MultiplicityFailure(f"intermediate labels {labels} share a Casimir eigenvalue")
    spaces = eigensplit(casimir_matrix(space, MODE_COLUMNS[mode]), list(eigenvalues))

    vectors = []
    for eigenvalue, vecs in spaces.items():
        if len(vecs) > 1:
            raise MultiplicityFailure(
                f"eigenvalue {eigenvalue} has multiplicity {len(vecs)} for mu={mu}, lam={lam}, mode={mode.value}"
            )
        poly = space.combine(vecs[0])
        if poly.terms[poly.leading_monomial()] < 0:
            poly = -poly
        vectors.append(CouplingVector(eigenvalues[eigenvalue], mode, poly, fock_inner(poly, poly)))
    return tuple(sorted(vectors, key=lambda v: v.label))


def coupling_basis(
    k: int, mu: Sequence[int], lam: Sequence[int], mode: CouplingMode, lowest: bool = False
) -> tuple[CouplingVector, ...]:
    return _coupling_basis(k, tuple(mu), _pad(lam, k), CouplingMode(mode), lowest)


def _find(vectors: Sequence[CouplingVector], label: tuple[int, int]) -> Optional[CouplingVector]:
    return next((v for v in vectors if v.label == label), None)


def u_oracle(l: SixJLabels) -> SignedSqrtRational:
    if not racah.is_valid(l):
        return SignedSqrtRational.zero()
    a, b, c, d, e, f = l
    lam = ((a + b + c + d) // 2, (a + b + c - d) // 2)
    v = _find(coupling_basis(2, (a, b, c), lam, CouplingMode.Mode12), ((a + b + e) // 2, (a + b - e) // 2))
    w = _find(coupling_basis(2, (a, b, c), lam, CouplingMode.Mode23), ((b + c + f) // 2, (b + c - f) // 2))
    if v is None or w is None:
        return SignedSqrtRational.zero()
    return v.pair(w)


def u3_oracle(
    a: int, b: int, c: int, lam: tuple[int, int], rs: tuple[int, int], tu: tuple[int, int]
) -> SignedSqrtRational:
    p, q = lam
    if p < q or q < 0 or p + q != a + b + c:
        return SignedSqrtRational.zero()
    v = _find(coupling_basis(3, (a, b, c), (p, q, 0), CouplingMode.Mode12), tuple(rs))
    w = _find(coupling_basis(3, (a, b, c), (p, q, 0), CouplingMode.Mode23), tuple(tu))
    if v is None or w is None:
        return SignedSqrtRational.zero()
    return v.pair(w)


def duality_pairing(f: MultiPoly, g: MultiPoly, p: int) -> Fraction:
    """Coefficient of f*g along det^p after orthogonal projection."""
    if f.k != 3 or g.k != 3:
        raise DegreeMismatch("duality pairing needs k=3 polynomials")
    product = f * g
    if product.is_zero():
        return Fraction(0)
    if product.column_degrees() != {(p, p, p)}:
        raise DegreeMismatch(f"column degrees {sorted(product.column_degrees())} are not all {p}")
    power = det_power(p)
    return fock_inner(product, power) / fock_inner(power, power)


def casimir_shift_holds(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """Checks C_3 = C_2 + (a+b) I on the k=2 multiplicity space embedded into k=3."""
    space2 = multiplicity_space(2, mu, lam)
    if not space2.dim:
        return True
    lam3 = _pad(lam, 3)
    space3 = multiplicity_space(3, mu, lam3)
    embedded = MultSpaceBasis(3, space3.mu, lam3, False, space3.monomials, tuple(embed(b) for b in space2.basis))
    shift = (mu[0] + mu[1]) * ExactMatrix.identity(space2.dim)
    return casimir12_matrix(embedded) == casimir12_matrix(space2) + shift


@dataclass
class DualityReport:
    mu: tuple[int, int, int]
    lam: tuple[int, int]
    pairings: dict[int, list[tuple[tuple[int, int], tuple[int, int], Fraction]]] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def check_duality_bases(a: int, b: int, c: int, lam: tuple[int, int]) -> DualityReport:
    """Pairs coupling bases of (a,b,c,lam) against those of the complemented data.

    Passes when the pairing matrix is diagonal under (r,s) <-> (p-s, p-r).
    """
    p, q = lam
    report = DualityReport((a, b, c), (p, q))
    dual_mu = (p - a, p - b, p - c)
    if min(dual_mu) < 0:
        report.failures.append(f"p={p} is smaller than a label of {(a, b, c)}")
        return report

    for mode in CouplingMode:
        vectors = coupling_basis(3, (a, b, c), (p, q, 0), mode)
        duals = coupling_basis(3, dual_mu, (p, p - q, 0), mode, lowest=True)
        if len(vectors) != len(duals):
            report.failures.append(f"mode {mode.value}: {len(vectors)} vectors against {len(duals)} dual vectors")
            continue
        entries = []
        for v in vectors:
            for w in duals:
                value = duality_pairing(v.poly, w.poly, p)
                corresponding = w.label == (p - v.label[1], p - v.label[0])
                if value:
                    entries.append((v.label, w.label, value))
                if corresponding and not value:
                    report.failures.append(f"mode {mode.value}: {v.label} pairs to zero with {w.label}")
                elif value and not corresponding:
                    report.failures.append(f"mode {mode.value}: {v.label} pairs to {value} with {w.label}")
        report.pairings[mode.value] = entries
    return report
