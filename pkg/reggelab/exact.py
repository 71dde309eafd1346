import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

Rational = Union[int, Fraction]
Vector = tuple[Fraction, ...]


class SpanFailure(ArithmeticError):
    pass


class IncommensurableSurds(ArithmeticError):
    pass


class InconsistentSystem(ArithmeticError):
    pass


def sign_of(q: Rational) -> int:
    return (q > 0) - (q < 0)


def rational_sqrt(q: Rational) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None if it is not a perfect square."""
    q = Fraction(q)
    if q < 0:
        return None
    num = math.isqrt(q.numerator)
    den = math.isqrt(q.denominator)
    if num * num != q.numerator or den * den != q.denominator:
        return None
    return Fraction(num, den)


@dataclass(frozen=True)
class SignedSqrtRational:
    """The exact real number sign * sqrt(square)."""

    sign: int
    square: Fraction

    def __post_init__(self):
        object.__setattr__(self, "square", Fraction(self.square))
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign}")
        if self.square < 0:
            raise ValueError(f"square must be nonnegative, got {self.square}")
        if (self.sign == 0) != (self.square == 0):
            raise ValueError("sign is 0 exactly when square is 0")

    @classmethod
    def zero(cls) -> "SignedSqrtRational":
        return cls(0, Fraction(0))

    @classmethod
    def one(cls) -> "SignedSqrtRational":
        return cls(1, Fraction(1))

    @classmethod
    def from_rational(cls, q: Rational) -> "SignedSqrtRational":
        q = Fraction(q)
        return cls(sign_of(q), q * q)

    @classmethod
    def sqrt(cls, q: Rational) -> "SignedSqrtRational":
        q = Fraction(q)
        if q < 0:
            raise ValueError(f"cannot take the square root of {q}")
        return cls(sign_of(q), q)

    def is_zero(self) -> bool:
        return self.sign == 0

    def __bool__(self) -> bool:
        return self.sign != 0

    def __neg__(self) -> "SignedSqrtRational":
        return SignedSqrtRational(-self.sign, self.square)

    def __abs__(self) -> "SignedSqrtRational":
        return SignedSqrtRational(abs(self.sign), self.square)

    def __mul__(self, other) -> "SignedSqrtRational":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return SignedSqrtRational(self.sign * other.sign, self.square * other.square)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SignedSqrtRational":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return surd_div(self, other)

    def __rtruediv__(self, other) -> "SignedSqrtRational":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return surd_div(other, self)

    def __add__(self, other) -> "SignedSqrtRational":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        ratio = rational_sqrt(other.square / self.square)
        if ratio is None:
            raise IncommensurableSurds(f"sqrt({self.square}) and sqrt({other.square}) have an irrational ratio")
        coefficient = self.sign + other.sign * ratio
        return SignedSqrtRational(sign_of(coefficient), self.square * coefficient * coefficient)

    __radd__ = __add__

    def __sub__(self, other) -> "SignedSqrtRational":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "SignedSqrtRational":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __float__(self) -> float:
        return self.sign * math.sqrt(self.square)

    def as_rational(self) -> Optional[Fraction]:
        root = rational_sqrt(self.square)
        if root is None:
            return None
        return self.sign * root

    def to_dict(self) -> dict[str, int]:
        return {"sign": self.sign, "square_num": self.square.numerator, "square_den": self.square.denominator}

    def __repr__(self) -> str:
        return f"SignedSqrtRational({self.sign:+d}, {self.square})"


def _coerce(value) -> SignedSqrtRational:
    if isinstance(value, SignedSqrtRational):
        return value
    if isinstance(value, (int, Fraction)):
        return SignedSqrtRational.from_rational(value)
    return NotImplemented


def surd_div(x: SignedSqrtRational, y: SignedSqrtRational) -> SignedSqrtRational:
    if y.is_zero():
        raise ZeroDivisionError("division by a zero surd")
    return SignedSqrtRational(x.sign * y.sign, x.square / y.square)


@dataclass(frozen=True)
class ExactMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        if not entries or not entries[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(entries[0])
        if any(len(row) != width for row in entries):
            raise ValueError("matrix rows must have equal length")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Rational]]) -> "ExactMatrix":
        return cls(tuple(zip(*columns)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(tuple(zip(*self.entries)))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_shape(other)
        return ExactMatrix(tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_shape(other)
        return ExactMatrix(tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __mul__(self, scalar: Rational) -> "ExactMatrix":
        return ExactMatrix(tuple(tuple(x * scalar for x in row) for row in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            columns = [other.column(j) for j in range(other.cols)]
            return ExactMatrix(tuple(tuple(vector_inner(row, col) for col in columns) for row in self.entries))
        vector = tuple(other)
        if len(vector) != self.cols:
            raise ValueError(f"vector of length {len(vector)} does not fit {self.rows}x{self.cols}")
        return tuple(vector_inner(row, vector) for row in self.entries)

    def det(self) -> Fraction:
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        rows, scale = _integer_rows(self)
        echelon, pivots, swaps = _echelon(rows)
        if len(pivots) < self.rows:
            return Fraction(0)
        return Fraction((-1) ** swaps * echelon[-1][-1], scale)

    def _check_shape(self, other: "ExactMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shapes differ")


def vector_inner(u: Sequence[Rational], v: Sequence[Rational]) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(u, v)), Fraction(0))


def _integer_rows(m: ExactMatrix) -> tuple[list[list[int]], int]:
    """Clears denominators row by row; also returns the product of the row multipliers."""
    rows = []
    scale = 1
    for row in m.entries:
        multiplier = math.lcm(*(x.denominator for x in row))
        rows.append([int(x * multiplier) for x in row])
        scale *= multiplier
    return rows, scale


def _echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free (Bareiss) forward elimination.

    Pivot order is deterministic: leftmost column first, first nonzero row from the top.
    Returns the nonzero echelon rows, their pivot columns and the number of row swaps.
    """
    n_rows = len(rows)
    n_cols = len(rows[0])
    previous = 1
    r = 0
    swaps = 0
    pivots = []
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
            swaps += 1
        pivot = rows[r][c]
        for i in range(r + 1, n_rows):
            factor = rows[i][c]
            row = rows[i]
            for k in range(c + 1, n_cols):
                quotient, remainder = divmod(row[k] * pivot - factor * rows[r][k], previous)
                if remainder:
                    raise ArithmeticError("inexact Bareiss division")
                row[k] = quotient
            row[c] = 0
        previous = pivot
        pivots.append(c)
        r += 1
    return rows[:r], pivots, swaps


def nullspace(m: ExactMatrix) -> list[Vector]:
    """Basis of the right kernel; each vector is scaled so that its first nonzero entry is 1."""
    rows, _ = _integer_rows(m)
    echelon, pivots, _ = _echelon(rows)
    free = [c for c in range(m.cols) if c not in set(pivots)]

    basis = []
    for f in free:
        x = [Fraction(0)] * m.cols
        x[f] = Fraction(1)
        for row, pc in reversed(list(zip(echelon, pivots))):
            s = sum((row[k] * x[k] for k in range(pc + 1, m.cols)), Fraction(0))
            x[pc] = -s / row[pc]
        lead = next(v for v in x if v != 0)
        basis.append(tuple(v / lead for v in x))
    return basis


def eigensplit(m: ExactMatrix, eigenvalues: Sequence[int]) -> dict[int, list[Vector]]:
    """Splits the space into the eigenspaces of the given candidate eigenvalues.

    Eigenvalues with a trivial eigenspace are left out of the result.
    """
    if not m.is_square:
        raise ValueError("eigensplit needs a square matrix")
    identity = ExactMatrix.identity(m.rows)
    spaces = {}
    for c in dict.fromkeys(eigenvalues):
        basis = nullspace(m - identity * c)
        if basis:
            spaces[c] = basis
    total = sum(len(basis) for basis in spaces.values())
    if total != m.rows:
        raise SpanFailure(f"eigenspaces for {list(eigenvalues)} span {total} of {m.rows} dimensions")
    return spaces


def solve(m: ExactMatrix, rhs: ExactMatrix) -> ExactMatrix:
    """Unique X with m @ X == rhs, for m of full column rank."""
    if m.rows != rhs.rows:
        raise ValueError("right-hand side has the wrong number of rows")
    n = m.cols
    augmented = [list(r) + list(s) for r, s in zip(m.entries, rhs.entries)]
    pivot_row = 0
    for c in range(n):
        p = next((i for i in range(pivot_row, m.rows) if augmented[i][c] != 0), None)
        if p is None:
            raise ValueError("matrix does not have full column rank")
        augmented[pivot_row], augmented[p] = augmented[p], augmented[pivot_row]
        pivot = augmented[pivot_row][c]
        augmented[pivot_row] = [x / pivot for x in augmented[pivot_row]]
        for i in range(m.rows):
            if i != pivot_row and augmented[i][c] != 0:
                factor = augmented[i][c]
                augmented[i] = [x - factor * y for x, y in zip(augmented[i], augmented[pivot_row])]
        pivot_row += 1
    for row in augmented[n:]:
        if any(row[n:]):
            raise InconsistentSystem("right-hand side is not in the column span")
    return ExactMatrix(tuple(tuple(row[n:]) for row in augmented[:n]))
