import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .exact import SignedSqrtRational
from .types import SixJLabels


class InvalidTriangle(ValueError):
    pass


class OddPerimeter(ValueError):
    pass


def triangle_ok(x: int, y: int, z: int) -> bool:
    return abs(x - y) <= z <= x + y and (x + y + z) % 2 == 0


def racah_delta(x: int, y: int, z: int) -> SignedSqrtRational:
    if not triangle_ok(x, y, z):
        raise InvalidTriangle(f"({x}, {y}, {z}) is not a coupling triad")
    num = math.factorial((x + y - z) // 2) * math.factorial((x - y + z) // 2) * math.factorial((-x + y + z) // 2)
    return SignedSqrtRational.sqrt(Fraction(num, math.factorial((x + y + z) // 2 + 1)))


def failing_triads(l: SixJLabels) -> list[str]:
    return [name for name, triad in l.triads().items() if not triangle_ok(*triad)]


def is_valid(l: SixJLabels) -> bool:
    return all(triangle_ok(*triad) for triad in l.triads().values())


@lru_cache(maxsize=None)
def sixj(l: SixJLabels) -> SignedSqrtRational:
    """Racah single-sum evaluation; zero when any triad fails to couple."""
    if not is_valid(l):
        return SignedSqrtRational.zero()
    a, b, c, d, e, f = l
    lower = [(a + b + e) // 2, (c + d + e) // 2, (a + d + f) // 2, (b + c + f) // 2]
    upper = [(a + b + c + d) // 2, (a + c + e + f) // 2, (b + d + e + f) // 2]

    total = Fraction(0)
    for z in range(max(lower), min(upper) + 1):
        den = 1
        for t in lower:
            den *= math.factorial(z - t)
        for q in upper:
            den *= math.factorial(q - z)
        total += Fraction((-1) ** z * math.factorial(z + 1), den)

    prefactor = SignedSqrtRational.one()
    for triad in l.triads().values():
        prefactor = prefactor * racah_delta(*triad)
    return prefactor * total


def sixj_float(l: SixJLabels) -> float:
    return float(sixj(l))


def u_coeff(l: SixJLabels) -> SignedSqrtRational:
    value = sixj(l)
    if value.is_zero():
        return value
    p = l.perimeter // 2
    return (-1) ** p * SignedSqrtRational.sqrt((l.e + 1) * (l.f + 1)) * value


def regge(l: SixJLabels) -> SixJLabels:
    if l.perimeter % 2:
        raise OddPerimeter(f"a+b+c+d = {l.perimeter} is odd for {l}")
    p = l.perimeter // 2
    return SixJLabels(p - l.a, p - l.b, p - l.c, p - l.d, l.e, l.f)


# slot pairs holding opposite edges
_COLUMNS = ((0, 2), (1, 3), (4, 5))


def _tetrahedral_permutations() -> tuple[tuple[int, ...], ...]:
    perms = []
    for order in itertools.permutations(range(3)):
        for flips in itertools.product((False, True), repeat=3):
            if sum(flips) % 2:
                continue
            perm = [0] * 6
            for target, source in enumerate(order):
                upper, lower = _COLUMNS[source]
                if flips[target]:
                    upper, lower = lower, upper
                perm[_COLUMNS[target][0]] = upper
                perm[_COLUMNS[target][1]] = lower
            perms.append(tuple(perm))
    return tuple(perms)


TETRAHEDRAL_PERMUTATIONS = _tetrahedral_permutations()


def relabel(l: SixJLabels, perm: tuple[int, ...]) -> SixJLabels:
    values = l.as_tuple()
    return SixJLabels(*(values[i] for i in perm))


def symmetry_orbit(l: SixJLabels) -> set[SixJLabels]:
    orbit = {l}
    frontier = [l]
    while frontier:
        current = frontier.pop()
        images = [relabel(current, perm) for perm in TETRAHEDRAL_PERMUTATIONS]
        if current.perimeter % 2 == 0:
            images.append(regge(current))
        for image in images:
            if image not in orbit:
                orbit.add(image)
                frontier.append(image)
    return orbit


def admissible_e(a: int, b: int, c: int, d: int) -> list[int]:
    return [e for e in range(abs(a - b), a + b + 1, 2) if triangle_ok(c, d, e)]


def admissible_f(a: int, b: int, c: int, d: int) -> list[int]:
    return [f for f in range(abs(a - d), a + d + 1, 2) if triangle_ok(b, c, f)]


def valid_labels(max_label: int) -> Iterator[SixJLabels]:
    """All jointly valid label tuples with every entry at most max_label, in lexicographic order."""
    labels = range(max_label + 1)
    for a, b, c, d in itertools.product(labels, repeat=4):
        if (a + b + c + d) % 2:
            continue
        for e in admissible_e(a, b, c, d):
            if e > max_label:
                continue
            for f in admissible_f(a, b, c, d):
                if f <= max_label:
                    yield SixJLabels(a, b, c, d, e, f)


def u_matrix(a: int, b: int, c: int, d: int) -> tuple[list[int], list[int], list[list[SignedSqrtRational]]]:
    es = admissible_e(a, b, c, d)
    fs = admissible_f(a, b, c, d)
    return es, fs, [[u_coeff(SixJLabels(a, b, c, d, e, f)) for f in fs] for e in es]


def orthogonality_defects(a: int, b: int, c: int, d: int) -> list[tuple[str, int, int, SignedSqrtRational]]:
    """Entries of U U^T and U^T U that differ from the identity, as (kind, label, label, value)."""
    es, fs, u = u_matrix(a, b, c, d)
    defects = []

    for i, j in itertools.combinations_with_replacement(range(len(es)), 2):
        total = sum((u[i][k] * u[j][k] for k in range(len(fs))), SignedSqrtRational.zero())
        if total != SignedSqrtRational.from_rational(int(i == j)):
            defects.append(("row", es[i], es[j], total))

    for i, j in itertools.combinations_with_replacement(range(len(fs)), 2):
        total = sum((u[k][i] * u[k][j] for k in range(len(es))), SignedSqrtRational.zero())
        if total != SignedSqrtRational.from_rational(int(i == j)):
            defects.append(("column", fs[i], fs[j], total))
    return defects
