import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

Partition = tuple[int, int, int]


class InterlacingViolation(ValueError):
    pass


def as_partition(rows: Sequence[int]) -> Partition:
    rows = tuple(rows) + (0,) * (3 - len(rows))
    if len(rows) > 3:
        raise ValueError(f"{rows} has more than three rows")
    if any(x < 0 for x in rows) or any(x < y for x, y in zip(rows, rows[1:])):
        raise ValueError(f"{rows} is not a partition")
    return rows


def pieri(lam: Sequence[int], a: int) -> list[Partition]:
    """Partitions obtained from lam by adding a boxes, no two in one column; largest first."""
    l1, l2, l3 = as_partition(lam)
    result = []
    for n2 in range(l2, l1 + 1):
        for n3 in range(l3, l2 + 1):
            n1 = l1 + a - (n2 - l2) - (n3 - l3)
            if n1 >= l1:
                result.append((n1, n2, n3))
    return sorted(result, reverse=True)


def _is_lr_filling(rows: tuple[tuple[int, ...], ...], lam: Partition, nu: Partition, mu: Partition) -> bool:
    for i in (1, 2):
        for j, entry in enumerate(rows[i]):
            col = lam[i] + j
            if lam[i - 1] <= col < nu[i - 1] and rows[i - 1][col - lam[i - 1]] >= entry:
                return False

    content = Counter(entry for row in rows for entry in row)
    if any(content[i] != mu[i] for i in range(3)):
        return False

    seen = Counter()
    for row in rows:
        for entry in reversed(row):
            seen[entry] += 1
            if entry > 0 and seen[entry] > seen[entry - 1]:
                return False
    return True


def lr_contains(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """Littlewood-Richardson coefficient c^nu_{lam, mu} by enumerating skew tableaux."""
    lam, mu, nu = as_partition(lam), as_partition(mu), as_partition(nu)
    if any(x > y for x, y in zip(lam, nu)) or sum(nu) != sum(lam) + sum(mu):
        return 0
    fillings = [list(itertools.combinations_with_replacement(range(3), nu[i] - lam[i])) for i in range(3)]
    return sum(1 for rows in itertools.product(*fillings) if _is_lr_filling(rows, lam, nu, mu))


@dataclass(frozen=True, order=True)
class GTPattern:
    top: tuple[int, int, int]
    middle: tuple[int, int]
    bottom: int

    def is_interlacing(self) -> bool:
        (t1, t2, t3), (m1, m2) = self.top, self.middle
        return t1 >= m1 >= t2 >= m2 >= t3 and m1 >= self.bottom >= m2

    def weight(self) -> tuple[int, int, int]:
        m = sum(self.middle)
        return self.bottom, m - self.bottom, sum(self.top) - m


def gt_patterns(lam: Sequence[int], mu: Sequence[int]) -> list[GTPattern]:
    p, q, r = as_partition(lam)
    a, b, c = mu
    if r != 0 or p + q != a + b + c:
        return []
    patterns = []
    for alpha in range(q, p + 1):
        beta = a + b - alpha
        if 0 <= beta <= q and beta <= a <= alpha:
            patterns.append(GTPattern((p, q, 0), (alpha, beta), a))
    return patterns


def gt_count(lam: Sequence[int], mu: Sequence[int]) -> int:
    return len(gt_patterns(lam, mu))


def gt_dual(pattern: GTPattern, p: int) -> GTPattern:
    """Complements every entry against p and mirrors each row."""
    t1, t2, t3 = pattern.top
    m1, m2 = pattern.middle
    if t1 > p or not pattern.is_interlacing():
        raise InterlacingViolation(f"{pattern} has no dual pattern for p={p}")
    return GTPattern((p - t3, p - t2, p - t1), (p - m2, p - m1), p - pattern.bottom)
