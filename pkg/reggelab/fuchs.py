import cmath
import logging
from dataclasses import dataclass, field, fields
from typing import Any, Optional, Sequence

import numpy as np
import sympy as sp

from . import tetra
from .exact import SignedSqrtRational
from .tetra import EdgeLengths

logger = logging.getLogger(__name__)

TOLERANCE = 1e-10


class EigenvalueMismatch(ValueError):
    pass


class DegenerateTriple(ValueError):
    pass


class NonGeneric(ValueError):
    pass


class InconsistentCoords(ValueError):
    pass


class NotHermitianAdmissible(ValueError):
    pass


def _canon(x):
    return sp.expand(sp.radsimp(x))


def _is_zero(x, exact: bool, tolerance: float = TOLERANCE) -> bool:
    if exact:
        return _canon(x) == 0
    return abs(x) <= tolerance


def _close(x, y, exact: bool, tolerance: float = TOLERANCE) -> bool:
    if exact:
        return _canon(x - y) == 0
    return abs(x - y) <= tolerance * max(1.0, abs(x), abs(y))


def _sqrt(x, exact: bool):
    return sp.sqrt(x) if exact else cmath.sqrt(x)


def _trace(M, exact: bool):
    return _canon(M.trace()) if exact else complex(np.trace(M))


def _identity(exact: bool):
    return sp.eye(2) if exact else np.eye(2, dtype=complex)


@dataclass
class MatrixTriple:
    A1: Any
    A2: Any
    A3: Any
    hermitian: bool = False

    @property
    def exact(self) -> bool:
        return isinstance(self.A1, sp.MatrixBase)

    @property
    def A4(self):
        return -(self.A1 + self.A2 + self.A3)

    def residues(self) -> list:
        return [self.A1, self.A2, self.A3, self.A4]


@dataclass(frozen=True)
class TraceCoords:
    theta: tuple
    l12: Any
    l23: Any
    l13: Any
    tau: Any
    tau_prime: Any
    exact: bool = False

    def invariants(self) -> tuple:
        return self.l12, self.l23, self.l13, self.tau, self.tau_prime

    def to_dict(self) -> dict[str, Any]:
        def encode(x):
            if self.exact:
                return str(_canon(x))
            x = complex(x)
            return [x.real, x.imag]

        data = {f.name: getattr(self, f.name) for f in fields(self) if f.name not in ("theta", "exact")}
        return {"theta": [encode(t) for t in self.theta], **{k: encode(v) for k, v in data.items()}}


def hermitian_triple(vectors: Sequence[Sequence], exact: bool = False) -> MatrixTriple:
    return MatrixTriple(*(tetra.phi_embed(v, exact) for v in vectors), hermitian=True)


def random_triple(rng: np.random.Generator) -> MatrixTriple:
    matrices = []
    for _ in range(3):
        x, y, z = rng.normal(size=3) + 1j * rng.normal(size=3)
        matrices.append(np.array([[x, y], [z, -x]], dtype=complex))
    return MatrixTriple(*matrices)


def hat(A, theta):
    """A + theta/2, which has rank one and trace theta when A has eigenvalues +-theta/2."""
    exact = isinstance(A, sp.MatrixBase)
    if not _close(_trace(A @ A, exact), theta * theta / 2, exact):
        raise EigenvalueMismatch(f"Tr A^2 = {_trace(A @ A, exact)} does not match theta = {theta}")
    return A + theta / 2 * _identity(exact)


def theta_of(A, sign: int = 1):
    exact = isinstance(A, sp.MatrixBase)
    value = sign * _sqrt(2 * _trace(A @ A, exact), exact)
    return _canon(value) if exact else value


def lambda13_from(theta: Sequence, l12, l23):
    t1, t2, t3, t4 = theta
    return (t4 * t4 - t1 * t1 - t2 * t2 - t3 * t3 + 2 * (t1 * t2 + t1 * t3 + t2 * t3)) / 4 - l12 - l23


def triple_trace_sum(theta: Sequence, l12, l23, l13):
    """tau + tau' from the 2x2 identity Tr(ABC) + Tr(CBA) in terms of traces of products of pairs."""
    t1, t2, t3, _ = theta
    return t1 * l23 + t2 * l13 + t3 * l12 - t1 * t2 * t3


def check_consistency(c: TraceCoords) -> list[str]:
    problems = []
    if not _close(c.l13, lambda13_from(c.theta, c.l12, c.l23), c.exact):
        problems.append("lambda13 does not match theta, lambda12, lambda23")
    if not _close(c.tau * c.tau_prime, c.l12 * c.l23 * c.l13, c.exact):
        problems.append("tau * tau' differs from lambda12 * lambda23 * lambda13")
    if not _close(c.tau + c.tau_prime, triple_trace_sum(c.theta, c.l12, c.l23, c.l13), c.exact):
        problems.append("tau + tau' violates the triple trace identity")
    return problems


def coordinates(
    T: MatrixTriple, signs: Optional[Sequence[int]] = None, thetas: Optional[Sequence] = None
) -> TraceCoords:
    exact = T.exact
    residues = T.residues()
    if thetas is None:
        signs = signs or (1, 1, 1, 1)
        thetas = tuple(theta_of(A, s) for A, s in zip(residues, signs))
    thetas = tuple(_canon(t) if exact else complex(t) for t in thetas)

    for n, (A, theta) in enumerate(zip(residues, thetas), start=1):
        if _is_zero(theta, exact) and not all(_is_zero(x, exact) for x in np.asarray(A).ravel()):
            raise DegenerateTriple(f"A{n} is nilpotent and nonzero")
    H1, H2, H3 = (hat(A, theta) for A, theta in zip(residues[:3], thetas[:3]))
    hat(residues[3], thetas[3])

    c = TraceCoords(
        theta=thetas,
        l12=_trace(H1 @ H2, exact),
        l23=_trace(H2 @ H3, exact),
        l13=_trace(H1 @ H3, exact),
        tau=_trace(H1 @ H2 @ H3, exact),
        tau_prime=_trace(H3 @ H2 @ H1, exact),
        exact=exact,
    )
    problems = check_consistency(c)
    if problems:
        raise InconsistentCoords("; ".join(problems))
    return c


def reconstruct(c: TraceCoords) -> MatrixTriple:
    """Gauge-fixed triple with hatted residues u_i v_i^T, u1 = e1, u2 = e2 and v1.u2 = v1.u3 = 1."""
    problems = check_consistency(c)
    if problems:
        raise InconsistentCoords("; ".join(problems))
    exact = c.exact
    t1, t2, t3, _ = c.theta
    if _is_zero(c.l12, exact) or _is_zero(c.l13, exact):
        raise NonGeneric("lambda12 and lambda13 must be nonzero")
    det = t1 * t2 - c.l12
    if _is_zero(det, exact):
        raise NonGeneric("theta1 * theta2 equals lambda12")

    p23 = c.tau / c.l13
    x = (t2 - p23) / det
    y = (t1 * p23 - c.l12) / det
    w1 = c.l13
    w2 = c.tau_prime / c.l12
    if not _close(w1 * x + w2 * y, t3, exact):
        raise InconsistentCoords("third hatted residue does not have trace theta3")

    if exact:
        H1 = sp.Matrix([[t1, 1], [0, 0]])
        H2 = sp.Matrix([[0, 0], [c.l12, t2]])
        H3 = sp.Matrix([[x * w1, x * w2], [y * w1, y * w2]]).applyfunc(_canon)
    else:
        H1 = np.array([[t1, 1], [0, 0]], dtype=complex)
        H2 = np.array([[0, 0], [c.l12, t2]], dtype=complex)
        H3 = np.outer([x, y], [w1, w2]).astype(complex)
    identity = _identity(exact)
    return MatrixTriple(H1 - t1 / 2 * identity, H2 - t2 / 2 * identity, H3 - t3 / 2 * identity)


def okamoto_coords(c: TraceCoords) -> TraceCoords:
    phi = sum(c.theta) / 2
    theta = tuple(_canon(t - phi) if c.exact else t - phi for t in c.theta)
    l13 = lambda13_from(theta, c.l12, c.l23)
    if not _close(l13, c.l13, c.exact):
        raise InconsistentCoords(f"lambda13 moved from {c.l13} to {l13}")
    return TraceCoords(theta, c.l12, c.l23, c.l13, c.tau, c.tau_prime, c.exact)


def okamoto_triple(T: MatrixTriple, signs: Optional[Sequence[int]] = None) -> tuple[TraceCoords, MatrixTriple]:
    """Applies the coordinate action and rebuilds a triple carrying the new coordinates."""
    shifted = okamoto_coords(coordinates(T, signs))
    return shifted, reconstruct(shifted)


@dataclass
class InvariantReport:
    before: list = field(default_factory=list)
    after: list = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    skipped: Optional[str] = None

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_lemma_invariants(T: MatrixTriple, signs: Optional[Sequence[int]] = None) -> InvariantReport:
    report = InvariantReport()
    try:
        c = coordinates(T, signs)
        shifted, image = okamoto_triple(T, signs)
        after = coordinates(image, thetas=shifted.theta)
    except NonGeneric as e:
        report.skipped = str(e)
        return report
    names = ("Tr(H1 H2)", "Tr(H2 H3)", "Tr(H1 H3)", "Tr(H1 H2 H3)", "Tr(H3 H2 H1)")
    report.before, report.after = list(c.invariants()), list(after.invariants())
    for name, x, y in zip(names, report.before, report.after):
        if not _close(x, y, c.exact):
            report.failures.append(f"{name}: {x} != {y}")
    return report


def verify_complex_traces(T: MatrixTriple, signs: Optional[Sequence[int]] = None) -> InvariantReport:
    """Tr(A1+A2)^2, Tr(A2+A3)^2 and Tr(A1+A3)^2 before and after the coordinate action."""
    report = InvariantReport()
    try:
        _, image = okamoto_triple(T, signs)
    except NonGeneric as e:
        report.skipped = str(e)
        return report
    exact = T.exact

    def traces(S: MatrixTriple) -> list:
        return [_trace((X + Y) @ (X + Y), exact) for X, Y in ((S.A1, S.A2), (S.A2, S.A3), (S.A1, S.A3))]

    report.before, report.after = traces(T), traces(image)
    for name, x, y in zip(("A5", "A6", "A1+A3"), report.before, report.after):
        if not _close(x, y, exact):
            report.failures.append(f"Tr {name}^2: {x} != {y}")
    return report


def _real(x, exact: bool):
    if exact:
        if sp.im(x) != 0:
            raise NotHermitianAdmissible(f"{x} is not real")
        return tetra.to_fraction(sp.re(x))
    if abs(complex(x).imag) > TOLERANCE * max(1.0, abs(x)):
        raise NotHermitianAdmissible(f"{x} is not real")
    return complex(x).real


def _length(square, exact: bool):
    if square < 0:
        raise NotHermitianAdmissible(f"squared length {square} is negative")
    return SignedSqrtRational.sqrt(square) if exact else float(np.sqrt(square))


def edge_lengths_from_coords(c: TraceCoords) -> EdgeLengths:
    t1, t2, t3, t4 = (_real(t, c.exact) for t in c.theta)
    e2 = _real((c.theta[0] - c.theta[1]) ** 2 + 4 * c.l12, c.exact)
    f2 = _real((c.theta[1] - c.theta[2]) ** 2 + 4 * c.l23, c.exact)
    if not c.exact:
        e2, f2 = (0.0 if -TOLERANCE < s < 0 else s for s in (e2, f2))
    sides = [_length(t * t, c.exact) for t in (t1, t2, t3, t4)]
    return EdgeLengths(*sides, _length(e2, c.exact), _length(f2, c.exact))


@dataclass
class CorrespondenceReport:
    lengths: Optional[EdgeLengths] = None
    okamoto: Optional[EdgeLengths] = None
    regge: Optional[EdgeLengths] = None
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def lengths_agree(x: EdgeLengths, y: EdgeLengths, tolerance: float = TOLERANCE) -> bool:
    if x.exact and y.exact:
        return x.squares() == y.squares()
    return all(abs(s - t) <= tolerance * max(1.0, abs(s), abs(t)) for s, t in zip(x.to_floats(), y.to_floats()))


def verify_regge_correspondence(T: MatrixTriple) -> CorrespondenceReport:
    report = CorrespondenceReport()
    if not T.hermitian:
        report.failures.append("triple is not Hermitian")
        return report
    report.lengths = tetra.edge_lengths(T.A1, T.A2, T.A3)
    report.okamoto = edge_lengths_from_coords(okamoto_coords(coordinates(T)))
    report.regge = tetra.regge_lengths(report.lengths)
    if not lengths_agree(report.okamoto, report.regge):
        report.failures.append(f"Okamoto image {report.okamoto} differs from Regge image {report.regge}")
    return report
