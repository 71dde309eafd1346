import logging
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

from mpmath import mp

logger = logging.getLogger(__name__)

Scalar = Union[int, float, complex, "mp.mpf", "mp.mpc"]

POLE_MARGIN = 1e-12


class PoleCollision(ArithmeticError):
    pass


class SingularInitialData(ValueError):
    pass


class Undefined(ArithmeticError):
    pass


def _mpc(x) -> "mp.mpc":
    if isinstance(x, Fraction):
        return mp.mpc(mp.mpf(x.numerator) / x.denominator)
    return mp.mpc(x)


@dataclass(frozen=True)
class ThetaParams:
    theta1: Scalar
    theta2: Scalar
    theta3: Scalar
    theta4: Scalar

    def __iter__(self) -> Iterator[Scalar]:
        return (getattr(self, f.name) for f in fields(self))

    @property
    def phi(self):
        return sum(self) / 2

    def lift(self) -> "ThetaParams":
        """The same parameters as mpmath complex numbers at the current working precision."""
        return ThetaParams(*(_mpc(t) for t in self))


@dataclass(frozen=True)
class PviParams:
    alpha: Scalar
    beta: Scalar
    gamma: Scalar
    delta: Scalar

    def __iter__(self) -> Iterator[Scalar]:
        return (getattr(self, f.name) for f in fields(self))


def params_from_theta(theta: ThetaParams) -> PviParams:
    t1, t2, t3, t4 = theta
    return PviParams((t4 - 1) ** 2 / 2, -(t1**2) / 2, t3**2 / 2, (1 - t2**2) / 2)


def okamoto_parameters(theta: ThetaParams) -> ThetaParams:
    phi = theta.phi
    return ThetaParams(*(t - phi for t in theta))


TRIVIAL_GENERATORS = ("theta1", "theta2", "theta3", "theta4")


def trivial_sym(theta: ThetaParams, which: frozenset[str]) -> ThetaParams:
    """Negates the named theta1..theta3 and sends theta4 to 2 - theta4 if named."""
    unknown = set(which) - set(TRIVIAL_GENERATORS)
    if unknown:
        raise ValueError(f"unknown generators {sorted(unknown)}")
    t1, t2, t3, t4 = theta
    image = ThetaParams(
        -t1 if "theta1" in which else t1,
        -t2 if "theta2" in which else t2,
        -t3 if "theta3" in which else t3,
        2 - t4 if "theta4" in which else t4,
    )
    if params_from_theta(image) != params_from_theta(theta):
        raise ArithmeticError(f"{sorted(which)} changed the equation parameters")
    return image


class PowerSeries:
    """Truncated Taylor series sum c_n (t - t0)^n, n = 0..order."""

    def __init__(self, coeffs: Sequence[Scalar], t0: Scalar):
        if not coeffs:
            raise ValueError("a series needs at least one coefficient")
        self.coeffs = [mp.mpc(c) for c in coeffs]
        self.t0 = mp.mpc(t0)

    @classmethod
    def constant(cls, value: Scalar, t0: Scalar, order: int) -> "PowerSeries":
        return cls([value] + [0] * order, t0)

    @classmethod
    def variable(cls, t0: Scalar, order: int) -> "PowerSeries":
        coeffs = [t0, 1] + [0] * (order - 1)
        return cls(coeffs[: order + 1], t0)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coeffs[: order + 1], self.t0)

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            if other.t0 != self.t0:
                raise ValueError("series have different centers")
            return other
        return PowerSeries.constant(other, self.t0, self.order)

    def __add__(self, other) -> "PowerSeries":
        other = self._coerce(other)
        n = min(len(self), len(other))
        return PowerSeries([x + y for x, y in zip(self.coeffs[:n], other.coeffs[:n])], self.t0)

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-x for x in self.coeffs], self.t0)

    def __sub__(self, other) -> "PowerSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PowerSeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return PowerSeries([x * other for x in self.coeffs], self.t0)
        other = self._coerce(other)
        n = min(len(self), len(other))
        return PowerSeries(_cauchy(self.coeffs, other.coeffs, n), self.t0)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return PowerSeries([x / other for x in self.coeffs], self.t0)
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> "PowerSeries":
        return self._coerce(other) * self.reciprocal()

    def reciprocal(self) -> "PowerSeries":
        """Newton iteration b <- b (2 - a b), doubling the number of correct terms each step."""
        if abs(self.coeffs[0]) <= POLE_MARGIN:
            raise ZeroDivisionError("series has a vanishing constant term")
        b = [1 / self.coeffs[0]]
        n = 1
        while n < len(self):
            n = min(2 * n, len(self))
            correction = [-x for x in _cauchy(self.coeffs, b, n)]
            correction[0] += 2
            b = _cauchy(b, correction, n)
        return PowerSeries(b, self.t0)

    def derivative(self) -> "PowerSeries":
        if self.order == 0:
            return PowerSeries([0], self.t0)
        return PowerSeries([n * c for n, c in enumerate(self.coeffs) if n], self.t0)

    def __call__(self, t: Scalar):
        return mp.polyval(list(reversed(self.coeffs)), mp.mpc(t) - self.t0)

    def jet(self, t: Scalar) -> tuple:
        d1 = self.derivative()
        return self(t), d1(t), d1.derivative()(t)

    def __repr__(self) -> str:
        return f"PowerSeries(t0={self.t0}, order={self.order})"


def _cauchy(x: Sequence, y: Sequence, n: int) -> list:
    product = [mp.mpc(0)] * n
    for i, a in enumerate(x[:n]):
        if a == 0:
            continue
        for j, b in enumerate(y[: n - i]):
            product[i + j] += a * b
    return product


def _rhs(t, y, dy, P: PviParams):
    """Right-hand side of the sixth Painleve equation; works on scalars and on series."""
    alpha, beta, gamma, delta = P
    first = (1 / y + 1 / (y - 1) + 1 / (y - t)) * dy * dy / 2
    second = (1 / t + 1 / (t - 1) + 1 / (y - t)) * dy
    potential = (
        alpha
        + beta * t / (y * y)
        + gamma * (t - 1) / ((y - 1) * (y - 1))
        + delta * t * (t - 1) / ((y - t) * (y - t))
    )
    return first - second + y * (y - 1) * (y - t) / (t * t * (t - 1) * (t - 1)) * potential


def _check_poles(t, y, error: type) -> None:
    for name, value in (("0", y), ("1", y - 1), ("t", y - t)):
        if abs(value) <= POLE_MARGIN:
            raise error(f"y = {y} collides with the pole {name} at t = {t}")


def pvi_residual(t: Scalar, y: Scalar, dy: Scalar, d2y: Scalar, P: PviParams):
    t, y, dy, d2y = (mp.mpc(v) for v in (t, y, dy, d2y))
    _check_poles(t, y, PoleCollision)
    if abs(t) <= POLE_MARGIN or abs(t - 1) <= POLE_MARGIN:
        raise PoleCollision(f"t = {t} is a fixed singularity")
    return d2y - _rhs(t, y, dy, P)


def residual_series(y: PowerSeries, P: PviParams) -> PowerSeries:
    """y'' - RHS(t, y, y') as a series; its order is two below that of y."""
    dy = y.derivative()
    d2y = dy.derivative()
    t = PowerSeries.variable(y.t0, y.order)
    try:
        return d2y - _rhs(t, y, dy, P)
    except ZeroDivisionError as e:
        raise PoleCollision(f"series at t0 = {y.t0} starts on a pole") from e


def series_solution(t0: Scalar, y0: Scalar, y1: Scalar, P: PviParams, order: int) -> PowerSeries:
    """The unique local solution with y(t0) = y0, y'(t0) = y1, solved order by order."""
    if order < 2:
        raise ValueError(f"order must be at least 2, got {order}")
    t0, y0, y1 = mp.mpc(t0), mp.mpc(y0), mp.mpc(y1)
    if abs(t0) <= POLE_MARGIN or abs(t0 - 1) <= POLE_MARGIN:
        raise SingularInitialData(f"t0 = {t0} is a fixed singularity")
    _check_poles(t0, y0, SingularInitialData)

    coeffs = [y0, y1]
    for n in range(order - 1):
        y = PowerSeries(coeffs, t0)
        rhs = _rhs(PowerSeries.variable(t0, n + 1), y, y.derivative(), P)
        coeffs.append(rhs[n] / ((n + 2) * (n + 1)))
    return PowerSeries(coeffs, t0)


def x_series(y: PowerSeries, theta: ThetaParams) -> PowerSeries:
    t1, t2, t3, _ = theta
    _check_poles(y.t0, y[0], PoleCollision)
    dy = y.derivative()
    y = y.truncate(dy.order)
    t = PowerSeries.variable(y.t0, y.order)
    two_x = ((t - 1) * dy - t1) / y + (dy - 1 - t2) / (y - t) - (t * dy + t3) / (y - 1)
    return two_x / 2


def okamoto_transform(y: PowerSeries, theta: ThetaParams) -> tuple[PowerSeries, ThetaParams]:
    theta = theta.lift()
    x = x_series(y, theta)
    if abs(x[0]) <= POLE_MARGIN:
        raise Undefined(f"x vanishes at t0 = {y.t0}")
    return y.truncate(x.order) + theta.phi / x, okamoto_parameters(theta)


@dataclass
class BacklundReport:
    order: int
    max_pointwise: float = 0.0
    max_coefficient: float = 0.0
    double_application: Optional[float] = None
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def sample_points(t0: Scalar, radius: float = 0.05, points: int = 5) -> list:
    """Points inside the disc of the given radius around t0, at growing distance and turning angle."""
    t0 = mp.mpc(t0)
    return [t0 + radius * mp.mpf(k + 1) / (2 * points) * mp.expjpi(mp.mpf(2 * k) / points) for k in range(points)]


def relative_residual(y: PowerSeries, P: PviParams, radius: float = 0.05, points: int = 5) -> tuple[float, float]:
    """Weighted residual coefficients and the pointwise residual of y near t0.

    The pointwise value is |pvi_residual| on the jet of y at each sample point, divided by max(1, |y''|)
    there. The coefficients of the residual series are weighted by radius^n and only reported.
    """
    residual = residual_series(y, P)
    scale = max([mp.mpf(1)] + [abs(c) for c in y.derivative().derivative().coeffs])
    coefficient = max(abs(c) * mp.mpf(radius) ** n for n, c in enumerate(residual.coeffs)) / scale
    pointwise = mp.mpf(0)
    for t in sample_points(y.t0, radius, points):
        value, slope, curvature = y.jet(t)
        pointwise = max(pointwise, abs(pvi_residual(t, value, slope, curvature, P)) / max(1, abs(curvature)))
    return float(coefficient), float(pointwise)


def verify_backlund(
    t0: Scalar, y0: Scalar, y1: Scalar, theta: ThetaParams, order: int, tolerance: float = 1e-10
) -> BacklundReport:
    """Checks that the Okamoto image of the local solution solves the equation with the shifted parameters.

    Runs at the caller's mpmath precision; theta is lifted to it before any parameter arithmetic.
    """
    theta = theta.lift()
    report = BacklundReport(order)
    y = series_solution(t0, y0, y1, params_from_theta(theta), order)
    image, shifted = okamoto_transform(y, theta)
    report.max_coefficient, report.max_pointwise = relative_residual(image, params_from_theta(shifted))
    if report.max_pointwise >= tolerance:
        report.failures.append(f"pointwise residual {report.max_pointwise:.3e} at or above {tolerance:.0e}")

    try:
        back, _ = okamoto_transform(image, shifted)
        report.double_application = float(max(abs(a - b) for a, b in zip(back.coeffs, y.coeffs)))
    except (Undefined, PoleCollision, ZeroDivisionError) as e:
        logger.debug("double application undefined at t0=%s: %s", t0, e)
    return report
