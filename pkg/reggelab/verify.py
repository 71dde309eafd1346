import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Iterable

import numpy as np
from mpmath import mp

from . import fuchs, howe, pvi, racah, tableaux, tetra, utils
from .models import Outcome, RunConfig, SuiteReport
from .types import CouplingMode, NumberMode, SixJLabels

logger = logging.getLogger(__name__)


class SuiteRunner:
    """Produces the instances of one invariant sweep and checks them one at a time."""

    def instances(self, config: RunConfig, rng: np.random.Generator) -> Iterable[Any]:
        raise NotImplementedError

    def __call__(self, config: RunConfig, payload: Any) -> Outcome:
        raise NotImplementedError


def _labels(l: SixJLabels) -> list[int]:
    return list(l.as_tuple())


class ReggeSuite(SuiteRunner):
    def instances(self, config, rng):
        return racah.valid_labels(config.max_label)

    def __call__(self, config, l):
        image = racah.regge(l)
        value, image_value = racah.sixj(l), racah.sixj(image)
        return Outcome(
            key=_labels(l),
            passed=value == image_value,
            data={"labels": _labels(l), "regge": _labels(image), "value": value, "regge_value": image_value},
        )


class OrbitSuite(SuiteRunner):
    def instances(self, config, rng):
        return racah.valid_labels(config.max_label)

    def __call__(self, config, l):
        orbit = racah.symmetry_orbit(l)
        values = {racah.sixj(m) for m in orbit}
        tetrahedral = {racah.sixj(racah.relabel(l, perm)) for perm in racah.TETRAHEDRAL_PERMUTATIONS}
        return Outcome(
            key=_labels(l),
            passed=len(values) == 1 and len(tetrahedral) == 1 and 144 % len(orbit) == 0,
            data={"labels": _labels(l), "orbit_size": len(orbit), "values": values | tetrahedral},
        )


class OracleSuite(SuiteRunner):
    def instances(self, config, rng):
        return racah.valid_labels(config.max_label)

    def __call__(self, config, l):
        u, oracle = racah.u_coeff(l), howe.u_oracle(l)
        return Outcome(
            key=_labels(l),
            passed=u.square == oracle.square,
            data={"labels": _labels(l), "u": u, "oracle": oracle},
        )


class U3Suite(SuiteRunner):
    """Compares the k=3 oracle with the k=2 one under q = p-d, s = r-e, u = t-f."""

    def instances(self, config, rng):
        return (l for l in racah.valid_labels(2 * config.max_label) if l.perimeter // 2 <= config.max_label)

    def __call__(self, config, l):
        a, b, c, d, e, f = l
        p = l.perimeter // 2
        r, t = (a + b + e) // 2, (b + c + f) // 2
        lam, rs, tu = (p, p - d), (r, r - e), (t, t - f)
        u3, u2 = howe.u3_oracle(a, b, c, lam, rs, tu), howe.u_oracle(l)
        return Outcome(
            key=_labels(l),
            passed=u3.square == u2.square,
            data={"labels": _labels(l), "lam": lam, "rs": rs, "tu": tu, "u3": u3, "u2": u2},
        )


class DualitySuite(SuiteRunner):
    def instances(self, config, rng):
        for p in range(config.max_label + 1):
            for a, b, c in itertools.product(range(p + 1), repeat=3):
                q = a + b + c - p
                if 0 <= q <= p:
                    yield a, b, c, p, q

    def __call__(self, config, payload):
        a, b, c, p, q = payload
        report = howe.check_duality_bases(a, b, c, (p, q))
        failures = list(report.failures)
        lifts = []
        for rs in howe.intermediate_labels((a, b, c), (p, q), CouplingMode.Mode12):
            for tu in howe.intermediate_labels((a, b, c), (p, q), CouplingMode.Mode23):
                value = howe.u3_oracle(a, b, c, (p, q), rs, tu)
                dual_rs, dual_tu = (p - rs[1], p - rs[0]), (p - tu[1], p - tu[0])
                dual = howe.u3_oracle(p - a, p - b, p - c, (p, p - q), dual_rs, dual_tu)
                lifts.append({"rs": rs, "tu": tu, "value": value, "dual": dual})
                if value.square != dual.square:
                    failures.append(f"lift of {rs}, {tu}: {value} against {dual}")
        return Outcome(
            key=list(payload),
            passed=not failures,
            data={
                "mu": [a, b, c],
                "lam": [p, q],
                "pairings": report.pairings,
                "lifts": lifts,
                "failures": failures,
            },
        )


def random_rational_lengths(rng: np.random.Generator, denominator: int = 8) -> tetra.EdgeLengths:
    while True:
        numerators = rng.integers(denominator, 3 * denominator + 1, size=6)
        l = tetra.EdgeLengths(*(Fraction(int(n), denominator) for n in numerators))
        if tetra.is_euclidean_tetra(l):
            return l


class CMSuite(SuiteRunner):
    def instances(self, config, rng):
        return [(n, random_rational_lengths(rng)) for n in range(config.samples)]

    def __call__(self, config, payload):
        n, l = payload
        data = {"lengths": list(l)}
        try:
            image = tetra.regge_lengths(l)
        except tetra.NegativeLength as e:
            return Outcome(key=[n], passed=False, data={**data, "error": str(e)})
        det, image_det = tetra.cayley_menger_det(l), tetra.cayley_menger_det(image)
        slacks, image_slacks = tetra.triangle_slacks(l), tetra.triangle_slacks(image)
        slack_gap = max(abs(x - y) for x, y in zip(slacks, image_slacks))
        passed = (
            det == image_det
            and tetra.is_euclidean_tetra(image) == tetra.is_euclidean_tetra(l)
            and slack_gap <= config.tolerance
        )
        data.update({"regge": list(image), "det": det, "regge_det": image_det, "slack_gap": slack_gap})
        return Outcome(key=[n], passed=passed, deviation=slack_gap, data=data)


def random_hermitian_vectors(rng: np.random.Generator) -> list[list[float]]:
    while True:
        vectors = rng.normal(size=(3, 3)).tolist()
        if tetra.is_euclidean_tetra(tetra.hermitian_lengths(vectors)):
            return vectors


def _modes(config: RunConfig) -> list[NumberMode]:
    return [config.mode] if config.mode else [NumberMode.Float, NumberMode.Exact]


def _triples(
    config: RunConfig, rng: np.random.Generator, hermitian: bool
) -> list[tuple[str, int, fuchs.MatrixTriple]]:
    payloads = []
    for mode in _modes(config):
        if mode == NumberMode.Float:
            for n in range(config.samples):
                if hermitian:
                    triple = fuchs.hermitian_triple(random_hermitian_vectors(rng))
                else:
                    triple = fuchs.random_triple(rng)
                payloads.append((mode.value, n, triple))
        else:
            for n in range(config.exact_samples):
                payloads.append((mode.value, n, fuchs.hermitian_triple(tetra.lattice_tetrahedron(rng), exact=True)))
    return payloads


def _float_gap(x: tetra.EdgeLengths, y: tetra.EdgeLengths) -> float:
    return max(abs(s - t) for s, t in zip(x.to_floats(), y.to_floats()))


class LemmaSuite(SuiteRunner):
    def instances(self, config, rng):
        return _triples(config, rng, hermitian=False)

    def __call__(self, config, payload):
        mode, n, triple = payload
        lemma = fuchs.verify_lemma_invariants(triple)
        traces = fuchs.verify_complex_traces(triple)
        skipped = lemma.skipped or traces.skipped
        return Outcome(
            key=[mode, n],
            passed=lemma.passed and traces.passed,
            skipped=bool(skipped),
            data={"mode": mode, "failures": lemma.failures + traces.failures, "skipped": skipped},
        )


class TheoremSuite(SuiteRunner):
    def instances(self, config, rng):
        return _triples(config, rng, hermitian=True)

    def __call__(self, config, payload):
        mode, n, triple = payload
        report = fuchs.verify_regge_correspondence(triple)
        lemma = fuchs.verify_lemma_invariants(triple)
        failures = report.failures + lemma.failures
        return Outcome(
            key=[mode, n],
            passed=not failures,
            deviation=_float_gap(report.okamoto, report.regge) if report.okamoto and report.regge else None,
            data={"mode": mode, "lengths": report.lengths, "okamoto": report.okamoto, "failures": failures},
        )


def random_backlund_seed(rng: np.random.Generator, margin: float = 0.5) -> tuple[float, float, float, tuple]:
    while True:
        t0 = rng.uniform(2.5, 4.0)
        y0 = rng.uniform(1.5, 3.0)
        y1 = rng.uniform(-1.0, 1.0)
        theta = tuple(rng.uniform(-2.0, 2.0, size=4).tolist())
        if abs(y0 - t0) < margin:
            continue
        t1, t2, t3, _ = theta
        two_x = ((t0 - 1) * y1 - t1) / y0 + (y1 - 1 - t2) / (y0 - t0) - (t0 * y1 + t3) / (y0 - 1)
        if abs(two_x / 2) >= margin:
            return float(t0), float(y0), float(y1), theta


class BacklundSuite(SuiteRunner):
    def instances(self, config, rng):
        return [(n, random_backlund_seed(rng)) for n in range(config.samples)]

    def __call__(self, config, payload):
        n, (t0, y0, y1, theta) = payload
        report = pvi.verify_backlund(t0, y0, y1, pvi.ThetaParams(*theta), config.order, config.tolerance)
        return Outcome(
            key=[n],
            passed=report.passed,
            deviation=report.max_pointwise,
            data={
                "t0": t0,
                "y0": y0,
                "y1": y1,
                "theta": theta,
                "max_pointwise": report.max_pointwise,
                "max_coefficient": report.max_coefficient,
                "double_application": report.double_application,
                "failures": report.failures,
            },
        )


class SphericalSuite(SuiteRunner):
    def instances(self, config, rng):
        return [(n, [tetra.random_su2(rng) for _ in range(3)]) for n in range(config.samples)]

    def __call__(self, config, payload):
        n, matrices = payload
        l = tetra.spherical_lengths(*matrices)
        data = {"lengths": l.to_floats()}
        try:
            image = tetra.spherical_regge(l)
        except tetra.NegativeLength as e:
            return Outcome(key=[n], passed=False, data={**data, "error": str(e)})
        margin = float(np.linalg.eigvalsh(tetra.spherical_gram(image)).min())
        passed = tetra.spherical_realizable(l, config.psd_tolerance) and tetra.spherical_realizable(
            image, config.psd_tolerance
        )
        return Outcome(key=[n], passed=passed, deviation=-min(margin, 0.0), data={**data, "regge": image.to_floats()})


class OrthogonalitySuite(SuiteRunner):
    def instances(self, config, rng):
        for a, b, c, d in itertools.product(range(config.max_label + 1), repeat=4):
            if (a + b + c + d) % 2 == 0 and racah.admissible_e(a, b, c, d):
                yield a, b, c, d

    def __call__(self, config, payload):
        defects = racah.orthogonality_defects(*payload)
        return Outcome(key=list(payload), passed=not defects, data={"abcd": list(payload), "defects": defects})


class DimsSuite(SuiteRunner):
    def instances(self, config, rng):
        for p in range(config.max_label + 1):
            for q in range(p + 1):
                for a, b in itertools.product(range(p + q + 1), repeat=2):
                    c = p + q - a - b
                    if c >= 0:
                        yield a, b, c, p, q

    def __call__(self, config, payload):
        a, b, c, p, q = payload
        count = tableaux.gt_count((p, q, 0), (a, b, c))
        dim2 = howe.multiplicity_space(2, (a, b, c), (p, q)).dim
        dim3 = howe.multiplicity_space(3, (a, b, c), (p, q, 0)).dim
        shift = howe.casimir_shift_holds((a, b, c), (p, q))
        return Outcome(
            key=list(payload),
            passed=count == dim2 == dim3 and shift,
            data={
                "mu": [a, b, c],
                "lam": [p, q],
                "gt_count": count,
                "dim2": dim2,
                "dim3": dim3,
                "casimir_shift": shift,
            },
        )


def _checked(runner: SuiteRunner, config: RunConfig, payload: Any) -> Outcome:
    try:
        return runner(config, payload)
    except Exception as e:
        logger.warning(f"{type(e).__name__} on {payload!r}: {e}", exc_info=logger.isEnabledFor(logging.DEBUG))
        return Outcome(key=[repr(payload)], passed=False, data={"error": f"{type(e).__name__}: {e}"})


def run_suite(runner: SuiteRunner, config: RunConfig) -> SuiteReport:
    rng = utils.make_rng(config.seed)
    payloads = list(runner.instances(config, rng))
    logger.info(f"{config.suite.value}: {len(payloads)} instances on {config.workers} worker(s)")

    # workers share the process-wide mp context, so its precision is fixed for the whole sweep
    with mp.workprec(config.precision_bits), ThreadPoolExecutor(max_workers=config.workers) as executor:
        outcomes = list(executor.map(lambda payload: _checked(runner, config, payload), payloads))
    outcomes.sort(key=lambda outcome: [(isinstance(k, str), k) for k in outcome.key])

    deviations = [o.deviation for o in outcomes if o.deviation is not None]
    return SuiteReport(
        suite=config.suite,
        config=config,
        instances=len(outcomes),
        skipped=sum(1 for o in outcomes if o.skipped),
        failures=[o for o in outcomes if not o.passed],
        max_deviation=max(deviations) if deviations else None,
    )

