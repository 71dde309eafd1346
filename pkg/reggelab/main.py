import argparse
import logging
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np
import sympy as sp
from mpmath import mp
from pydantic import ValidationError

from . import config, fuchs, howe, messages, pvi, racah, tetra, utils, verify
from .models import RunConfig
from .suite_registry import suites
from .types import NumberMode, SixJLabels, Suite

logger = logging.getLogger(__name__)


class UsageError(ValueError):
    pass


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--root", type=str, help="Directory holding an optional .env settings file")
    common.add_argument("--seed", type=int, help="Seed of every randomized sample")
    common.add_argument("--precision-bits", type=int, help="mpmath working precision")
    common.add_argument("--order", type=int, help="Truncation order of power series")
    common.add_argument("--max", dest="max_label", type=int, help="Largest label of exhaustive sweeps")
    common.add_argument("--samples", type=int, help="Number of random samples")
    common.add_argument("--exact-samples", type=int, help="Number of exact samples in mixed-mode suites")
    common.add_argument("--workers", type=int, help="Worker threads for sweeps")
    common.add_argument("--json", dest="json_path", type=str, help="Also write the JSON lines to this file")
    common.add_argument("-v", "--verbose", action="count", default=0)
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const=NumberMode.Exact)
    mode.add_argument("--float", dest="mode", action="store_const", const=NumberMode.Float)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="reggelab", description="Regge symmetry and Okamoto transformation lab")
    commands = parser.add_subparsers(dest="command", required=True)

    label_commands = {
        "sixj": "6j symbol by the Racah sum",
        "u": "U recoupling coefficient",
        "orbit": "Symmetry orbit of a 6j symbol",
    }
    for name, description in label_commands.items():
        sub = commands.add_parser(name, parents=[common], help=description)
        sub.add_argument("labels", type=int, nargs=6, metavar="L")

    sub = commands.add_parser("verify", parents=[common], help="Run an invariant sweep")
    sub.add_argument("suite", type=Suite, choices=list(Suite))

    sub = commands.add_parser("tetra", parents=[common], help="Tetrahedron geometry")
    sub.add_argument("action", choices=["cm", "realize", "regge"])
    sub.add_argument("lengths", type=str, nargs=6, metavar="LENGTH")

    sub = commands.add_parser("pvi", parents=[common], help="Painleve VI series and Okamoto transformation")
    sub.add_argument("action", choices=["solve", "okamoto"])
    sub.add_argument("--t0", type=complex, required=True)
    sub.add_argument("--y0", type=complex, required=True)
    sub.add_argument("--y1", type=complex, required=True)
    sub.add_argument("--theta", type=complex, nargs=4, required=True)

    sub = commands.add_parser("fuchs", parents=[common], help="Trace coordinates of residue triples")
    sub.add_argument("action", choices=["coords", "okamoto", "reconstruct"])
    source = sub.add_mutually_exclusive_group(required=True)
    source.add_argument("--vectors", type=str, nargs=9, metavar="X", help="Edge vectors a1, a2, a3")
    source.add_argument("--random", action="store_true", help="Sample a Hermitian triple from the seed")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    settings = config.settings
    suite: Optional[Suite] = getattr(args, "suite", None)
    max_label = args.max_label
    samples = args.samples
    exact_samples = None
    if suite is not None:
        info = suites[suite]
        if info.bound == "max_label":
            max_label = max_label if max_label is not None else settings.max_labels[suite.value]
            samples = None
        else:
            samples = samples if samples is not None else settings.samples[suite.value]
            max_label = None
        if info.mixed_modes:
            exact_samples = args.exact_samples if args.exact_samples is not None else settings.exact_samples

    labels = getattr(args, "labels", None)
    if labels is not None and any(x < 0 for x in labels):
        raise UsageError(f"labels must be nonnegative, got {labels}")
    for name, value in (("max", max_label), ("samples", samples), ("exact-samples", exact_samples)):
        if value is not None and value < 0:
            raise UsageError(f"--{name} must be nonnegative, got {value}")

    return RunConfig(
        command=args.command,
        suite=suite,
        labels=labels,
        max_label=max_label,
        samples=samples,
        exact_samples=exact_samples,
        seed=args.seed if args.seed is not None else settings.seed,
        precision_bits=args.precision_bits if args.precision_bits is not None else settings.precision_bits,
        order=args.order if args.order is not None else settings.order,
        mode=args.mode,
        workers=args.workers if args.workers is not None else settings.workers,
        tolerance=settings.tolerance,
        psd_tolerance=settings.psd_tolerance,
        json_path=args.json_path or settings.output_path,
    )


def emit(lines: Sequence[str], json_path: Optional[str]) -> None:
    for line in lines:
        print(line)
    if json_path:
        with open(json_path, "w") as f:
            f.writelines(line + "\n" for line in lines)


def _parse_number(text: str, exact: bool):
    try:
        return Fraction(text) if exact else float(Fraction(text))
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"{text!r} is not a rational number") from e


def _matrix(M) -> Any:
    if isinstance(M, sp.MatrixBase):
        return [[str(fuchs._canon(x)) for x in M.row(i)] for i in range(M.rows)]
    return np.asarray(M, dtype=complex)


def _triple_data(T: fuchs.MatrixTriple) -> dict[str, Any]:
    return {f"A{n}": _matrix(A) for n, A in enumerate(T.residues(), start=1)}


def cmd_sixj(run: RunConfig) -> list[str]:
    l = SixJLabels(*run.labels)
    value = racah.sixj(l)
    data = {
        "labels": run.labels,
        "valid": racah.is_valid(l),
        "failing_triads": racah.failing_triads(l),
        "value": value,
        "u": racah.u_coeff(l),
        "float": float(value),
    }
    return [messages.build_record(run.command, run, data)]


def cmd_u(run: RunConfig) -> list[str]:
    l = SixJLabels(*run.labels)
    if not racah.is_valid(l):
        raise UsageError(f"{l} fails the triads {racah.failing_triads(l)}")
    u = racah.u_coeff(l)
    return [messages.build_record(run.command, run, {"labels": run.labels, "u": u, "float": float(u)})]


def cmd_orbit(run: RunConfig) -> list[str]:
    l = SixJLabels(*run.labels)
    if not racah.is_valid(l):
        raise UsageError(f"{l} fails the triads {racah.failing_triads(l)}")
    orbit = sorted(racah.symmetry_orbit(l))
    values = {racah.sixj(m) for m in orbit}
    data = {
        "labels": run.labels,
        "orbit": [m.as_tuple() for m in orbit],
        "size": len(orbit),
        "value": racah.sixj(l),
        "constant": len(values) == 1,
    }
    return [messages.build_record(run.command, run, data)]


def cmd_verify(run: RunConfig) -> tuple[list[str], bool]:
    runner = suites[run.suite].cls()
    with utils.Timer(f"verify {run.suite.value}"):
        report = verify.run_suite(runner, run)
    lines = [messages.build_failure(run.suite.value, outcome) for outcome in report.failures]
    lines.append(messages.build_summary(report))
    logger.info(f"{run.suite.value}: {report.instances} instances, {len(report.failures)} failures")
    return lines, report.passed


def cmd_tetra(run: RunConfig, action: str, lengths: Sequence[str]) -> list[str]:
    exact = run.mode == NumberMode.Exact
    l = tetra.EdgeLengths(*(_parse_number(x, exact) for x in lengths))
    if any(x < 0 for x in l):
        raise UsageError(f"lengths must be nonnegative, got {lengths}")
    data: dict[str, Any] = {"lengths": list(l), "euclidean": tetra.is_euclidean_tetra(l)}
    if action == "cm":
        data["det"] = tetra.cayley_menger_det(l)
    elif action == "regge":
        image = tetra.regge_lengths(l)
        data.update(
            {
                "regge": list(image),
                "det": tetra.cayley_menger_det(l),
                "regge_det": tetra.cayley_menger_det(image),
                "regge_euclidean": tetra.is_euclidean_tetra(image),
            }
        )
    else:
        data["vectors"] = tetra.realize_from_lengths(l)
    return [messages.build_record(f"{run.command} {action}", run, data)]


def cmd_pvi(
    run: RunConfig, action: str, t0: complex, y0: complex, y1: complex, theta: Sequence[complex]
) -> tuple[list[str], bool]:
    data: dict[str, Any] = {"t0": t0, "y0": y0, "y1": y1, "theta": list(theta)}
    passed = True
    with mp.workprec(run.precision_bits):
        theta = pvi.ThetaParams(*theta).lift()
        P = pvi.params_from_theta(theta)
        y = pvi.series_solution(t0, y0, y1, P, run.order)
        data["params"] = list(P)
        data["coeffs"] = y.coeffs
        if action == "solve":
            data["residual"] = pvi.relative_residual(y, P)
        else:
            image, shifted = pvi.okamoto_transform(y, theta)
            report = pvi.verify_backlund(t0, y0, y1, theta, run.order, run.tolerance)
            passed = report.passed
            data.update(
                {
                    "okamoto_theta": list(shifted),
                    "okamoto_coeffs": image.coeffs,
                    "max_pointwise": report.max_pointwise,
                    "max_coefficient": report.max_coefficient,
                    "double_application": report.double_application,
                    "failures": report.failures,
                }
            )
    return [messages.build_record(f"{run.command} {action}", run, data)], passed


def _triple(run: RunConfig, vectors: Optional[Sequence[str]]) -> fuchs.MatrixTriple:
    exact = run.mode == NumberMode.Exact
    if vectors is None:
        rng = utils.make_rng(run.seed)
        if exact:
            return fuchs.hermitian_triple(tetra.lattice_tetrahedron(rng), exact=True)
        return fuchs.hermitian_triple(verify.random_hermitian_vectors(rng))
    values = [_parse_number(x, exact) for x in vectors]
    return fuchs.hermitian_triple([values[0:3], values[3:6], values[6:9]], exact=exact)


def cmd_fuchs(run: RunConfig, action: str, vectors: Optional[Sequence[str]]) -> list[str]:
    T = _triple(run, vectors)
    c = fuchs.coordinates(T)
    data: dict[str, Any] = {"triple": _triple_data(T), "coords": c.to_dict()}
    if action == "okamoto":
        shifted, image = fuchs.okamoto_triple(T)
        correspondence = fuchs.verify_regge_correspondence(T)
        data.update(
            {
                "okamoto_coords": shifted.to_dict(),
                "okamoto_triple": _triple_data(image),
                "lengths": correspondence.lengths,
                "okamoto_lengths": correspondence.okamoto,
                "regge_lengths": correspondence.regge,
                "failures": correspondence.failures,
            }
        )
    elif action == "reconstruct":
        rebuilt = fuchs.reconstruct(c)
        again = fuchs.coordinates(rebuilt, thetas=c.theta)
        data.update({"reconstructed": _triple_data(rebuilt), "reconstructed_coords": again.to_dict()})
    return [messages.build_record(f"{run.command} {action}", run, data)]


def run_command(run: RunConfig, args: argparse.Namespace) -> tuple[list[str], bool]:
    if run.command == "sixj":
        return cmd_sixj(run), True
    if run.command == "u":
        return cmd_u(run), True
    if run.command == "orbit":
        return cmd_orbit(run), True
    if run.command == "verify":
        return cmd_verify(run)
    if run.command == "tetra":
        return cmd_tetra(run, args.action, args.lengths), True
    if run.command == "pvi":
        return cmd_pvi(run, args.action, args.t0, args.y0, args.y1, args.theta)
    if run.command == "fuchs":
        return cmd_fuchs(run, args.action, args.vectors), True
    raise UsageError(f"unknown command {run.command}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Exit codes: 0 on success, 1 when a check fails or a command errors out, 2 on bad usage or configuration."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(stream=sys.stderr, level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    try:
        settings = config.load_settings(args.root)
        logger.info(f"Settings:\n{settings}")
        howe.MONOMIAL_LIMIT = settings.monomial_limit
        run = resolve_config(args)
    except (UsageError, ValidationError) as e:
        logger.error(str(e))
        print(f"reggelab: error: {e}", file=sys.stderr)
        return 2

    try:
        with utils.Timer(run.command):
            lines, passed = run_command(run, args)
    except ValueError as e:
        logger.debug("rejected input", exc_info=True)
        print(f"reggelab: error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except (ArithmeticError, MemoryError) as e:
        logger.debug("command failed", exc_info=True)
        print(f"reggelab: {type(e).__name__}: {e}", file=sys.stderr)
        emit([messages.build_error(run.command, e)], run.json_path)
        return 1
    except Exception as e:
        logger.exception(f"{run.command} raised an unexpected error")
        print(f"reggelab: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        emit([messages.build_error(run.command, e)], run.json_path)
        return 1

    emit(lines, run.json_path)
    return 0 if passed else 1
