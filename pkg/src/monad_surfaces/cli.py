"""monad-surfaces command line.

Subcommands:
    construct1   random search for B2 over a fixed B1 (or --replay a certificate)
    construct2   the linear-system pipeline for a fixed A1
    verify       re-run the checks of a certificate
    intersect    count the intersection points of the two Veronese images
    tangent      tangent-space and moduli dimensions of a certified monad
    adjunction   audit a hyperplane class and run the adjunction chain
    stats        summarize a trials.jsonl file

Exit status is 0 when everything requested passed, 1 on a check mismatch and
2 on invalid input or an exhausted budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np

from monad_surfaces.adjunction import FAMILIES, DivisorClass, verify_family
from monad_surfaces.config import get_settings
from monad_surfaces.domain.enums import CheckType, SamplingScheme, TrialStage
from monad_surfaces.domain.exceptions import (
    CertificateMismatchError,
    DegenerateSampleError,
    InfiniteIntersectionError,
    MonadSurfacesError,
)
from monad_surfaces.fixtures import A1_FIXTURES, load_matrix
from monad_surfaces.geometry import lemma_bounds_check, zazb_intersection
from monad_surfaces.logging_config import get_logger, setup_logging
from monad_surfaces.monad import natural_table
from monad_surfaces.schemas.certificate import SurfaceCertificate
from monad_surfaces.schemas.matrices import EMatrixModel
from monad_surfaces.schemas.run import RunConfig
from monad_surfaces.search import N_invariant, random_A1_with_N, tangent_dimension
from monad_surfaces.services.construction import replay, run_construct1, run_construct2
from monad_surfaces.services.stats import load_records, summarize
from monad_surfaces.services.verification import CertificateContext, VerificationService

if TYPE_CHECKING:
    from collections.abc import Sequence

    from monad_surfaces.algebra.emod import EMatrix

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_ERROR = 2


# ---------------------------------------------------------------------------
# Print helpers
# ---------------------------------------------------------------------------
def emit(payload: Any) -> None:
    """Write a report to stdout as JSON."""
    print(json.dumps(payload, indent=2, default=str))


# ---------------------------------------------------------------------------
# Inputs
# ---------------------------------------------------------------------------
def _matrix(path: str | None, fixture: str, p: int | None) -> EMatrix:
    if path is None:
        return load_matrix(fixture, p)
    model = EMatrixModel.load(Path(path))
    if p is not None and p != model.p:
        model = model.model_copy(update={"p": p})
    return model.to_ematrix()


def _A1(args: argparse.Namespace) -> EMatrix:
    if args.A1 is not None:
        return _matrix(args.A1, "", args.p)
    family = args.family or "i"
    if family not in A1_FIXTURES:
        raise DegenerateSampleError(f"no A1 fixture for family {family!r}")
    return load_matrix(A1_FIXTURES[family], args.p)


def _run_config(args: argparse.Namespace, command: str, **extra: Any) -> RunConfig:
    values: dict[str, Any] = {"p": args.p, "master_seed": args.seed, "output_dir": args.output_dir}
    values.update(extra)
    return RunConfig.from_settings(get_settings(), command, **values)


def _output_dir(config: RunConfig) -> Path | None:
    return Path(config.output_dir) if config.output_dir else None


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------
def cmd_construct1(args: argparse.Namespace) -> int:
    if args.replay:
        certificate = SurfaceCertificate.load(Path(args.replay))
        replay(certificate)
        emit({"replay": args.replay, "identical": True})
        return EXIT_OK

    B1 = _matrix(args.B1, "b1", args.p)
    config = _run_config(
        args, "construct1",
        trials=args.trials, workers=args.workers, sampling_scheme=args.scheme,
        inputs={"B1": args.B1 or "fixture:b1"},
    )
    result = run_construct1(
        config, B1,
        until=TrialStage(args.until),
        certify=not args.no_certify,
        first=args.first,
        output_dir=_output_dir(config),
    )
    emit(result.summary.model_dump() if result.summary else {})
    return EXIT_OK


def cmd_construct2(args: argparse.Namespace) -> int:
    if args.random:
        if args.target_N is None:
            raise DegenerateSampleError("--random needs --target-N")
        B1 = _matrix(args.B1, "b1", args.p)
        A1 = random_A1_with_N(B1, args.target_N, np.random.default_rng(args.seed or 0))
        source = f"random:N={args.target_N}"
    else:
        A1 = _A1(args)
        B1 = _matrix(args.B1, "b1", args.p or A1.p)
        source = args.A1 or f"fixture:{A1_FIXTURES.get(args.family or 'i')}"
    hyperplane_class = args.hyperplane_class
    if hyperplane_class is None and args.family in FAMILIES:
        hyperplane_class = FAMILIES[args.family]
    config = _run_config(
        args, "construct2", p=A1.p, inputs={"A1": source, "B1": args.B1 or "fixture:b1"}
    )

    try:
        r: int | None = zazb_intersection(A1, B1).r
    except InfiniteIntersectionError:
        r = None
    outcome, certificate = run_construct2(
        config, A1, B1,
        until=TrialStage(args.until),
        hyperplane_class=hyperplane_class,
        six_secants=args.six_secants,
        output_dir=_output_dir(config),
    )
    record = outcome.record
    report: dict[str, Any] = {
        "N": record.N,
        "r": r,
        "stage": record.stage.value,
        "failed_stage": record.failed_stage.value if record.failed_stage else None,
        "reason": record.reason,
        "betti": record.betti,
        "betti_class": record.betti_class.value if record.betti_class else None,
        "natural_table": natural_table().to_dict(),
    }
    if certificate is not None:
        report["hilbert"] = certificate.hilbert.model_dump() if certificate.hilbert else None
        report["smoothness"] = (
            certificate.smoothness.model_dump(mode="json") if certificate.smoothness else None
        )
        report["tangent"] = certificate.tangent.model_dump() if certificate.tangent else None
        report["adjunction"] = (
            certificate.adjunction.model_dump() if certificate.adjunction else None
        )
    emit(report)
    if record.failed_stage is not None:
        logger.info("cli.construct2.stopped", stage=record.failed_stage.value, reason=record.reason)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    certificate = SurfaceCertificate.load(Path(args.path))
    service = VerificationService(certificate, max_deg=get_settings().ideal_max_degree)
    report = service.verify(args.checks)
    emit(report.to_dict())
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_intersect(args: argparse.Namespace) -> int:
    A1 = _A1(args)
    B1 = _matrix(args.B1, "b1", args.p or A1.p)
    z = zazb_intersection(A1, B1, method=args.method, max_extension=args.max_extension)
    payload: dict[str, Any] = {"intersection": z.to_dict()}
    if args.lemma:
        lemma = lemma_bounds_check(
            A1, B1, N_invariant(A1, B1), r=z.r, rng=np.random.default_rng(args.seed or 0)
        )
        payload["lemma"] = lemma.to_dict()
        emit(payload)
        return EXIT_OK if lemma.passed and z.agree else EXIT_MISMATCH
    emit(payload)
    return EXIT_OK if z.agree else EXIT_MISMATCH


def cmd_tangent(args: argparse.Namespace) -> int:
    certificate = SurfaceCertificate.load(Path(args.cert))
    context = CertificateContext(certificate)
    report = tangent_dimension(context.A, context.B, certificate.N)
    emit(report.to_dict())
    return EXIT_OK


def cmd_adjunction(args: argparse.Namespace) -> int:
    text = args.hyperplane_class or FAMILIES[args.family or "i"]
    report = verify_family(DivisorClass.parse(text), six_secants=args.six_secants)
    emit(report.to_dict())
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_stats(args: argparse.Namespace) -> int:
    band = (args.band[0], args.band[1]) if args.band else None
    summary = summarize(load_records(Path(args.path)), band=band)
    emit(summary.model_dump())
    return EXIT_OK if summary.in_band is not False else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------
def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, default=None, help="Prime of the coefficient field.")
    parser.add_argument("--seed", type=int, default=None, help="Master seed.")
    parser.add_argument("--output-dir", default=None, help="Directory for records and certificates.")


def _add_A1(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--A1", default=None, help="EMatrix JSON file of the linear block A1.")
    parser.add_argument(
        "--family", choices=sorted(A1_FIXTURES), default=None,
        help="Use the shipped A1 of a family instead of a file.",
    )
    parser.add_argument("--B1", default=None, help="EMatrix JSON file of B1 (default: shipped).")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monad-surfaces",
        description="Beilinson monads for rational surfaces of degree 12 and sectional genus 13.",
    )
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ...")
    parser.add_argument("--json-logs", action="store_true", help="Emit logs as JSON lines.")
    parser.add_argument(
        "--log-stderr", action="store_true", help="Send logs to stderr, keeping stdout for data."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p1 = sub.add_parser("construct1", help="Random search for B2 over a fixed B1.")
    _add_common(p1)
    p1.add_argument("--B1", default=None, help="EMatrix JSON file of B1 (default: shipped).")
    p1.add_argument("--trials", type=int, default=None)
    p1.add_argument("--workers", type=int, default=None)
    p1.add_argument("--scheme", choices=[s.value for s in SamplingScheme], default=None)
    p1.add_argument(
        "--until", choices=[s.value for s in TrialStage if s is not TrialStage.REJECTED],
        default=TrialStage.CERTIFIED.value, help="Last stage to run.",
    )
    p1.add_argument("--no-certify", action="store_true", help="Skip writing certificates.")
    p1.add_argument(
        "--first", action="store_true", help="Stop at the first trial that reaches --until."
    )
    p1.add_argument("--replay", default=None, help="Re-derive a certificate and compare.")
    p1.set_defaults(handler=cmd_construct1)

    p2 = sub.add_parser("construct2", help="Linear-system pipeline for a fixed A1.")
    _add_common(p2)
    _add_A1(p2)
    p2.add_argument("--random", action="store_true", help="Draw A1 at random.")
    p2.add_argument("--target-N", dest="target_N", type=int, default=None)
    p2.add_argument("--class", dest="hyperplane_class", default=None)
    p2.add_argument("--six-secants", type=int, default=None)
    p2.add_argument(
        "--until", choices=[s.value for s in TrialStage if s is not TrialStage.REJECTED],
        default=TrialStage.CERTIFIED.value,
    )
    p2.set_defaults(handler=cmd_construct2)

    pv = sub.add_parser("verify", help="Re-run the checks of a certificate.")
    pv.add_argument("path")
    pv.add_argument("--checks", nargs="+", choices=[c.value for c in CheckType], default=None)
    pv.set_defaults(handler=cmd_verify)

    pi = sub.add_parser("intersect", help="Intersect the Veronese images of A1 and B1.")
    _add_common(pi)
    _add_A1(pi)
    pi.add_argument("--method", choices=["groebner", "enumeration", "both"], default="both")
    pi.add_argument("--max-extension", type=int, default=None)
    pi.add_argument("--lemma", action="store_true", help="Also check the N + r bounds.")
    pi.set_defaults(handler=cmd_intersect)

    pt = sub.add_parser("tangent", help="Tangent-space dimension of a certified monad.")
    pt.add_argument("--cert", required=True)
    pt.set_defaults(handler=cmd_tangent)

    pa = sub.add_parser("adjunction", help="Audit a hyperplane class.")
    pa.add_argument("--class", dest="hyperplane_class", default=None)
    pa.add_argument("--family", choices=sorted(FAMILIES), default=None)
    pa.add_argument("--six-secants", type=int, default=None)
    pa.set_defaults(handler=cmd_adjunction)

    ps = sub.add_parser("stats", help="Summarize a trials.jsonl file.")
    ps.add_argument("path")
    ps.add_argument("--band", type=int, nargs=2, default=None, metavar=("LOW", "HIGH"))
    ps.set_defaults(handler=cmd_stats)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    setup_logging(
        log_level=args.log_level or settings.log_level,
        json_logs=args.json_logs or settings.json_logs,
        to_stderr=args.log_stderr,
    )
    try:
        return int(args.handler(args))
    except CertificateMismatchError as exc:
        print(f"{exc.code}: {exc.message}", file=sys.stderr)
        return EXIT_MISMATCH
    except MonadSurfacesError as exc:
        print(f"{exc.code}: {exc.message}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"IO_ERROR: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
