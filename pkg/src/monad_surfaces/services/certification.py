"""Build SurfaceCertificates from finished trials."""

from __future__ import annotations

from collections import Counter
from typing import TYPE_CHECKING

import numpy as np

from monad_surfaces.adjunction import DivisorClass, verify_family
from monad_surfaces.algebra.polyring import format_poly, hilbert_polynomial
from monad_surfaces.domain.enums import TrialStage
from monad_surfaces.domain.exceptions import CertificateMismatchError
from monad_surfaces.logging_config import get_logger
from monad_surfaces.monad import natural_table, residual_line, tate_left_window, tate_right_step
from monad_surfaces.schemas.certificate import (
    AdjunctionBlock,
    HilbertBlock,
    ResidualBlock,
    SmoothnessBlock,
    SurfaceCertificate,
    TangentBlock,
    TateBlock,
)
from monad_surfaces.schemas.matrices import EMatrixModel
from monad_surfaces.search import tangent_dimension

if TYPE_CHECKING:
    from monad_surfaces.algebra.emod import EMatrix
    from monad_surfaces.schemas.run import RunConfig
    from monad_surfaces.search import TrialOutcome

logger = get_logger(__name__)

_CERTIFIABLE = (TrialStage.IDEAL_EXTRACTED, TrialStage.CERTIFIED)


def _str_keys(counts: dict[int, int]) -> dict[str, int]:
    return {str(t): n for t, n in sorted(counts.items())}


def adjunction_block(hyperplane_class: str, six_secants: int | None = None) -> AdjunctionBlock:
    """Numerical ledger of a hyperplane class: invariants and its adjunction chain."""
    family = verify_family(DivisorClass.parse(hyperplane_class), six_secants=six_secants)
    return AdjunctionBlock(
        hyperplane_class=str(family.H),
        six_secants=six_secants,
        degree=family.invariants.degree,
        sectional_genus=family.invariants.sectional_genus,
        chain_length=family.chain.length if family.chain else None,
        final_degree=family.chain.final.degree if family.chain else None,
    )


def build_certificate(
    outcome: TrialOutcome,
    B1: EMatrix,
    *,
    A1: EMatrix | None = None,
    run: RunConfig | None = None,
    hyperplane_class: str | None = None,
    six_secants: int | None = None,
    tangent: bool = True,
    residual: bool = True,
) -> SurfaceCertificate:
    """Certificate of a trial that got at least as far as the ideal.

    Raises:
        CertificateMismatchError: if the trial stopped before the ideal was extracted.
    """
    record = outcome.record
    if record.stage not in _CERTIFIABLE or outcome.monad is None or outcome.surface is None:
        raise CertificateMismatchError(
            f"trial {record.trial_index} stopped at {record.stage.value}",
            {"stage": record.stage.value, "reason": record.reason},
        )
    monad, surface = outcome.monad, outcome.surface
    p = monad.p

    hilbert = hilbert_polynomial(surface.ideal).to_dict()
    hilbert_block = HilbertBlock(
        polynomial=hilbert["polynomial"],
        dimension=hilbert["dimension"],
        degree=hilbert["degree"],
        sectional_genus=hilbert["sectional_genus"],
        chi=hilbert["chi"],
        generator_degrees={str(d): n for d, n in sorted(surface.generator_degrees().items())},
        generators=surface.ideal.to_strings(),
    )

    window = [_str_keys(term) for term in tate_left_window(monad, 1)]
    right = _str_keys(dict(Counter(tate_right_step(monad.A).target)))

    certificate = SurfaceCertificate(
        construction=record.construction,
        p=p,
        trial_index=record.trial_index,
        seed=record.seed,
        run=run,
        B1=EMatrixModel.from_ematrix(B1),
        B2=EMatrixModel.from_ematrix(monad.B2),
        A1=EMatrixModel.from_ematrix(A1) if A1 is not None else None,
        A=EMatrixModel.from_ematrix(monad.A),
        betti=record.betti,
        betti_class=record.betti_class,
        ab_passed=True,
        quick_filter_rank=record.quick_filter_rank,
        N=record.N,
        sections={str(s.k): s.dimensions() for s in surface.sections},
        natural_table=natural_table().to_dict(),
        tate=TateBlock(left_window=window, right_step=right),
        hilbert=hilbert_block,
    )

    if outcome.smoothness is not None:
        certificate.smoothness = SmoothnessBlock(
            verdict=outcome.smoothness.verdict,
            method=outcome.smoothness.method,
            singular_dimension=outcome.smoothness.singular_dimension,
        )
    if residual:
        rng = np.random.default_rng(record.seed)
        line = residual_line(surface.quintics(), surface.ideal, rng=rng)
        certificate.residual = ResidualBlock(
            dimension=line.dimension,
            degree=line.degree,
            linear_forms=[format_poly(f, p) for f in line.linear_forms],
        )
    if tangent:
        report = tangent_dimension(monad.A, monad.B, record.N)
        certificate.tangent = TangentBlock(
            kernel_dim=report.kernel_dim,
            group_dim=report.group_dim,
            tangent_dim=report.tangent_dim,
            moduli_dim=report.moduli_dim if record.construction == "I" else None,
            N=report.N,
            family_dim=report.family_dim,
            codimension=report.codimension,
        )
    if hyperplane_class is not None:
        certificate.adjunction = adjunction_block(hyperplane_class, six_secants)
    logger.info("certification.built", trial_index=record.trial_index, stage=record.stage.value)
    return certificate
