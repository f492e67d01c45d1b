"""The two construction drivers and the deformation count.

Construction I fixes the linear block B1 and searches for the quadratic
block B2 at random; construction II fixes a linear A1 as well and draws B2
from the solutions of the linear system B1 o A2' + B2' o A1 = 0, whose rank
is the invariant N(A1). Both feed the same staged trial pipeline:

    sample -> quick filter -> Betti shape -> monad -> ideal -> smoothness

with the cheapest filter first. Every trial is driven by a
TrialStateMachine and reproducible from its seed, which is split from a
master seed by trial index.

The deformation count assembles d phi: (A', B') -> B o A' + B' o A_B as a
field matrix and compares its kernel with the orbit of the automorphism
group of the three monad terms.
"""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Any

import numpy as np
from tenacity import retry, retry_if_exception_type, stop_after_attempt

from monad_surfaces.algebra.emod import EMatrix, compose, flatten_array, flatten_rank
from monad_surfaces.algebra.extalg import (
    ExtElem,
    dim_E,
    graded_basis,
    multiplication_matrix,
    random_elem,
)
from monad_surfaces.algebra.fields import get_field
from monad_surfaces.algebra.linalg import (
    kernel_array,
    random_array,
    rank_array,
    reduce_rows,
    row_basis_array,
)
from monad_surfaces.algebra.polyring import SmoothnessReport, dimension_degree, is_smooth_surface
from monad_surfaces.config import get_settings
from monad_surfaces.domain.enums import BettiClass, SamplingScheme, TrialStage, Verdict
from monad_surfaces.domain.exceptions import (
    DegenerateSampleError,
    GroebnerBudgetExceededError,
    HomologyError,
    NotAComplexError,
    SaturationError,
    WrongBettiShapeError,
)
from monad_surfaces.domain.state_machine import TrialStateMachine
from monad_surfaces.logging_config import get_logger, trial_context
from monad_surfaces.monad import (
    SOURCE_TWISTS,
    SURFACE_DEGREE,
    TARGET_TWISTS,
    Monad,
    SurfaceIdeal,
    assemble_B,
    betti_of_B,
    build_AB,
    check_AB,
    classify_betti,
    ideal_of_surface,
)
from monad_surfaces.schemas.trial import TrialRecord

if TYPE_CHECKING:
    from collections.abc import Iterator, Sequence

    from monad_surfaces.algebra.fields import IntArray

logger = get_logger(__name__)

QUICK_FILTER_DEGREE = -3
QUICK_FILTER_RANK = 26
KERNEL_G_DIM = 12
QUOTIENT_DIM = 4

SYSTEM_ROWS = 120
SYSTEM_COLS = 140
B1_COMBINATIONS = 20

# GL4 x (GL2 x GL2 x Hom(2E(2), 2E(1))) x GL3; scalars act trivially.
GROUP_DIM = 53
# Dimension of the parameter space of B1, a general member of Hom(2E(1), 3E).
B1_PARAMETERS = 18

B2_SOURCE = (2, 2)
A1_TARGET = (2, 2)
B1_SOURCE = (1, 1)


# --- Composition matrices ---


def _blocks(rows: Sequence[int], cols: Sequence[int]) -> dict[tuple[int, int], tuple[int, int]]:
    """(offset, size) of each entry's coordinates, entry degree = rows[r] - cols[c]."""
    out, pos = {}, 0
    for r, b in enumerate(rows):
        for c, a in enumerate(cols):
            size = dim_E(b - a)
            out[(r, c)] = (pos, size)
            pos += size
    return out


def _total(blocks: dict[tuple[int, int], tuple[int, int]]) -> int:
    return sum(size for _, size in blocks.values())


def left_composition_matrix(M: EMatrix, source: Sequence[int]) -> IntArray:
    """Matrix of X -> M o X for X: sum E(source) -> sum E(M.source)."""
    unknowns = _blocks(M.source, source)
    images = _blocks(M.target, source)
    out = np.zeros((_total(images), _total(unknowns)), dtype=np.int64)
    for (r, c), (row, n_rows) in images.items():
        for k, a in enumerate(M.source):
            col, n_cols = unknowns[(k, c)]
            entry = M.entries[r][k]
            if entry.is_zero() or not n_rows or not n_cols:
                continue
            out[row : row + n_rows, col : col + n_cols] = multiplication_matrix(
                entry, a - source[c], side="left"
            )
    return out


def right_composition_matrix(N: EMatrix, target: Sequence[int]) -> IntArray:
    """Matrix of Y -> Y o N for Y: sum E(N.target) -> sum E(target)."""
    unknowns = _blocks(target, N.target)
    images = _blocks(target, N.source)
    out = np.zeros((_total(images), _total(unknowns)), dtype=np.int64)
    for (r, c), (row, n_rows) in images.items():
        for k, b in enumerate(N.target):
            col, n_cols = unknowns[(r, k)]
            entry = N.entries[k][c]
            if entry.is_zero() or not n_rows or not n_cols:
                continue
            out[row : row + n_rows, col : col + n_cols] = multiplication_matrix(
                entry, target[r] - b, side="right"
            )
    return out


def unknown_vector(X: EMatrix) -> IntArray:
    """Coordinates of X's entries in the order used by the composition matrices."""
    parts = [
        X.entries[r][c].to_vector(b - a)
        for r, b in enumerate(X.target)
        for c, a in enumerate(X.source)
        if dim_E(b - a)
    ]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def ematrix_from_vector(
    p: int, source: Sequence[int], target: Sequence[int], vec: IntArray
) -> EMatrix:
    """Inverse of :func:`unknown_vector`."""
    rows = [[ExtElem.zero(p) for _ in source] for _ in target]
    for (r, c), (pos, size) in _blocks(target, source).items():
        if size:
            rows[r][c] = ExtElem.from_vector(p, target[r] - source[c], vec[pos : pos + size])
    return EMatrix(p, tuple(source), tuple(target), tuple(tuple(row) for row in rows))


# --- Construction I sampling ---


def quick_filter_rank(B: EMatrix) -> int:
    return flatten_rank(B, QUICK_FILTER_DEGREE)


def quick_filter(B: EMatrix) -> bool:
    """The degree -3 part of B (30 x 30) has kernel and cokernel of dimension 4."""
    return quick_filter_rank(B) == QUICK_FILTER_RANK


@retry(
    stop=stop_after_attempt(get_settings().resample_attempts),
    retry=retry_if_exception_type(DegenerateSampleError),
    reraise=True,
)
def _random_quotient(B1: EMatrix, rng: np.random.Generator) -> IntArray:
    """A uniformly random 4-dimensional quotient of coker(B1) in degree -3, as a 4 x 30 map."""
    field_ = get_field(B1.p)
    cokernel = kernel_array(field_, flatten_array(B1, QUICK_FILTER_DEGREE).T)
    R = random_array(field_, (QUOTIENT_DIM, cokernel.shape[0]), rng)
    if rank_array(field_, R) < QUOTIENT_DIM:
        raise DegenerateSampleError("random quotient map is not surjective")
    return field_.matmul(R, cokernel)


def _g_matrix(f: IntArray, p: int) -> IntArray:
    """g: 3 Lambda^2 V -> U (x) W, b -> (f(b ^ e_j))_j, rows ordered by (j, u)."""
    n_rows = len(TARGET_TWISTS)
    blocks = []
    for j in range(5):
        right = multiplication_matrix(ExtElem.monomial(p, 1 << j), -2, side="right")
        blocks.append(f @ np.kron(np.eye(n_rows, dtype=np.int64), right))
    return np.concatenate(blocks, axis=0) % p


def cokernel_projection(B: EMatrix) -> IntArray:
    """f: 3 Lambda^3 V -> U, the cokernel of B in degree -3, as rows annihilating its image."""
    return kernel_array(get_field(B.p), flatten_array(B, QUICK_FILTER_DEGREE).T)


def kernel_g_dimension(B: EMatrix) -> int:
    """dim Ker g for U = coker(B) in degree -3; 12 when B passes the quick filter.

    Ker g holds the 10 columns B1 o c, c in 2V, plus the two columns of B2.

    Raises:
        DegenerateSampleError: if the cokernel does not have dimension 4.
    """
    f = cokernel_projection(B)
    if f.shape[0] != QUOTIENT_DIM:
        raise DegenerateSampleError(
            f"cokernel of B in degree {QUICK_FILTER_DEGREE} has dimension {f.shape[0]}"
        )
    return int(kernel_array(get_field(B.p), _g_matrix(f, B.p)).shape[0])


def quotient_kernel_dimension(B1: EMatrix, rng: np.random.Generator) -> int:
    """dim Ker g for a random 4-dimensional quotient of coker(B1); 10 off the search locus."""
    g = _g_matrix(_random_quotient(B1, rng), B1.p)
    return int(kernel_array(get_field(B1.p), g).shape[0])


def random_B2(
    B1: EMatrix,
    rng: np.random.Generator,
    scheme: SamplingScheme | str = SamplingScheme.GRASSMANNIAN,
) -> EMatrix:
    """A 3 x 2 block with entries in Lambda^2 V.

    The grassmannian scheme fixes a random 4-dimensional quotient U of
    coker(B1) and draws both columns from Ker g. For most U, Ker g only holds
    the combinations B1 o c and the quick filter sees rank 20; on a locus of
    codimension 4 it is larger and B may pass with cokernel exactly U. The
    raw scheme draws all 60 coefficients.
    """
    p = B1.p
    if SamplingScheme(scheme) is SamplingScheme.RAW:
        return EMatrix.random(p, B2_SOURCE, TARGET_TWISTS, rng)
    field_ = get_field(p)
    kernel = kernel_array(field_, _g_matrix(_random_quotient(B1, rng), p))
    coeffs = random_array(field_, (len(B2_SOURCE), kernel.shape[0]), rng)
    columns = field_.matmul(coeffs, kernel)
    # columns[c] holds the three Lambda^2 V entries of column c
    vec = np.concatenate([columns[c].reshape(3, 10) for c in range(len(B2_SOURCE))], axis=1)
    return ematrix_from_vector(p, B2_SOURCE, TARGET_TWISTS, vec.reshape(-1))


# --- Construction II linear system ---


@dataclass(frozen=True, eq=False)
class LinearSystem:
    """Coefficients of B1 o A2' + B2' o A1; A2' coordinates first, then B2'."""

    p: int
    matrix: IntArray
    a_columns: int

    @property
    def rows(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def cols(self) -> int:
        return int(self.matrix.shape[1])

    @cached_property
    def rank(self) -> int:
        return rank_array(get_field(self.p), self.matrix)

    @cached_property
    def solutions(self) -> IntArray:
        return kernel_array(get_field(self.p), self.matrix)

    def b_projection(self) -> IntArray:
        """Row basis of the B2' parts of all solutions."""
        basis, _ = row_basis_array(get_field(self.p), self.solutions[:, self.a_columns :])
        return basis


def build_linear_system(A1: EMatrix, B1: EMatrix) -> LinearSystem:
    left = left_composition_matrix(B1, A1.source)
    right = right_composition_matrix(A1, B1.target)
    return LinearSystem(A1.p, np.concatenate([left, right], axis=1) % A1.p, left.shape[1])


def N_invariant(A1: EMatrix, B1: EMatrix) -> int:
    return build_linear_system(A1, B1).rank


def b1_combinations(B1: EMatrix) -> tuple[IntArray, tuple[int, ...]]:
    """RREF basis of the B2' = B1 o c, c: 2E(2) -> 2E(1); always 20-dimensional."""
    field_ = get_field(B1.p)
    return row_basis_array(field_, left_composition_matrix(B1, A1_TARGET).T % B1.p)


@dataclass(frozen=True, eq=False)
class SolutionSample:
    B2: EMatrix
    N: int
    projection_dim: int

    @property
    def effective_parameters(self) -> int:
        """(140 - N - 1) - 20."""
        return SYSTEM_COLS - self.N - 1 - B1_COMBINATIONS


@retry(
    stop=stop_after_attempt(get_settings().resample_attempts),
    retry=retry_if_exception_type(DegenerateSampleError),
    reraise=True,
)
def _draw_b_part(
    projection: IntArray, combos: tuple[IntArray, tuple[int, ...]], p: int,
    rng: np.random.Generator,
) -> IntArray:
    field_ = get_field(p)
    coeffs = random_array(field_, (1, projection.shape[0]), rng)
    vec = reduce_rows(field_, field_.matmul(coeffs, projection), *combos)[0]
    nonzero = np.flatnonzero(vec)
    if not nonzero.size:
        raise DegenerateSampleError("sample lies in the span of B1 combinations")
    return field_.mul(vec, field_.inv(vec[nonzero[0]]))


def sample_B2_from_solutions(
    A1: EMatrix, B1: EMatrix, rng: np.random.Generator
) -> SolutionSample:
    """A random B2' from the solution space, reduced modulo B1 combinations and scalars."""
    system = build_linear_system(A1, B1)
    projection = system.b_projection()
    combos = b1_combinations(B1)
    if projection.shape[0] <= combos[0].shape[0]:
        raise DegenerateSampleError(f"N = {system.rank}: every solution is a B1 combination")
    vec = _draw_b_part(projection, combos, A1.p, rng)
    B2 = ematrix_from_vector(A1.p, B2_SOURCE, TARGET_TWISTS, vec)
    sample = SolutionSample(B2, system.rank, int(projection.shape[0]))
    logger.debug(
        "search.solutions.sampled", N=sample.N, projection=sample.projection_dim,
        effective_parameters=sample.effective_parameters,
    )
    return sample


def random_A1(p: int, rng: np.random.Generator) -> EMatrix:
    return EMatrix.random(p, SOURCE_TWISTS, A1_TARGET, rng)


def shared_column_A1(B1: EMatrix, count: int, rng: np.random.Generator) -> EMatrix:
    """A1 whose first ``count`` columns are combinations of B1's rows, the rest random."""
    p = B1.p
    field_ = get_field(p)
    columns = []
    for c in range(len(SOURCE_TWISTS)):
        while True:
            if c < count:
                mu = random_array(field_, (len(B1.target),), rng)
                pair = [sum((B1.entries[r][j].scale(int(mu[r])) for r in range(len(mu))),
                            ExtElem.zero(p)) for j in range(2)]
            else:
                pair = [random_elem(p, -1, rng) for _ in range(2)]
            if pair[0].is_zero() or pair[1].is_zero():
                continue
            if rank_array(field_, np.stack([e.to_vector(-1) for e in pair])) == 2:
                break
        columns.append(pair)
    rows = tuple(tuple(columns[c][r] for c in range(len(columns))) for r in range(2))
    return EMatrix(p, SOURCE_TWISTS, A1_TARGET, rows)


def random_A1_with_N(B1: EMatrix, target: int, rng: np.random.Generator) -> EMatrix:
    """Draw A1 until N(A1) == target, sharing 120 - target columns with B1's rows (at most 4)."""
    shared = min(len(SOURCE_TWISTS), SYSTEM_ROWS - target)
    attempts = get_settings().resample_attempts
    for _ in range(attempts):
        A1 = shared_column_A1(B1, shared, rng) if shared > 0 else random_A1(B1.p, rng)
        if N_invariant(A1, B1) == target:
            return A1
    raise DegenerateSampleError(f"no A1 with N = {target} in {attempts} draws")


# --- Trials ---


def trial_seed(master_seed: int, trial_index: int) -> int:
    """Per-trial seed: the first word of SeedSequence(master_seed) spawned at ``trial_index``."""
    sequence = np.random.SeedSequence(master_seed, spawn_key=(trial_index,))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def trial_rngs(seed: int) -> tuple[np.random.Generator, np.random.Generator]:
    """Independent streams for drawing the sample and for the stages after it."""
    sample, stages = np.random.SeedSequence(seed).spawn(2)
    return np.random.default_rng(sample), np.random.default_rng(stages)


@dataclass
class TrialOutcome:
    """A trial record plus the objects a certificate is built from."""

    record: TrialRecord
    B: EMatrix | None = None
    monad: Monad | None = None
    surface: SurfaceIdeal | None = None
    smoothness: SmoothnessReport | None = None


class _Rejected(Exception):
    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason


@dataclass
class _TrialRun:
    """Mutable state of one trial while its stages run."""

    fields: dict[str, Any]
    until: TrialStage
    machine: TrialStateMachine = field(default_factory=TrialStateMachine)
    timings: dict[str, float] = field(default_factory=dict)

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = round(time.perf_counter() - start, 4)

    def advance(self, event: str) -> bool:
        """Fire ``event``; True when the requested final stage has been reached."""
        getattr(self.machine, event)()
        return self.machine.status == self.until.value

    def record(self, reason: str | None = None) -> TrialRecord:
        failed = None
        if reason is not None:
            failed = TrialStage(self.machine.status)
            self.machine.reject()
        return TrialRecord(
            stage=TrialStage(self.machine.status),
            failed_stage=failed,
            reason=reason,
            timings=self.timings,
            **self.fields,
        )


def _stages(B: EMatrix, run: _TrialRun, rng: np.random.Generator, found: dict[str, Any]) -> None:
    """Run stages until ``run.until``; objects built on the way go into ``found``."""
    with run.stage("quick_filter"):
        rank = quick_filter_rank(B)
    run.fields["quick_filter_rank"] = rank
    if rank != QUICK_FILTER_RANK:
        raise _Rejected(f"quick filter rank {rank}")
    if run.advance("rank_filter_passed"):
        return

    with run.stage("betti"):
        _, table = betti_of_B(B)
    betti_class = classify_betti(table)
    run.fields["betti_class"] = betti_class
    run.fields["betti"] = table.to_dict()
    if betti_class is not BettiClass.HIT:
        raise _Rejected(f"betti class {betti_class.value}")
    if run.advance("betti_accepted"):
        return

    with run.stage("monad"):
        A = build_AB(B)
        ab = check_AB(A)
        if not ab.passed:
            raise _Rejected(f"syzygies of A_B {ab.syzygy_twists}")
        monad = Monad(A, B)
        monad.check_complex()
    found["monad"] = monad
    if run.advance("monad_assembled"):
        return

    with run.stage("ideal"):
        surface = ideal_of_surface(monad, rng=rng)
        dim, degree = dimension_degree(surface.ideal)
    found["surface"] = surface
    if (dim, degree) != (2, SURFACE_DEGREE):
        raise _Rejected(f"ideal has dimension {dim} and degree {degree}")
    if run.advance("ideal_extracted"):
        return

    with run.stage("smoothness"):
        smoothness = is_smooth_surface(surface.ideal, rng=rng)
    found["smoothness"] = smoothness
    if smoothness.verdict is not Verdict.SMOOTH:
        raise _Rejected(f"smoothness {smoothness.verdict.value} via {smoothness.method}")
    run.advance("certified")


def run_monad_stages(B: EMatrix, run: _TrialRun, rng: np.random.Generator) -> TrialOutcome:
    """Quick filter, Betti shape, monad, ideal and smoothness for an assembled B."""
    found: dict[str, Any] = {}
    reason = None
    try:
        _stages(B, run, rng, found)
    except _Rejected as exc:
        reason = exc.reason
    except (
        WrongBettiShapeError,
        NotAComplexError,
        HomologyError,
        SaturationError,
        GroebnerBudgetExceededError,
    ) as exc:
        reason = f"{exc.code}: {exc.message}"
    record = run.record(reason)
    if reason:
        logger.info("search.trial.rejected", stage=record.failed_stage, reason=reason)
    else:
        logger.info("search.trial.accepted", stage=record.stage)
    return TrialOutcome(record, B, **found)


def construct1_trial(
    trial_index: int,
    master_seed: int,
    B1: EMatrix,
    *,
    scheme: SamplingScheme | str = SamplingScheme.GRASSMANNIAN,
    until: TrialStage = TrialStage.CERTIFIED,
    B2: EMatrix | None = None,
    seed: int | None = None,
) -> TrialOutcome:
    """One construction-I trial; ``B2`` replaces the random draw when given.

    ``seed`` overrides the seed split from (master_seed, trial_index), for replays.
    """
    seed = trial_seed(master_seed, trial_index) if seed is None else seed
    sample_rng, rng = trial_rngs(seed)
    with trial_context(trial_index, seed):
        run = _TrialRun(
            {"trial_index": trial_index, "seed": seed, "p": B1.p, "construction": "I",
             "scheme": SamplingScheme(scheme).value if B2 is None else "fixed"},
            until,
        )
        with run.stage("sample"):
            try:
                B2 = B2 if B2 is not None else random_B2(B1, sample_rng, scheme)
            except DegenerateSampleError as exc:
                return TrialOutcome(run.record(f"{exc.code}: {exc.message}"))
        run.fields["B2"] = B2.to_strings()
        return run_monad_stages(assemble_B(B2, B1), run, rng)


def construct2_pipeline(
    A1: EMatrix,
    B1: EMatrix,
    *,
    trial_index: int = 0,
    master_seed: int = 0,
    until: TrialStage = TrialStage.CERTIFIED,
    seed: int | None = None,
) -> TrialOutcome:
    """Sample B2 from the linear system of A1 and run the monad stages."""
    seed = trial_seed(master_seed, trial_index) if seed is None else seed
    sample_rng, rng = trial_rngs(seed)
    with trial_context(trial_index, seed):
        run = _TrialRun(
            {"trial_index": trial_index, "seed": seed, "p": A1.p, "construction": "II",
             "scheme": "solutions"},
            until,
        )
        with run.stage("sample"):
            try:
                sample = sample_B2_from_solutions(A1, B1, sample_rng)
            except DegenerateSampleError as exc:
                run.fields["N"] = N_invariant(A1, B1)
                return TrialOutcome(run.record(f"{exc.code}: {exc.message}"))
        run.fields["N"] = sample.N
        run.fields["B2"] = sample.B2.to_strings()
        return run_monad_stages(assemble_B(sample.B2, B1), run, rng)


# --- Deformations ---


def _unit(p: int, source: Sequence[int], target: Sequence[int], r: int, c: int,
          mask: int) -> EMatrix:
    rows = [[ExtElem.zero(p) for _ in source] for _ in target]
    rows[r][c] = ExtElem.monomial(p, mask)
    return EMatrix(p, tuple(source), tuple(target), tuple(tuple(row) for row in rows))


def endomorphism_basis(p: int, twists: Sequence[int]) -> list[EMatrix]:
    """Basis of the degree-0 endomorphisms of sum E(twists)."""
    return [
        _unit(p, twists, twists, r, c, mask)
        for r, b in enumerate(twists)
        for c, a in enumerate(twists)
        if dim_E(b - a)
        for mask in graded_basis(b - a)
    ]


@dataclass(frozen=True)
class ModuliReport:
    """tangent = dim ker d phi - (group dim - 1)."""

    kernel_dim: int
    group_dim: int
    lie_rank: int
    lie_in_kernel: bool
    N: int | None = None

    @property
    def tangent_dim(self) -> int:
        return self.kernel_dim - (self.group_dim - 1)

    @property
    def moduli_dim(self) -> int:
        return self.tangent_dim - B1_PARAMETERS

    @property
    def family_dim(self) -> int | None:
        return None if self.N is None else self.N - 99

    @property
    def codimension(self) -> int | None:
        return None if self.N is None else SYSTEM_ROWS - self.N

    def to_dict(self) -> dict[str, Any]:
        return {
            "kernel_dim": self.kernel_dim,
            "group_dim": self.group_dim,
            "lie_rank": self.lie_rank,
            "lie_in_kernel": self.lie_in_kernel,
            "tangent_dim": self.tangent_dim,
            "moduli_dim": self.moduli_dim,
            "N": self.N,
            "family_dim": self.family_dim,
            "codimension": self.codimension,
        }


def differential_matrix(A: EMatrix, B: EMatrix) -> IntArray:
    """d phi as a 120 x 210 matrix; A' coordinates first, then B'."""
    left = left_composition_matrix(B, A.source)
    right = right_composition_matrix(A, B.target)
    return np.concatenate([left, right], axis=1) % A.p


def group_directions(A: EMatrix, B: EMatrix) -> IntArray:
    """(g A - A f, h B - B g) for basis elements f, g, h of the three endomorphism algebras."""
    p = A.p
    zero_A = np.zeros(len(unknown_vector(A)), dtype=np.int64)
    zero_B = np.zeros(len(unknown_vector(B)), dtype=np.int64)
    directions = []
    for f in endomorphism_basis(p, A.source):
        directions.append(np.concatenate([unknown_vector(compose(A, f).scale(-1)), zero_B]))
    for g in endomorphism_basis(p, A.target):
        directions.append(np.concatenate([
            unknown_vector(compose(g, A)), unknown_vector(compose(B, g).scale(-1)),
        ]))
    for h in endomorphism_basis(p, B.target):
        directions.append(np.concatenate([zero_A, unknown_vector(compose(h, B))]))
    return np.array(directions, dtype=np.int64) % p


def tangent_dimension(A: EMatrix, B: EMatrix, N: int | None = None) -> ModuliReport:
    field_ = get_field(A.p)
    dphi = differential_matrix(A, B)
    kernel_dim = dphi.shape[1] - rank_array(field_, dphi)
    directions = group_directions(A, B)
    in_kernel = not field_.matmul(dphi, directions.T).any()
    report = ModuliReport(
        kernel_dim, directions.shape[0], rank_array(field_, directions), in_kernel, N
    )
    if report.group_dim != GROUP_DIM:
        logger.warning("search.tangent.group_dim", computed=report.group_dim, expected=GROUP_DIM)
    logger.info("search.tangent", **report.to_dict())
    return report
