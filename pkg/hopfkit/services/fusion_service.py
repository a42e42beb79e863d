"""
Fusion service.
The opmonoidal monad T = A (x) - of a bialgebra: chi, the fusion operators,
Galois maps, the antipode solver, the Hopf cross-check, the entwining
lambda^C and augmentations.
"""
import itertools
import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from hopfkit.errors import InconsistencyError
from hopfkit.exact import (
    ExactMatrix,
    NoSolution,
    NotInvertible,
    SparseMatrix,
    as_sparse,
    compose,
    flip,
    identity,
    kernel_basis,
    kron,
    kron_all,
    solve_affine,
    sparse_compose,
    sparse_identity,
    sparse_kron,
    try_inverse,
    vstack,
)
from hopfkit.models import AxiomReport
from hopfkit.services.bialgebra_service import (
    Bialgebra,
    Comonoid,
    compare_maps,
    is_cocommutative,
    is_commutative,
    tensor_comonoid,
)

logger = logging.getLogger(__name__)

PRE_HOPF_ROUTE = "decided on the unit-object component; for A (x) - every H_{-,V} is H_{-,I} (x) V"


@lru_cache(maxsize=256)
def build_chi(b: Bialgebra, dim_v: int, dim_w: int) -> ExactMatrix:
    """
    chi_{V,W} = (A (x) flip_{A,V} (x) W)(delta (x) V (x) W).

    Maps A (x) V (x) W to A (x) V (x) A (x) W.
    """
    n = b.dim
    fld = b.field
    spread = kron_all(identity(fld, n), flip(fld, n, dim_v), identity(fld, dim_w))
    return spread @ kron(b.comult, identity(fld, dim_v * dim_w))


def chi_by_basis(b: Bialgebra, dim_v: int, dim_w: int) -> ExactMatrix:
    """chi_{V,W} assembled entry by entry from the comultiplication constants."""
    n = b.dim
    D = b.comult

    def entry(row: int, col: int):
        i, rest = divmod(row, dim_v * n * dim_w)
        v, rest = divmod(rest, n * dim_w)
        j, w = divmod(rest, dim_w)
        a, rest = divmod(col, dim_v * dim_w)
        v2, w2 = divmod(rest, dim_w)
        if v != v2 or w != w2:
            return 0
        return D[i * n + j, a]

    return ExactMatrix.from_function(b.field, n * dim_v * n * dim_w, n * dim_v * dim_w, entry)


@lru_cache(maxsize=256)
def fusion_left(b: Bialgebra, dim_v: int, dim_w: int) -> ExactMatrix:
    """H^l_{V,W} = (T(V) (x) m_W) chi_{V,T(W)}, acting on A (x) V (x) A (x) W."""
    n = b.dim
    fld = b.field
    return kron_all(identity(fld, n * dim_v), b.mult, identity(fld, dim_w)) @ build_chi(b, dim_v, n * dim_w)


@lru_cache(maxsize=256)
def fusion_right(b: Bialgebra, dim_v: int, dim_w: int) -> ExactMatrix:
    """H^r_{V,W} = (m_V (x) T(W)) chi_{T(V),W}, acting on A (x) A (x) V (x) W."""
    n = b.dim
    fld = b.field
    return kron_all(b.mult, identity(fld, dim_v), identity(fld, n * dim_w)) @ build_chi(b, n * dim_v, dim_w)


def fusion_left_reconstructed(b: Bialgebra, dim_v: int, dim_w: int) -> ExactMatrix:
    """H^l_{V,W} rebuilt from H^l_{I,I} (x) V (x) W by moving V past the middle A."""
    n = b.dim
    fld = b.field
    P = kron_all(identity(fld, n), flip(fld, n, dim_v), identity(fld, dim_w))
    return compose(P, kron(fusion_left(b, 1, 1), identity(fld, dim_v * dim_w)), P.transpose())


def gamma_left(b: Bialgebra) -> ExactMatrix:
    """(A (x) m)(delta (x) A): x (x) y -> x1 (x) x2 y."""
    I = identity(b.field, b.dim)
    return kron(I, b.mult) @ kron(b.comult, I)


def gamma_right(b: Bialgebra) -> ExactMatrix:
    """(m (x) A)(A (x) delta): x (x) y -> x y1 (x) y2."""
    I = identity(b.field, b.dim)
    return kron(b.mult, I) @ kron(I, b.comult)


def is_left_pre_hopf(b: Bialgebra) -> bool:
    return isinstance(try_inverse(fusion_left(b, 1, 1)), ExactMatrix)


def is_right_pre_hopf(b: Bialgebra) -> bool:
    return isinstance(try_inverse(fusion_right(b, 1, 1)), ExactMatrix)


@dataclass(frozen=True)
class FusionReport:
    """H^l and H^r at one pair of dimensions, with inverses or ranks."""

    dim_v: int
    dim_w: int
    H_l: ExactMatrix
    H_r: ExactMatrix
    H_l_inverse: Union[ExactMatrix, NotInvertible]
    H_r_inverse: Union[ExactMatrix, NotInvertible]

    @property
    def H_l_invertible(self) -> bool:
        return isinstance(self.H_l_inverse, ExactMatrix)

    @property
    def H_r_invertible(self) -> bool:
        return isinstance(self.H_r_inverse, ExactMatrix)


def fusion_report(b: Bialgebra, dim_v: int = 1, dim_w: int = 1) -> FusionReport:
    H_l = fusion_left(b, dim_v, dim_w)
    H_r = fusion_right(b, dim_v, dim_w)
    return FusionReport(dim_v, dim_w, H_l, H_r, try_inverse(H_l), try_inverse(H_r))


def hopf_variants(b: Bialgebra, action: ExactMatrix, dim_v: int, dim_w: int) -> Tuple[ExactMatrix, ExactMatrix]:
    """
    Fusion variants for a T-module (V, h).

    Returns:
        (Hr_{V,W} = (h (x) T(W)) chi_{V,W}, Hl_{W,V} = (T(W) (x) h) chi_{W,V})
    """
    n = b.dim
    fld = b.field
    right = kron(action, identity(fld, n * dim_w)) @ build_chi(b, dim_v, dim_w)
    left = kron(identity(fld, n * dim_w), action) @ build_chi(b, dim_w, dim_v)
    return right, left


# Opmonoidal structure

@dataclass(frozen=True)
class OpmonoidalData:
    """chi and theta of the opmonoidal monad A (x) -."""

    source: Bialgebra

    def chi(self, dim_v: int, dim_w: int) -> ExactMatrix:
        return build_chi(self.source, dim_v, dim_w)

    @property
    def theta(self) -> ExactMatrix:
        return self.source.counit

    def matches_definition(self, dim_v: int, dim_w: int) -> bool:
        return self.chi(dim_v, dim_w) == chi_by_basis(self.source, dim_v, dim_w)


def opmonoidal_axioms(b: Bialgebra, dims: Sequence[int] = (1, 2)) -> AxiomReport:
    """
    Check chi and theta against the opmonoidal monad axioms for every
    combination of the given dimensions.
    """
    n = b.dim
    fld = b.field
    M, u, eps = b.mult, b.unit, b.counit
    data = OpmonoidalData(b)
    report = AxiomReport(subject=f"opmonoidal {b.name or 'A (x) -'}")

    def I(size: int) -> ExactMatrix:
        return identity(fld, size)

    for dv in dims:
        report.checks.append(compare_maps(
            f"theta_left_unit[{dv}]", kron(eps, I(n * dv)) @ data.chi(1, dv), I(n * dv), (n, dv),
        ))
        report.checks.append(compare_maps(
            f"theta_right_unit[{dv}]", kron(I(n * dv), eps) @ data.chi(dv, 1), I(n * dv), (n, dv),
        ))
    for dv, dw in itertools.product(dims, repeat=2):
        report.checks.append(compare_maps(
            f"chi_definition[{dv},{dw}]", data.chi(dv, dw), chi_by_basis(b, dv, dw), (n, dv, dw),
        ))
        report.checks.append(compare_maps(
            f"chi_multiplicative[{dv},{dw}]",
            data.chi(dv, dw) @ kron(M, I(dv * dw)),
            compose(kron_all(M, I(dv), M, I(dw)), data.chi(n * dv, n * dw), kron(I(n), data.chi(dv, dw))),
            (n, n, dv, dw),
        ))
        report.checks.append(compare_maps(
            f"chi_unital[{dv},{dw}]",
            data.chi(dv, dw) @ kron(u, I(dv * dw)),
            kron_all(u, I(dv), u, I(dw)),
            (dv, dw),
        ))
    for du, dv, dw in itertools.product(dims, repeat=3):
        report.checks.append(compare_maps(
            f"chi_coassociative[{du},{dv},{dw}]",
            kron(data.chi(du, dv), I(n * dw)) @ data.chi(du * dv, dw),
            kron(I(n * du), data.chi(dv, dw)) @ data.chi(du, dv * dw),
            (n, du, dv, dw),
        ))
    report.checks.append(compare_maps("theta_multiplicative", eps @ M, kron(eps, eps), (n, n)))
    report.checks.append(compare_maps("theta_unital", eps @ u, I(1)))
    return report


# Antipode

@dataclass(frozen=True)
class AntipodeResult:
    """A solved antipode. unique is False when the solution space is positive-dimensional."""

    S: ExactMatrix
    unique: bool
    solution_dimension: int


@dataclass(frozen=True)
class NoAntipode:
    """The convolution equations are inconsistent; ranks witness it."""

    rank: int
    augmented_rank: int


def convolution_equations(b: Bialgebra) -> Tuple[ExactMatrix, ExactMatrix]:
    """
    The stacked linear system in vec(S) for m (S (x) A) delta = e eps = m (A (x) S) delta.

    Returns:
        (coefficient matrix, right-hand side)
    """
    n = b.dim
    fld = b.field
    # S[a, p] is unknown a * n + p; equation rows are the row-major entries
    # of m (S (x) A) delta, then of m (A (x) S) delta.
    by_left: Dict[int, List[Tuple[int, int, object]]] = {}
    by_right: Dict[int, List[Tuple[int, int, object]]] = {}
    for (row, c), y in as_sparse(b.comult).data.items():
        p, q = divmod(row, n)
        by_right.setdefault(q, []).append((p, c, y))
        by_left.setdefault(p, []).append((q, c, y))

    def entries():
        for (r, col), x in as_sparse(b.mult).data.items():
            left, right = divmod(col, n)
            for p, c, y in by_right.get(right, ()):
                yield r * n + c, left * n + p, x * y
            for p, c, y in by_left.get(left, ()):
                yield n * n + r * n + c, right * n + p, x * y

    coefficients = SparseMatrix.from_entries(fld, 2 * n * n, n * n, entries()).to_dense()
    target = (b.unit @ b.counit).flatten()
    return coefficients, vstack(target, target)


def solve_antipode(b: Bialgebra) -> Union[AntipodeResult, NoAntipode]:
    """Solve for S; on success both convolution equations are re-checked exactly."""
    n = b.dim
    coefficients, rhs = convolution_equations(b)
    solution = solve_affine(coefficients, rhs)
    if isinstance(solution, NoSolution):
        logger.info("no antipode for %s (rank %d, augmented %d)",
                    b.name or "bialgebra", solution.rank, solution.augmented_rank)
        return NoAntipode(solution.rank, solution.augmented_rank)
    S = solution.particular.reshape(n, n)
    I = identity(b.field, n)
    unit_counit = b.unit @ b.counit
    if compose(b.mult, kron(S, I), b.comult) != unit_counit or compose(b.mult, kron(I, S), b.comult) != unit_counit:
        raise InconsistencyError("solved antipode fails the convolution equations")
    if not solution.is_unique:
        logger.warning("antipode solution space of %s has dimension %d; reporting the particular solution",
                       b.name or "bialgebra", len(solution.kernel))
    return AntipodeResult(S=S, unique=solution.is_unique, solution_dimension=len(solution.kernel))


@dataclass(frozen=True)
class ConsistencyReport:
    """The five Hopf criteria for A (x) -, which must agree."""

    antipode_exists: bool
    gamma_left_iso: bool
    gamma_right_iso: bool
    fusion_left_iso: bool
    fusion_right_iso: bool
    antipode: Union[AntipodeResult, NoAntipode]
    involutive: Optional[bool] = None
    route: str = PRE_HOPF_ROUTE

    @property
    def values(self) -> Dict[str, bool]:
        return {
            "antipode_exists": self.antipode_exists,
            "gamma_left_iso": self.gamma_left_iso,
            "gamma_right_iso": self.gamma_right_iso,
            "fusion_left_iso": self.fusion_left_iso,
            "fusion_right_iso": self.fusion_right_iso,
        }

    @property
    def is_hopf(self) -> bool:
        return self.antipode_exists


def hopf_cross_check(b: Bialgebra) -> ConsistencyReport:
    """
    Decide Hopf-ness of A (x) - five ways and require agreement.

    Raises:
        InconsistencyError: if any two criteria disagree, or a solved antipode
            of a commutative or cocommutative bialgebra is not involutive
    """
    antipode = solve_antipode(b)
    report = ConsistencyReport(
        antipode_exists=isinstance(antipode, AntipodeResult),
        gamma_left_iso=isinstance(try_inverse(gamma_left(b)), ExactMatrix),
        gamma_right_iso=isinstance(try_inverse(gamma_right(b)), ExactMatrix),
        fusion_left_iso=is_left_pre_hopf(b),
        fusion_right_iso=is_right_pre_hopf(b),
        antipode=antipode,
    )
    if len(set(report.values.values())) != 1:
        raise InconsistencyError(f"Hopf criteria disagree for {b.name or 'bialgebra'}: {report.values}")
    if isinstance(antipode, AntipodeResult) and (is_commutative(b) or is_cocommutative(b)):
        involutive = (antipode.S @ antipode.S).is_identity()
        if not involutive:
            raise InconsistencyError("antipode of a commutative or cocommutative bialgebra is not involutive")
        report = replace(report, involutive=involutive)
    logger.info("hopf cross-check for %s: %s", b.name or "bialgebra", report.is_hopf)
    return report


# Entwining

@lru_cache(maxsize=64)
def sparse_fusion_left(b: Bialgebra, dim_v: int, dim_w: int) -> SparseMatrix:
    """
    H^l_{V,W} straight from the structure constants:
    e_i (x) v (x) e_j (x) w -> sum D[k n + l, i] M[m, l n + j] e_k (x) v (x) e_m (x) w.
    """
    n = b.dim
    D, M = as_sparse(b.comult), as_sparse(b.mult)
    splits: Dict[int, List[Tuple[int, int, object]]] = {}
    for (row, i), d in D.data.items():
        k, l = divmod(row, n)
        splits.setdefault(i, []).append((k, l, d))
    products: Dict[Tuple[int, int], List[Tuple[int, object]]] = {}
    for (m, col), x in M.data.items():
        products.setdefault(divmod(col, n), []).append((m, x))
    size = n * dim_v * n * dim_w

    def entries():
        for i, v, j, w in itertools.product(range(n), range(dim_v), range(n), range(dim_w)):
            col = ((i * dim_v + v) * n + j) * dim_w + w
            for k, l, d in splits.get(i, ()):
                for m, x in products.get((l, j), ()):
                    yield ((k * dim_v + v) * n + m) * dim_w + w, col, d * x

    return SparseMatrix.from_entries(b.field, size, size, entries())


@dataclass(frozen=True)
class EntwiningData:
    """
    The entwining lambda^C_V = H^l_{V,C} of A (x) - over the comonoid T(C).

    overrides replaces single entries of chosen components; the axiom
    checkers must notice.
    """

    bialgebra: Bialgebra
    comonoid: Comonoid
    overrides: Tuple[Tuple[int, int, int, object], ...] = field(default=())

    @property
    def tc(self) -> Comonoid:
        return tensor_comonoid(self.bialgebra, self.comonoid)

    def component(self, dim_v: int) -> ExactMatrix:
        lam = fusion_left(self.bialgebra, dim_v, self.comonoid.dim)
        for dv, i, j, value in self.overrides:
            if dv == dim_v:
                lam = lam.with_entry(i, j, value)
        return lam

    def sparse_component(self, dim_v: int) -> SparseMatrix:
        """lambda_V kept sparse; equal to component(dim_v) entry for entry."""
        lam = sparse_fusion_left(self.bialgebra, dim_v, self.comonoid.dim)
        for dv, i, j, value in self.overrides:
            if dv == dim_v:
                lam = lam.with_entry(i, j, value)
        return lam

    def mutated(self, dim_v: int, row: int, col: int) -> "EntwiningData":
        """Copy with one entry of lambda_V increased by one."""
        fld = self.bialgebra.field
        value = fld.reduce(self.sparse_component(dim_v)[row, col] + fld.one)
        return EntwiningData(self.bialgebra, self.comonoid, self.overrides + ((dim_v, row, col, value),))


def build_entwining(b: Bialgebra, c: Comonoid) -> EntwiningData:
    return EntwiningData(b, c)


def entwining_component(b: Bialgebra, c: Comonoid, dim_v: int) -> ExactMatrix:
    return build_entwining(b, c).component(dim_v)


def verify_entwining_axioms(e: EntwiningData, dim_bound: int) -> AxiomReport:
    """
    The unit, counit, pentagon and multiplication-square diagrams of lambda^C,
    checked at every component dimension up to dim_bound.

    Both sides are composed as sparse matrices; lambda at V (x) T(C) and at
    T(V) is built once per dimension.
    """
    b = e.bialgebra
    n = b.dim
    fld = b.field
    tc = e.tc
    nc = tc.dim
    M, u = as_sparse(b.mult), as_sparse(b.unit)
    counit_c, comult_c = as_sparse(tc.counit), as_sparse(tc.comult)
    report = AxiomReport(subject=f"entwining {b.name or 'A'} over C[{e.comonoid.dim}]")

    def I(size: int) -> SparseMatrix:
        return sparse_identity(fld, size)

    for dv in range(1, dim_bound + 1):
        lam = e.sparse_component(dv)
        unit_in = sparse_kron(u, I(dv * nc))
        report.checks.append(compare_maps(f"unit[{dv}]", lam @ unit_in, unit_in, (dv, nc)))
        counit_out = sparse_kron(I(n * dv), counit_c)
        report.checks.append(compare_maps(f"counit[{dv}]", counit_out @ lam, counit_out, (n, dv, nc)))
        split = sparse_kron(I(n * dv), comult_c)
        report.checks.append(compare_maps(
            f"pentagon[{dv}]",
            sparse_compose(sparse_kron(lam, I(nc)), e.sparse_component(dv * nc), split),
            split @ lam,
            (n, dv, nc),
        ))
        mult_in = sparse_kron(M, I(dv * nc))
        report.checks.append(compare_maps(
            f"multiplication[{dv}]",
            lam @ mult_in,
            sparse_compose(mult_in, e.sparse_component(n * dv), sparse_kron(I(n), lam)),
            (n, n, dv, nc),
        ))
    logger.debug("entwining axioms: %d checks, %d failures", len(report.checks), len(report.failures()))
    return report


# Augmentations

@dataclass(frozen=True)
class AugmentationReport:
    is_character: bool
    sigma_bar: Optional[ExactMatrix] = None
    sigma_bar_invertible: Optional[bool] = None
    note: str = ""


def is_character(b: Bialgebra, sigma: ExactMatrix) -> bool:
    return sigma @ b.mult == kron(sigma, sigma) and (sigma @ b.unit).is_identity()


def sigma_bar(b: Bialgebra, sigma: ExactMatrix, dim_v: int = 1) -> ExactMatrix:
    """(sigma_V (x) T(I)) chi_{V,I}: A (x) V -> V (x) A."""
    fld = b.field
    return kron_all(sigma, identity(fld, dim_v), identity(fld, b.dim)) @ build_chi(b, dim_v, 1)


def check_augmentation(b: Bialgebra, sigma: ExactMatrix, dim_v: int = 1) -> AugmentationReport:
    """
    Decide whether sigma is an augmentation and whether sigma_bar is invertible.

    Raises:
        InconsistencyError: if b is right Hopf, sigma a character, and sigma_bar singular
    """
    if sigma.shape != (1, b.dim):
        raise InconsistencyError(f"sigma must be 1x{b.dim}")
    if not is_character(b, sigma):
        return AugmentationReport(is_character=False, note="not an augmentation")
    sb = sigma_bar(b, sigma, dim_v)
    invertible = isinstance(try_inverse(sb), ExactMatrix)
    if not invertible and is_right_pre_hopf(b):
        raise InconsistencyError("sigma_bar is singular although A (x) - is right Hopf")
    return AugmentationReport(
        is_character=True,
        sigma_bar=sb,
        sigma_bar_invertible=invertible,
        note="augmentation" if invertible else "augmentation with singular sigma_bar",
    )


def characters(b: Bialgebra) -> List[ExactMatrix]:
    """Algebra characters with values in {0, 1, -1}, deduplicated, in lexicographic order."""
    fld = b.field
    seen = []
    for values in itertools.product((-1, 0, 1), repeat=b.dim):
        sigma = ExactMatrix.from_rows(fld, [values])
        if sigma not in seen and is_character(b, sigma):
            seen.append(sigma)
    return seen


def bimonad_entwining(b: Bialgebra, dim_v: int = 1) -> ExactMatrix:
    """The mixed distributive law of A (x) - over its own comonad: gamma_left (x) V."""
    return kron(gamma_left(b), identity(b.field, dim_v))


class FusionService:
    """Hopf criteria, fusion operators, augmentations and entwinings of one bialgebra."""

    def __init__(self, bialgebra: Bialgebra):
        self.bialgebra = bialgebra

    def cross_check(self) -> ConsistencyReport:
        return hopf_cross_check(self.bialgebra)

    def antipode(self) -> Union[AntipodeResult, NoAntipode]:
        return solve_antipode(self.bialgebra)

    def fusion(self, dim_v: int, dim_w: int) -> FusionReport:
        return fusion_report(self.bialgebra, dim_v, dim_w)

    def reconstructs_fusion_left(self, dim_v: int, dim_w: int) -> bool:
        """H^l_{V,W} agrees with H^l_{I,I} (x) V (x) W moved into place."""
        return fusion_left_reconstructed(self.bialgebra, dim_v, dim_w) == fusion_left(self.bialgebra, dim_v, dim_w)

    def opmonoidal(self) -> AxiomReport:
        return opmonoidal_axioms(self.bialgebra)

    def pre_hopf(self) -> Tuple[bool, bool]:
        """(left pre-Hopf, right pre-Hopf)."""
        return is_left_pre_hopf(self.bialgebra), is_right_pre_hopf(self.bialgebra)

    def gamma_left_kernel(self) -> List[ExactMatrix]:
        return kernel_basis(gamma_left(self.bialgebra))

    def characters(self) -> List[ExactMatrix]:
        return characters(self.bialgebra)

    def is_character(self, sigma: ExactMatrix) -> bool:
        return is_character(self.bialgebra, sigma)

    def augmentation(self, sigma: ExactMatrix) -> AugmentationReport:
        return check_augmentation(self.bialgebra, sigma)

    def entwining(self, comonoid: Comonoid) -> EntwiningData:
        return build_entwining(self.bialgebra, comonoid)

    def verify_entwining(self, comonoid: Comonoid, dim_bound: int) -> AxiomReport:
        return verify_entwining_axioms(self.entwining(comonoid), dim_bound)
