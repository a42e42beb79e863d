"""
Hopf module service.
Entwined T(C)-modules for T = A (x) -, the comparison functor K_{g,C},
coinvariants, the canonical map M^co (x) A -> M, hom spaces and the bounded
search for modules where the canonical map fails.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from hopfkit.config import settings
from hopfkit.errors import DimensionMismatch, InconsistencyError
from hopfkit.exact import (
    ExactMatrix,
    compose,
    flip,
    hstack,
    identity,
    is_invertible,
    kernel_basis,
    kron,
    vectorize,
    vstack,
)
from hopfkit.models import AxiomReport
from hopfkit.services.bialgebra_service import (
    Bialgebra,
    Comonoid,
    GrouplikeElement,
    compare_maps,
    grouplike_basis,
    lift_grouplike,
    tensor_comonoid,
    trivial_comonoid,
    unit_grouplike,
)
from hopfkit.services.fusion_service import build_chi, entwining_component, fusion_right

logger = logging.getLogger(__name__)

SEARCH_ENTRIES = (-1, 0, 1)


@dataclass(frozen=True)
class EntwinedModule:
    """
    (V, h, rho): action h: A (x) V -> V and coaction rho: V -> V (x) T(C).

    tc_dim is the dimension of T(C) = A (x) C.
    """

    dim_v: int
    action: ExactMatrix
    coaction: ExactMatrix
    tc_dim: int

    def __post_init__(self):
        if self.coaction.shape != (self.dim_v * self.tc_dim, self.dim_v):
            raise DimensionMismatch(
                f"coaction must be {self.dim_v * self.tc_dim}x{self.dim_v}, got {self.coaction.shape}"
            )
        if self.action.rows != self.dim_v or self.action.cols % max(self.dim_v, 1) != 0:
            raise DimensionMismatch(f"action must be {self.dim_v}x(dim A * {self.dim_v}), got {self.action.shape}")


@dataclass(frozen=True)
class HomSpace:
    basis: Tuple[ExactMatrix, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _check_shapes(b: Bialgebra, c: Comonoid, m: EntwinedModule) -> None:
    if m.action.shape != (m.dim_v, b.dim * m.dim_v):
        raise DimensionMismatch(f"action must be {m.dim_v}x{b.dim * m.dim_v}, got {m.action.shape}")
    if m.tc_dim != b.dim * c.dim:
        raise DimensionMismatch(f"module coacts over a {m.tc_dim}-dimensional T(C), expected {b.dim * c.dim}")


def action_report(b: Bialgebra, m: EntwinedModule, report: AxiomReport) -> None:
    n, dv = b.dim, m.dim_v
    fld = b.field
    h = m.action
    report.checks.append(compare_maps("action_unit", h @ kron(b.unit, identity(fld, dv)), identity(fld, dv), (dv,)))
    report.checks.append(compare_maps(
        "action_associative", h @ kron(b.mult, identity(fld, dv)), h @ kron(identity(fld, n), h), (n, n, dv),
    ))


def coaction_report(tc: Comonoid, m: EntwinedModule, report: AxiomReport) -> None:
    dv = m.dim_v
    fld = tc.field
    rho = m.coaction
    report.checks.append(compare_maps(
        "coaction_counit", kron(identity(fld, dv), tc.counit) @ rho, identity(fld, dv), (dv,),
    ))
    report.checks.append(compare_maps(
        "coaction_coassociative",
        kron(rho, identity(fld, tc.dim)) @ rho,
        kron(identity(fld, dv), tc.comult) @ rho,
        (dv,),
    ))


def pentagon_check(b: Bialgebra, c: Comonoid, m: EntwinedModule):
    """rho h = (h (x) T(C)) lambda_V (A (x) rho)."""
    n, dv = b.dim, m.dim_v
    fld = b.field
    lam = entwining_component(b, c, dv)
    rhs = compose(kron(m.action, identity(fld, m.tc_dim)), lam, kron(identity(fld, n), m.coaction))
    return compare_maps("pentagon", m.coaction @ m.action, rhs, (n, dv))


def verify_entwined_module(b: Bialgebra, c: Comonoid, m: EntwinedModule) -> AxiomReport:
    """Action (2), coaction (2) and the compatibility pentagon."""
    _check_shapes(b, c, m)
    report = AxiomReport(subject=f"entwined module of dim {m.dim_v}")
    action_report(b, m, report)
    coaction_report(tensor_comonoid(b, c), m, report)
    report.checks.append(pentagon_check(b, c, m))
    return report


def _t_of_g(b: Bialgebra, g: GrouplikeElement) -> ExactMatrix:
    """T(g): A -> A (x) C."""
    return kron(identity(b.field, b.dim), g.vector)


def comparison_K(b: Bialgebra, c: Comonoid, g: GrouplikeElement, dim_v: int) -> EntwinedModule:
    """
    K_{g,C}(V) = (A (x) V, m (x) V, (T(V) (x) T(g)) chi_{V,I}).

    Raises:
        InconsistencyError: if the result is not an entwined module
    """
    n = b.dim
    fld = b.field
    action = kron(b.mult, identity(fld, dim_v))
    coaction = kron(identity(fld, n * dim_v), _t_of_g(b, g)) @ build_chi(b, dim_v, 1)
    module = EntwinedModule(n * dim_v, action, coaction, n * c.dim)
    report = verify_entwined_module(b, c, module)
    if not report.passed:
        raise InconsistencyError(f"K(V) fails {report.failures()[0].name}: {report.failures()[0].witness}")
    return module


def bimonad_comparison(b: Bialgebra, dim_v: int) -> EntwinedModule:
    """
    (A (x) V, m (x) V, delta (x) V) with the coaction factor moved to the right,
    checked against K_{1,I}(V).
    """
    n = b.dim
    fld = b.field
    coaction = kron(identity(fld, n), flip(fld, n, dim_v)) @ kron(b.comult, identity(fld, dim_v))
    module = EntwinedModule(n * dim_v, kron(b.mult, identity(fld, dim_v)), coaction, n)
    c = trivial_comonoid(fld)
    expected = comparison_K(b, c, unit_grouplike(c), dim_v)
    if module != expected:
        raise InconsistencyError("delta (x) V differs from the coaction of K_{1,I}(V)")
    return module


@dataclass(frozen=True)
class ComonadMorphismComponent:
    s_g: ExactMatrix
    s_unit: ExactMatrix
    factorization_holds: bool

    @property
    def s_unit_invertible(self) -> bool:
        return is_invertible(self.s_unit)


def comonad_morphism_component(
    b: Bialgebra, c: Comonoid, g: GrouplikeElement, action: ExactMatrix, dim_v: int,
) -> ComonadMorphismComponent:
    """
    S_{K_{g,C}} = (h (x) T(C))(T(V) (x) T(g)) chi_{V,I} and S_{K_{e,I}} = (h (x) T(I)) chi_{V,I}.

    Raises:
        InconsistencyError: if S_{K_{g,C}} != (V (x) T(g)) S_{K_{e,I}}
    """
    n = b.dim
    fld = b.field
    if action.shape != (dim_v, n * dim_v):
        raise DimensionMismatch(f"action must be {dim_v}x{n * dim_v}, got {action.shape}")
    chi = build_chi(b, dim_v, 1)
    t_g = _t_of_g(b, g)
    s_g = compose(kron(action, identity(fld, n * c.dim)), kron(identity(fld, n * dim_v), t_g), chi)
    s_unit = kron(action, identity(fld, n)) @ chi
    holds = s_g == kron(identity(fld, dim_v), t_g) @ s_unit
    if not holds:
        raise InconsistencyError("S_{K_{g,C}} does not factor through S_{K_{e,I}}")
    return ComonadMorphismComponent(s_g=s_g, s_unit=s_unit, factorization_holds=holds)


def coinvariants(b: Bialgebra, m: EntwinedModule, gbar: Optional[ExactMatrix] = None) -> List[ExactMatrix]:
    """
    Basis of {v : rho(v) = v (x) g_bar}; g_bar defaults to the unit of A (C = I).
    """
    point = b.unit if gbar is None else gbar
    if point.shape != (m.tc_dim, 1):
        raise DimensionMismatch(f"grouplike point must be {m.tc_dim}x1, got {point.shape}")
    return kernel_basis(m.coaction - kron(identity(b.field, m.dim_v), point))


@dataclass(frozen=True)
class FundamentalIsoResult:
    invertible: bool
    canonical_map: ExactMatrix
    coinvariant_dim: int


def fundamental_iso_check(b: Bialgebra, m: EntwinedModule) -> FundamentalIsoResult:
    """The canonical map M^co (x) A -> M, (v, a) -> h(a (x) v), for a module over C = I."""
    n = b.dim
    fld = b.field
    basis = coinvariants(b, m)
    k = len(basis)
    if k == 0:
        return FundamentalIsoResult(False, ExactMatrix.zeros(fld, m.dim_v, 0), 0)
    K = hstack(*basis)
    canonical = compose(m.action, kron(identity(fld, n), K), flip(fld, k, n))
    return FundamentalIsoResult(is_invertible(canonical), canonical, k)


def trivial_module(b: Bialgebra, dim_v: int, sigma: ExactMatrix, gbar: Optional[ExactMatrix] = None) -> EntwinedModule:
    """V with action sigma (x) V and coaction v -> v (x) g_bar (g_bar defaults to the unit of A)."""
    point = b.unit if gbar is None else gbar
    fld = b.field
    return EntwinedModule(
        dim_v,
        kron(sigma, identity(fld, dim_v)),
        kron(identity(fld, dim_v), point),
        point.rows,
    )


def hom_space(b: Bialgebra, c: Comonoid, source: EntwinedModule, target: EntwinedModule) -> HomSpace:
    """
    Maps f: M -> N with f h_M = h_N (A (x) f) and rho_N f = (f (x) T(C)) rho_M.

    Raises:
        InconsistencyError: if a basis element fails either condition
    """
    n = b.dim
    fld = b.field
    dm, dn = source.dim_v, target.dim_v
    tc = source.tc_dim

    def defects(f: ExactMatrix) -> Tuple[ExactMatrix, ExactMatrix]:
        action = f @ source.action - target.action @ kron(identity(fld, n), f)
        coaction = target.coaction @ f - kron(f, identity(fld, tc)) @ source.coaction
        return action, coaction

    system = vectorize(lambda f: vstack(*(d.flatten() for d in defects(f))), fld, dn, dm)
    basis = tuple(v.reshape(dn, dm) for v in kernel_basis(system))
    for f in basis:
        if any(not d.is_zero() for d in defects(f)):
            raise InconsistencyError("hom-space basis element fails to commute with the structure")
    logger.debug("hom space %dx%d has dimension %d", dn, dm, len(basis))
    return HomSpace(basis)


@dataclass(frozen=True)
class FundamentalWitness:
    """A module over C = I whose canonical map is not invertible."""

    module: EntwinedModule
    coinvariant_dim: int
    canonical_map: ExactMatrix


def _candidates(fld, rows: int, cols: int):
    for values in itertools.product(SEARCH_ENTRIES, repeat=rows * cols):
        yield ExactMatrix(fld, rows, cols, tuple(fld.coerce(v) for v in values))


def _is_action(b: Bialgebra, dim_v: int, h: ExactMatrix) -> bool:
    """
    Unit and associativity of h on the blocks L_a = h(e_a (x) -), stopping at
    the first failing pair: sum_c m^c_{ab} L_c = L_a L_b.
    """
    n = b.dim
    fld = b.field
    blocks = [h.submatrix(range(dim_v), range(a * dim_v, (a + 1) * dim_v)) for a in range(n)]

    def combination(column: ExactMatrix, index: int) -> ExactMatrix:
        total = ExactMatrix.zeros(fld, dim_v, dim_v)
        for c in range(n):
            if column[c, index]:
                total = total + blocks[c].scale(column[c, index])
        return total

    if not combination(b.unit, 0).is_identity():
        return False
    for a, c in itertools.product(range(n), repeat=2):
        if combination(b.mult, a * n + c) != blocks[a] @ blocks[c]:
            return False
    return True


def _exhaustive_modules(b: Bialgebra, dim_v: int):
    """Every action and coaction with entries in SEARCH_ENTRIES, actions filtered first."""
    n = b.dim
    fld = b.field
    for h in _candidates(fld, dim_v, n * dim_v):
        if not _is_action(b, dim_v, h):
            continue
        for rho in _candidates(fld, dim_v * n, dim_v):
            yield EntwinedModule(dim_v, h, rho, n)


def _graded_actions(b: Bialgebra, dim_v: int, degrees: Tuple[int, ...], points: List[int]):
    """
    Actions that carry V_g into V_{a g}: entry (w, a dim_v + v) may be
    nonzero only when deg w is the product of e_a and deg v. The unit, when
    it is a basis vector, acts as the identity.
    """
    n = b.dim
    fld = b.field
    unit_index = next((i for i in points if b.unit == ExactMatrix.basis_vector(fld, n, i)), None)
    free, fixed = [], {}
    for a, v in itertools.product(range(n), range(dim_v)):
        col = a * dim_v + v
        if a == unit_index:
            fixed[v, col] = fld.one
            continue
        product = b.mult @ kron(ExactMatrix.basis_vector(fld, n, a), ExactMatrix.basis_vector(fld, n, degrees[v]))
        target = next((g for g in points if product == ExactMatrix.basis_vector(fld, n, g)), None)
        free.extend((w, col) for w in range(dim_v) if target is not None and degrees[w] == target)
    if len(SEARCH_ENTRIES) ** len(free) > settings.WITNESS_SEARCH_CAP:
        logger.debug("grading %s leaves %d free action entries; not enumerated", degrees, len(free))
        return
    for values in itertools.product(SEARCH_ENTRIES, repeat=len(free)):
        entries = dict(fixed)
        entries.update(zip(free, values))
        yield ExactMatrix.from_function(fld, dim_v, n * dim_v, lambda w, col: entries.get((w, col), 0))


def _structured_modules(b: Bialgebra, dim_v: int):
    """
    Candidates when the full coaction space is beyond WITNESS_SEARCH_CAP:
    gradings of V by grouplike basis vectors of A with the graded actions
    over them, then the free module (A (x) W, m (x) W, delta (x) W) when
    dim A divides dim V.
    """
    n = b.dim
    fld = b.field
    points = grouplike_basis(b.comonoid())
    for degrees in itertools.combinations_with_replacement(points, dim_v):
        rho = hstack(*(
            kron(ExactMatrix.basis_vector(fld, dim_v, v), ExactMatrix.basis_vector(fld, n, g))
            for v, g in enumerate(degrees)
        ))
        for h in _graded_actions(b, dim_v, degrees, points):
            if _is_action(b, dim_v, h):
                yield EntwinedModule(dim_v, h, rho, n)
    if dim_v % n == 0:
        yield bimonad_comparison(b, dim_v // n)


def find_fundamental_witness(b: Bialgebra, dim_bound: Optional[int] = None) -> Optional[FundamentalWitness]:
    """
    First entwined module over C = I whose canonical map fails to be invertible.

    Dimension 1 is searched exhaustively over entries {-1, 0, 1} when its
    coaction space fits WITNESS_SEARCH_CAP; larger dimensions, and dimension 1
    of a large A, run over graded modules and free modules.
    """
    bound = dim_bound or settings.WITNESS_DIM_BOUND
    fld = b.field
    n = b.dim
    c = trivial_comonoid(fld)
    tc = tensor_comonoid(b, c)
    for dv in range(1, bound + 1):
        exhaustive = dv == 1 and len(SEARCH_ENTRIES) ** n <= settings.WITNESS_SEARCH_CAP
        logger.debug("witness search at dimension %d: %s", dv, "exhaustive" if exhaustive else "structured")
        candidates = _exhaustive_modules(b, dv) if exhaustive else _structured_modules(b, dv)
        for module in candidates:
            report = AxiomReport(subject="candidate coaction")
            coaction_report(tc, module, report)
            if not report.passed or not pentagon_check(b, c, module).passed:
                continue
            result = fundamental_iso_check(b, module)
            if not result.invertible:
                logger.info("fundamental iso fails at a %d-dimensional module", dv)
                return FundamentalWitness(module, result.coinvariant_dim, result.canonical_map)
    return None


def lifted_point(b: Bialgebra, c: Comonoid, g: GrouplikeElement) -> ExactMatrix:
    """g_bar as a column in T(C); the coinvariant point used when C is not I."""
    return lift_grouplike(b, c, g).vector


@dataclass(frozen=True)
class GaloisGrouplikeResult:
    tg_iso: bool
    unit_galois: bool
    g_galois: bool


def galois_grouplike_check(b: Bialgebra, c: Comonoid, g: GrouplikeElement) -> GaloisGrouplikeResult:
    """
    Decide the Galois conditions at the free module (A, m): 1_I through
    S_{K_{e,I}} = H^r_{I,I}, g through S_{K_{g,C}}, and T(g) = A (x) g.

    Raises:
        InconsistencyError: if S_{K_{e,I}} differs from H^r_{I,I}, or
            g Galois disagrees with (1_I Galois and T(g) iso)
    """
    component = comonad_morphism_component(b, c, g, b.mult, b.dim)
    if component.s_unit != fusion_right(b, 1, 1):
        raise InconsistencyError("S_{K_{e,I}} at the free module differs from H^r_{I,I}")
    result = GaloisGrouplikeResult(
        tg_iso=is_invertible(_t_of_g(b, g)),
        unit_galois=component.s_unit_invertible,
        g_galois=is_invertible(component.s_g),
    )
    if result.g_galois != (result.unit_galois and result.tg_iso):
        raise InconsistencyError(f"Galois conditions disagree: {result}")
    return result


class HopfModuleService:
    """Entwined modules, the comparison functor and the fundamental theorem for one bialgebra."""

    def __init__(self, bialgebra: Bialgebra):
        self.bialgebra = bialgebra
        self.trivial = trivial_comonoid(bialgebra.field)
        self.unit_point = unit_grouplike(self.trivial)

    def comparison(self, dim_v: int) -> EntwinedModule:
        """K(V) = K_{1,I}(V)."""
        return comparison_K(self.bialgebra, self.trivial, self.unit_point, dim_v)

    def fundamental_iso(self, dim_v: int) -> FundamentalIsoResult:
        return fundamental_iso_check(self.bialgebra, self.comparison(dim_v))

    def hom_dimension(self, dim_v: int, dim_w: int) -> int:
        source, target = self.comparison(dim_v), self.comparison(dim_w)
        return hom_space(self.bialgebra, self.trivial, source, target).dimension

    def bimonad_comparison(self, dim_v: int = 1) -> EntwinedModule:
        return bimonad_comparison(self.bialgebra, dim_v)

    def factorization(self, c: Comonoid, g: GrouplikeElement, action: ExactMatrix, dim_v: int) -> bool:
        return comonad_morphism_component(self.bialgebra, c, g, action, dim_v).factorization_holds

    def witness(self, dim_bound: int) -> Optional[FundamentalWitness]:
        return find_fundamental_witness(self.bialgebra, dim_bound)

    def galois(self, c: Comonoid, g: GrouplikeElement) -> GaloisGrouplikeResult:
        return galois_grouplike_check(self.bialgebra, c, g)
