"""
Job worker.
Runs one command against one input and collects every finding into a Report.
"""
import logging
import time
from typing import Callable, Dict, List, Optional, Tuple

from hopfkit.config import settings
from hopfkit.errors import HopfkitError, InconsistencyError, InputError
from hopfkit.exact import ExactMatrix, field_from_label, matrix_to_wire, try_inverse
from hopfkit.models import (
    AxiomReport,
    BialgebraDocument,
    CheckResult,
    CheckStatus,
    Command,
    JobSpec,
    MonadDocument,
    PresheafDocument,
    Report,
)
from hopfkit.services import finset_service as finset
from hopfkit.services import presheaf_service as presheaves
from hopfkit.services.bialgebra_service import Bialgebra, BialgebraService
from hopfkit.services.corpus_service import load_input
from hopfkit.services.finset_service import FinsetService
from hopfkit.services.fusion_service import AntipodeResult, FusionService, NoAntipode
from hopfkit.services.hopf_module_service import HopfModuleService
from hopfkit.services.presheaf_service import PresheafService

logger = logging.getLogger(__name__)

PRESHEAF_NOTE = "presheaves on a finite poset stand in for sheaves on a space"

# Setting that holds the default and the cap of --dim-bound, per command.
DIM_BOUND_SETTINGS: Dict[Command, str] = {
    Command.FUSION: "FUSION_DIM_BOUND",
    Command.ENTWINE: "ENTWINING_DIM_BOUND",
    Command.HOPFMOD: "MODULE_DIM_BOUND",
}

MONAD_COMMANDS = (Command.VALIDATE, Command.GALOIS, Command.FINSET)


# Result helpers

def _verdict(name: str, ok: bool, witness: Optional[str] = None, **extra) -> CheckResult:
    return CheckResult(
        name=name,
        status=CheckStatus.PASS if ok else CheckStatus.FAIL,
        value=ok,
        witness=None if ok else witness,
        **extra,
    )


def _info(name: str, value, witness: Optional[str] = None) -> CheckResult:
    return CheckResult(name=name, status=CheckStatus.INFO, value=value, witness=witness)


def _axioms(prefix: str, report: AxiomReport) -> List[CheckResult]:
    return [_verdict(f"{prefix}.{c.name}", c.passed, c.witness) for c in report.checks]


def _matrix_fields(m: ExactMatrix, inverse: Optional[ExactMatrix] = None) -> dict:
    out = {"field": m.field.label, "matrix": matrix_to_wire(m)}
    if inverse is not None:
        out["inverse"] = matrix_to_wire(inverse)
    return out


def _sigma_label(sigma: ExactMatrix) -> str:
    return ",".join(str(v) for v in matrix_to_wire(sigma)[0])


# Inputs

def resolve_bounds(job: JobSpec, doc) -> JobSpec:
    """
    The job with dim_bound and max_size set to the values the command uses,
    None where it uses none.

    Raises:
        InputError: if a requested bound exceeds its configured cap
    """
    dim_bound = max_size = None
    cap_name = DIM_BOUND_SETTINGS.get(job.command)
    if cap_name is not None and isinstance(doc, BialgebraDocument):
        cap = getattr(settings, cap_name)
        if job.dim_bound is not None and job.dim_bound > cap:
            raise InputError(f"dim_bound {job.dim_bound} exceeds {cap_name}={cap}")
        dim_bound = job.dim_bound or cap
    if job.command in MONAD_COMMANDS and isinstance(doc, MonadDocument):
        max_size = job.max_size or doc.max_size
        if max_size > settings.MAX_SKELETON:
            raise InputError(f"max_size {max_size} exceeds MAX_SKELETON={settings.MAX_SKELETON}")
    return job.model_copy(update={"dim_bound": dim_bound, "max_size": max_size})


def _bialgebras(job: JobSpec, doc) -> BialgebraService:
    if not isinstance(doc, BialgebraDocument):
        raise InputError(f"command {job.command.value} needs a bialgebra input, got a {doc.kind} document")
    return BialgebraService(field_from_label(job.field if job.field is not None else doc.field))


def _bialgebra(job: JobSpec, doc) -> Tuple[BialgebraService, Bialgebra]:
    service = _bialgebras(job, doc)
    return service, service.load(doc, job.input)


# Bialgebra commands

def _validate(job: JobSpec, doc) -> List[CheckResult]:
    if isinstance(doc, MonadDocument):
        service = FinsetService(_monad(doc, job))
        laws = service.laws()
        results = _axioms("functor", service.functoriality()) + _axioms("monad", laws.axioms)
        results.append(_info("monad.skipped", ", ".join(laws.skipped) or "none"))
        return results
    if isinstance(doc, PresheafDocument):
        engine = _engine(doc)
        return [_info("poset.size", engine.poset.size), _info("inventory.size", len(engine.inventory()))]
    bialgebras, b = _bialgebra(job, doc)
    fusion = FusionService(b)
    results = _axioms("bialgebra", bialgebras.validate(b))
    if doc.comonoid is not None:
        c, g = bialgebras.comonoid(doc.comonoid)
        results += _axioms("comonoid", bialgebras.validate_comonoid(c))
        if g is not None:
            results.append(_verdict("comonoid.grouplike", True))
    for i, values in enumerate(doc.characters or []):
        sigma = ExactMatrix.from_rows(b.field, [values])
        results.append(_verdict(f"character[{i}]", fusion.is_character(sigma), "not multiplicative or not unital"))
    return results


def _hopf(job: JobSpec, doc) -> List[CheckResult]:
    _, b = _bialgebra(job, doc)
    fusion = FusionService(b)
    report = fusion.cross_check()
    results = [_info(name, value) for name, value in report.values.items()]
    if isinstance(report.antipode, AntipodeResult):
        S = report.antipode.S
        inverse = try_inverse(S)
        extra = _matrix_fields(S, inverse if isinstance(inverse, ExactMatrix) else None)
        results.append(_verdict("hopf", True, **extra))
        if report.involutive is not None:
            results.append(_info("antipode.involutive", report.involutive))
    else:
        kernel = fusion.gamma_left_kernel()
        witness = f"antipode system rank {report.antipode.rank} < augmented rank {report.antipode.augmented_rank}"
        if kernel:
            witness += f"; gamma_left kernel vector {[v[0] for v in matrix_to_wire(kernel[0])]}"
        results.append(_verdict("hopf", False, witness))
    results.append(_info("route", report.route))
    return results


def _antipode(job: JobSpec, doc) -> List[CheckResult]:
    _, b = _bialgebra(job, doc)
    solved = FusionService(b).antipode()
    if isinstance(solved, NoAntipode):
        return [_verdict("antipode", False, f"rank {solved.rank} < augmented rank {solved.augmented_rank}")]
    results = [_verdict("antipode", True, **_matrix_fields(solved.S))]
    results.append(_info("antipode.unique", solved.unique,
                         None if solved.unique else f"solution space of dimension {solved.solution_dimension}"))
    return results


def _fusion(job: JobSpec, doc) -> List[CheckResult]:
    _, b = _bialgebra(job, doc)
    fusion = FusionService(b)
    results = []
    for dv in range(1, job.dim_bound + 1):
        for dw in range(1, job.dim_bound + 1):
            report = fusion.fusion(dv, dw)
            for side, invertible, inverse in (("H_l", report.H_l_invertible, report.H_l_inverse),
                                              ("H_r", report.H_r_invertible, report.H_r_inverse)):
                witness = None if invertible else f"rank {inverse.rank} of {inverse.rows}"
                results.append(_verdict(f"{side}[{dv},{dw}]", invertible, witness))
            rebuilt = fusion.reconstructs_fusion_left(dv, dw)
            results.append(_verdict(f"H_l_reconstructed[{dv},{dw}]", rebuilt, "differs from H_l"))
    results += _axioms("opmonoidal", fusion.opmonoidal())
    left, right = fusion.pre_hopf()
    results.append(_info("left_pre_hopf", left))
    results.append(_info("right_pre_hopf", right))
    sigmas = [ExactMatrix.from_rows(b.field, [v]) for v in doc.characters] if doc.characters else fusion.characters()
    for sigma in sigmas:
        results.append(_info(f"augmentation[{_sigma_label(sigma)}]", fusion.augmentation(sigma).note))
    return results


def _entwine(job: JobSpec, doc) -> List[CheckResult]:
    bialgebras, b = _bialgebra(job, doc)
    fusion = FusionService(b)
    comonoids = [(name, c) for name, c, _ in bialgebras.pointed_comonoids(doc)]
    comonoids.append(("set2", bialgebras.set_comonoid(2)))
    results = []
    for name, c in comonoids:
        results += _axioms(f"entwining[{name}]", fusion.verify_entwining(c, job.dim_bound))
    return results


def _hopfmod(job: JobSpec, doc) -> List[CheckResult]:
    bialgebras, b = _bialgebra(job, doc)
    is_hopf = FusionService(b).cross_check().is_hopf
    modules = HopfModuleService(b)
    results = []
    for dv in range(1, job.dim_bound + 1):
        check = modules.fundamental_iso(dv)
        ok = check.invertible and check.coinvariant_dim == dv
        results.append(_verdict(f"fundamental_iso[K({dv})]", ok, f"coinvariant dimension {check.coinvariant_dim}"))
    hom_bound = min(job.dim_bound, 2)
    for dv in range(1, hom_bound + 1):
        for dw in range(1, hom_bound + 1):
            dim = modules.hom_dimension(dv, dw)
            results.append(_verdict(f"hom_dim[K({dv}),K({dw})]", dim == dv * dw, f"dimension {dim}"))
    modules.bimonad_comparison(1)
    results.append(_verdict("bimonad_comparison", True))
    actions = [("free", b.mult, b.dim)] + [
        (f"sigma[{_sigma_label(s)}]", s, 1) for s in FusionService(b).characters()
    ]
    for cname, c, g in bialgebras.pointed_comonoids(doc):
        for aname, action, dim_v in actions:
            results.append(_verdict(f"factorization[{cname},{aname}]", modules.factorization(c, g, action, dim_v)))
    witness = modules.witness(job.dim_bound)
    if witness is not None and is_hopf:
        raise InconsistencyError("canonical map fails at a module although A (x) - is Hopf")
    detail = None
    if witness is not None:
        m = witness.module
        detail = (f"module of dimension {m.dim_v}: action {matrix_to_wire(m.action)}, "
                  f"coaction {matrix_to_wire(m.coaction)}, coinvariants {witness.coinvariant_dim}")
    results.append(_verdict("fundamental_theorem", witness is None, detail))
    return results


def _galois(job: JobSpec, doc) -> List[CheckResult]:
    if isinstance(doc, MonadDocument):
        T = _monad(doc, job)
        return _table_galois(FinsetService(T), doc.carrier_bound, T.name)
    if isinstance(doc, PresheafDocument):
        service = PresheafService(_engine(doc))
        monad = service.monad(service.subterminal(doc.subterminal))
        return [
            _info("route", finset.ROUTE_TERMINAL),
            _verdict("unit_galois[T_u]", monad.preserves_terminal(), "T_u(1) is not terminal"),
            _info("note", PRESHEAF_NOTE),
        ]
    bialgebras, b = _bialgebra(job, doc)
    modules = HopfModuleService(b)
    results = []
    for name, c, g in bialgebras.pointed_comonoids(doc):
        result = modules.galois(c, g)
        results.append(_info(f"Tg_iso[{name}]", result.tg_iso))
        results.append(_verdict(f"unit_galois[{name}]", result.unit_galois, "S_{K_{e,I}} is singular"))
        results.append(_verdict(f"g_galois[{name}]", result.g_galois, "S_{K_{g,C}} is not invertible"))
    return results


# Finite-set and presheaf commands

def _monad(doc: MonadDocument, job: JobSpec) -> finset.TableMonad:
    return finset.MONADS[doc.monad](job.max_size)


def _engine(doc: PresheafDocument) -> presheaves.PresheafEngine:
    poset = presheaves.FinPoset.from_pairs(doc.size, doc.order)
    return presheaves.PresheafEngine(poset, doc.max_component)


def _table_galois(service: FinsetService, carrier_bound: int, label: str) -> List[CheckResult]:
    report = service.galois(carrier_bound)
    witness = None
    if report.failing_algebra is not None:
        witness = f"<h, T(!)> not bijective on the algebra of carrier {report.failing_algebra.carrier}"
    results = [
        _info(f"route[{label}]", report.route),
        _info(f"Tg_iso[{label}]", report.tg_iso),
        _verdict(f"unit_galois[{label}]", report.unit_galois_proxy, witness),
    ]
    if report.g_galois_proxy is None:
        results.append(_info(f"g_galois[{label}]", report.g_galois_derived,
                             "read off from unit_galois and Tg_iso"))
    else:
        results.append(_verdict(f"g_galois[{label}]", report.g_galois_proxy, witness))
    return results


def _semilattice_findings(service: FinsetService, sub: FinsetService, carrier_bound: int) -> List[CheckResult]:
    T = service.monad
    results = []
    reference = finset.nonempty_powerset_monad(T.max_size)
    results.append(_verdict("T^1 = nonempty subsets", finset.same_tables(sub.monad, reference, min(T.max_size, 3))))
    components_iso = []
    for i, alg in enumerate(service.algebras(carrier_bound)):
        finset.restrict_algebra(sub.monad, alg)
        if alg.carrier == 0:
            continue
        X = finset.CompleteSemilattice.from_algebra(alg)
        tag = f"{alg.carrier}:{i}"
        results.append(_verdict(f"semilattice[{tag}]", X.is_valid() and X.to_algebra() == alg))
        omega = finset.omega_and_coreflection(X)
        components_iso.append(omega.is_iso)
        missing = ", ".join(str(p) for p in omega.missing) or "none"
        results.append(_info(f"omega_iso[{tag}]", omega.is_iso, f"missing {missing}"))
        results.append(_verdict(f"omega_monotone_injective[{tag}]", omega.injective and omega.order_preserving))
        results.append(_verdict(f"coreflection[{tag}]", omega.coreflection_holds))
    results.append(_info("omega_natural_iso", all(components_iso)))
    return results


def _finset_table(job: JobSpec, doc: MonadDocument) -> List[CheckResult]:
    service = FinsetService(_monad(doc, job))
    T = service.monad
    bound = min(doc.carrier_bound, settings.ALGEBRA_CARRIER_BOUND)
    laws = service.laws()
    results = _axioms("functor", service.functoriality()) + _axioms("monad", laws.axioms)
    results.append(_info("monad.skipped", ", ".join(laws.skipped) or "none"))
    results += _axioms("opmonoidal", service.opmonoidal().unit_checks)
    results.append(_info("preserves_terminal", service.preserves_terminal()))
    results.append(_info("algebras", len(service.algebras(bound))))
    results += _table_galois(service, bound, T.name)
    sub = service.unit_submonad()
    results.append(_info("preserves_terminal[T^1]", sub.preserves_terminal()))
    results += _table_galois(sub, bound, sub.monad.name)
    if doc.monad == "powerset":
        results += _semilattice_findings(service, sub, bound)
    return results


def _finset_presheaf(doc: PresheafDocument) -> List[CheckResult]:
    service = PresheafService(_engine(doc))
    inventory = service.inventory()
    u = service.subterminal(doc.subterminal)
    results = [_info("note", PRESHEAF_NOTE), _info("inventory.size", len(inventory))]
    results += _axioms("exponential", service.adjunction(inventory))
    monad = service.monad(u)
    report = service.check(monad, inventory)
    results += _axioms("T_u", report.laws)
    results.append(_verdict("T_u.diagonal_iso", report.diagonal_iso))
    results.append(_verdict("T_u.idempotent", report.idempotent))
    results.append(_verdict("T_u.terminal_fixed", report.terminal_fixed))
    results.append(_info("T_u.algebras", report.algebra_count))
    results.append(_verdict("T_u.right_prehopf", report.right_prehopf))
    witness = service.non_equivalence(u)
    results.append(_info(
        "comparison_not_equivalence", witness.found,
        f"|Hom(a,b)| = {witness.hom_a_b}, |Hom(a,T_u b)| = {witness.hom_a_tb}; {witness.note}",
    ))
    return results


def _finset(job: JobSpec, doc) -> List[CheckResult]:
    if isinstance(doc, MonadDocument):
        return _finset_table(job, doc)
    if isinstance(doc, PresheafDocument):
        return _finset_presheaf(doc)
    raise InputError("command finset needs a monad or presheaf input")


HANDLERS: Dict[Command, Callable[[JobSpec, object], List[CheckResult]]] = {
    Command.VALIDATE: _validate,
    Command.HOPF: _hopf,
    Command.ANTIPODE: _antipode,
    Command.FUSION: _fusion,
    Command.ENTWINE: _entwine,
    Command.HOPFMOD: _hopfmod,
    Command.GALOIS: _galois,
    Command.FINSET: _finset,
}


def _outcome(checks: List[CheckResult]) -> Tuple[bool, int]:
    passed = all(c.status != CheckStatus.FAIL for c in checks)
    return passed, 0 if passed else 1


def run(job: JobSpec) -> Report:
    """
    Execute one job.

    Returns:
        Report with exit_code 0 when every check passes, 1 when any check
        fails, 2 for input errors and 3 for inconsistencies
    """
    started = time.perf_counter()
    report = Report(tool=settings.APP_NAME, version=settings.VERSION, job=job)
    try:
        doc = load_input(job.input)
        job = resolve_bounds(job, doc)
        report.job = job
        logger.info("running %s on %s", job.command.value, job.input)
        report.checks = HANDLERS[job.command](job, doc)
        report.passed, report.exit_code = _outcome(report.checks)
    except HopfkitError as exc:
        logger.error("%s failed: %s", job.command.value, exc.detail)
        report.passed = False
        report.exit_code = exc.exit_code
        report.error = f"{type(exc).__name__}: {exc.detail}"
    if job.timing:
        report.timing_seconds = round(time.perf_counter() - started, 6)
    return report
