"""
Tests for the opmonoidal monad A (x) -: chi, fusion operators, the antipode,
the five-way Hopf cross-check, the entwining and augmentations.
"""
import time

import pytest
from hypothesis import given, settings, strategies as st

from hopfkit.exact import (
    QQ,
    ExactMatrix,
    PrimeField,
    compose,
    field_from_label,
    identity,
    kron,
    try_inverse,
    vectorize,
    vstack,
)
from hopfkit.models import BialgebraDocument, Command, JobSpec
from hopfkit.services.bialgebra_service import (
    BialgebraService,
    bialgebra_from_document,
    cyclic_group_table,
    group_algebra,
    inverse_table,
    set_comonoid,
    symmetric_group_table,
    trivial_comonoid,
)
from hopfkit.services.corpus_service import builtin_corpus, list_corpus, load_input
from hopfkit.services.fusion_service import (
    AntipodeResult,
    FusionService,
    NoAntipode,
    OpmonoidalData,
    bimonad_entwining,
    build_entwining,
    characters,
    check_augmentation,
    convolution_equations,
    fusion_left,
    fusion_left_reconstructed,
    fusion_report,
    fusion_right,
    gamma_left,
    gamma_right,
    hopf_cross_check,
    hopf_variants,
    is_left_pre_hopf,
    is_right_pre_hopf,
    opmonoidal_axioms,
    solve_antipode,
    verify_entwining_axioms,
)
from hopfkit.workers.job_worker import run

BIALGEBRAS = [name for name in builtin_corpus() if name.startswith(("group_", "monoid_", "trivial"))]


def _inverse_permutation(table, field):
    inv = inverse_table(table)
    n = len(table)
    return ExactMatrix.from_function(field, n, n, lambda r, c: 1 if r == inv[c] else 0)


def _corpus_bialgebra(name):
    doc = load_input(name)
    return bialgebra_from_document(doc, field_from_label(doc.field)), doc


class TestOpmonoidal:
    """chi, theta and the fusion operators."""

    @pytest.mark.parametrize("dims", [(1, 2), (2, 1), (2, 2)])
    def test_chi_matches_definition(self, z2, idem, dims):
        for b in (z2, idem):
            assert OpmonoidalData(b).matches_definition(*dims)

    @pytest.mark.parametrize("fixture", ["z2", "idem", "trivial"])
    def test_opmonoidal_axioms_hold(self, fixture, request):
        report = opmonoidal_axioms(request.getfixturevalue(fixture))
        assert report.passed, report.failures()

    def test_left_fusion_is_determined_by_the_unit_component(self, z3, idem):
        assert fusion_left_reconstructed(z3, 2, 1) == fusion_left(z3, 2, 1)
        assert fusion_left_reconstructed(idem, 2, 2) == fusion_left(idem, 2, 2)

    def test_free_module_variant_is_right_fusion(self, z3):
        right, _ = hopf_variants(z3, z3.mult, 3, 1)
        assert right == fusion_right(z3, 1, 1)

    def test_report_inverses_reverify(self, klein):
        report = fusion_report(klein, 1, 2)
        assert report.H_l_invertible and report.H_r_invertible
        assert (report.H_l @ report.H_l_inverse).is_identity()

    def test_idempotent_monoid_is_not_pre_hopf(self, idem):
        assert not is_left_pre_hopf(idem)
        assert not is_right_pre_hopf(idem)

    def test_galois_maps(self, z2, idem):
        assert gamma_left(z2) == fusion_left(z2, 1, 1)
        assert bimonad_entwining(idem) == fusion_left(idem, 1, 1)
        assert isinstance(try_inverse(gamma_right(z2)), ExactMatrix)
        assert not isinstance(try_inverse(gamma_right(idem)), ExactMatrix)


class TestAntipode:
    """Antipodes from the convolution equations."""

    @pytest.mark.parametrize("field", [QQ, PrimeField(2), PrimeField(3)], ids=["Q", "F2", "F3"])
    def test_symmetric_group_antipode_is_inversion(self, field):
        table, labels = symmetric_group_table(3)
        result = solve_antipode(group_algebra(table, field, labels, "S3"))
        assert isinstance(result, AntipodeResult)
        assert result.unique
        assert result.S == _inverse_permutation(table, field)

    @settings(max_examples=10, deadline=None)
    @given(n=st.integers(min_value=1, max_value=6))
    def test_cyclic_group_antipode_is_inversion(self, n):
        table = cyclic_group_table(n)
        result = solve_antipode(group_algebra(table, QQ))
        assert result.S == _inverse_permutation(table, QQ)

    def test_idempotent_monoid_has_no_antipode(self, idem):
        result = solve_antipode(idem)
        assert isinstance(result, NoAntipode)
        assert result.rank < result.augmented_rank

    @pytest.mark.parametrize("fixture", ["s3", "klein", "idem", "trivial"])
    def test_equations_match_the_vectorized_convolutions(self, fixture, request):
        b = request.getfixturevalue(fixture)
        I = identity(b.field, b.dim)
        left = vectorize(lambda S: compose(b.mult, kron(S, I), b.comult), b.field, b.dim, b.dim)
        right = vectorize(lambda S: compose(b.mult, kron(I, S), b.comult), b.field, b.dim, b.dim)
        coefficients, rhs = convolution_equations(b)
        assert coefficients == vstack(left, right)
        assert rhs == vstack((b.unit @ b.counit).flatten(), (b.unit @ b.counit).flatten())


class TestHopfCrossCheck:
    """The five criteria agree on every bundled bialgebra."""

    def test_group_algebra_is_hopf(self, s3):
        report = hopf_cross_check(s3)
        assert report.is_hopf
        assert all(report.values.values())
        assert report.involutive is True

    def test_idempotent_monoid_is_not_hopf(self, idem):
        report = hopf_cross_check(idem)
        assert not report.is_hopf
        assert not any(report.values.values())
        assert report.involutive is None

    def test_bundled_bialgebras_agree(self, corpus_dir):
        names = [n for n in list_corpus() if n.startswith(("group_", "monoid_", "trivial"))]
        assert len(names) == 28
        for name in names:
            doc = load_input(name)
            assert isinstance(doc, BialgebraDocument)
            b = bialgebra_from_document(doc, field_from_label(doc.field))
            report = hopf_cross_check(b)
            assert len(set(report.values.values())) == 1
            assert report.is_hopf == (not name.startswith("monoid_")), name

    def test_hopf_command_over_the_corpus_is_fast(self, corpus_dir):
        started = time.perf_counter()
        codes = {name: run(JobSpec(command=Command.HOPF, input=name)).exit_code for name in BIALGEBRAS}
        assert time.perf_counter() - started < 10
        assert codes == {name: 1 if name.startswith("monoid_") else 0 for name in BIALGEBRAS}


class TestEntwining:
    """lambda^C satisfies the entwining diagrams and every corruption is caught."""

    @pytest.mark.parametrize("c_dim", [1, 2])
    def test_axioms_hold(self, z2, qq, c_dim):
        c = trivial_comonoid(qq) if c_dim == 1 else set_comonoid(qq, 2)
        report = verify_entwining_axioms(build_entwining(z2, c), dim_bound=2)
        assert report.passed, report.failures()

    def test_axioms_hold_without_antipode(self, idem, qq):
        assert verify_entwining_axioms(build_entwining(idem, set_comonoid(qq, 2)), dim_bound=1).passed

    def test_single_entry_mutations_fail(self, z2, qq):
        entwining = build_entwining(z2, set_comonoid(qq, 2))
        size = entwining.component(1).rows
        assert size == 8
        for k in range(20):
            row, col = divmod(k * 3 % (size * size), size)
            report = verify_entwining_axioms(entwining.mutated(1, row, col), dim_bound=1)
            assert not report.passed, (row, col)
            assert all(check.witness for check in report.failures())

    @pytest.mark.parametrize("dim_v", [1, 2])
    def test_sparse_component_matches_dense(self, s3, idem, qq, dim_v):
        for b in (s3, idem):
            entwining = build_entwining(b, set_comonoid(qq, 2))
            assert entwining.sparse_component(dim_v).to_dense() == entwining.component(dim_v)

    def test_symmetric_group_to_dimension_three(self, s3, qq):
        started = time.perf_counter()
        report = verify_entwining_axioms(build_entwining(s3, set_comonoid(qq, 2)), dim_bound=3)
        assert time.perf_counter() - started < 30
        assert report.passed, report.failures()
        assert {"unit[3]", "counit[3]", "pentagon[3]", "multiplication[3]"} <= {c.name for c in report.checks}

    @pytest.mark.parametrize("name", BIALGEBRAS)
    def test_every_bundled_pair(self, corpus_dir, name):
        b, doc = _corpus_bialgebra(name)
        bialgebras = BialgebraService(b.field)
        comonoids = [c for _, c, _ in bialgebras.pointed_comonoids(doc)] + [bialgebras.set_comonoid(2)]
        for c in comonoids:
            report = verify_entwining_axioms(build_entwining(b, c), dim_bound=3)
            assert report.passed, (c.dim, report.failures())


class TestAugmentations:
    """Characters, sigma_bar and its invertibility."""

    def test_group_characters(self, z2):
        found = characters(z2)
        assert [s.to_rows() for s in found] == [[[1, -1]], [[1, 1]]]
        for sigma in found:
            assert check_augmentation(z2, sigma).sigma_bar_invertible

    def test_idempotent_monoid_characters(self, idem, qq):
        assert len(characters(idem)) == 2
        singular = check_augmentation(idem, ExactMatrix.from_rows(qq, [[1, 0]]))
        assert singular.is_character
        assert singular.sigma_bar_invertible is False
        assert check_augmentation(idem, idem.counit).sigma_bar_invertible

    def test_non_character(self, idem, qq):
        report = check_augmentation(idem, ExactMatrix.from_rows(qq, [[0, 1]]))
        assert not report.is_character
        assert report.sigma_bar is None


class TestFusionService:
    """The service answers with the module functions for its bialgebra."""

    def test_cross_check_and_antipode(self, z3):
        service = FusionService(z3)
        assert service.cross_check() == hopf_cross_check(z3)
        assert service.antipode().S == solve_antipode(z3).S

    def test_pre_hopf_and_kernel(self, idem, z2):
        assert FusionService(idem).pre_hopf() == (False, False)
        assert FusionService(idem).gamma_left_kernel()
        assert FusionService(z2).gamma_left_kernel() == []

    def test_fusion_and_reconstruction(self, klein):
        service = FusionService(klein)
        assert service.fusion(1, 2).H_l == fusion_left(klein, 1, 2)
        assert service.reconstructs_fusion_left(2, 1)

    def test_entwining_and_characters(self, z2, qq):
        service = FusionService(z2)
        assert service.verify_entwining(set_comonoid(qq, 2), 1).passed
        assert len(service.characters()) == 2
        assert all(service.is_character(s) for s in service.characters())
        assert service.augmentation(z2.counit).sigma_bar_invertible
