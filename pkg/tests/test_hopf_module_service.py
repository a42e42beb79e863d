"""
Tests for entwined modules, the comparison functor, coinvariants and the
fundamental-theorem witness search.
"""
import logging

import pytest

from hopfkit.errors import DimensionMismatch
from hopfkit.exact import ExactMatrix, field_from_label, identity, kron
from hopfkit.services.bialgebra_service import (
    bialgebra_from_document,
    grouplike_basis,
    set_comonoid,
    trivial_comonoid,
    unit_grouplike,
)
from hopfkit.services.corpus_service import builtin_corpus, load_input
from hopfkit.services.fusion_service import fusion_right
from hopfkit.services.hopf_module_service import (
    EntwinedModule,
    HopfModuleService,
    bimonad_comparison,
    comonad_morphism_component,
    comparison_K,
    coinvariants,
    find_fundamental_witness,
    fundamental_iso_check,
    galois_grouplike_check,
    hom_space,
    lifted_point,
    trivial_module,
    verify_entwined_module,
)
from hopfkit.services.hopf_module_service import _structured_modules

HOPF_BIALGEBRAS = [name for name in builtin_corpus() if name.startswith(("group_", "trivial"))]
MONOID_BIALGEBRAS = [name for name in builtin_corpus() if name.startswith("monoid_")]


def _corpus_bialgebra(name):
    doc = load_input(name)
    return bialgebra_from_document(doc, field_from_label(doc.field))


@pytest.fixture
def point_c(qq):
    """k{x, y} pointed at y."""
    c = set_comonoid(qq, 2, ("x", "y"))
    return c, unit_grouplike(c, 1)


@pytest.fixture
def unit_c(qq):
    c = trivial_comonoid(qq)
    return c, unit_grouplike(c)


class TestComparison:
    """K_{g,C}(V) is an entwined module."""

    @pytest.mark.parametrize("dim_v", [1, 2])
    def test_free_modules_verify(self, z2, point_c, dim_v):
        c, g = point_c
        module = comparison_K(z2, c, g, dim_v)
        assert module.dim_v == 2 * dim_v
        assert verify_entwined_module(z2, c, module).passed

    def test_coinvariants_of_free_module(self, z3, point_c):
        c, g = point_c
        for dim_v in (1, 2):
            module = comparison_K(z3, c, g, dim_v)
            assert len(coinvariants(z3, module, lifted_point(z3, c, g))) == dim_v

    def test_bimonad_comparison_agrees(self, z2, idem):
        assert bimonad_comparison(z2, 2).tc_dim == 2
        assert bimonad_comparison(idem, 1).dim_v == 2

    def test_trivial_coaction_breaks_the_pentagon(self, z2, qq):
        module = EntwinedModule(2, z2.mult, kron(identity(qq, 2), z2.unit), 2)
        report = verify_entwined_module(z2, trivial_comonoid(qq), module)
        assert report.get("coaction_counit").passed
        assert not report.get("pentagon").passed

    def test_coaction_shape_is_checked(self, z2, qq):
        with pytest.raises(DimensionMismatch):
            EntwinedModule(1, ExactMatrix.from_rows(qq, [[1, 1]]), identity(qq, 1), 2)


class TestFundamentalTheorem:
    """M^co (x) A -> M is invertible exactly for Hopf A."""

    @pytest.mark.parametrize("dim_v", [1, 2, 3])
    def test_free_module_over_group(self, z3, unit_c, dim_v):
        c, g = unit_c
        result = fundamental_iso_check(z3, comparison_K(z3, c, g, dim_v))
        assert result.invertible
        assert result.coinvariant_dim == dim_v

    def test_group_has_no_witness(self, z2):
        assert find_fundamental_witness(z2, dim_bound=1) is None

    def test_idempotent_monoid_witness(self, idem):
        witness = find_fundamental_witness(idem, dim_bound=1)
        assert witness is not None
        assert witness.module.action.to_rows() == [[1, 0]]
        assert witness.module.coaction.to_rows() == [[0], [1]]
        assert witness.coinvariant_dim == 0

    def test_counit_module_is_not_entwined(self, z2):
        module = trivial_module(z2, 1, z2.counit)
        report = verify_entwined_module(z2, trivial_comonoid(z2.field), module)
        assert report.get("action_associative").passed
        assert not report.get("pentagon").passed

    @pytest.mark.parametrize("name", HOPF_BIALGEBRAS)
    def test_free_modules_over_every_bundled_hopf_algebra(self, corpus_dir, name):
        b = _corpus_bialgebra(name)
        modules = HopfModuleService(b)
        for dim_v in (1, 2, 3):
            result = modules.fundamental_iso(dim_v)
            assert result.invertible, (name, dim_v)
            assert result.coinvariant_dim == dim_v

    @pytest.mark.parametrize("name", MONOID_BIALGEBRAS)
    def test_every_bundled_monoid_has_a_witness(self, corpus_dir, name):
        witness = HopfModuleService(_corpus_bialgebra(name)).witness(1)
        assert witness is not None
        assert witness.coinvariant_dim < witness.module.dim_v


class TestWitnessSearch:
    """Dimensions beyond the exhaustive range run over graded and free modules."""

    def test_graded_indecomposable_module_is_reached(self, idem, unit_c):
        """x in degree 1, y in degree z, z x = y = z y."""
        c, _ = unit_c
        assert grouplike_basis(idem.comonoid()) == [0, 1]
        action = ExactMatrix.from_rows(idem.field, [[1, 0, 0, 0], [0, 1, 1, 1]])
        coaction = ExactMatrix.from_rows(idem.field, [[1, 0], [0, 0], [0, 0], [0, 1]])
        module = EntwinedModule(2, action, coaction, 2)
        assert module in list(_structured_modules(idem, 2))
        assert verify_entwined_module(idem, c, module).passed
        assert fundamental_iso_check(idem, module).coinvariant_dim == 1

    def test_free_module_is_a_candidate(self, z2):
        assert bimonad_comparison(z2, 1) in list(_structured_modules(z2, 2))

    def test_symmetric_group_search_covers_dimension_three(self, s3, caplog):
        caplog.set_level(logging.DEBUG, logger="hopfkit.services.hopf_module_service")
        assert find_fundamental_witness(s3, dim_bound=3) is None
        messages = [r.getMessage() for r in caplog.records]
        assert "witness search at dimension 3: structured" in messages
        assert not [r for r in caplog.records if r.levelno >= logging.WARNING]

    def test_monoid_witness_at_dimension_one(self, idem):
        witness = find_fundamental_witness(idem, dim_bound=3)
        assert witness.module.dim_v == 1


class TestHomSpaces:
    """Homs between free modules match Hom(V, W) for Hopf A."""

    @pytest.mark.parametrize("dims,expected", [((1, 1), 1), ((1, 2), 2), ((2, 2), 4)])
    def test_free_module_homs(self, z2, unit_c, dims, expected):
        c, g = unit_c
        source, target = (comparison_K(z2, c, g, d) for d in dims)
        assert hom_space(z2, c, source, target).dimension == expected

    def test_idempotent_endomorphisms(self, idem, unit_c):
        c, g = unit_c
        module = comparison_K(idem, c, g, 1)
        assert hom_space(idem, c, module, module).dimension == 1


class TestGalois:
    """S_{K_{g,C}} factors through S_{K_{e,I}} = H^r_{I,I}."""

    def test_factorization_at_free_module(self, z2, point_c):
        c, g = point_c
        component = comonad_morphism_component(z2, c, g, z2.mult, z2.dim)
        assert component.factorization_holds
        assert component.s_unit == fusion_right(z2, 1, 1)
        assert component.s_unit_invertible

    def test_unit_point_of_group(self, z2, unit_c):
        result = galois_grouplike_check(z2, *unit_c)
        assert (result.tg_iso, result.unit_galois, result.g_galois) == (True, True, True)

    def test_two_point_comonoid(self, z2, point_c):
        result = galois_grouplike_check(z2, *point_c)
        assert result.unit_galois
        assert not result.tg_iso
        assert not result.g_galois

    def test_idempotent_monoid(self, idem, unit_c):
        result = galois_grouplike_check(idem, *unit_c)
        assert (result.tg_iso, result.unit_galois, result.g_galois) == (True, False, False)


class TestHopfModuleService:
    """The service over C = I with its unit point."""

    def test_comparison_is_free_module(self, z2):
        service = HopfModuleService(z2)
        assert service.comparison(1) == comparison_K(z2, service.trivial, service.unit_point, 1)
        assert service.hom_dimension(1, 2) == 2

    def test_galois_and_factorization(self, z2, point_c):
        service = HopfModuleService(z2)
        assert not service.galois(*point_c).g_galois
        assert service.factorization(*point_c, z2.mult, z2.dim)

    def test_witness_only_without_antipode(self, z2, idem):
        assert HopfModuleService(z2).witness(1) is None
        assert HopfModuleService(idem).witness(1).coinvariant_dim == 0
