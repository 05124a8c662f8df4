import pytest
from sympy import expand

from symplectic_reductions.exceptions import (
    ExcludedRegimeError,
    InvalidParameterError,
    QuotientNotModeledError,
    UnsupportedRegimeError,
)
from symplectic_reductions.models.geometry import (
    BaseKind,
    BaseVariety,
    BundleModel,
    FiberFunctor,
    InventoryStatus,
    VerdictCase,
)
from symplectic_reductions.models.partition import GroupKind, GroupType, OrbitLabel, OrbitTag, Partition
from symplectic_reductions.services.geometry import GeometryClassifier

GL, SP, O = GroupKind.GL, GroupKind.SP, GroupKind.O


def grid(kind, max_n=5, max_m=7):
    for n in range(1, max_n + 1):
        if kind is SP and n % 2:
            continue
        for m in range(1, max_m + 1):
            yield n, m


def names(models):
    return [model.name for model in models]


class TestSymplecticReduction:
    def test_gl_between_n_and_2n(self):
        quotient = GeometryClassifier.symplectic_reduction(GL, 3, 4)
        assert [s.dim for s in quotient.strata] == [0, 6, 8]
        assert quotient.dim == 8
        assert not quotient.is_reducible
        assert quotient.singular_locus.partition == Partition.of(2, 1, 1)

    def test_gl_n_one(self):
        quotient = GeometryClassifier.symplectic_reduction(GL, 1, 2)
        assert quotient.dim == 2
        assert quotient.singular_locus.partition == Partition.of(1, 1)

    def test_sp_m_above_n(self):
        quotient = GeometryClassifier.symplectic_reduction(SP, 2, 3)
        assert quotient.components[0].ambient == GroupType.orthogonal(6)
        assert quotient.components[0].partition == Partition.of(2, 2, 1, 1)
        assert quotient.dim == 6
        assert quotient.h0_available

    def test_sp_two_components(self):
        quotient = GeometryClassifier.symplectic_reduction(SP, 4, 2)
        assert quotient.is_reducible
        assert [c.tag for c in quotient.components] == [OrbitTag.I, OrbitTag.II]
        assert quotient.dim == 2
        assert quotient.singular_locus.partition == Partition.of(1, 1, 1, 1)

    def test_sp_excluded_odd_regime(self):
        quotient = GeometryClassifier.symplectic_reduction(SP, 4, 3)
        assert quotient.components[0].partition == Partition.of(2, 2, 1, 1)
        assert not quotient.h0_available
        assert GeometryClassifier.is_excluded(SP, 4, 3)

    def test_orthogonal_is_not_modeled(self):
        with pytest.raises(QuotientNotModeledError):
            GeometryClassifier.symplectic_reduction(O, 2, 3)

    @pytest.mark.parametrize("kind", [GL, SP])
    def test_strata_are_increasing(self, kind):
        for n, m in grid(kind):
            quotient = GeometryClassifier.symplectic_reduction(kind, n, m)
            dims = [s.dim for s in quotient.strata]
            assert dims == sorted(dims)
            assert quotient.is_smooth == (len({s.label.partition for s in quotient.strata}) == 1)

    def test_rank_bound(self):
        assert GeometryClassifier.rank_bound(GL, 3, 4) == 2
        assert GeometryClassifier.rank_bound(GL, 2, 9) == 2
        assert GeometryClassifier.rank_bound(SP, 2, 5) == 2
        assert GeometryClassifier.rank_bound(SP, 6, 3) == 2
        with pytest.raises(QuotientNotModeledError):
            GeometryClassifier.rank_bound(O, 2, 2)


class TestSpringer:
    def test_gl(self):
        half = OrbitLabel(GroupType.general_linear(4), Partition.of(2, 2))
        assert names(GeometryClassifier.springer_desings(half)) == ["Hom(V/T,T) over Gr(2,4)"]
        models = GeometryClassifier.springer_desings(OrbitLabel(GroupType.general_linear(5), Partition.of(2, 2, 1)))
        assert [m.base.k for m in models] == [2, 3]
        assert all(m.total_dim == 12 for m in models)

    def test_zero_orbit_has_both_grassmannian_models(self):
        zero = OrbitLabel(GroupType.general_linear(3), Partition.of(1, 1, 1))
        models = GeometryClassifier.springer_desings(zero)
        assert [m.base.k for m in models] == [0, 3]
        assert all(m.total_dim == 0 for m in models)
        assert GeometryClassifier.verdict(GL, 1, 1).springer_count == 2

    def test_sp(self):
        top = OrbitLabel(GroupType.symplectic(6), Partition.of(2, 2, 2))
        [model] = GeometryClassifier.springer_desings(top)
        assert model.fiber is FiberFunctor.SYM2_TAUT
        assert model.total_dim == 12
        assert GeometryClassifier.springer_desings(OrbitLabel(GroupType.symplectic(6), Partition.of(2, 1, 1, 1, 1))) == []

    def test_so(self):
        so6 = GroupType.orthogonal(6)
        models = GeometryClassifier.springer_desings(OrbitLabel(so6, Partition.of(2, 2, 1, 1)))
        assert [m.base.tag for m in models] == [OrbitTag.I, OrbitTag.II]
        assert all(m.total_dim == 6 for m in models)
        tagged = OrbitLabel(GroupType.orthogonal(8), Partition.of(2, 2, 2, 2), OrbitTag.II)
        [model] = GeometryClassifier.springer_desings(tagged)
        assert model.base.tag is OrbitTag.II
        assert GeometryClassifier.springer_desings(OrbitLabel(GroupType.orthogonal(8), Partition.two_bounded(2, 4))) == []

    def test_parts_above_two(self):
        with pytest.raises(UnsupportedRegimeError):
            GeometryClassifier.springer_desings(OrbitLabel(GroupType.symplectic(6), Partition.of(4, 2)))

    @pytest.mark.parametrize("kind", [GL, SP])
    def test_models_resolve_their_orbit(self, kind):
        for n, m in grid(kind):
            quotient = GeometryClassifier.symplectic_reduction(kind, n, m)
            for component in quotient.components:
                for model in GeometryClassifier.springer_desings(component):
                    assert model.total_dim == quotient.stratum_dim(component)


class TestHilbertChowModel:
    @pytest.mark.parametrize("kind, n, m, name, dim", [
        (GL, 3, 4, "Hom(V/T,T) over Gr(2,4)", 8),
        (GL, 1, 4, "Hom(V/T2,T1) over F_{1,3}(C^4)", 6),
        (GL, 2, 5, "Bl_0(Hom(V/T2,T1) over F_{2,3}(C^5))", 12),
        (SP, 2, 3, "Lambda2(T) over OG(2,6)", 6),
        (SP, 4, 5, "Bl_0(Lambda2(T) over OG(4,10))", 20),
        (SP, 2, 2, "Lambda2(T) over OG^I(2,4)", 2),
        (SP, 4, 4, "Bl_0(Lambda2(T) over OG^I(4,8))", 12),
    ])
    def test_models(self, kind, n, m, name, dim):
        model = GeometryClassifier.hilbert_chow_model(kind, n, m)
        assert model.name == name
        assert model.total_dim == dim

    @pytest.mark.parametrize("kind, n, m", [(GL, 3, 6), (SP, 6, 6), (O, 2, 3)])
    def test_no_model(self, kind, n, m):
        assert GeometryClassifier.hilbert_chow_model(kind, n, m) is None

    @pytest.mark.parametrize("kind", [GL, SP])
    def test_model_has_the_quotient_dimension(self, kind):
        for n, m in grid(kind, max_n=6, max_m=8):
            model = GeometryClassifier.hilbert_chow_model(kind, n, m)
            if model is not None:
                assert model.total_dim == GeometryClassifier.symplectic_reduction(kind, n, m).dim

    def test_bundle_needs_a_matching_base(self):
        with pytest.raises(InvalidParameterError):
            BundleModel(BaseVariety(BaseKind.GRASSMANNIAN, 4, 2), FiberFunctor.LAMBDA2_TAUT)
        with pytest.raises(InvalidParameterError):
            BaseVariety(BaseKind.ISOTROPIC_SO, 4, 2, tag=OrbitTag.I)


class TestVerdict:
    def test_unique(self):
        verdict = GeometryClassifier.verdict(GL, 3, 4)
        assert verdict.case is VerdictCase.SYMPLECTIC_UNIQUE_DESING
        assert verdict.springer_count == 1
        assert verdict.model.total_dim == 8

    def test_dominates(self):
        verdict = GeometryClassifier.verdict(GL, 1, 4)
        assert verdict.case is VerdictCase.DESING_STRICTLY_DOMINATES
        assert verdict.springer_count == 2
        assert any(c.startswith("unverified") for c in verdict.citations)

    def test_not_covered(self):
        verdict = GeometryClassifier.verdict(GL, 3, 6)
        assert verdict.case is VerdictCase.NOT_COVERED
        assert verdict.model is None

    def test_sp(self):
        assert GeometryClassifier.verdict(SP, 2, 2).case is VerdictCase.SYMPLECTIC_UNIQUE_DESING
        assert GeometryClassifier.verdict(SP, 6, 4).case is VerdictCase.SYMPLECTIC_UNIQUE_DESING
        assert GeometryClassifier.verdict(SP, 2, 3).case is VerdictCase.DESING_STRICTLY_DOMINATES
        assert GeometryClassifier.verdict(SP, 4, 4).case is VerdictCase.DESING_STRICTLY_DOMINATES
        assert GeometryClassifier.verdict(SP, 6, 6).case is VerdictCase.NOT_COVERED

    def test_orthogonal(self):
        unique = GeometryClassifier.verdict(O, 5, 3)
        assert unique.case is VerdictCase.SYMPLECTIC_UNIQUE_DESING
        assert unique.springer_count == 1
        dominated = GeometryClassifier.verdict(O, 2, 3)
        assert dominated.case is VerdictCase.DESING_STRICTLY_DOMINATES
        assert dominated.springer_count is None
        assert GeometryClassifier.verdict(O, 3, 3).case is VerdictCase.NOT_COVERED

    def test_invalid_parameters(self):
        with pytest.raises(InvalidParameterError):
            GeometryClassifier.verdict(SP, 3, 2)

    @pytest.mark.parametrize("kind", [GL, SP, O])
    def test_clauses_never_overlap(self, kind):
        for n, m in grid(kind, max_n=8, max_m=8):
            assert not (GeometryClassifier.unique_clause_holds(kind, n, m)
                        and GeometryClassifier.domination_clause_holds(kind, n, m))
            GeometryClassifier.verdict(kind, n, m)


class TestDimensionBookkeeping:
    @pytest.mark.parametrize("kind", [GL, SP])
    def test_reduction_consistency(self, kind):
        for n, m in grid(kind):
            if GeometryClassifier.is_excluded(kind, n, m):
                continue
            report = GeometryClassifier.reduction_consistency(kind, n, m)
            assert report.passed, report.to_dict()

    def test_general_fiber(self):
        assert GeometryClassifier.general_fiber_dim(GL, 2, 5) == 4
        assert GeometryClassifier.general_fiber_dim(GL, 3, 4) == 8
        assert GeometryClassifier.general_fiber_dim(SP, 4, 2) == 7
        with pytest.raises(ExcludedRegimeError):
            GeometryClassifier.general_fiber_dim(GL, 3, 3)
        with pytest.raises(QuotientNotModeledError):
            GeometryClassifier.general_fiber_dim(O, 2, 2)

    def test_base_dims_match_the_stabilizer_oracle(self):
        for name, (closed_form, oracle) in GeometryClassifier.base_dims(3).items():
            assert closed_form == oracle, name

    @pytest.mark.parametrize("kind, closed_form", [
        (BaseKind.GRASSMANNIAN, lambda k, m: k * (m - k)),
        (BaseKind.ISOTROPIC_SP, lambda k, m: 2 * k * (m - k) + k * (k + 1) / 2),
        (BaseKind.ISOTROPIC_SO, lambda k, m: 2 * k * (m - k) + k * (k - 1) / 2),
    ])
    def test_fitted_base_dims(self, kind, closed_form):
        k, m = GeometryClassifier.K, GeometryClassifier.M
        fitted = GeometryClassifier.fit_base_dim(kind)
        assert expand(fitted - closed_form(k, m)) == 0
        for size in range(1, 8):
            for rank in range(size + 1):
                assert fitted.subs({k: rank, m: size}) == BaseVariety(kind, size, rank).dim

    def test_fit_needs_enough_points(self):
        with pytest.raises(InvalidParameterError):
            GeometryClassifier.fit_base_dim(BaseKind.ISOTROPIC_SP, max_m=2)
        with pytest.raises(InvalidParameterError):
            GeometryClassifier.fit_base_dim(BaseKind.TWO_STEP_FLAG)


class TestHilbertSchemeInventory:
    @pytest.mark.parametrize("kind, n, m, status, dims", [
        (GL, 1, 3, InventoryStatus.EXACT, (4, 4)),
        (GL, 2, 4, InventoryStatus.AT_LEAST, (8, 11)),
        (GL, 3, 6, InventoryStatus.AT_LEAST, ()),
        (SP, 2, 3, InventoryStatus.IRREDUCIBLE, (6,)),
        (SP, 2, 2, InventoryStatus.EXACT, (2, 2)),
        (O, 2, 3, InventoryStatus.IRREDUCIBLE, ()),
        (GL, 3, 4, InventoryStatus.UNKNOWN, ()),
    ])
    def test_inventory(self, kind, n, m, status, dims):
        inventory = GeometryClassifier.hilb_components(kind, n, m)
        assert inventory.status is status
        assert inventory.component_dims == dims

    def test_main_component_is_the_quotient_dimension(self):
        for kind, n, m in [(GL, 1, 3), (GL, 2, 5), (SP, 2, 4)]:
            inventory = GeometryClassifier.hilb_components(kind, n, m)
            assert inventory.main_dim == GeometryClassifier.symplectic_reduction(kind, n, m).dim
