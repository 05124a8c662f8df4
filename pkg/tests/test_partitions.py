import pytest
from hypothesis import given

from symplectic_reductions.exceptions import (
    InvalidParameterError,
    PartitionSizeError,
    UnsupportedRegimeError,
)
from symplectic_reductions.models.partition import GroupKind, GroupType, OrbitLabel, OrbitTag, Partition
from symplectic_reductions.services.partitions import OrbitClassifier, hyperbolic_swap

from .conftest import partitions

gl = GroupType.general_linear
sp = GroupType.symplectic
so = GroupType.orthogonal


class TestPartition:
    def test_rejects_increasing_parts(self):
        with pytest.raises(InvalidParameterError):
            Partition.of(1, 2)

    def test_rejects_non_positive_parts(self):
        with pytest.raises(InvalidParameterError):
            Partition.of(2, 0)

    def test_size_and_str(self):
        p = Partition.two_bounded(2, 1)
        assert p.parts == (2, 2, 1)
        assert p.size == 5
        assert str(p) == "[2^2,1]"

    @pytest.mark.parametrize("parts, expected", [
        ((2, 2), (2, 2)),
        ((2, 1, 1), (3, 1)),
        ((2, 2, 1), (3, 2)),
        ((4, 1), (2, 1, 1, 1)),
    ])
    def test_transpose(self, parts, expected):
        assert OrbitClassifier.transpose(Partition(parts)).parts == expected

    @given(partitions())
    def test_transpose_is_an_involution(self, p):
        assert p.transpose().transpose() == p
        assert p.transpose().size == p.size

    def test_very_even(self):
        assert Partition.of(2, 2).is_very_even
        assert Partition.of(4, 4, 2, 2).is_very_even
        assert not Partition.of(2, 2, 1, 1).is_very_even
        assert not Partition.of(2).is_very_even

    def test_partitions_of(self):
        assert [p.parts for p in OrbitClassifier.partitions_of(4)] == [
            (4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
        assert [p.parts for p in OrbitClassifier.partitions_of(4, 2)] == [(4,), (3, 1), (2, 2)]


class TestValidateOrbit:
    def test_gl(self):
        labels = OrbitClassifier.validate_orbit(gl(5), Partition.of(2, 2, 1))
        assert len(labels) == 1

    def test_very_even_so_has_two_labels(self):
        labels = OrbitClassifier.validate_orbit(so(4), Partition.of(2, 2))
        assert [label.tag for label in labels] == [OrbitTag.I, OrbitTag.II]

    def test_sp_odd_parts_with_even_multiplicity(self):
        assert len(OrbitClassifier.validate_orbit(sp(4), Partition.of(2, 1, 1))) == 1

    def test_parity_failures_return_empty(self):
        assert OrbitClassifier.validate_orbit(so(4), Partition.of(2, 1, 1)) == []
        assert OrbitClassifier.validate_orbit(sp(4), Partition.of(3, 1)) == []
        assert OrbitClassifier.validate_orbit(so(4), Partition.of(3, 1)) == [OrbitLabel(so(4), Partition.of(3, 1))]

    def test_size_mismatch_is_a_distinct_error(self):
        with pytest.raises(PartitionSizeError):
            OrbitClassifier.validate_orbit(gl(4), Partition.of(2, 1))

    def test_label_tag_rules(self):
        with pytest.raises(InvalidParameterError):
            OrbitLabel(so(4), Partition.of(2, 2))
        with pytest.raises(InvalidParameterError):
            OrbitLabel(gl(4), Partition.of(2, 2), OrbitTag.I)

    def test_symplectic_size_is_even(self):
        with pytest.raises(InvalidParameterError):
            sp(3)

    @given(partitions(max_size=8))
    def test_two_labels_iff_very_even(self, p):
        if p.size % 2:
            return
        labels = OrbitClassifier.validate_orbit(so(p.size), p)
        if p.is_very_even:
            assert len(labels) == 2
        else:
            assert len(labels) <= 1


class TestOrbitDim:
    def test_gl_examples(self):
        assert OrbitClassifier.orbit_dim(OrbitLabel(gl(4), Partition.of(2, 2))) == 8
        assert OrbitClassifier.orbit_dim(OrbitLabel(gl(4), Partition.of(2, 1, 1))) == 6
        assert OrbitClassifier.orbit_dim(OrbitLabel(gl(6), Partition.two_bounded(0, 6))) == 0

    def test_so_examples(self):
        tagged = OrbitLabel(so(8), Partition.two_bounded(4, 0), OrbitTag.I)
        assert OrbitClassifier.orbit_dim(tagged) == 12
        assert OrbitClassifier.orbit_dim(OrbitLabel(so(6), Partition.of(2, 2, 1, 1))) == 6

    @pytest.mark.parametrize("m", range(1, 6))
    def test_gl_closed_form_matches_centralizer(self, m):
        for label in OrbitClassifier.two_bounded_labels(gl(m)):
            N = label.partition.twos
            oracle = label.ambient.algebra_dim - OrbitClassifier.centralizer_dim(label)
            assert oracle == OrbitClassifier.closed_form_dim(label) == 2 * N * (m - N)

    @pytest.mark.parametrize("kind", [GroupKind.SP, GroupKind.O])
    @pytest.mark.parametrize("m", range(1, 5))
    def test_sp_so_oracle_matches_closed_form(self, kind, m):
        for label in OrbitClassifier.two_bounded_labels(GroupType(kind, 2 * m)):
            dim = OrbitClassifier.orbit_dim(label)
            assert dim == OrbitClassifier.closed_form_dim(label)
            assert dim % 2 == 0

    def test_so_two_bounded_dims(self):
        for m in range(2, 5):
            for N in range(0, m + 1, 2):
                labels = OrbitClassifier.validate_orbit(so(2 * m), Partition.two_bounded(N, 2 * m - 2 * N))
                for label in labels:
                    assert OrbitClassifier.orbit_dim(label) == 2 * m * N - N * (N + 1)

    def test_parts_above_two_use_closed_form(self):
        label = OrbitLabel(sp(6), Partition.of(4, 2))
        # transpose [2,2,1,1]: 21 - (4 + 4 + 1 + 1) / 2
        assert OrbitClassifier.orbit_dim(label) == 16


class TestRepresentatives:
    def test_representative_is_in_the_algebra_and_square_zero(self):
        for ambient in (sp(6), so(6), so(8)):
            for label in OrbitClassifier.two_bounded_labels(ambient):
                x = OrbitClassifier.representative(label)
                assert (x * x).is_zero_matrix
                assert x.rank() == label.partition.twos

    def test_tag_two_is_swap_conjugate(self):
        label_i = OrbitLabel(so(4), Partition.of(2, 2), OrbitTag.I)
        label_ii = OrbitLabel(so(4), Partition.of(2, 2), OrbitTag.II)
        swap = hyperbolic_swap(2)
        assert OrbitClassifier.representative(label_ii) == swap * OrbitClassifier.representative(label_i) * swap
        assert swap.det() == -1

    def test_parts_above_two_have_no_representative_in_sp(self):
        with pytest.raises(UnsupportedRegimeError):
            OrbitClassifier.representative(OrbitLabel(sp(6), Partition.of(4, 2)))


class TestClosureAndNormality:
    def test_chain(self):
        a = OrbitLabel(gl(5), Partition.of(2, 1, 1, 1))
        b = OrbitLabel(gl(5), Partition.of(2, 2, 1))
        assert OrbitClassifier.closure_leq(a, b)
        assert not OrbitClassifier.closure_leq(b, a)
        assert OrbitClassifier.closure_leq(a, a)

    def test_tagged_labels_are_incomparable(self):
        one = OrbitLabel(so(8), Partition.two_bounded(4, 0), OrbitTag.I)
        two = OrbitLabel(so(8), Partition.two_bounded(4, 0), OrbitTag.II)
        below = OrbitLabel(so(8), Partition.two_bounded(2, 4))
        assert not OrbitClassifier.closure_leq(one, two)
        assert OrbitClassifier.closure_leq(below, one)
        assert OrbitClassifier.closure_leq(below, two)
        assert not OrbitClassifier.closure_leq(one, below)

    def test_closure_needs_same_ambient_and_small_parts(self):
        with pytest.raises(InvalidParameterError):
            OrbitClassifier.closure_leq(OrbitLabel(gl(2), Partition.of(2)), OrbitLabel(gl(3), Partition.of(2, 1)))
        with pytest.raises(UnsupportedRegimeError):
            OrbitClassifier.closure_leq(OrbitLabel(gl(3), Partition.of(3)), OrbitLabel(gl(3), Partition.of(2, 1)))

    def test_closure_is_a_partial_order_on_so_labels(self):
        ambient = so(8)
        labels = OrbitClassifier.two_bounded_labels(ambient)
        for a in labels:
            for b in labels:
                if a != b and OrbitClassifier.closure_leq(a, b):
                    assert not OrbitClassifier.closure_leq(b, a)
                for c in labels:
                    if OrbitClassifier.closure_leq(a, b) and OrbitClassifier.closure_leq(b, c):
                        assert OrbitClassifier.closure_leq(a, c)

    def test_normality(self):
        assert OrbitClassifier.is_normal(OrbitLabel(gl(7), Partition.of(2, 2, 2, 1))) is True
        assert OrbitClassifier.is_normal(OrbitLabel(sp(6), Partition.of(2, 2, 1, 1))) is True
        assert OrbitClassifier.is_normal(OrbitLabel(sp(6), Partition.of(4, 2))) is None
