import math

import pytest
from hypothesis import given, strategies as st

from infint.extreal import MINUS_INF, PLUS_INF, ext_add, UndefinedSumError
from infint.measure import (
    DimensionError,
    DiscreteMeasureSpace,
    essential_infimum,
    integrate,
    integrate_sup,
    partition_min,
)


def space(*weights):
    return DiscreteMeasureSpace(len(weights), weights)


finite = st.floats(-1e6, 1e6, allow_nan=False)
extreal = st.one_of(finite, st.sampled_from([PLUS_INF, MINUS_INF]))


class TestExtReal:
    def test_add_rejects_opposite_infinities(self):
        with pytest.raises(UndefinedSumError):
            ext_add(PLUS_INF, MINUS_INF)
        assert ext_add(1.0, PLUS_INF) == PLUS_INF
        assert ext_add(MINUS_INF, -2.0) == MINUS_INF


class TestSpace:
    def test_rejects_zero_weight(self):
        with pytest.raises(ValueError):
            DiscreteMeasureSpace(2, [1.0, 0.0])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            DiscreteMeasureSpace(0, [])

    def test_chain_must_increase(self):
        with pytest.raises(ValueError):
            DiscreteMeasureSpace(2, [1, 1], chain=[[0, 1], [0]])
        with pytest.raises(ValueError):
            DiscreteMeasureSpace(2, [1, 1], chain=[[0]])  # never covers atom 1
        sp = DiscreteMeasureSpace(2, [1, 1], chain=[[0], [0, 1]])
        assert sp.chain[0] < sp.chain[1]

    def test_default_chain_covers_everything(self):
        sp = space(1, 2, 3)
        assert sp.chain == (frozenset({0, 1, 2}),)

    def test_json_round_trip(self):
        sp = DiscreteMeasureSpace(["a", "b"], [0.5, 2.0], chain=[[0], [0, 1]])
        back = DiscreteMeasureSpace.from_json(sp.to_json())
        assert back == sp


class TestIntegrate:
    def test_weighted_sum(self):
        assert integrate(space(1, 1), [2, 3]) == 5

    def test_plus_inf_wins(self):
        # positive part integrates to +inf on an atom of positive mass
        assert integrate(space(1, 1), [PLUS_INF, MINUS_INF]) == PLUS_INF

    def test_mixed_weights(self):
        assert integrate(space(0.5, 2), [4, -1]) == 0

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            integrate(space(1, 1), [1.0])

    def test_sup_convention_minus_inf_wins(self):
        assert integrate_sup(space(1, 1), [PLUS_INF, MINUS_INF]) == MINUS_INF

    def test_sup_convention_single(self):
        assert integrate_sup(space(1), [3]) == 3

    def test_sup_convention_no_minus_inf(self):
        assert integrate_sup(space(2, 1), [1, PLUS_INF]) == PLUS_INF

    @given(st.lists(finite, min_size=1, max_size=6), st.data())
    def test_monotone(self, v, data):
        w = [data.draw(st.floats(vi, 1e7, allow_nan=False)) for vi in v]
        sp = space(*([1.5] * len(v)))
        assert integrate(sp, v) <= integrate(sp, w) + 1e-6

    @given(st.lists(extreal, min_size=1, max_size=6))
    def test_sup_is_negated_inf(self, v):
        sp = space(*([0.7] * len(v)))
        assert integrate_sup(sp, [-x for x in v]) == -integrate(sp, v)


class TestEssentialInfimum:
    def test_coordinatewise_min(self):
        assert essential_infimum(space(1, 1), [(1, 5), (3, 2)]) == (1, 2)

    def test_singleton(self):
        assert essential_infimum(space(1, 1), [(0, 0)]) == (0, 0)

    def test_absorbs_plus_inf(self):
        fam = [(1, PLUS_INF), (PLUS_INF, 1), (2, 2)]
        assert essential_infimum(space(1, 1), fam) == (1, 1)

    def test_empty_family_rejected(self):
        with pytest.raises(ValueError):
            essential_infimum(space(1), [])

    @given(st.lists(st.lists(extreal, min_size=3, max_size=3), min_size=1, max_size=8))
    def test_two_sided_characterization(self, fam):
        sp = space(1, 1, 1)
        ei = essential_infimum(sp, fam)
        for vec in fam:  # lower bound
            assert all(e <= v for e, v in zip(ei, vec))
        # any vector below all members is below the essential infimum
        below = tuple(min(vec[i] for vec in fam) - 1 for i in range(3))
        assert all(b <= e for b, e in zip(below, ei))
        # attained by the finite subfamily of per-coordinate minimizers
        chosen = [min(fam, key=lambda vec: vec[i]) for i in range(3)]
        attained = tuple(min(vec[i] for vec in chosen) for i in range(3))
        assert attained == ei


class TestPartitionMin:
    def test_two_vectors(self):
        parts, mn = partition_min(space(1, 1), [(1, 5), (3, 2)])
        assert parts == [frozenset({0}), frozenset({1})]
        assert mn == (1, 2)

    def test_tie_goes_to_lower_index(self):
        parts, mn = partition_min(space(1, 1), [(1, 1), (1, 1)])
        assert parts == [frozenset({0, 1}), frozenset()]
        assert mn == (1, 1)

    def test_three_vectors_against_scan(self):
        fam = [(4, 0, 7), (4, 2, 1), (5, -1, 1)]
        parts, mn = partition_min(space(1, 1, 1), fam)
        # oracle: coordinatewise argmin with earliest-index tie break
        owners = []
        for j in range(3):
            col = [vec[j] for vec in fam]
            owners.append(col.index(min(col)))
        assert mn == tuple(min(vec[j] for vec in fam) for j in range(3))
        for i, part in enumerate(parts):
            assert part == frozenset(j for j in range(3) if owners[j] == i)
        assert parts == [frozenset({0}), frozenset({2}), frozenset({1})]
        assert mn == (4, -1, 1)

    def test_rejects_infinite_entries(self):
        with pytest.raises(ValueError):
            partition_min(space(1), [(PLUS_INF,)])

    @given(
        st.lists(
            st.lists(st.floats(-100, 100, allow_nan=False), min_size=4, max_size=4),
            min_size=1,
            max_size=6,
        )
    )
    def test_reconstruction_is_bit_exact(self, fam):
        sp = space(1, 1, 1, 1)
        parts, mn = partition_min(sp, fam)
        # pairwise disjoint and covering
        seen = set()
        for part in parts:
            assert not (seen & part)
            seen |= part
        assert seen == {0, 1, 2, 3}
        # sum of indicator-masked members reconstructs the min exactly
        recon = [0.0] * 4
        for i, part in enumerate(parts):
            for j in part:
                recon[j] = fam[i][j]
        assert tuple(recon) == mn
        assert mn == tuple(min(vec[j] for vec in fam) for j in range(4))
