import math

import numpy as np
import pytest

from infint.catalog import (
    AbsoluteValue,
    Exponential,
    IndicatorInterval,
    NegLog,
    Quadratic,
)
from infint.errors import CapabilityError
from infint.extreal import MINUS_INF, PLUS_INF
from infint.grid import GridFunction
from infint.integrand import (
    Integrand,
    NegatedSection,
    SeparableProduct,
    build_caratheodory,
    epigraph_dense_sample,
    pointwise_inf,
    section_value,
    verify_normality_inf,
)
from infint.measure import DiscreteMeasureSpace


def space(*weights):
    return DiscreteMeasureSpace(len(weights), weights)


class TestIntegrand:
    def test_section_count_must_match(self):
        with pytest.raises(Exception):
            Integrand(space(1, 1), [Quadratic(1, 0, 0)])

    def test_convex_flag(self):
        phi = Integrand(space(1, 1), [Quadratic(1, 0, 0), AbsoluteValue(1)])
        assert phi.convex
        grid = GridFunction([0, 1], [1, 0])
        assert not Integrand(space(1), [grid]).convex

    def test_json_round_trip(self):
        phi = Integrand(
            space(1, 2),
            [
                SeparableProduct([Quadratic(1, 0, 0), AbsoluteValue(2)]),
                SeparableProduct([NegLog(), IndicatorInterval(0, 1)]),
            ],
        )
        back = Integrand.from_json(phi.to_json())
        assert back == phi

    def test_negated_json_round_trip(self):
        phi = Integrand(space(1), [NegatedSection(Quadratic(1, 0, 0))])
        assert Integrand.from_json(phi.to_json()) == phi

    def test_mixed_dimensions_rejected(self):
        with pytest.raises(ValueError):
            Integrand(
                space(1, 1),
                [Quadratic(1, 0, 0), SeparableProduct([Quadratic(1, 0, 0), NegLog()])],
            )


class TestCaratheodory:
    def test_two_quadratics(self):
        phi = build_caratheodory(space(1, 1), [Quadratic(1, 0, 0), Quadratic(1, -2, 1)])
        assert phi.caratheodory

    def test_indicator_rejected_but_plain_ok(self):
        with pytest.raises(ValueError):
            build_caratheodory(space(1), [IndicatorInterval(0, 1)])
        phi = Integrand(space(1), [IndicatorInterval(0, 1)])
        assert not phi.caratheodory

    def test_scaled_abs_family(self):
        phi = build_caratheodory(
            space(1, 1, 1), [AbsoluteValue(1), AbsoluteValue(2), AbsoluteValue(3)]
        )
        assert phi.caratheodory


class TestEpigraphSampler:
    def test_budget_zero_rejected(self):
        phi = Integrand(space(1), [Quadratic(1, 0, 0)])
        with pytest.raises(ValueError):
            epigraph_dense_sample(phi, 0)

    def test_pairs_feasible_quadratic(self):
        phi = Integrand(space(1), [Quadratic(1, 0, 0)])
        sample = epigraph_dense_sample(phi, 4)
        assert sample.budget == 4
        for xs, rs in sample.points:
            assert rs[0] >= 0.5 * xs[0] ** 2 - 1e-15

    def test_indicator_pairs_stay_in_domain(self):
        phi = Integrand(space(1), [IndicatorInterval(0, 1)])
        sample = epigraph_dense_sample(phi, 32)
        for xs, rs in sample.points:
            assert 0 <= xs[0] <= 1
            assert rs[0] >= 0

    @pytest.mark.parametrize(
        "section",
        [
            Quadratic(2, 1, -3),
            AbsoluteValue(1.5),
            IndicatorInterval(-0.5, 2),
            Exponential(),
            NegLog(),
            GridFunction([-1, 0.5, 2], [3, 1, 2]),
        ],
        ids=repr,
    )
    def test_feasibility_exact(self, section):
        phi = Integrand(space(1), [section])
        sample = epigraph_dense_sample(phi, 257)
        for xs, rs in sample.points:
            assert rs[0] >= section_value(section, xs[0])

    def test_deterministic(self):
        phi = Integrand(space(1, 1), [Quadratic(1, 0, 0), AbsoluteValue(1)])
        assert (
            epigraph_dense_sample(phi, 100).points
            == epigraph_dense_sample(phi, 100).points
        )

    def test_nested_budgets_share_prefix(self):
        phi = Integrand(space(1), [Quadratic(1, 0, 0)])
        small = epigraph_dense_sample(phi, 50)
        large = epigraph_dense_sample(phi, 200)
        assert large.points[:50] == small.points

    def test_vector_sections_unsupported(self):
        phi = Integrand(space(1), [SeparableProduct([Quadratic(1, 0, 0), NegLog()])])
        with pytest.raises(CapabilityError):
            epigraph_dense_sample(phi, 8)


class TestNormalityInf:
    def test_quadratic_budget_64_passes_tol_1e2(self):
        phi = Integrand(space(1), [Quadratic(1, 0, 0)])
        sample = epigraph_dense_sample(phi, 64)
        (report,) = verify_normality_inf(phi, sample, tol=1e-2)
        assert report["pass"] and report["gap"] <= 2**-12

    def test_third_needs_budget(self):
        # |x - 1/3|: dyadic abscissae approach 1/3 slowly
        phi = Integrand(space(1), [AbsoluteValue(1, center=1 / 3)])
        sample = epigraph_dense_sample(phi, 8)
        (report,) = verify_normality_inf(phi, sample, tol=1e-3)
        # oracle: the sampled minimum computed explicitly
        explicit = min(abs(xs[0] - 1 / 3) for xs, _ in sample.points)
        assert report["gap"] == pytest.approx(explicit, abs=1e-15)
        assert explicit > 1e-3 and not report["pass"]

    def test_indicator_passes_immediately(self):
        phi = Integrand(space(1), [IndicatorInterval(0, 1)])
        sample = epigraph_dense_sample(phi, 1)
        (report,) = verify_normality_inf(phi, sample, tol=0.0)
        assert report["pass"] and report["gap"] == 0.0

    def test_gap_nonincreasing_in_budget(self):
        phi = Integrand(space(1), [Quadratic(1, 1.23, 0)])
        gaps = []
        for budget in (8, 32, 128, 512):
            sample = epigraph_dense_sample(phi, budget)
            (report,) = verify_normality_inf(phi, sample, tol=1.0)
            gaps.append(report["gap"])
        assert all(b <= a + 1e-15 for a, b in zip(gaps, gaps[1:]))

    def test_criterion_rates_smoke(self):
        phi = Integrand(space(1, 1), [Quadratic(1, 0.8, 0), Quadratic(3, -0.2, 1)])
        r10 = verify_normality_inf(phi, epigraph_dense_sample(phi, 2**10), 1e-2)
        assert all(r["pass"] for r in r10)
        r16 = verify_normality_inf(phi, epigraph_dense_sample(phi, 2**16), 1e-4)
        assert all(r["pass"] for r in r16)


class TestPointwiseInf:
    def test_two_quadratics(self):
        phi = Integrand(space(1, 1), [Quadratic(2, 0, 0), Quadratic(2, -2, 1)])
        values, argmins = pointwise_inf(phi)
        assert values == [0, 0]
        assert argmins == [0, 1]

    def test_offset_abs_and_indicator(self):
        # |x| + 1 carried as a sampled section; indicator of [2, 3]
        xs = np.linspace(-2, 2, 41)
        offset_abs = GridFunction(xs, np.abs(xs) + 1)
        phi = Integrand(space(1, 1), [offset_abs, IndicatorInterval(2, 3)])
        values, argmins = pointwise_inf(phi)
        assert values == [1, 0]
        assert argmins == [0, 2]

    def test_grid_earliest_argmin(self):
        g = GridFunction([0, 1, 2], [3, 1, 2])
        values, argmins = pointwise_inf(Integrand(space(1), [g]))
        assert values == [1] and argmins == [1.0]

    def test_matches_fine_scan(self):
        sections = [Quadratic(1.7, -0.3, 2), AbsoluteValue(2.2), Exponential()]
        phi = Integrand(space(1, 1, 1), sections)
        values, _ = pointwise_inf(phi)
        for section, v in zip(sections, values):
            xs = np.linspace(-30, 30, 600001)
            scan = min(section.value(float(x)) for x in xs)
            assert v <= scan + 1e-9
            assert v == pytest.approx(scan, abs=1e-4)

    def test_interchange_wiring_for_caratheodory(self):
        from infint.measure import integrate

        phi = build_caratheodory(space(2, 1), [Quadratic(2, 0, 0), Quadratic(2, -2, 1)])
        values, _ = pointwise_inf(phi)
        assert integrate(phi.space, values) == 0.0
