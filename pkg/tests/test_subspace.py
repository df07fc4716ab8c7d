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
from infint.integrand import Integrand
from infint.measure import DiscreteMeasureSpace
from infint.subspace import (
    ComplianceReport,
    SubspaceSpec,
    compliance_check,
    decomposability_check,
    is_member,
    restricted_infimum,
)


def space(*weights):
    return DiscreteMeasureSpace(len(weights), weights)


TWO_QUADRATICS = Integrand(space(1, 1), [Quadratic(2, 0, 0), Quadratic(2, -2, 1)])


class TestMembership:
    def test_constants(self):
        spec = SubspaceSpec.constants()
        assert is_member(spec, (2, 2, 2))
        assert not is_member(spec, (2, 3, 2))

    def test_zero_outside(self):
        spec = SubspaceSpec.zero_outside([0])
        assert is_member(spec, (5, 0))
        assert not is_member(spec, (5, 1e-9))

    def test_full(self):
        assert is_member(SubspaceSpec.full(), (1, -2, 3))

    def test_piecewise(self):
        spec = SubspaceSpec.piecewise_constant([[0, 1], [2]])
        assert is_member(spec, (4, 4, 9))
        assert not is_member(spec, (4, 5, 9))

    def test_bounded_ball_is_not_a_subspace(self):
        spec = SubspaceSpec.bounded_by(1.0)
        assert is_member(spec, (1, -1))
        assert not is_member(spec, (2, 0))  # fails closure under scaling
        assert not spec.is_vector_subspace()

    def test_subspace_closure_under_operations(self):
        rng = np.random.default_rng(5)
        for spec in (
            SubspaceSpec.full(),
            SubspaceSpec.constants(),
            SubspaceSpec.piecewise_constant([[0, 2], [1]]),
            SubspaceSpec.zero_outside([1]),
        ):
            for _ in range(30):
                x = tuple(rng.uniform(-3, 3, 3))
                y = tuple(rng.uniform(-3, 3, 3))

                def project(v):
                    # force membership: overwrite into the subspace pattern
                    if spec.kind == "constants":
                        return (v[0], v[0], v[0])
                    if spec.kind == "piecewise_constant":
                        return (v[0], v[1], v[0])
                    if spec.kind == "zero_outside":
                        return (0.0, v[1], 0.0)
                    return v

                a, b = project(x), project(y)
                assert is_member(spec, a) and is_member(spec, b)
                s = tuple(ai + bi for ai, bi in zip(a, b))
                t = tuple(2.5 * ai for ai in a)
                assert is_member(spec, s) and is_member(spec, t)

    def test_json_round_trip(self):
        for spec in (
            SubspaceSpec.full(),
            SubspaceSpec.constants(),
            SubspaceSpec.piecewise_constant([[0, 1], [2]]),
            SubspaceSpec.zero_outside([0, 2]),
            SubspaceSpec.bounded_by(2.5),
        ):
            assert SubspaceSpec.from_json(spec.to_json()) == spec


class TestComplianceCheck:
    def test_full_space_compliant(self):
        report = compliance_check(SubspaceSpec.full(), space(1, 1, 1))
        assert report.compliant and report.counterexample is None
        assert report.census["subsets"] == 8

    def test_constants_counterexample(self):
        spec = SubspaceSpec.constants()
        report = compliance_check(spec, space(1, 1))
        assert not report.compliant
        # deterministic first witness: subset {0}, first probe e_0
        assert report.counterexample["A"] == [0]
        assert report.counterexample["z"] == [1.0, 0.0]
        assert report.replay(spec)

    def test_singleton_cells_behave_like_full_space(self):
        spec = SubspaceSpec.piecewise_constant([[0], [1], [2]])
        assert compliance_check(spec, space(1, 1, 1)).compliant

    def test_zero_outside_not_compliant(self):
        spec = SubspaceSpec.zero_outside([0, 1])
        report = compliance_check(spec, space(1, 1, 1))
        assert not report.compliant
        assert report.replay(spec)

    def test_capacity_guard(self):
        with pytest.raises(CapabilityError):
            compliance_check(SubspaceSpec.full(), space(*([1.0] * 21)))

    def test_deterministic_given_seed(self):
        spec = SubspaceSpec.zero_outside([1])
        a = compliance_check(spec, space(1, 1, 1), probes=16, seed=42)
        b = compliance_check(spec, space(1, 1, 1), probes=16, seed=42)
        assert a == b


class TestDecomposability:
    @pytest.mark.parametrize("variant", ["rockafellar", "valadier"])
    def test_full_space(self, variant):
        report = decomposability_check(SubspaceSpec.full(), space(1, 1), variant)
        assert report.compliant

    def test_constants_fail(self):
        report = decomposability_check(SubspaceSpec.constants(), space(1, 1))
        assert not report.compliant
        assert report.replay(SubspaceSpec.constants())

    def test_zero_outside_fails_via_basis_probe(self):
        spec = SubspaceSpec.zero_outside([0, 1])
        report = decomposability_check(spec, space(1, 1, 1))
        assert not report.compliant
        ce = report.counterexample
        # gluing z over A = {2} with the zero member breaks the support
        glued = tuple(
            ce["z"][i] if i in set(ce["A"]) else ce["x"][i] for i in range(3)
        )
        assert not is_member(spec, glued)

    def test_implication_decomposable_implies_compliant(self):
        zoo = [
            SubspaceSpec.full(),
            SubspaceSpec.constants(),
            SubspaceSpec.piecewise_constant([[0], [1], [2]]),
            SubspaceSpec.piecewise_constant([[0, 1], [2]]),
            SubspaceSpec.zero_outside([0]),
        ]
        sp = space(1, 2, 0.5)
        for spec in zoo:
            dec = decomposability_check(spec, sp)
            com = compliance_check(spec, sp)
            if dec.compliant:
                assert com.compliant


class TestRestrictedInfimum:
    def test_full_space_two_quadratics(self):
        value, point = restricted_infimum(TWO_QUADRATICS, SubspaceSpec.full())
        assert value == pytest.approx(0.0, abs=1e-15)
        assert point == (0.0, 1.0)

    def test_constants_two_quadratics(self):
        value, point = restricted_infimum(TWO_QUADRATICS, SubspaceSpec.constants())
        assert value == pytest.approx(0.5, abs=1e-12)
        assert point[0] == pytest.approx(0.5, abs=1e-6)

    def test_zero_outside(self):
        phi = Integrand(space(1, 1), [Quadratic(2, -2, 1), Quadratic(2, -2, 1)])
        value, point = restricted_infimum(phi, SubspaceSpec.zero_outside([0]))
        assert value == pytest.approx(1.0, abs=1e-15)
        assert point == (1.0, 0.0)

    def test_piecewise_cells_are_independent(self):
        phi = Integrand(
            space(1, 1, 1),
            [Quadratic(2, 0, 0), Quadratic(2, -2, 1), Quadratic(2, -4, 4)],
        )
        spec = SubspaceSpec.piecewise_constant([[0, 1], [2]])
        value, point = restricted_infimum(phi, spec)
        # cell {0,1}: min of c^2 + (c-1)^2 = 1/2; cell {2}: exact argmin 2
        assert value == pytest.approx(0.5, abs=1e-12)
        assert point[0] == point[1] == pytest.approx(0.5, abs=1e-6)
        assert point[2] == pytest.approx(2.0, abs=1e-6)

    def test_bounded_ball_clips_the_argmin(self):
        phi = Integrand(space(1), [Quadratic(2, -2, 1)])
        value, _ = restricted_infimum(phi, SubspaceSpec.bounded_by(0.5))
        assert value == pytest.approx((0.5 - 1) ** 2, abs=1e-9)

    def test_monotone_in_subspace_inclusion(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            sections = [
                Quadratic(rng.uniform(0.5, 3), rng.uniform(-2, 2), rng.uniform(-1, 1))
                for _ in range(3)
            ]
            phi = Integrand(space(*rng.uniform(0.2, 2, 3)), sections)
            v_const, _ = restricted_infimum(phi, SubspaceSpec.constants())
            v_pc, _ = restricted_infimum(
                phi, SubspaceSpec.piecewise_constant([[0, 1], [2]])
            )
            v_full, _ = restricted_infimum(phi, SubspaceSpec.full())
            assert v_const >= v_pc - 1e-10 >= v_full - 2e-10

    def test_constants_with_disjoint_domains_is_infeasible(self):
        phi = Integrand(
            space(1, 1), [IndicatorInterval(0, 1), IndicatorInterval(2, 3)]
        )
        value, point = restricted_infimum(phi, SubspaceSpec.constants())
        assert value == PLUS_INF and point is None

    def test_constants_unbounded_below(self):
        from infint.catalog import Affine

        phi = Integrand(space(1, 1), [Affine(1, 0), Affine(2, 0)])
        value, _ = restricted_infimum(phi, SubspaceSpec.constants())
        assert value == MINUS_INF

    def test_constants_exponential_limit(self):
        # inf over constants of 2*exp(c) approaches 0 without attainment
        phi = Integrand(space(1, 1), [Exponential(), Exponential()])
        value, point = restricted_infimum(phi, SubspaceSpec.constants())
        assert value == pytest.approx(0.0, abs=1e-9)
        assert point is None

    def test_constants_grid_sections_use_common_samples(self):
        g1 = GridFunction([0, 1, 2], [5, 1, 4])
        g2 = GridFunction([1, 2, 3], [2, 0, 7])
        phi = Integrand(space(1, 1), [g1, g2])
        value, point = restricted_infimum(phi, SubspaceSpec.constants())
        # common abscissae {1, 2}: values 1+2=3 at c=1, 4+0=4 at c=2
        assert value == 3.0 and point == (1.0, 1.0)

    def test_neglog_domain_respected(self):
        phi = Integrand(space(1, 1), [NegLog(), Quadratic(2, 0, 0)])
        value, point = restricted_infimum(phi, SubspaceSpec.constants())
        # minimize -ln(c) + c^2 at c = 1/sqrt(2)
        best = 1 / math.sqrt(2)
        assert point[0] == pytest.approx(best, abs=1e-6)
        assert value == pytest.approx(-math.log(best) + best**2, abs=1e-9)
