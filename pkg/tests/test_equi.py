import math

import numpy as np
import pytest

from entmono import equi
from entmono.comparability import Relation, classify
from entmono.equi import CurveSpec, crossing_demo, feasible_alpha1_range, solve_alpha2, trace_curve
from entmono.errors import InfeasibleTarget, NoOverlap
from entmono.schmidt import concurrence, concurrence_squared, entropy_of_entanglement

LOG2_3 = math.log2(3)


class TestSolveAlpha2:
    def test_symmetric_point(self):
        assert solve_alpha2(1 / 3, LOG2_3) == pytest.approx(1 / 3, abs=1e-12)

    def test_psi1_lies_on_its_curve(self):
        assert abs(solve_alpha2(0.46, 1.528432837) - 0.306) <= 1e-6

    def test_psi2_lies_on_its_curve(self):
        assert abs(solve_alpha2(0.43, 1.523392983) - 0.3645) <= 1e-6

    def test_out_of_branch(self):
        assert solve_alpha2(0.9, 1.5) is None
        assert solve_alpha2(0.2, 1.5) is None
        assert solve_alpha2(0.4, 0.1) is None

    def test_residual(self):
        for a1 in np.linspace(0.39, 0.446, 25):
            a2 = solve_alpha2(a1, 1.545)
            assert abs(equi.entropy3(a1, a2) - 1.545) <= 1e-12


class TestFeasibleRange:
    def test_collapses_near_max(self):
        lo, hi = feasible_alpha1_range(LOG2_3 - 1e-9)
        assert 1 / 3 <= lo <= hi < 1 / 3 + 1e-3

    def test_contains_psi1(self):
        lo, hi = feasible_alpha1_range(1.528432837)
        assert lo < 0.46 < hi

    def test_endpoints_are_boundary_states(self):
        lo, hi = feasible_alpha1_range(1.545)
        assert solve_alpha2(lo, 1.545) == pytest.approx(lo, abs=1e-9)
        assert solve_alpha2(hi, 1.545) == pytest.approx((1 - hi) / 2, abs=1e-9)
        # Just outside, no solution.
        assert solve_alpha2(lo - 1e-6, 1.545) is None
        assert solve_alpha2(hi + 1e-6, 1.545) is None

    def test_low_entropy_uses_binary_boundary(self):
        lo, hi = feasible_alpha1_range(0.5)
        assert lo > 0.5
        h = -lo * math.log2(lo) - (1 - lo) * math.log2(1 - lo)
        assert abs(h - 0.5) < 1e-12

    @pytest.mark.parametrize("t", [0.0, -1.0, LOG2_3, 2.0])
    def test_infeasible(self, t):
        with pytest.raises(InfeasibleTarget):
            feasible_alpha1_range(t)


class TestTraceCurve:
    def test_degenerate_narrow_curve(self):
        pts = trace_curve(CurveSpec(LOG2_3 - 1e-6, 2))
        assert len(pts) == 2
        assert abs(pts[0].alpha1 - 1 / 3) < 2e-3 and abs(pts[1].alpha1 - 1 / 3) < 2e-3

    @pytest.mark.parametrize("target", [1.545, 1.547, 1.550, 1.2, 0.7])
    def test_residual_order_and_continuity(self, target):
        pts = trace_curve(CurveSpec(target, 200))
        assert len(pts) == 200
        a1 = [p.alpha1 for p in pts]
        assert a1 == sorted(a1)
        step = a1[1] - a1[0]
        for p in pts:
            v = p.vector
            assert p.alpha1 >= p.alpha2 >= p.alpha3 >= 0
            assert abs(sum(v.coeffs) - 1) <= 1e-9
            assert abs(entropy_of_entanglement(v) - target) <= 1e-9
            assert p.concurrence_squared == pytest.approx(concurrence_squared(v), abs=1e-15)
        jumps = np.abs(np.diff([p.alpha2 for p in pts]))
        assert np.all(jumps[:-2] <= 10 * step)
        # a2 ~ sqrt(distance) where a2 meets a3 at the upper end.
        assert np.all(jumps[-2:] <= 10 * math.sqrt(step))

    def test_invalid_specs(self):
        with pytest.raises(ValueError):
            CurveSpec(1.5, 1)
        with pytest.raises(ValueError):
            CurveSpec(1.5, 10, rank=4)
        with pytest.raises(InfeasibleTarget):
            CurveSpec(2.0, 10)

    def test_three_class_ranges(self):
        ranges = {}
        for t in (1.545, 1.547, 1.550):
            c2 = [p.concurrence_squared for p in trace_curve(CurveSpec(t, 400))]
            ranges[t] = (min(c2), max(c2))
        # Higher-entropy class reaches above the lower one's minimum.
        assert ranges[1.550][1] > ranges[1.545][0]
        # Adjacent classes overlap; the outer two do not.
        assert ranges[1.545][1] > ranges[1.547][0]
        assert ranges[1.547][1] > ranges[1.550][0]
        assert ranges[1.545][1] < ranges[1.550][0]


def brute_force_c2_range(target, n=2000, band=2e-4):
    a = np.linspace(1e-9, 1, n)
    x1, x2 = np.meshgrid(a, a)
    x3 = 1 - x1 - x2
    ok = x3 > 0
    p = np.stack([x1[ok], x2[ok], x3[ok]], axis=1)
    e = -(p * np.log2(p)).sum(axis=1)
    c2 = 2 * (1 - (p * p).sum(axis=1))
    sel = np.abs(e - target) < band
    return c2[sel].min(), c2[sel].max()


def test_curve_range_matches_brute_force():
    for t in (1.545, 1.550):
        c2 = [p.concurrence_squared for p in trace_curve(CurveSpec(t, 400))]
        lo, hi = brute_force_c2_range(t)
        # The entropy band widens the brute-force range slightly.
        assert abs(min(c2) - lo) < 5e-4 and abs(max(c2) - hi) < 5e-4
        assert lo <= min(c2) + 1e-6 and max(c2) <= hi + 1e-6


class TestCrossing:
    @pytest.mark.parametrize("low, high", [(1.545, 1.547), (1.547, 1.550)])
    def test_quadruple(self, low, high):
        q = crossing_demo(low, high)
        ca, cb, cc, cd = (concurrence(v) for v in (q.A, q.B, q.C, q.D))
        ea, eb, ec, ed = (entropy_of_entanglement(v) for v in (q.A, q.B, q.C, q.D))
        assert abs(ea - low) < 1e-9 and abs(eb - low) < 1e-9
        assert abs(ec - high) < 1e-9 and abs(ed - high) < 1e-9
        assert abs(ca - cd) <= 1e-8 and abs(cb - cc) <= 1e-8
        assert ca > cc and ea < ec
        assert cd > cb and ed > eb
        assert classify(q.A, q.C).tag is Relation.INCOMPARABLE
        assert classify(q.B, q.D).tag is Relation.INCOMPARABLE

    def test_equal_classes_rejected(self):
        with pytest.raises(ValueError):
            crossing_demo(1.545, 1.545)

    def test_disjoint_ranges(self):
        with pytest.raises(NoOverlap):
            crossing_demo(1.545, 1.550)
