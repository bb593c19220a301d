import math

import numpy as np
import pytest

from uavllt.kinematics import (
    CurveTrajectory,
    Direction,
    StraightTrajectory,
    planar_positions_at,
    position_at,
)
from uavllt.llt import (
    LinkNotUp,
    Polynomial,
    ZeroPolynomial,
    case_geometry,
    classify_case,
    compute_llt,
    find_real_roots,
    planar_separation,
    select_root,
    squared_link_distance,
    taylor_link_polynomial,
    trust_window,
)
from uavllt.oracle import brute_force_llt
from uavllt.validate import sample_instance

CCW = Direction.COUNTER_CLOCKWISE
CW = Direction.CLOCKWISE


def curve(cx, cy, r, v, direction, theta, z=100.0):
    return CurveTrajectory(cx, cy, r, v, direction, theta, z)


def straight(x, y, heading, v, z=100.0):
    return StraightTrajectory(x, y, heading, v, z)


def direct_squared_separation(traj_a, traj_b, ts):
    xa, ya = planar_positions_at(traj_a, ts)
    xb, yb = planar_positions_at(traj_b, ts)
    return (xa - xb) ** 2 + (ya - yb) ** 2


class TestClassifyCase:
    def test_cases(self):
        c = curve(0, 0, 100, 20, CCW, 0)
        s = straight(0, 0, 0, 20)
        assert classify_case(c, c) == "A"
        assert classify_case(s, c) == "B"
        assert classify_case(c, s) == "B"
        assert classify_case(s, s) == "C"


class TestCaseGeometry:
    def test_zero_gaps_take_positive_sign(self):
        g = case_geometry(0.0, -5.0)
        assert g.sign1 == 1.0 and g.sign2 == -1.0
        assert g.alpha == pytest.approx(math.pi / 2)
        g = case_geometry(3.0, 0.0)
        assert g.sign2 == 1.0 and g.alpha == 0.0


class TestSquaredLinkDistance:
    def test_rigid_rotation_is_constant(self):
        a = curve(0, 0, 100, 20, CCW, 0.0)
        b = curve(0, 0, 100, 20, CCW, 1.0)
        model = squared_link_distance(a, b)
        ts = np.linspace(0, 500, 200)
        values = model(ts)
        assert np.allclose(values, values[0], rtol=1e-12)

    def test_case_c_receding_pair(self):
        a = straight(0, 0, 0.0, 10.0)
        b = straight(50, 0, 0.0, 20.0)
        model = squared_link_distance(a, b)
        for t in (0.0, 1.0, 2.5, 7.0):
            assert model(t) == pytest.approx((50 + 10 * t) ** 2, rel=1e-12)

    @pytest.mark.parametrize("case", ["A", "B", "C"])
    @pytest.mark.parametrize("seed", range(10))
    def test_matches_direct_positions(self, case, seed):
        rng = np.random.default_rng([31, seed])
        traj_a, traj_b, _ = sample_instance(case, rng)
        model = squared_link_distance(traj_a, traj_b)
        ts = rng.uniform(0, 100, 100)
        direct = direct_squared_separation(traj_a, traj_b, ts)
        rel = np.abs(model(ts) - direct) / np.maximum(direct, 1e-30)
        assert rel.max() <= 1e-9

    def test_value_at_zero_is_anchor_separation(self):
        rng = np.random.default_rng(37)
        for case in ("A", "B", "C"):
            traj_a, traj_b, _ = sample_instance(case, rng)
            pa = position_at(traj_a, 0.0)
            pb = position_at(traj_b, 0.0)
            d2 = (pa.x - pb.x) ** 2 + (pa.y - pb.y) ** 2
            assert squared_link_distance(traj_a, traj_b)(0.0) == pytest.approx(d2, rel=1e-12)


class TestSignAlphaEquivalence:
    """The gap/sign/alpha formulation must equal the direct expansion."""

    @pytest.mark.parametrize("sx,sy", [(1, 1), (1, -1), (-1, 1), (-1, -1),
                                       (0, 1), (0, -1), (1, 0), (-1, 0), (0, 0)])
    def test_all_offset_quadrants(self, sx, sy):
        a = curve(500.0 * sx, 400.0 * sy, 300, 30, CCW, 0.7)
        b = curve(0.0, 0.0, 200, 45, CW, -1.9)
        model = squared_link_distance(a, b)
        ts = np.linspace(0, 120, 100)
        direct = direct_squared_separation(a, b, ts)
        rel = np.abs(model(ts) - direct) / np.maximum(direct, 1e-30)
        assert rel.max() <= 1e-9


class TestTaylorPolynomial:
    def test_case_c_exact_quadratic(self):
        a = straight(0, 0, 0.0, 10.0)
        b = straight(50, 0, 0.0, 20.0)
        poly = taylor_link_polynomial(a, b, 12)
        assert poly.degree == 2
        assert poly.coefficients == pytest.approx((2500.0, 1000.0, 100.0))

    def test_equal_rate_concentric_collapses_to_constant(self):
        # Same center, same angular velocity: relative phase is frozen.
        a = curve(0, 0, 100, 20, CCW, 0.0)
        b = curve(0, 0, 150, 30, CCW, 1.0)
        poly = taylor_link_polynomial(a, b, 12)
        assert poly.degree == 0
        assert poly.coefficients[0] == pytest.approx(
            100**2 + 150**2 - 2 * 100 * 150 * math.cos(1.0))

    def test_degree_below_two_rejected(self):
        a = straight(0, 0, 0, 10)
        with pytest.raises(ValueError):
            taylor_link_polynomial(a, a, 1)

    @pytest.mark.parametrize("case", ["A", "B"])
    @pytest.mark.parametrize("seed", range(15))
    def test_accurate_inside_trust_window(self, case, seed):
        rng = np.random.default_rng([41, seed])
        traj_a, traj_b, _ = sample_instance(case, rng)
        model = squared_link_distance(traj_a, traj_b)
        window = trust_window(model, 12)
        poly = model.taylor(12)
        ts = np.linspace(0, window, 400)
        exact = model(ts)
        rel = np.abs(poly(ts) - exact) / np.maximum(np.abs(exact), 1e-30)
        assert rel.max() <= 1e-6


class TestFindRealRoots:
    def test_simple_quadratic(self):
        roots = find_real_roots(Polynomial.from_coefficients([-4.0, 0.0, 1.0]))
        assert roots == pytest.approx([-2.0, 2.0])

    def test_constant_has_no_roots(self):
        assert find_real_roots(Polynomial.from_coefficients([5.0])) == []

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ZeroPolynomial):
            find_real_roots(Polynomial.from_coefficients([0.0, 0.0]))

    def test_complex_pairs_excluded(self):
        # t^2 + 1: no real roots
        assert find_real_roots(Polynomial.from_coefficients([1.0, 0.0, 1.0])) == []

    @pytest.mark.parametrize("seed", range(20))
    def test_recovers_known_roots(self, seed):
        rng = np.random.default_rng([43, seed])
        n = int(rng.integers(2, 8))
        known = np.sort(rng.uniform(-10, 10, n))
        coeffs = np.array([1.0])
        for r in known:
            coeffs = np.convolve(coeffs, [-r, 1.0])
        found = find_real_roots(Polynomial.from_coefficients(coeffs))
        assert len(found) == n
        assert found == pytest.approx(list(known), abs=1e-6)


class TestSelectRoot:
    def test_smallest_valid_positive_root(self):
        exact = lambda t: 100.0 + (t - 2.0) * 10.0  # crosses 100 upward at t=2
        pick = select_root([-3.0, 2.0, 7.0], exact, 10.0, trust_radius=20.0)
        assert pick == pytest.approx(2.0, abs=1e-9)

    def test_all_negative_gives_none(self):
        exact = lambda t: 100.0 + t
        assert select_root([-5.0, -1.0], exact, 10.0, trust_radius=20.0) is None

    def test_roots_beyond_trust_radius_filtered(self):
        exact = lambda t: 100.0 + (t - 15.0) * 10.0  # crossing at 15
        assert select_root([15.0], exact, 10.0, trust_radius=5.0) is None
        assert select_root([15.0], exact, 10.0, trust_radius=20.0) == pytest.approx(15.0)

    def test_downward_crossing_skipped(self):
        # Separation dips back inside range at t=3 then leaves again at t=8;
        # the entering-range crossing must be skipped for the later break.
        def exact(t):
            return 100.0 + 5.0 * (t - 3.0) * (t - 8.0) * (0.1 if t < 5.5 else 1.0)
        pick = select_root([3.0, 8.0], exact, 10.0, trust_radius=20.0)
        assert pick == pytest.approx(8.0, abs=1e-6)


class TestComputeLlt:
    def test_case_c_example(self):
        a = straight(0, 0, 0.0, 10.0)
        b = straight(50, 0, 0.0, 20.0)
        result = compute_llt(a, b, 100.0)
        assert result.case_used == "C"
        assert result.bounded
        assert result.llt == pytest.approx(5.0, abs=1e-9)
        assert result.residual <= 1e-6

    def test_rigid_rotation_unbounded(self):
        a = curve(0, 0, 100, 20, CCW, 0.0)
        b = curve(0, 0, 100, 20, CCW, 1.0)
        result = compute_llt(a, b, 150.0, horizon=500.0)
        assert result.horizon_capped
        assert result.llt == 500.0
        assert result.root is None

    def test_concentric_counter_rotating(self):
        # Closed form: break when cos((w1-w2) t) falls to
        # (R1^2 + R2^2 - range^2) / (2 R1 R2).
        a = curve(0, 0, 100, 10.0, CCW, 0.0)   # omega +0.1
        b = curve(0, 0, 150, 15.0, CW, 0.0)    # omega -0.1
        expected = math.acos((100**2 + 150**2 - 120**2) / (2 * 100 * 150)) / 0.2
        result = compute_llt(a, b, 120.0)
        assert result.bounded
        assert result.llt == pytest.approx(expected, rel=1e-9)
        assert expected == pytest.approx(4.6156, abs=1e-3)
        oracle = brute_force_llt(a, b, 120.0)
        assert abs(result.llt - oracle) <= 2e-3

    def test_link_not_up(self):
        a = straight(0, 0, 0, 10)
        b = straight(500, 0, 0, 10)
        with pytest.raises(LinkNotUp):
            compute_llt(a, b, 100.0)

    def test_break_in_a_later_trust_window(self):
        # Slow beat: equal speeds, slightly different radii, opposite turns
        # around nearby centers; the break lands beyond the first window.
        a = curve(0, 0, 400, 20, CCW, 0.0)
        b = curve(150, 0, 420, 20, CW, 0.0)
        result = compute_llt(a, b, 800.0, horizon=600.0)
        oracle = brute_force_llt(a, b, 800.0, horizon=600.0)
        window = trust_window(squared_link_distance(a, b))
        assert result.bounded and math.isfinite(oracle)
        assert result.llt > window
        assert abs(result.llt - oracle) <= max(2e-3, 1e-3 * oracle)

    def test_bounded_residual_within_one_percent_of_range(self):
        rng = np.random.default_rng(47)
        for case in ("A", "B", "C"):
            for _ in range(20):
                traj_a, traj_b, tx = sample_instance(case, rng)
                result = compute_llt(traj_a, traj_b, tx, horizon=150.0)
                if result.bounded:
                    assert result.residual <= 0.01 * tx

    @pytest.mark.parametrize("case", ["A", "B", "C"])
    def test_symmetry_exact(self, case):
        rng = np.random.default_rng([53, ord(case)])
        for _ in range(15):
            traj_a, traj_b, tx = sample_instance(case, rng)
            assert compute_llt(traj_a, traj_b, tx, horizon=200.0) == \
                compute_llt(traj_b, traj_a, tx, horizon=200.0)

    @pytest.mark.parametrize("case", ["A", "B", "C"])
    def test_oracle_agreement_quick(self, case):
        rng = np.random.default_rng([59, ord(case)])
        for _ in range(25):
            traj_a, traj_b, tx = sample_instance(case, rng)
            result = compute_llt(traj_a, traj_b, tx, horizon=150.0)
            oracle = brute_force_llt(traj_a, traj_b, tx, dt=1e-3, horizon=150.0)
            if result.bounded and math.isfinite(oracle):
                assert abs(result.llt - oracle) <= max(2e-3, 1e-3 * oracle)

    def test_planar_separation_helper(self):
        a = straight(0, 0, 0.0, 10.0)
        b = straight(50, 0, 0.0, 20.0)
        assert planar_separation(a, b) == pytest.approx(50.0)
        assert planar_separation(a, b, at=5.0) == pytest.approx(100.0)
        late = StraightTrajectory(50, 0, 0.0, 20.0, 100.0, epoch=2.0)
        # mismatched epochs measure at the later anchor by default
        assert planar_separation(a, late) == pytest.approx(30.0)

    def test_flyby_first_break_is_after_the_dip(self):
        # Closing then receding pair: the separation dips, so the only
        # positive crossing is the break on the way out.
        a = straight(0, 0, 0.0, 30.0)
        b = straight(80, 0, math.pi, 20.0)  # head-on
        result = compute_llt(a, b, 100.0)
        oracle = brute_force_llt(a, b, 100.0)
        assert result.bounded
        assert abs(result.llt - oracle) <= 1e-3
        # they meet first, so the break is well after the approach
        assert result.llt * 50.0 > 80.0
