"""Cap cones on the ball: membership, inclusion, disjointness, completion."""

import math

import numpy as np
import pytest

from hypercones import (BallCone, BallPoint, Cap, DegenerateGeometry,
                        FourVector, Hyperball, Hyperboloid, Hypercone,
                        SphereDirection, ball_distance, cone_hyperball_disjoint,
                        cone_leq, contains_point, disjoint, enclosing_cone,
                        hyperball_in_cone, in_causal_completion,
                        lift_from_ball, lorentz_ball_action, map_cone,
                        opposite, point_margin)
from tests.conftest import (disjoint_cone_pair, interior_point, random_cone,
                            random_transform, unit_vector)

Z = np.array([0.0, 0.0, 1.0])


def simple_cone(apex_z=0.1, psi=0.5) -> BallCone:
    return BallCone(BallPoint(np.array([0.0, 0.0, apex_z])),
                    Cap(SphereDirection(Z), psi))


class TestConeValidity:
    def test_apex_below_base_plane_required(self):
        with pytest.raises(ValueError):
            BallCone(BallPoint(np.array([0.0, 0.0, 0.9])),
                     Cap(SphereDirection(Z), 0.5))

    def test_wide_cap_needs_deep_apex(self):
        # half-angle beyond a right angle: apex must sit on the far side
        with pytest.raises(ValueError):
            BallCone(BallPoint(np.zeros(3)), Cap(SphereDirection(Z), 2.0))
        BallCone(BallPoint(np.array([0.0, 0.0, -0.6])),
                 Cap(SphereDirection(Z), 2.0))


class TestMembership:
    def test_axis_chord_is_inside(self):
        cone = simple_cone()
        for s in (0.2, 0.5, 0.9):
            u = BallPoint(cone.apex.v + s * (Z - cone.apex.v))
            assert contains_point(cone, u)

    def test_apex_and_backside_are_outside(self):
        cone = simple_cone()
        assert not contains_point(cone, cone.apex)
        assert not contains_point(cone, BallPoint(np.array([0.0, 0.0, -0.5])))
        assert not contains_point(cone, BallPoint(np.array([0.9, 0.0, 0.0])))

    def test_membership_is_convex(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            cone = random_cone(rng)
            pts = cone.sample_points(64, rng)
            lam = rng.random(32)
            mix = (lam[:, None] * pts[:32]
                   + (1.0 - lam)[:, None] * pts[32:])
            assert np.all(cone.contains_many(mix, closed=True, slack=1e-9))

    def test_lateral_surface_has_zero_margin(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            cone = random_cone(rng)
            surf = cone.lateral_points(16, np.array([0.25, 0.5, 0.75, 0.95]))
            m = cone.interior_margins(surf)
            assert float(np.max(np.abs(m))) < 1e-9

    def test_point_margin_signs(self):
        cone = simple_cone()
        inside = cone.centroid().v
        outside = np.array([0.0, 0.0, -0.4])
        assert point_margin(cone, inside) > 0
        assert point_margin(cone, outside) < 0
        edge = cone.lateral_points(8, np.array([0.5]))[0]
        assert abs(point_margin(cone, edge)) < 1e-6

    def test_sample_points_are_members(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            cone = random_cone(rng)
            pts = cone.sample_points(512, rng)
            assert np.all(cone.contains_many(pts, closed=True, slack=1e-12))


class TestConeOrder:
    def test_narrower_coaxial_cap_is_below(self):
        inner = simple_cone(0.1, 0.3)
        outer = simple_cone(0.1, 0.5)
        assert cone_leq(inner, outer).holds
        assert not cone_leq(outer, inner).holds

    def test_apex_must_lie_in_outer_closure(self):
        inner = BallCone(BallPoint(np.array([0.8, 0.0, 0.0])),
                         Cap(SphereDirection(Z), 0.2))
        outer = simple_cone(0.0, 0.4)
        res = cone_leq(inner, outer)
        assert not res.holds
        assert res.apex_margin < 0

    def test_order_implies_membership(self):
        rng = np.random.default_rng(3)
        checked = 0
        while checked < 30:
            inner = random_cone(rng, psi_max=0.6)
            outer = random_cone(rng, psi_max=1.2)
            if not cone_leq(inner, outer).holds:
                continue
            pts = inner.sample_points(2000, rng)
            assert np.all(outer.contains_many(pts, closed=True, slack=1e-9))
            checked += 1

    def test_shrunk_chord_cone_is_below(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            cone = random_cone(rng)
            # pull the apex toward the cap center along the central chord
            beta = 0.3
            apex = cone.apex.v + beta * (cone.base.axis.v - cone.apex.v)
            psi = cone.base.half_angle * 0.5
            if float(cone.base.axis.v @ apex) >= math.cos(psi) - 1e-9:
                continue
            sub = BallCone(BallPoint(apex), Cap(cone.base.axis, psi))
            assert cone_leq(sub, cone).holds

    def test_order_is_transitive(self):
        a = simple_cone(0.2, 0.25)
        b = simple_cone(0.1, 0.45)
        c = simple_cone(0.0, 0.7)
        assert cone_leq(a, b).holds and cone_leq(b, c).holds
        assert cone_leq(a, c).holds


class TestDisjointness:
    def test_mirror_cones_are_disjoint_with_plane(self):
        a = simple_cone(0.15, 0.45)
        b = BallCone(BallPoint(np.array([0.0, 0.0, -0.15])),
                     Cap(SphereDirection(-Z), 0.45))
        res = disjoint(a, b)
        assert res.disjoint
        w, c = res.plane
        # certificate: first cone on the positive side, second negative
        assert np.min(a.sample_points(500, np.random.default_rng(0)) @ w) \
            >= c - 1e-9
        assert np.max(b.sample_points(500, np.random.default_rng(0)) @ w) \
            <= c + 1e-9

    def test_random_disjoint_pairs_carry_valid_planes(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            a, b = disjoint_cone_pair(rng)
            res = disjoint(a, b)
            assert res.disjoint and res.margin > 0
            w, c = res.plane
            pa = a.sample_points(800, rng)
            pb = b.sample_points(800, rng)
            assert float(np.min(pa @ w)) >= c - 1e-9
            assert float(np.max(pb @ w)) <= c + 1e-9

    def test_overlapping_cones_report_common_point(self):
        a = simple_cone(0.0, 0.5)
        b = BallCone(BallPoint(np.array([0.1, 0.0, 0.0])),
                     Cap(SphereDirection(Z), 0.4))
        res = disjoint(a, b)
        assert not res.disjoint
        p = res.common_point
        assert bool(a.contains_many(p[None, :])[0])
        assert bool(b.contains_many(p[None, :])[0])

    def test_nested_cones_are_not_disjoint(self):
        outer = simple_cone(0.0, 0.8)
        inner = simple_cone(0.3, 0.2)
        assert not disjoint(inner, outer).disjoint

    def test_symmetry(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            a = random_cone(rng)
            b = random_cone(rng)
            assert disjoint(a, b).disjoint == disjoint(b, a).disjoint


class TestOpposite:
    def test_involution(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            cone = random_cone(rng, psi_max=0.9)
            back = opposite(opposite(cone))
            assert abs(back.base.half_angle - cone.base.half_angle) < 1e-7
            assert float(back.base.axis.v @ cone.base.axis.v) > 1.0 - 1e-7

    def test_shares_apex_and_is_disjoint_from_source(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            cone = random_cone(rng, psi_max=0.8, apex_r=0.5)
            opp = opposite(cone)
            assert np.array_equal(opp.apex.v, cone.apex.v)
            assert disjoint(cone, opp).disjoint

    def test_centered_opposite_is_mirror(self):
        cone = BallCone(BallPoint(np.zeros(3)), Cap(SphereDirection(Z), 0.6))
        opp = opposite(cone)
        assert float(opp.base.axis.v @ Z) < -1.0 + 1e-9
        assert abs(opp.base.half_angle - 0.6) < 1e-9


class TestEnclosingCone:
    def test_covers_both_inputs(self):
        rng = np.random.default_rng(9)
        for _ in range(30):
            a = random_cone(rng, psi_max=0.6)
            b = random_cone(rng, psi_max=0.6)
            cover = enclosing_cone(a, b)
            if cover is None:
                continue
            assert cone_leq(a, cover).holds
            assert cone_leq(b, cover).holds

    def test_nested_pair_returns_outer(self):
        inner = simple_cone(0.2, 0.2)
        outer = simple_cone(0.0, 0.6)
        cover = enclosing_cone(inner, outer)
        assert cover is outer

    def test_opposed_wide_cones_admit_no_cover(self):
        x = np.array([1.0, 0.0, 0.0])
        a = BallCone(BallPoint(-0.3 * x), Cap(SphereDirection(x), 1.75))
        b = BallCone(BallPoint(0.3 * x), Cap(SphereDirection(-x), 1.75))
        assert enclosing_cone(a, b) is None


class TestHyperballPredicates:
    def test_ball_at_centroid_is_inside(self, shell):
        cone = simple_cone(0.0, 0.7)
        ball = Hyperball(shell, cone.centroid(), 0.1)
        assert hyperball_in_cone(ball, cone).holds

    def test_oversized_ball_is_not_inside(self, shell):
        cone = simple_cone(0.0, 0.4)
        ball = Hyperball(shell, cone.centroid(), 5.0)
        assert not hyperball_in_cone(ball, cone).holds

    def test_touching_ball_raises_degenerate(self, shell):
        cone = simple_cone(0.0, 0.7)
        center = cone.centroid()
        from hypercones.cones import _min_boundary_distance
        exact = _min_boundary_distance(cone, center, shell.tau)
        with pytest.raises(DegenerateGeometry):
            hyperball_in_cone(Hyperball(shell, center, exact), cone)

    def test_inclusion_margin_matches_metric(self, shell):
        cone = simple_cone(0.0, 0.7)
        ball = Hyperball(shell, cone.centroid(), 0.05)
        res = hyperball_in_cone(ball, cone)
        # margin should shrink by exactly the radius increase
        res2 = hyperball_in_cone(Hyperball(shell, cone.centroid(), 0.10),
                                 cone)
        assert res.margin - res2.margin == pytest.approx(0.05, abs=1e-9)

    def test_separated_ball_is_disjoint_from_cone(self, shell):
        cone = simple_cone(0.1, 0.4)
        ball = Hyperball(shell, BallPoint(np.array([0.0, 0.0, -0.5])), 0.2)
        assert cone_hyperball_disjoint(cone, ball).disjoint

    def test_overlapping_ball_is_not_disjoint(self, shell):
        cone = simple_cone(0.1, 0.4)
        ball = Hyperball(shell, cone.centroid(), 0.3)
        assert not cone_hyperball_disjoint(cone, ball).disjoint


class TestCausalCompletion:
    def test_shell_points_of_cone_are_inside(self, shell):
        rng = np.random.default_rng(10)
        region = Hypercone(shell, simple_cone(0.0, 0.7))
        pts = region.cone.sample_points(100, rng)
        # stay clear of the boundary: completion membership is strict
        deep = pts[region.cone.interior_margins(pts) > 0.05]
        for u in deep[:40]:
            x = lift_from_ball(BallPoint(u), shell)
            assert in_causal_completion(x, region)

    def test_points_outside_cone_are_not_inside(self, shell):
        region = Hypercone(shell, simple_cone(0.1, 0.4))
        x = lift_from_ball(BallPoint(np.array([0.0, 0.0, -0.4])), shell)
        assert not in_causal_completion(x, region)

    def test_lightlike_events_are_never_inside(self, shell):
        region = Hypercone(shell, simple_cone(0.0, 0.9))
        x = FourVector.from_parts(1.0, (0.0, 0.0, 1.0))
        assert not in_causal_completion(x, region)

    def test_past_events_rejected(self, shell):
        region = Hypercone(shell, simple_cone(0.0, 0.9))
        with pytest.raises(ValueError):
            in_causal_completion(FourVector.from_parts(-1.0, (0, 0, 0)),
                                 region)

    def test_future_of_deep_point_stays_inside_awhile(self, shell):
        region = Hypercone(shell, simple_cone(0.0, 0.9))
        x = lift_from_ball(BallPoint(np.array([0.0, 0.0, 0.3])), shell)
        shifted = x + FourVector.from_parts(0.2, (0.0, 0.0, 0.0))
        assert in_causal_completion(shifted, region)


class TestMapCone:
    def test_membership_is_equivariant(self, shell):
        rng = np.random.default_rng(11)
        for _ in range(30):
            cone = random_cone(rng, psi_max=0.8)
            g = random_transform(rng)
            image = map_cone(g, cone)
            pts = cone.sample_points(200, rng)
            mapped = np.array([lorentz_ball_action(g, BallPoint(p)).v
                               for p in pts])
            assert np.all(image.contains_many(mapped, closed=True,
                                              slack=1e-7))

    def test_identity_is_neutral(self):
        from hypercones import LorentzTransform
        cone = simple_cone(0.1, 0.5)
        image = map_cone(LorentzTransform.identity(), cone)
        assert np.max(np.abs(image.apex.v - cone.apex.v)) < 1e-12
        assert abs(image.base.half_angle - cone.base.half_angle) < 1e-9
