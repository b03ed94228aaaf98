"""Four-vector arithmetic, causal classification, and Lorentz transforms."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypercones import (CausalClass, FourVector, LorentzTransform,
                        PoincareElement, causal_class, decompose_translation,
                        in_light_cone, in_semigroup, kappa_split,
                        lightlike_boost, minkowski_product)
from tests.conftest import random_transform, unit_vector

ETA = np.diag([1.0, -1.0, -1.0, -1.0])

coord = st.floats(min_value=-10.0, max_value=10.0,
                  allow_nan=False, allow_infinity=False)
four = st.builds(lambda a, b, c, d: FourVector.from_parts(a, (b, c, d)),
                 coord, coord, coord, coord)


class TestFourVector:
    def test_square_uses_time_minus_space_signature(self):
        x = FourVector.from_parts(3.0, (2.0, 1.0, 0.0))
        assert x.square() == pytest.approx(9.0 - 5.0, abs=1e-15)

    def test_components_round_trip(self):
        x = FourVector.from_array([1.5, -0.5, 2.0, 0.25])
        assert np.array_equal(x.components, [1.5, -0.5, 2.0, 0.25])
        assert x.x0 == 1.5
        assert np.array_equal(x.xs, [-0.5, 2.0, 0.25])

    @given(four, four)
    @settings(max_examples=100, deadline=None)
    def test_product_symmetric(self, a, b):
        assert abs(minkowski_product(a, b)
                   - minkowski_product(b, a)) <= 1e-12

    @given(four, four, four,
           st.floats(min_value=-5, max_value=5, allow_nan=False))
    @settings(max_examples=100, deadline=None)
    def test_product_linear_in_first_slot(self, a, b, c, s):
        lhs = minkowski_product(
            FourVector.from_array(s * a.components + b.components), c)
        rhs = s * minkowski_product(a, c) + minkowski_product(b, c)
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs), abs(rhs))


class TestCausalPredicates:
    def test_unit_time_vector_is_inside_forward_cone(self):
        assert in_light_cone(FourVector.from_parts(1.0, (0.0, 0.0, 0.0)))

    def test_boundary_ray_is_outside_open_cone(self):
        assert not in_light_cone(FourVector.from_parts(1.0, (0.0, 0.0, 1.0)))

    def test_two_one_one_one_is_inside(self):
        assert in_light_cone(FourVector.from_parts(2.0, (1.0, 1.0, 1.0)))

    @pytest.mark.parametrize("parts,expected", [
        ((1.0, (0, 0, 0)), CausalClass.TIMELIKE_FUTURE),
        ((-1.0, (0, 0, 0)), CausalClass.TIMELIKE_PAST),
        ((1.0, (0, 0, 1)), CausalClass.LIGHTLIKE_FUTURE),
        ((-1.0, (1, 0, 0)), CausalClass.LIGHTLIKE_PAST),
        ((0.0, (1, 0, 0)), CausalClass.SPACELIKE),
        ((0.0, (0, 0, 0)), CausalClass.ZERO),
    ])
    def test_classification_table(self, parts, expected):
        assert causal_class(FourVector.from_parts(*parts)) is expected

    def test_classification_is_lorentz_invariant(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            x = FourVector.from_array(rng.normal(size=4))
            g = random_transform(rng, max_rapidity=2.0)
            assert causal_class(g.apply(x)) is causal_class(x)


class TestLorentzTransform:
    def test_boost_matrix_preserves_metric(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            m = random_transform(rng, max_rapidity=3.0).matrix
            assert np.max(np.abs(m.T @ ETA @ m - ETA)) < 1e-10
            assert m[0, 0] >= 1.0
            assert np.linalg.det(m) == pytest.approx(1.0, abs=1e-9)

    def test_inverse_composes_to_identity(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            g = random_transform(rng, max_rapidity=3.0)
            m = (g @ g.inverse()).matrix
            assert np.max(np.abs(m - np.eye(4))) < 1e-10

    def test_collinear_boosts_add_rapidity(self):
        n = np.array([0.6, 0.0, 0.8])
        lhs = (LorentzTransform.boost(n, 0.7) @ LorentzTransform.boost(n, 0.5))
        rhs = LorentzTransform.boost(n, 1.2)
        assert np.max(np.abs(lhs.matrix - rhs.matrix)) < 1e-12

    def test_rotation_fixes_time_axis(self):
        g = LorentzTransform.rotation(np.array([0.0, 0.0, 1.0]), 1.1)
        e0 = FourVector.from_parts(1.0, (0.0, 0.0, 0.0))
        assert np.allclose(g.apply(e0).components, e0.components)

    def test_invalid_matrix_rejected(self):
        with pytest.raises(ValueError):
            LorentzTransform(np.diag([1.0, 1.0, 1.0, 2.0]))
        with pytest.raises(ValueError):
            LorentzTransform(-np.eye(4))


class TestDecomposeTranslation:
    def test_past_time_vector(self):
        x, y = decompose_translation(FourVector.from_parts(-1.0, (0, 0, 0)))
        assert np.array_equal(x.components, [0.0, 0.0, 0.0, 0.0])
        assert np.array_equal(y.components, [1.0, 0.0, 0.0, 0.0])

    def test_spacelike_vector(self):
        x, y = decompose_translation(FourVector.from_parts(0.0, (5, 0, 0)))
        assert np.array_equal(x.components, [5.0, 5.0, 0.0, 0.0])
        assert np.array_equal(y.components, [5.0, 0.0, 0.0, 0.0])

    def test_future_vector_passes_through(self):
        x, y = decompose_translation(FourVector.from_parts(3.0, (0, 0, 0)))
        assert np.array_equal(x.components, [3.0, 0.0, 0.0, 0.0])
        assert np.array_equal(y.components, [0.0, 0.0, 0.0, 0.0])

    @given(four)
    @settings(max_examples=200, deadline=None)
    def test_recomposition_and_closure(self, z):
        x, y = decompose_translation(z)
        assert np.max(np.abs((x - y).components - z.components)) <= 1e-12
        for w in (x, y):
            assert w.x0 >= float(np.linalg.norm(w.xs)) - 1e-12

    @given(four)
    @settings(max_examples=100, deadline=None)
    def test_idempotent_round_trip(self, z):
        x, y = decompose_translation(z)
        x2, y2 = decompose_translation(x - y)
        assert np.max(np.abs(x2.components - x.components)) <= 1e-12
        assert np.max(np.abs(y2.components - y.components)) <= 1e-12


class TestKappaSplit:
    @pytest.mark.parametrize("parts,light,kappa", [
        ((2.0, (1, 0, 0)), (1.0, 1.0, 0.0, 0.0), 1.0),
        ((1.0, (0, 0, 0)), (0.0, 0.0, 0.0, 0.0), 1.0),
        ((1.0, (0, 0, 2)), (2.0, 0.0, 0.0, 2.0), -1.0),
    ])
    def test_pinned_splits_exact(self, parts, light, kappa):
        lp, k = kappa_split(FourVector.from_parts(*parts))
        assert np.array_equal(lp.components, light)
        assert k == kappa

    @given(four)
    @settings(max_examples=200, deadline=None)
    def test_lightlike_part_and_reconstruction(self, x):
        lp, k = kappa_split(x)
        assert abs(lp.square()) <= 1e-10 * max(1.0, float(
            np.dot(lp.components, lp.components)))
        rebuilt = lp + FourVector.from_parts(k, (0.0, 0.0, 0.0))
        assert np.max(np.abs(rebuilt.components - x.components)) <= 1e-12


class TestLightlikeBoost:
    def test_unit_scale_is_identity(self):
        g = lightlike_boost(FourVector.from_parts(1.0, (0, 0, 1)), 1.0)
        assert np.max(np.abs(g.matrix - np.eye(4))) < 1e-12

    def test_eigenrelations_for_doubling(self):
        l = FourVector.from_parts(1.0, (0.0, 0.0, 1.0))
        lp = FourVector.from_parts(1.0, (0.0, 0.0, -1.0))
        g = lightlike_boost(l, 2.0)
        assert np.max(np.abs(g.apply(l).components
                             - 0.5 * l.components)) < 1e-10
        assert np.max(np.abs(g.apply(lp).components
                             - 2.0 * lp.components)) < 1e-10

    def test_x_axis_ray_gives_unit_rapidity_boost(self):
        g = lightlike_boost(FourVector.from_parts(1.0, (1, 0, 0)), math.e)
        expected = LorentzTransform.boost(np.array([1.0, 0.0, 0.0]), -1.0)
        assert np.max(np.abs(g.matrix - expected.matrix)) < 1e-12

    def test_scales_compose_multiplicatively(self):
        l = FourVector.from_parts(1.0, (0.6, 0.8, 0.0))
        g = lightlike_boost(l, 2.0) @ lightlike_boost(l, 3.0)
        assert np.max(np.abs(g.matrix - lightlike_boost(l, 6.0).matrix)) < 1e-9

    def test_metric_preserved(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            l = FourVector.from_parts(1.0, unit_vector(rng))
            m = lightlike_boost(l, float(rng.uniform(1.0, 8.0))).matrix
            assert np.max(np.abs(m.T @ ETA @ m - ETA)) < 1e-10

    def test_rejects_bad_rays_and_scales(self):
        with pytest.raises(ValueError):
            lightlike_boost(FourVector.from_parts(2.0, (0, 0, 2)), 2.0)
        with pytest.raises(ValueError):
            lightlike_boost(FourVector.from_parts(1.0, (0, 0, 0.5)), 2.0)
        with pytest.raises(ValueError):
            lightlike_boost(FourVector.from_parts(1.0, (0, 0, 1)), 0.5)


class TestSemigroup:
    def test_future_translation_with_identity(self):
        g = PoincareElement(FourVector.from_parts(1.0, (0, 0, 0)),
                            LorentzTransform.identity())
        assert in_semigroup(g)

    def test_spacelike_translation_rejected(self):
        g = PoincareElement(FourVector.from_parts(0.0, (1, 0, 0)),
                            LorentzTransform.identity())
        assert not in_semigroup(g)

    def test_lightlike_boundary_allowed(self):
        g = PoincareElement(
            FourVector.from_parts(1.0, (0, 0, 1)),
            LorentzTransform.boost(np.array([0.0, 0.0, 1.0]), 0.4))
        assert in_semigroup(g)

    def test_composition_matches_action(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            g = PoincareElement(FourVector.from_array(rng.normal(size=4)),
                                random_transform(rng))
            h = PoincareElement(FourVector.from_array(rng.normal(size=4)),
                                random_transform(rng))
            x = FourVector.from_array(rng.normal(size=4))
            lhs = g.compose(h).apply(x)
            rhs = g.apply(h.apply(x))
            assert np.max(np.abs(lhs.components - rhs.components)) < 1e-9
