import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hodiff.edges import PatternSpec, generate_pattern
from hodiff.grid import GreyImage, InvalidInputError, InvalidParameterError, extend_neumann_2d
from hodiff.perona_malik import PMParams, StabilityWarning, conductivity_nodes, g_a, pm_run, pm_step

from oracles import pm_step_oracle

images = st.integers(2, 10).flatmap(lambda n: arrays(np.float64, (n, n), elements=st.floats(1, 256)))


class TestConductivity:
    def test_values(self):
        assert g_a(0.0, 3.0) == 1.0
        assert g_a(3.0, 3.0) == 0.5
        assert g_a(5 * np.sqrt(3), 5.0) == pytest.approx(0.25, rel=1e-15)

    @given(st.floats(0, 1e3), st.floats(0, 1e3), st.floats(0.1, 50))
    def test_decreasing(self, x, y, a):
        lo, hi = sorted((x, y))
        assert 0 < g_a(hi, a) <= g_a(lo, a) <= 1

    def test_bad_a(self):
        with pytest.raises(InvalidParameterError):
            g_a(1.0, 0.0)

    def test_constant_image(self):
        assert np.all(conductivity_nodes(extend_neumann_2d(np.full((5, 5), 9.0)), 2.0) == 1.0)

    def test_linear_ramp(self):
        i, _ = np.indices((8, 8))
        G = conductivity_nodes(extend_neumann_2d(i.astype(float)), 1.0)
        assert np.all(G[1:-1] == 0.5)

    def test_checkerboard_interior(self):
        u = generate_pattern(PatternSpec("checkerboard", 10, 1.0, 256.0))
        G = conductivity_nodes(extend_neumann_2d(u), 5.0)
        assert np.all(G[1:-1, 1:-1] == 1.0)


class TestParams:
    def test_steps(self):
        assert PMParams(5, 0.2, 2).steps == 10
        assert PMParams(5, 0.25, 0.25).steps == 1

    def test_non_integer_ratio(self):
        with pytest.raises(InvalidParameterError):
            PMParams(5, 0.3, 1.0)

    @pytest.mark.parametrize("kw", [dict(a=0, dt=0.1, T=1), dict(a=1, dt=0, T=1), dict(a=1, dt=0.2, T=0.1)])
    def test_invalid(self, kw):
        with pytest.raises(InvalidParameterError):
            PMParams(**kw)

    def test_stability_warning(self):
        with pytest.warns(StabilityWarning):
            PMParams(5, 0.5, 1.0)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            PMParams(5, 0.25, 1.0)


class TestStep:
    def test_constant_fixed(self):
        u = np.full((6, 6), 77.0)
        np.testing.assert_array_equal(pm_run(u, PMParams(5, 0.2, 2)), u)

    def test_checkerboard_moves(self):
        u = generate_pattern(PatternSpec("checkerboard", 10, 1.0, 256.0))
        assert np.abs(pm_step(u, PMParams(5, 0.2, 0.2)) - u).max() > 0

    def test_hot_pixel(self):
        u = np.full((5, 5), 10.0)
        u[2, 2] = 110.0
        p = PMParams(1e6, 0.2, 0.2)
        out = pm_step(u, p)
        np.testing.assert_allclose(out, np.array(pm_step_oracle(u.tolist(), 1e6, 0.2)), rtol=0, atol=1e-12)
        assert out[2, 2] == pytest.approx(110 - 4 * 0.2 * 100, rel=1e-6)
        for k in [(1, 2), (3, 2), (2, 1), (2, 3)]:
            assert out[k] == pytest.approx(10 + 0.2 * 100, rel=1e-6)

    @settings(max_examples=50)
    @given(images, st.floats(0.5, 50), st.floats(0.01, 0.25))
    def test_matches_oracle(self, u, a, dt):
        out = pm_step(u, PMParams(a, dt, dt))
        np.testing.assert_allclose(out, np.array(pm_step_oracle(u.tolist(), a, dt)), rtol=0, atol=1e-10)

    @settings(max_examples=50)
    @given(images, st.floats(0.5, 50))
    def test_interior_sum_conserved(self, u, a):
        out = pm_step(u, PMParams(a, 0.2, 0.2))
        assert abs(out.sum() - u.sum()) <= 1e-10 * abs(u.sum())

    @settings(max_examples=50)
    @given(images, st.floats(0.5, 50), st.floats(0.01, 0.25))
    def test_maximum_principle(self, u, a, dt):
        out = pm_step(u, PMParams(a, dt, dt))
        assert out.min() >= u.min() - 1e-12 and out.max() <= u.max() + 1e-12

    def test_run_equals_repeated_steps(self):
        u = np.random.default_rng(1).integers(1, 257, (8, 8)).astype(float)
        p = PMParams(5, 0.2, 2)
        v = u
        for _ in range(10):
            v = pm_step(v, p)
        np.testing.assert_array_equal(pm_run(u, p), v)
        np.testing.assert_array_equal(pm_run(u, PMParams(5, 0.2, 0.2)), pm_step(u, p))

    def test_image_wrapper(self):
        img = GreyImage(np.full((4, 4), 3.0))
        assert isinstance(pm_step(img, PMParams(1, 0.1, 0.1)), GreyImage)

    def test_rejects_nonsquare(self):
        with pytest.raises(InvalidInputError):
            pm_step(np.ones((3, 4)), PMParams(1, 0.1, 0.1))
