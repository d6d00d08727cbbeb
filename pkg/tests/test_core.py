import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from pairedfda.core import (
    DifferenceSample,
    FunctionalSample,
    Grid,
    PairedSample,
    difference,
    trapezoid,
    trapezoid_weights,
)
from pairedfda.errors import (
    DegenerateGrid,
    DimensionError,
    PreprocessRequired,
)

from conftest import romberg_quad


def make_paired(v0, v1, grid=None, ids=None):
    v0 = np.atleast_2d(np.asarray(v0, dtype=float))
    v1 = np.atleast_2d(np.asarray(v1, dtype=float))
    grid = grid or Grid.uniform(v0.shape[1])
    return PairedSample(
        FunctionalSample(grid=grid, values=v0, subject_ids=ids),
        FunctionalSample(grid=grid, values=v1, subject_ids=ids),
    )


class TestGrid:
    def test_rejects_single_point(self):
        with pytest.raises(DegenerateGrid):
            Grid(np.array([0.0]))

    def test_rejects_nonincreasing(self):
        with pytest.raises(DegenerateGrid):
            Grid(np.array([0.0, 1.0, 1.0]))
        with pytest.raises(DegenerateGrid):
            Grid(np.array([0.0, 2.0, 1.0]))

    def test_rejects_nonfinite(self):
        with pytest.raises(DegenerateGrid):
            Grid(np.array([0.0, np.inf]))

    def test_nonuniform_allowed(self):
        g = Grid(np.array([0.0, 1.0, 5.0, 30.0]))
        assert g.size == 4


class TestDifference:
    def test_identical_conditions_give_zeros(self):
        p = make_paired([[1.0, 2.0, 3.0]], [[1.0, 2.0, 3.0]])
        assert np.array_equal(difference(p).d, np.zeros((1, 3)))

    def test_zero_baseline_returns_condition1(self):
        f = np.array([[0.3, -1.2, 4.0, 0.0]])
        p = make_paired(np.zeros((1, 4)), f)
        assert np.array_equal(difference(p).d, f)

    def test_three_point_arithmetic(self):
        p = make_paired([[1.0, 2.0, 3.0]], [[3.0, 2.0, 1.0]])
        assert np.array_equal(difference(p).d, [[2.0, 0.0, -2.0]])

    def test_grid_preserved(self):
        g = Grid(np.array([0.0, 0.2, 0.9]))
        p = make_paired([[1.0, 1, 1]], [[2.0, 2, 2]], grid=g)
        assert difference(p).grid is p.grid

    def test_missing_entry_raises_with_location(self):
        v1 = np.array([[1.0, np.nan, 3.0]])
        p = make_paired([[0.0, 0, 0]], v1, ids=("subj7",))
        with pytest.raises(PreprocessRequired, match="subj7"):
            difference(p)

    @given(
        arrays(np.float64, (4, 6), elements=st.floats(-1e6, 1e6)),
        arrays(np.float64, (4, 6), elements=st.floats(-1e6, 1e6)),
    )
    def test_antisymmetric_under_swap(self, v0, v1):
        p = make_paired(v0, v1)
        d = difference(p).d
        d_swapped = difference(p.swapped()).d
        assert np.array_equal(d_swapped, -d)


class TestPairedSample:
    def test_mismatched_ids_rejected(self):
        g = Grid.uniform(3)
        a = FunctionalSample(grid=g, values=np.ones((2, 3)), subject_ids=("a", "b"))
        b = FunctionalSample(grid=g, values=np.ones((2, 3)), subject_ids=("b", "a"))
        with pytest.raises(DimensionError):
            PairedSample(a, b)

    def test_mismatched_grids_rejected(self):
        a = FunctionalSample(grid=Grid.uniform(3), values=np.ones((1, 3)))
        b = FunctionalSample(grid=Grid(np.array([0.0, 0.4, 1.0])), values=np.ones((1, 3)))
        with pytest.raises(DimensionError):
            PairedSample(a, b)


class TestTrapezoid:
    @pytest.mark.parametrize("n_points", [2, 5, 11, 101])
    def test_constant_one_integrates_to_one(self, n_points):
        g = Grid.uniform(n_points)
        assert trapezoid(np.ones(n_points), g) == pytest.approx(1.0, abs=1e-14)

    def test_linear_exact(self):
        g = Grid(np.array([0.0, 0.5, 1.0]))
        assert trapezoid(g.points, g) == pytest.approx(0.5, abs=1e-15)

    def test_square_against_romberg_oracle(self):
        g = Grid.uniform(101)
        oracle = romberg_quad(lambda x: x**2, 0.0, 1.0)
        assert oracle == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert trapezoid(g.points**2, g) == pytest.approx(oracle, abs=1e-4)

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            trapezoid(np.ones(4), Grid.uniform(3))

    def test_weights_reproduce_rule(self, rng):
        g = Grid(np.sort(rng.uniform(0, 10, size=9)))
        v = rng.standard_normal(9)
        assert trapezoid_weights(g) @ v == pytest.approx(trapezoid(v, g), rel=1e-12)

    @given(
        arrays(np.float64, 7, elements=st.floats(-1e3, 1e3)),
        arrays(np.float64, 7, elements=st.floats(-1e3, 1e3)),
        st.floats(-100, 100),
        st.floats(-100, 100),
    )
    @settings(max_examples=200)
    def test_linearity(self, u, v, a, b):
        g = Grid.uniform(7)
        lhs = trapezoid(a * u + b * v, g)
        rhs = a * trapezoid(u, g) + b * trapezoid(v, g)
        scale = max(1.0, abs(a) * np.max(np.abs(u)) + abs(b) * np.max(np.abs(v)))
        assert abs(lhs - rhs) <= 1e-12 * scale

    @given(arrays(np.float64, 9, elements=st.floats(0, 1e6)))
    def test_nonnegative_integrand(self, v):
        assert trapezoid(v, Grid.uniform(9)) >= 0.0


class TestSampleValidation:
    def test_nan_becomes_missing(self):
        s = FunctionalSample(grid=Grid.uniform(3), values=[[1.0, np.nan, 2.0]])
        assert s.missing.tolist() == [[False, True, False]]
        assert s.has_missing

    def test_unflagged_nonfinite_rejected(self):
        with pytest.raises(DimensionError):
            FunctionalSample(
                grid=Grid.uniform(2),
                values=[[np.inf, 1.0]],
                missing=np.array([[False, False]]),
            )

    def test_difference_sample_requires_finite(self):
        with pytest.raises(PreprocessRequired):
            DifferenceSample(grid=Grid.uniform(2), d=[[np.nan, 0.0]])

    def test_values_are_immutable(self):
        s = FunctionalSample(grid=Grid.uniform(2), values=[[1.0, 2.0]])
        with pytest.raises(ValueError):
            s.values[0, 0] = 9.0
