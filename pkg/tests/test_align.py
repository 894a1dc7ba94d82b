import itertools

import numpy as np
import pytest

from conftest import assert_valid_path
from dancesync import align
from dancesync.errors import (
    EmptyInputSetError,
    EmptySeriesError,
    NonFiniteSampleError,
    SizeLimitExceededError,
)


@pytest.mark.parametrize(
    "x,y,expected",
    [(3.0, 5.0, 2.0), (-1.0, -1.0, 0.0), (0.0, -4.5, 4.5)],
)
def test_local_distance(x, y, expected):
    assert align.local_distance(x, y) == expected


class TestDtw:
    def test_identical_series_have_zero_distance(self):
        assert align.dtw([0, 1, 2], [0, 1, 2]).distance == 0.0

    def test_warp_can_absorb_repeats(self):
        # path (0,0)(1,0)(2,1) pairs the duplicate 0s with y[0]
        result = align.dtw([0, 0, 1], [0, 1])
        assert result.distance == 0.0
        assert result.path == ((0, 0), (1, 0), (2, 1))

    def test_constant_reference(self):
        assert align.dtw([1, 2, 3], [2, 2, 2]).distance == 2.0

    def test_matrix_kept_on_request(self):
        result = align.dtw([0, 1], [1, 1], keep_matrix=True)
        assert result.matrix is not None
        assert result.matrix.shape == (2, 2)
        assert result.matrix[0, 0] == 1.0  # boundary: d(x0, y0)
        assert align.dtw([0, 1], [1, 1]).matrix is None

    def test_boundary_rows_are_running_sums(self):
        x, y = [3.0, 1.0, 4.0], [2.0, 2.0]
        d = align.dtw(x, y, keep_matrix=True).matrix
        assert d[0, 0] == 1.0
        assert d[1, 0] == d[0, 0] + 1.0
        assert d[2, 0] == d[1, 0] + 2.0
        assert d[0, 1] == d[0, 0] + 1.0

    def test_empty_series_rejected(self):
        with pytest.raises(EmptySeriesError):
            align.dtw([], [1.0])
        with pytest.raises(EmptySeriesError):
            align.dtw([1.0], [])

    def test_non_finite_rejected(self):
        with pytest.raises(NonFiniteSampleError):
            align.dtw([0.0, float("nan")], [1.0])
        with pytest.raises(NonFiniteSampleError):
            align.dtw([0.0], [float("inf")])


class TestBruteForce:
    def test_matches_spot_values(self):
        assert align.dtw_brute_force([0, 0, 1], [0, 1]) == 0.0
        assert align.dtw_brute_force([5], [5]) == 0.0
        assert align.dtw_brute_force([1, 2, 3], [2, 2, 2]) == 2.0

    def test_size_limit(self):
        with pytest.raises(SizeLimitExceededError):
            align.dtw_brute_force(list(range(9)), [0])

    def test_path_enumeration_counts(self):
        # Lattice path counts with diagonal steps: 1, 3, 13, 63 on squares.
        assert len(align.enumerate_warping_paths(1, 1)) == 1
        assert len(align.enumerate_warping_paths(2, 2)) == 3
        assert len(align.enumerate_warping_paths(3, 3)) == 13
        assert len(align.enumerate_warping_paths(4, 4)) == 63

    def test_agrees_with_dtw_on_small_grids(self):
        values = (0, 1, 2)
        for n, m in itertools.product((1, 2, 3), repeat=2):
            for xs in itertools.product(values, repeat=n):
                for ys in itertools.product(values, repeat=m):
                    assert align.dtw(xs, ys).distance == align.dtw_brute_force(xs, ys)


class TestDtwProperties:
    def test_random_pairs(self):
        rng = np.random.default_rng(42)
        for _ in range(200):
            n, m = rng.integers(1, 30, size=2)
            x = rng.normal(size=n) * 50
            y = rng.normal(size=m) * 50
            fwd = align.dtw(x, y)
            assert fwd.distance >= 0.0
            assert fwd.distance == align.dtw(y, x).distance
            assert align.dtw(x, x).distance == 0.0
            path = assert_valid_path(fwd, n, m)
            path_cost = sum(abs(x[i] - y[j]) for i, j in path)
            assert path_cost == pytest.approx(fwd.distance, rel=1e-9, abs=1e-12)

    def test_larger_random_sample_against_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(300):
            n, m = rng.integers(1, 7, size=2)
            x = rng.integers(0, 3, size=n).astype(float)
            y = rng.integers(0, 3, size=m).astype(float)
            assert align.dtw(x, y).distance == align.dtw_brute_force(x, y)


class TestDba:
    def test_identical_inputs_are_fixed_point(self):
        result = align.dba([[1, 2, 3], [1, 2, 3]])
        np.testing.assert_array_equal(result.series, [1.0, 2.0, 3.0])
        assert result.objective_trace[0] == 0.0
        assert result.objective_trace[-1] == 0.0

    def test_single_sample_series_average(self):
        # with one-sample series the update is a plain arithmetic mean
        result = align.dba([[0.0], [2.0]])
        np.testing.assert_array_equal(result.series, [1.0])

    def test_first_update_pass_keeps_identical_inputs(self):
        series = np.array([2.0, 4.0, 1.0])
        updated = align._mean_update(series.copy(), [series, series, series])
        np.testing.assert_array_equal(updated, series)

    def test_trace_non_increasing_on_random_inputs(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            inputs = [rng.normal(size=80) for _ in range(4)]
            trace = align.dba(inputs).objective_trace
            assert all(b <= a + 1e-9 for a, b in zip(trace, trace[1:]))

    def test_objective_improves_over_medoid(self):
        rng = np.random.default_rng(5)
        inputs = [np.sin(np.linspace(0, 6, 50)) + rng.normal(size=50) * 0.3
                  for _ in range(4)]
        result = align.dba(inputs)
        assert result.objective_trace[-1] <= result.objective_trace[0]
        assert result.iterations >= 1

    def test_medoid_init_is_deterministic(self):
        inputs = [[0, 1, 2], [0, 1, 2.5], [5, 5, 5]]
        a = align.dba(inputs)
        b = align.dba(inputs)
        np.testing.assert_array_equal(a.series, b.series)
        assert a.objective_trace == b.objective_trace

    def test_explicit_init_index(self):
        result = align.dba([[0, 0], [4, 4]], init=1, max_iter=0)
        np.testing.assert_array_equal(result.series, [4.0, 4.0])
        with pytest.raises(ValueError):
            align.dba([[0], [1]], init=5)

    def test_empty_input_set(self):
        with pytest.raises(EmptyInputSetError):
            align.dba([])

    def test_member_series_validated(self):
        with pytest.raises(EmptySeriesError):
            align.dba([[1.0], []])
