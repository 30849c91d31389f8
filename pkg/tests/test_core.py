import io
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import haardisc as hd
from haardisc.core import format_float


class TestValidatePointSet:
    def test_minimal_valid_input(self):
        ps = hd.validate_point_set([(0.5, 0.5)], None, dim=2)
        assert ps.n == 1
        assert ps.dim == 2
        assert not ps.weighted
        assert np.array_equal(ps.effective_weights(), [1.0])

    def test_coordinate_at_one_rejected(self):
        with pytest.raises(hd.PointSetError, match="half-open"):
            hd.validate_point_set([(1.0, 0.5)])

    def test_weight_count_mismatch(self):
        with pytest.raises(hd.PointSetError, match="weight count mismatch"):
            hd.validate_point_set([(0.1, 0.2), (0.3, 0.4)], [2.0])

    def test_empty_set_rejected(self):
        with pytest.raises(hd.PointSetError):
            hd.validate_point_set(np.empty((0, 2)))

    def test_dim_zero_rejected(self):
        with pytest.raises(hd.PointSetError):
            hd.PointSet(dim=0, points=np.empty((1, 0)))

    def test_negative_coordinate_rejected(self):
        with pytest.raises(hd.PointSetError, match="half-open"):
            hd.validate_point_set([(-0.1, 0.5)])

    def test_nan_coordinate_rejected(self):
        with pytest.raises(hd.PointSetError):
            hd.validate_point_set([(float("nan"), 0.5)])

    def test_nan_weight_rejected(self):
        with pytest.raises(hd.PointSetError, match="finite"):
            hd.validate_point_set([(0.1, 0.2)], [float("nan")])

    def test_zero_coordinate_allowed(self):
        ps = hd.validate_point_set([(0.0, 0.0)])
        assert ps.n == 1

    def test_duplicates_allowed_and_counted(self):
        ps = hd.validate_point_set([(0.3, 0.3), (0.3, 0.3)])
        assert ps.n == 2

    def test_points_are_read_only(self):
        ps = hd.validate_point_set([(0.25, 0.75)])
        with pytest.raises(ValueError):
            ps.points[0, 0] = 0.5

    def test_negative_weights_allowed(self):
        ps = hd.validate_point_set([(0.1, 0.2)], [-3.5])
        assert ps.weights[0] == -3.5


class TestDyadicIndex:
    def test_basic(self):
        idx = hd.DyadicIndex(levels=(1, -1), positions=(1, 0))
        assert idx.dim == 2
        assert idx.level_sum == 1
        assert idx.box_volume() == 0.5
        assert idx.box_bounds() == [(0.5, 1.0), (0.0, 1.0)]

    def test_volume_matches_level_sum(self):
        idx = hd.DyadicIndex(levels=(2, 0, -1), positions=(3, 0, 0))
        assert idx.box_volume() == 2.0 ** -(2 + 0)

    def test_position_bounds_enforced(self):
        with pytest.raises(ValueError):
            hd.DyadicIndex(levels=(1,), positions=(2,))
        with pytest.raises(ValueError):
            hd.DyadicIndex(levels=(-1,), positions=(1,))
        with pytest.raises(ValueError):
            hd.DyadicIndex(levels=(-2,), positions=(0,))


class TestConstants:
    def test_gamma_is_seven_over_216_squared(self):
        c = hd.constants_table()
        assert c.gamma == Fraction(49, 46656)
        assert Fraction(7, 216) ** 2 == c.gamma

    def test_c2_value(self):
        c = hd.constants_table()
        assert math.isclose(c.c2, 7.0 / (216.0 * math.sqrt(math.log(2.0))), rel_tol=0, abs_tol=0)
        assert f"{c.c2:.6f}".startswith("0.038925")

    def test_c2_is_cd_2_exactly(self):
        c = hd.constants_table()
        assert c.cd(2) - c.c2 == 0.0

    def test_improvement_ratio(self):
        c = hd.constants_table()
        assert c.improvement == Fraction(224, 27)
        for d in range(2, 9):
            assert math.isclose(c.cd(d) / c.classical_cd(d), 224.0 / 27.0, rel_tol=1e-13)

    def test_constant_ordering(self):
        c = hd.constants_table()
        assert c.classical_lower < c.c2 < c.best_upper

    def test_comparison_digit_prefixes(self):
        c = hd.constants_table()
        assert f"{c.classical_lower:.8f}".startswith("0.0046918")
        assert f"{c.best_upper:.6f}".startswith("0.17907")

    def test_y_star(self):
        assert hd.constants_table().y_star == Fraction(7, 9)

    def test_gamma_d_specialization(self):
        c = hd.constants_table()
        assert c.gamma_d(2) == c.gamma
        assert c.gamma_d(3) == Fraction(14, 27) ** 2 / (2**12 * 2)

    def test_cd_rejects_dim_one(self):
        with pytest.raises(ValueError):
            hd.constants_table().cd(1)


class TestPointSetFile:
    def test_roundtrip_unweighted(self, tmp_path):
        ps = hd.validate_point_set([(0.1, 0.2), (0.3, 0.4)])
        path = tmp_path / "pts.txt"
        hd.save_point_set(ps, path)
        back = hd.load_point_set(path)
        assert back.dim == 2
        assert np.array_equal(back.points, ps.points)
        assert not back.weighted

    def test_roundtrip_weighted(self, tmp_path):
        ps = hd.validate_point_set([(0.1, 0.2), (0.3, 0.4)], [2.0, -0.5])
        path = tmp_path / "pts.txt"
        hd.save_point_set(ps, path)
        back = hd.load_point_set(path)
        assert back.weighted
        assert np.array_equal(back.weights, ps.weights)

    def test_comments_and_blank_lines_skipped(self):
        text = "# a comment\n\n0.1 0.2\n# another\n0.3 0.4\n"
        ps = hd.load_point_set(io.StringIO(text))
        assert ps.n == 2

    def test_weighted_header_must_precede_data(self):
        text = "0.1 0.2\n#weighted\n0.3 0.4 1.0\n"
        with pytest.raises(hd.PointSetError, match="precede"):
            hd.load_point_set(io.StringIO(text))

    def test_weighted_header_selects_trailing_column(self):
        text = "#weighted\n0.1 0.2 2.5\n"
        ps = hd.load_point_set(io.StringIO(text))
        assert ps.dim == 2
        assert ps.weights[0] == 2.5

    def test_dim_mismatch_rejected(self):
        with pytest.raises(hd.PointSetError, match="dim"):
            hd.load_point_set(io.StringIO("0.1 0.2\n"), dim=3)

    def test_inconsistent_columns_rejected(self):
        with pytest.raises(hd.PointSetError, match="column"):
            hd.load_point_set(io.StringIO("0.1 0.2\n0.3\n"))

    def test_empty_file_rejected(self):
        with pytest.raises(hd.PointSetError, match="no data"):
            hd.load_point_set(io.StringIO("# only comments\n"))

    def test_garbage_line_reports_lineno(self):
        with pytest.raises(hd.PointSetError, match="line 2"):
            hd.load_point_set(io.StringIO("0.1 0.2\n0.x 0.2\n"))

    @given(
        st.lists(
            st.tuples(
                st.floats(min_value=0.0, max_value=0.9999999, allow_nan=False),
                st.floats(min_value=0.0, max_value=0.9999999, allow_nan=False),
            ),
            min_size=1,
            max_size=20,
        )
    )
    @settings(max_examples=50, deadline=None)
    def test_roundtrip_preserves_exact_coordinates(self, rows):
        ps = hd.validate_point_set(rows)
        buf = io.StringIO()
        hd.save_point_set(ps, buf)
        back = hd.load_point_set(io.StringIO(buf.getvalue()))
        assert np.array_equal(back.points, ps.points)

    @given(st.floats(allow_nan=False, allow_infinity=False))
    @settings(max_examples=200, deadline=None)
    def test_format_float_roundtrips(self, x):
        assert float(format_float(x)) == x
