#!/usr/bin/env python3
"""
Unit Tests for Box Counting
===========================

Tests for boxcount/box_counting.py, boxcount/fractals.py and
boxcount/point_files.py
"""
import math
import sys
from pathlib import Path

import numpy as np
import pytest

# Add the project root to the Python path
PROJECT_ROOT = Path(__file__).parent.parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from boxcount.box_counting import (
    box_dimension,
    count_boxes,
    default_box_sizes,
    dyadic_box_sizes,
    triadic_box_sizes,
)
from boxcount.fractals import (
    CARPET_DIMENSION,
    KOCH_DIMENSION,
    RABBIT_DIMENSION,
    gen_filled_square,
    gen_julia_boundary,
    gen_koch,
    gen_segment,
    gen_sierpinski_carpet,
    gen_square_boundary,
    julia_params,
)
from boxcount.point_files import parse_points, read_point_file, write_point_file
from data.errors import EstimationError, InputError
from data.point_set import PointSet2D

UNIT_CORNERS = PointSet2D(points=[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])


class TestCountBoxes:
    """Test occupied-cell counting"""

    def test_unit_square_corners(self):
        """Test each corner lands in its own cell"""
        assert count_boxes(UNIT_CORNERS, 0.6) == 4
        assert count_boxes(UNIT_CORNERS, 2.0) == 1

    def test_upper_edge_belongs_to_next_cell(self):
        """Test half-open cells: a point on the upper edge starts a new cell"""
        assert count_boxes(UNIT_CORNERS, 1.0) == 4
        assert count_boxes(PointSet2D(points=[[0.0, 0.0], [0.3, 0.0]]), 0.1) == 2

    def test_segment(self):
        """Test 1000 points on the unit segment"""
        assert count_boxes(gen_segment(1000), 0.25) == 4

    def test_filled_square(self):
        """Test the 512 x 512 lattice"""
        square = gen_filled_square(512)
        assert count_boxes(square, 0.5) == 4
        assert count_boxes(square, 0.25) == 16
        assert count_boxes(square, 1 / 512) == 512 * 512

    def test_invalid_box_size(self):
        """Test a non-positive size is an input error"""
        with pytest.raises(InputError):
            count_boxes(UNIT_CORNERS, 0.0)
        with pytest.raises(InputError):
            count_boxes(UNIT_CORNERS, -1.0)

    def test_tiny_boxes_separate_every_point(self):
        """Test cells far beyond 32-bit indices still count each point once"""
        assert count_boxes(gen_segment(1000), 1e-15) == 1000
        assert count_boxes(gen_filled_square(64), 1e-17) == 64 * 64

    def test_box_size_beyond_int64_indices(self):
        """Test a size whose cell indices overflow 64 bits is refused"""
        with pytest.raises(InputError):
            count_boxes(gen_segment(1000), 1e-20)
        with pytest.raises(InputError):
            count_boxes(gen_filled_square(64), 1e-19)

    @pytest.mark.parametrize("seed", range(5))
    def test_nested_grids_are_monotone(self, seed):
        """Test halving the box size never lowers the count"""
        rng = np.random.default_rng(seed)
        points = PointSet2D(points=rng.uniform(-3.0, 5.0, size=(2000, 2)))
        sizes = [4.0 / 2**m for m in range(10)]
        counts = [count_boxes(points, size) for size in sizes]
        assert all(fine >= coarse for coarse, fine in zip(counts, counts[1:]))

    @pytest.mark.parametrize("seed", range(3))
    def test_translation_keeps_counts(self, seed):
        """Test the grid moves with the set"""
        rng = np.random.default_rng(100 + seed)
        carpet = gen_sierpinski_carpet(4)
        moved = carpet.translated(*rng.uniform(-50.0, 50.0, size=2))
        for size in triadic_box_sizes(4):
            assert count_boxes(moved, size) == count_boxes(carpet, size)


class TestBoxSizes:
    """Test the size sweeps"""

    def test_default_sweep_on_segment(self):
        """Test 12 sizes from extent/4 down to 8 sampling pitches"""
        segment = gen_segment(1000)
        sizes = default_box_sizes(segment)
        assert len(sizes) == 12
        assert sizes[0] == pytest.approx(segment.extent / 4)
        assert sizes[-1] == pytest.approx(8 / 1000)
        assert all(b < a for a, b in zip(sizes, sizes[1:]))

    def test_default_sweep_without_spacing(self):
        """Test the finest size is extent/512 when no pitch is known"""
        sizes = default_box_sizes(UNIT_CORNERS)
        assert sizes[-1] == pytest.approx(1 / 512)

    def test_sweep_errors(self):
        """Test zero extent and a pitch too coarse for any sweep"""
        with pytest.raises(InputError):
            default_box_sizes(PointSet2D(points=[[1.0, 1.0]]))
        with pytest.raises(InputError):
            default_box_sizes(PointSet2D(points=[[0.0, 0.0], [1.0, 1.0]], spacing=0.1))

    def test_power_sweeps(self):
        """Test triadic and dyadic sizes"""
        assert triadic_box_sizes(3) == pytest.approx([1 / 3, 1 / 9, 1 / 27])
        assert dyadic_box_sizes() == [0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625]
        with pytest.raises(InputError):
            triadic_box_sizes(1)
        with pytest.raises(InputError):
            dyadic_box_sizes(1)


class TestBoxDimension:
    """Test dimension estimates on sets of known dimension"""

    def test_filled_square(self):
        """Test dyadic sizes give D = 2 with N(e/2) / N(e) = 4"""
        estimate = box_dimension(gen_filled_square(512), dyadic_box_sizes())
        assert estimate.dimension == pytest.approx(2.0, abs=1e-9)
        counts = [p.measure for p in estimate.points]
        assert counts == [4**m for m in range(1, 7)]

    def test_segment(self):
        """Test dyadic sizes give D = 1 with N(e/2) / N(e) = 2"""
        estimate = box_dimension(gen_segment(1000), dyadic_box_sizes())
        assert estimate.dimension == pytest.approx(1.0, abs=1e-9)
        counts = [p.measure for p in estimate.points]
        assert all(b / a == 2 for a, b in zip(counts, counts[1:]))

    def test_square_boundary(self):
        """Test the boundary of a square is one-dimensional"""
        estimate = box_dimension(gen_square_boundary(1024), dyadic_box_sizes())
        assert estimate.dimension == pytest.approx(1.0, abs=1e-9)
        assert [p.measure for p in estimate.points] == [4 * 2**m for m in range(1, 7)]

    def test_carpet_counts_are_exact(self):
        """Test the level-5 carpet has 8^m occupied cells at size 3^-m"""
        estimate = box_dimension(gen_sierpinski_carpet(5), triadic_box_sizes(5))
        assert [p.measure for p in estimate.points] == [8**m for m in range(1, 6)]
        assert estimate.dimension == pytest.approx(CARPET_DIMENSION, abs=1e-9)

    def test_koch(self):
        """Test the level-6 Koch curve over sizes 3^-1..3^-6 is within 0.05 of log 4 / log 3"""
        estimate = box_dimension(gen_koch(6), triadic_box_sizes(6))
        assert [p.scale for p in estimate.points] == pytest.approx([3.0**-m for m in range(1, 7)])
        assert abs(estimate.dimension - KOCH_DIMENSION) <= 0.05
        assert [p.measure for p in estimate.points][:2] == [4, 16]
        assert estimate.excluded_count == 0

    def test_koch_coarser_sweep(self):
        """Test stopping one level short of the vertex spacing stays within tolerance"""
        estimate = box_dimension(gen_koch(6), triadic_box_sizes(5))
        assert abs(estimate.dimension - KOCH_DIMENSION) <= 0.05

    @pytest.mark.parametrize("seed", range(3))
    def test_translation_stability(self, seed):
        """Test random translations move D by less than 0.02"""
        rng = np.random.default_rng(seed)
        koch = gen_koch(6)
        sizes = triadic_box_sizes(5)
        reference = box_dimension(koch, sizes).dimension
        dx, dy = rng.uniform(-1000.0, 1000.0, size=2)
        assert abs(box_dimension(koch.translated(dx, dy), sizes).dimension - reference) < 0.02

    def test_size_errors(self):
        """Test too few or non-decreasing sizes"""
        with pytest.raises(InputError):
            box_dimension(UNIT_CORNERS, [0.5])
        with pytest.raises(InputError):
            box_dimension(UNIT_CORNERS, [0.25, 0.5])

    def test_degenerate_counts(self):
        """Test equal counts at every size carry the measurements"""
        with pytest.raises(EstimationError) as excinfo:
            box_dimension(PointSet2D(points=[[2.0, 2.0]]), [0.5, 0.25, 0.125])
        assert [count for _, count in excinfo.value.points] == [1, 1, 1]


class TestGenerators:
    """Test the reference point sets"""

    def test_koch_point_counts(self):
        """Test level m has 4^m + 1 vertices"""
        for level in range(6):
            assert len(gen_koch(level)) == 4**level + 1

    def test_koch_first_levels(self):
        """Test the base segment and the equilateral bump"""
        assert gen_koch(0).points.tolist() == [[0.0, 0.0], [1.0, 0.0]]
        level_one = gen_koch(1).points
        assert level_one[2, 0] == pytest.approx(0.5)
        assert level_one[2, 1] == pytest.approx(math.sqrt(3) / 6)
        assert level_one[-1].tolist() == [1.0, 0.0]

    def test_carpet_point_counts(self):
        """Test level m keeps 8^m cell centers"""
        assert gen_sierpinski_carpet(0).points.tolist() == [[0.5, 0.5]]
        level_one = gen_sierpinski_carpet(1).points
        assert len(level_one) == 8
        assert not np.any(np.all(np.isclose(level_one, 0.5), axis=1))
        assert len(gen_sierpinski_carpet(3)) == 512

    def test_level_caps(self):
        """Test levels above the caps are refused"""
        with pytest.raises(InputError):
            gen_koch(11)
        with pytest.raises(InputError):
            gen_koch(-1)
        with pytest.raises(InputError):
            gen_sierpinski_carpet(7)

    def test_lattice_generators(self):
        """Test sizes and pitches of the simple shapes"""
        assert len(gen_segment(1000)) == 1000
        assert len(gen_filled_square(64)) == 64 * 64
        assert len(gen_square_boundary(16)) == 64
        assert gen_filled_square(64).spacing == 1 / 64
        with pytest.raises(InputError):
            gen_segment(1)

    def test_julia_without_boundary(self):
        """Test a constant whose every orbit escapes has no boundary"""
        with pytest.raises(InputError):
            gen_julia_boundary(julia_params(c=complex(10.0, 0.0), grid_resolution=64))

    def test_julia_parameter_errors(self):
        """Test invalid Julia parameters become input errors"""
        with pytest.raises(InputError):
            julia_params(grid_resolution=32)
        with pytest.raises(InputError):
            julia_params(max_iter=10)

    def test_circle_boundary_lies_near_unit_circle(self):
        """Test the c = 0 band hugs |z| = 1"""
        boundary = gen_julia_boundary(julia_params(c=0j, grid_resolution=256))
        radii = np.hypot(boundary.points[:, 0], boundary.points[:, 1])
        assert np.all(np.abs(radii - 1.0) < 2 * boundary.spacing)

    @pytest.mark.slow
    def test_circle_dimension(self):
        """Test the c = 0 boundary reads as one-dimensional"""
        boundary = gen_julia_boundary(julia_params(c=0j, grid_resolution=1024))
        assert abs(box_dimension(boundary).dimension - 1.0) <= 0.05

    @pytest.mark.slow
    def test_rabbit_dimension(self):
        """Test the Douady rabbit boundary"""
        boundary = gen_julia_boundary(julia_params(grid_resolution=1024))
        estimate = box_dimension(boundary)
        assert 1.35 <= estimate.dimension <= 1.44
        assert abs(estimate.dimension - RABBIT_DIMENSION) <= 0.05

    @pytest.mark.slow
    def test_rabbit_resolution_convergence(self):
        """Test doubling the grid changes D by less than 0.02 on a shared sweep"""
        coarse = gen_julia_boundary(julia_params(grid_resolution=1024))
        fine = gen_julia_boundary(julia_params(grid_resolution=2048))
        sizes = default_box_sizes(coarse)
        assert abs(box_dimension(fine, sizes).dimension - box_dimension(coarse, sizes).dimension) < 0.02


class TestPointFiles:
    """Test x,y point files"""

    def test_round_trip(self, tmp_path):
        """Test written points are read back exactly"""
        koch = gen_koch(3)
        path = tmp_path / "koch.txt"
        write_point_file(koch, path)
        loaded = read_point_file(path)
        np.testing.assert_array_equal(loaded.points, koch.points)
        assert loaded.label == "koch.txt"

    def test_comments_and_blank_lines(self):
        """Test '#' comments and blank lines are skipped"""
        points = parse_points("# header\n\n0.5, 0.25  # center\n1,2\n")
        assert points.points.tolist() == [[0.5, 0.25], [1.0, 2.0]]

    def test_malformed_files(self, tmp_path):
        """Test bad lines, empty files and missing files"""
        with pytest.raises(InputError, match="Line 2"):
            parse_points("0,0\n1,2,3\n")
        with pytest.raises(InputError):
            parse_points("0,zero\n")
        with pytest.raises(InputError):
            parse_points("# nothing\n")
        with pytest.raises(InputError):
            parse_points("0,nan\n")
        with pytest.raises(InputError):
            read_point_file(tmp_path / "absent.txt")
