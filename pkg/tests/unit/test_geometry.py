"""
Unit tests for generating curves, surface grids and homology cycles.
"""

from pathlib import Path

import numpy as np
import pytest

from torus_debye.geometry import (
    GeneratingCurve,
    GeometryError,
    SurfaceGrid,
    build_cycles,
    build_surface_grid,
    load_geometry,
)


class TestGeneratingCurve:
    """Tests for GeneratingCurve."""

    def test_reference_center(self, curve: GeneratingCurve) -> None:
        """The reference torus is centred at (2, 2) in the meridian plane."""
        assert curve.center == (2.0, 2.0)

    def test_contains_center_not_axis(self, curve: GeneratingCurve) -> None:
        """The tube centre is inside and the axis is outside."""
        assert curve.contains(2.0, 2.0)
        assert not curve.contains(0.1, 2.0)
        assert not curve.contains(2.0, 10.0)

    def test_circular_distance(self, circular_curve: GeneratingCurve) -> None:
        """Distance to a circle of radius 1 about (2, 0)."""
        assert circular_curve.distance(2.0, 0.0) == pytest.approx(1.0, abs=1e-10)
        assert circular_curve.distance(4.5, 0.0) == pytest.approx(1.5, abs=1e-10)

    def test_orientation_clockwise(self, curve: GeneratingCurve) -> None:
        """Oriented curves run clockwise in the meridian half plane."""
        assert curve.signed_area() < 0
        assert curve.reversed().signed_area() > 0

    def test_scaled_about_center(self, circular_curve: GeneratingCurve) -> None:
        """Scaling keeps the centre and scales the tube."""
        half = circular_curve.scaled(0.5)
        assert half.center == circular_curve.center
        assert half.tube_diameter == pytest.approx(1.0, abs=1e-12)

    def test_scaled_rejects_non_positive(self, curve: GeneratingCurve) -> None:
        """A non-positive scale factor raises GeometryError."""
        with pytest.raises(GeometryError):
            curve.scaled(0.0)

    def test_curve_through_axis_rejected(self) -> None:
        """A curve reaching ρ ≤ 0 raises GeometryError."""
        with pytest.raises(GeometryError):
            GeneratingCurve.from_fourier(rho_cos=[0.5, 1.0], z_sin=[0.0, 1.0])

    def test_bandwidth(self, curve: GeneratingCurve) -> None:
        """The reference torus has Fourier content up to frequency 5."""
        assert curve.bandwidth == 5


class TestSurfaceGrid:
    """Tests for SurfaceGrid."""

    def test_frame_is_orthonormal(self, small_grid: SurfaceGrid) -> None:
        """Tangent, azimuthal and normal vectors form an orthonormal frame."""
        for vectors in (small_grid.tangent, small_grid.azimuthal, small_grid.normal):
            np.testing.assert_allclose(np.linalg.norm(vectors, axis=1), 1.0, atol=1e-13)
        dots = np.einsum("ij,ij->i", small_grid.tangent, small_grid.normal)
        np.testing.assert_allclose(dots, 0.0, atol=1e-13)

    def test_normal_points_outward(self, small_grid: SurfaceGrid) -> None:
        """Stepping along the normal leaves the solid torus."""
        step = 0.05 * small_grid.curve.tube_diameter
        for position, normal in zip(small_grid.positions, small_grid.normal):
            outside = position + step * normal
            inside = position - step * normal
            assert not small_grid.curve.contains(outside[0], outside[2])
            assert small_grid.curve.contains(inside[0], inside[2])

    def test_circular_area_and_volume(self, circular_curve: GeneratingCurve) -> None:
        """Area 4π²Ra and volume 2π²Ra² of a circular torus."""
        grid = build_surface_grid(circular_curve, 32)
        assert grid.surface_area() == pytest.approx(8 * np.pi**2, rel=1e-12)
        assert grid.enclosed_volume() == pytest.approx(4 * np.pi**2, rel=1e-12)

    @pytest.mark.parametrize("nodes", [15, 14, 33])
    def test_invalid_node_count(self, curve: GeneratingCurve, nodes: int) -> None:
        """Odd or too small node counts raise GeometryError."""
        with pytest.raises(GeometryError):
            build_surface_grid(curve, nodes)

    def test_integrate_constant(self, small_grid: SurfaceGrid) -> None:
        """Integrating 1 gives the surface area."""
        ones = np.ones(small_grid.n_nodes)
        assert small_grid.integrate(ones).real == pytest.approx(small_grid.surface_area())


class TestHomologyCycles:
    """Tests for cycles and the spanning disk."""

    def test_disk_area(self, small_grid: SurfaceGrid) -> None:
        """The disk quadrature integrates 1 to πR²."""
        cycles = build_cycles(small_grid, disk_radial=8, disk_azimuthal=12)
        disk = cycles.disk
        assert disk.area == pytest.approx(np.pi * disk.radius**2, rel=1e-13)

    def test_b_cycle_at_inner_rim(self, small_grid: SurfaceGrid) -> None:
        """The B-cycle runs through the node of smallest radius."""
        cycles = build_cycles(small_grid)
        assert cycles.b_radius == pytest.approx(float(np.min(small_grid.rho)))
        assert cycles.disk.radius == cycles.b_radius

    def test_rings_carry_all_weight(self, small_grid: SurfaceGrid) -> None:
        """Ring weights sum to the disk area and radii lie inside the disk."""
        disk = build_cycles(small_grid, disk_radial=6, disk_azimuthal=10).disk
        radii, weights = disk.rings()
        assert radii.size == 6
        assert weights.sum() == pytest.approx(disk.area)
        assert np.all(radii < disk.radius)

    def test_a_circulation_of_unit_tangent(self, small_grid: SurfaceGrid) -> None:
        """The A-cycle circulation of τ̂ is the meridian length."""
        cycles = build_cycles(small_grid)
        length = cycles.a_circulation(np.ones(small_grid.n_nodes))
        assert length.real == pytest.approx(float(np.sum(small_grid.speed) * small_grid.h))

    def test_disk_flux_of_constant_field(self, small_grid: SurfaceGrid) -> None:
        """A uniform field ẑ has flux πR² through the disk."""
        disk = build_cycles(small_grid, disk_radial=6, disk_azimuthal=10).disk
        field = np.tile([0.0, 0.0, 1.0], (disk.nodes.shape[0], 1))
        assert disk.flux(field).real == pytest.approx(np.pi * disk.radius**2)


class TestLoadGeometry:
    """Tests for geometry files."""

    def test_load(self, geometry_file: Path) -> None:
        """A valid file yields the curve and its node count."""
        curve, nodes = load_geometry(geometry_file)
        assert nodes == 48
        assert curve.tube_diameter == pytest.approx(2.0, abs=1e-12)

    def test_missing_file(self, tmp_path: Path) -> None:
        """A missing file raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            load_geometry(tmp_path / "absent.yaml")

    def test_malformed_file(self, tmp_path: Path) -> None:
        """Unknown keys raise GeometryError."""
        path = tmp_path / "bad.yaml"
        path.write_text("rho: {cos: [2, 1]}\nz: {sin: [0, 1]}\ncolor: red\n", encoding="utf-8")
        with pytest.raises(GeometryError):
            load_geometry(path)

    def test_odd_nodes_rejected(self, tmp_path: Path) -> None:
        """An odd node count in the file raises GeometryError."""
        path = tmp_path / "odd.yaml"
        path.write_text("rho: {cos: [2, 1]}\nz: {sin: [0, 1]}\nnodes: 33\n", encoding="utf-8")
        with pytest.raises(GeometryError):
            load_geometry(path)
