"""
Unit tests for the experiment plumbing: seeding, densities, probes,
extrapolation, the self-test registry and logging setup.
"""

import logging
import math
from pathlib import Path

import numpy as np
import pytest
from rich.console import Console
from rich.logging import RichHandler

from torus_debye.calculus import surface_calculus
from torus_debye.config import ExperimentConfig
from torus_debye.geometry import SurfaceGrid
from torus_debye.harness import (
    HarnessError,
    build_grid,
    build_params,
    extrapolate_to_zero,
    geometry_summary,
    new_report,
    registered_checks,
)
from torus_debye.harness.common import mode_rng, random_density, relative_l2, shell_points
from torus_debye.harness.selftest import RegisteredCheck, SelftestRun
from torus_debye.logging_setup import PACKAGE_LOGGER, configure_logging
from torus_debye.models import ExperimentKind


class TestSeeding:
    """Tests for mode_rng and random_density."""

    def test_reproducible(self) -> None:
        """The same (seed, mode) gives the same stream."""
        assert mode_rng(5, 2).random() == mode_rng(5, 2).random()

    def test_modes_independent(self) -> None:
        """Opposite modes get different streams."""
        assert mode_rng(5, 2).random() != mode_rng(5, -2).random()

    def test_mean_zero_density(self, small_grid: SurfaceGrid) -> None:
        """Mode-0 densities have zero surface mean."""
        density = random_density(mode_rng(1, 0), small_grid, 0, band_limit=4)
        assert abs(surface_calculus(small_grid, 0).mean(density.values)) < 1e-13

    def test_band_limited(self, small_grid: SurfaceGrid) -> None:
        """Only Fourier modes up to the band limit are present."""
        density = random_density(mode_rng(1, 3), small_grid, 3, band_limit=2)
        spectrum = np.abs(np.fft.fft(density.values))
        assert np.all(spectrum[3:-2] < 1e-10 * np.max(spectrum))


class TestProbes:
    """Tests for shell_points."""

    def test_shell_points_inside(self, small_grid: SurfaceGrid) -> None:
        """Shrunken-shell probes lie inside the torus."""
        points = shell_points(np.random.default_rng(0), small_grid, 5, (0.6, 0.8))
        assert points.shape == (5, 3)
        curve = small_grid.curve
        for x, y, z in points:
            assert curve.contains(float(np.hypot(x, y)), float(z))

    def test_shell_through_axis(self, small_grid: SurfaceGrid) -> None:
        """Shells that reach the axis are rejected."""
        with pytest.raises(HarnessError):
            shell_points(np.random.default_rng(0), small_grid, 200, (3.0, 3.5))


class TestHelpers:
    """Tests for small numerical helpers."""

    def test_extrapolate_linear(self) -> None:
        """Linear data extrapolates exactly."""
        distances = [0.01, 0.005]
        values = [np.array([1.0 + 2 * d]) for d in distances]
        np.testing.assert_allclose(extrapolate_to_zero(distances, values), [1.0])

    def test_extrapolate_quadratic(self) -> None:
        """Three points recover a quadratic."""
        distances = [0.01, 0.005, 0.0025]
        values = [np.array([3.0 - d + 40 * d**2, 1j * d]) for d in distances]
        np.testing.assert_allclose(extrapolate_to_zero(distances, values), [3.0, 0.0], atol=1e-14)

    def test_relative_l2(self) -> None:
        """Relative error, or absolute when the exact value vanishes."""
        assert relative_l2(np.array([1.1]), np.array([1.0])) == pytest.approx(0.1)
        assert relative_l2(np.array([0.5]), np.array([0.0])) == pytest.approx(0.5)


class TestSetup:
    """Tests for grid, parameter and report construction."""

    def test_geometry_file_nodes(self, geometry_file: Path) -> None:
        """A geometry file's node count is used unless nodes is set explicitly."""
        config = ExperimentConfig(geometry={"file": geometry_file})
        assert build_grid(config).n_nodes == 48
        config = ExperimentConfig(geometry={"file": geometry_file, "nodes": 32})
        assert build_grid(config).n_nodes == 32

    def test_conductivity_folded_in(self) -> None:
        """Conductivities enter as ε + iσ/ω above zero frequency only."""
        config = ExperimentConfig(material={"sigma1": 2.0})
        assert build_params(config, 4.0).eps1 == pytest.approx(1.30 + 0.5j)
        assert build_params(config, 0.0).eps1 == pytest.approx(1.30)

    def test_new_report(self) -> None:
        """Reports carry the configuration's provenance."""
        config = ExperimentConfig(output={"experiment_id": "run-7"})
        report = new_report(config, ExperimentKind.PEC, seed=3)
        assert report.experiment_id == "run-7"
        assert report.provenance().endswith("experiment_id=run-7 seed=3")

    def test_geometry_summary(self, geometry_file: Path) -> None:
        """The circular torus has area 8π² and volume 4π²."""
        config = ExperimentConfig(
            geometry={"file": geometry_file, "disk_radial": 8, "disk_azimuthal": 16}
        )
        report = geometry_summary(config)
        values = dict(zip(report.column("quantity"), report.column("value")))
        assert values["nodes"] == 48
        assert values["surface_area"] == pytest.approx(8 * np.pi**2, rel=1e-12)
        assert values["enclosed_volume"] == pytest.approx(4 * np.pi**2, rel=1e-12)
        assert values["rho_min"] == pytest.approx(1.0)


class TestSelftestRegistry:
    """Tests for the self-test check registry."""

    def test_every_layer_checked(self) -> None:
        """Each layer registers at least one check."""
        modules = {check.module for check in registered_checks()}
        assert modules == {
            "geometry",
            "quadrature",
            "surface_calc",
            "kernels",
            "debye",
            "solver",
            "fields",
            "harness",
        }

    def test_names_unique(self) -> None:
        """(module, name) pairs are unique."""
        keys = [(c.module, c.name) for c in registered_checks()]
        assert len(keys) == len(set(keys))

    @pytest.mark.parametrize(
        "name",
        [
            "alpert-order-8-rate",
            "azimuthal-conjugate-symmetry",
            "difference-kernel-moderate-k",
            "parameter-guards",
        ],
    )
    def test_grid_free_checks_pass(self, name: str) -> None:
        """Checks that never touch the surface pass on their own."""
        check = next(c for c in registered_checks() if c.name == name)
        assert check.passes(check.function(SelftestRun(ExperimentConfig())))

    def test_passes(self) -> None:
        """Thresholds are upper bounds unless at_least is set."""
        upper = RegisteredCheck("m", "upper", 1e-3, False, lambda _run: 0.0)
        lower = RegisteredCheck("m", "lower", 1.9, True, lambda _run: 0.0)
        assert upper.passes(1e-4)
        assert not upper.passes(1e-2)
        assert lower.passes(2.0)
        assert not lower.passes(1.0)
        assert not upper.passes(math.nan)
        assert not lower.passes(math.nan)


class TestLogging:
    """Tests for configure_logging."""

    def test_single_handler(self) -> None:
        """Reconfiguring replaces the Rich handler."""
        console = Console(stderr=True)
        configure_logging(False, console)
        logger = configure_logging(True, console)
        handlers = [h for h in logger.handlers if isinstance(h, RichHandler)]
        assert len(handlers) == 1
        assert logger.level == logging.DEBUG
        assert logger.name == PACKAGE_LOGGER
        assert not logger.propagate
