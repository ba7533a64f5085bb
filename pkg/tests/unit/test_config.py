"""
Unit tests for configuration loading and validation.
"""

from pathlib import Path

import pytest
from pydantic import ValidationError

from torus_debye.config import (
    ExperimentConfig,
    GeometryConfig,
    MaterialConfig,
    as_complex,
    config_hash,
    find_config_file,
    load_config,
)


class TestDefaults:
    """Tests for the default configuration."""

    def test_defaults(self) -> None:
        """Defaults describe the reference run."""
        config = ExperimentConfig()
        assert config.geometry.file is None
        assert config.geometry.nodes == 200
        assert config.quadrature.order == 16
        assert config.output.format == "csv"
        assert as_complex(config.material.mu0) == 1.10
        assert as_complex(config.material.eps1) == 1.30

    def test_clutch_grid(self) -> None:
        """The conditioning sweep covers ten clutching parameters and frequencies."""
        sweep = ExperimentConfig().sweep
        assert len(sweep.tc_grid) == 10
        assert sweep.clutch_omegas[0] == pytest.approx(1e-4)
        assert sweep.clutch_omegas[-1] == pytest.approx(1.0)


class TestValidation:
    """Tests for field validation."""

    @pytest.mark.parametrize("nodes", [15, 14, 33])
    def test_invalid_nodes(self, nodes: int) -> None:
        """Node counts must be even and at least 16."""
        with pytest.raises(ValidationError):
            GeometryConfig(nodes=nodes)

    def test_invalid_order(self) -> None:
        """Only orders 8 and 16 exist."""
        with pytest.raises(ValidationError):
            ExperimentConfig(quadrature={"order": 12})

    def test_negative_frequency(self) -> None:
        """Frequencies are non-negative."""
        with pytest.raises(ValidationError):
            ExperimentConfig(sweep={"omegas": [1.0, -1.0]})

    def test_extra_keys_forbidden(self) -> None:
        """Unknown top-level sections are rejected."""
        with pytest.raises(ValidationError):
            ExperimentConfig(solver={"tol": 1})

    @pytest.mark.parametrize(
        ("value", "expected"),
        [(1.5, 1.5), ([1.0, 0.25], 1.0 + 0.25j), ("2+0.5j", 2.0 + 0.5j), (1 - 1j, 1 - 1j)],
    )
    def test_complex_materials(self, value: object, expected: complex) -> None:
        """Material constants accept reals, pairs and complex literals."""
        material = MaterialConfig(eps0=value)
        assert as_complex(material.eps0) == expected

    def test_bad_complex_pair(self) -> None:
        """Pairs must have two entries."""
        with pytest.raises(ValidationError):
            MaterialConfig(eps0=[1.0, 2.0, 3.0])


class TestLoadConfig:
    """Tests for load_config and find_config_file."""

    def test_none_gives_defaults(self) -> None:
        """No path gives the defaults."""
        assert load_config(None) == ExperimentConfig()

    def test_missing_file(self, tmp_path: Path) -> None:
        """A missing file raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            load_config(tmp_path / "absent.yaml")

    def test_invalid_yaml(self, tmp_path: Path) -> None:
        """Broken YAML raises ValueError."""
        path = tmp_path / "bad.yaml"
        path.write_text("geometry: [unclosed\n", encoding="utf-8")
        with pytest.raises(ValueError, match="Invalid YAML"):
            load_config(path)

    def test_invalid_values(self, tmp_path: Path) -> None:
        """Schema violations raise ValueError."""
        path = tmp_path / "bad.yaml"
        path.write_text("geometry:\n  nodes: 15\n", encoding="utf-8")
        with pytest.raises(ValueError, match="Failed to load"):
            load_config(path)

    def test_relative_geometry_path(self, tmp_path: Path) -> None:
        """Geometry files resolve against the config file's directory."""
        path = tmp_path / "run.yaml"
        path.write_text(
            "geometry:\n  file: shapes/torus.yaml\nsweep:\n  modes: [0, 1]\n", encoding="utf-8"
        )
        config = load_config(path)
        assert config.geometry.file == (tmp_path / "shapes" / "torus.yaml").resolve()
        assert config.sweep.modes == [0, 1]

    def test_find_config_file(self, tmp_path: Path) -> None:
        """The search walks up parent directories."""
        (tmp_path / ".torus-debye.yaml").write_text("{}\n", encoding="utf-8")
        nested = tmp_path / "a" / "b"
        nested.mkdir(parents=True)
        assert find_config_file(nested) == (tmp_path / ".torus-debye.yaml").resolve()


class TestConfigHash:
    """Tests for config_hash."""

    def test_stable(self) -> None:
        """Equal configurations hash equally."""
        assert config_hash(ExperimentConfig()) == config_hash(ExperimentConfig())
        assert len(config_hash(ExperimentConfig())) == 64

    def test_sensitive(self) -> None:
        """Any change alters the hash."""
        changed = ExperimentConfig(sweep={"tc": 0.5})
        assert config_hash(changed) != config_hash(ExperimentConfig())
