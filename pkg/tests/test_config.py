# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""
Test configuration loading, merging and validation.
"""

from pathlib import Path

import pytest

from graded_decomp.cli import (
    CONFIG_FILE,
    DEFAULT_CONFIG,
    SUITES,
    load_config,
    padding_from,
    parse_suites,
)
from graded_decomp.errors import PreconditionViolation
from tests.conftest import TEST_FILES


class TestConfigurationValidation:
    """Test the shipped configuration file structure."""

    def test_config_file_exists(self):
        """The configuration ships inside the package."""
        config_path = Path(__file__).parent.parent / "graded_decomp" / CONFIG_FILE
        assert config_path.exists(), f"{CONFIG_FILE} should exist"

    def test_config_has_required_sections(self):
        """Every default section is present after loading."""
        config = load_config()
        for section in DEFAULT_CONFIG:
            assert section in config, f"Config should have '{section}' section"

    def test_shipped_values(self):
        """The shipped file agrees with the built-in defaults."""
        config = load_config()
        assert config["defaults"]["e"] == 4
        assert config["defaults"]["convention"] == "v-inverse"
        assert config["bounds"]["max_partition_size"] == 12
        assert config["bounds"]["max_hecke_rank"] == 6
        assert config["verify"]["suites"] == list(SUITES)
        assert config["display"]["zero_symbol"] == "."


class TestConfigMerge:
    """Test section-by-section merging over the defaults."""

    def test_partial_override(self):
        """Keys not named in the file keep their defaults."""
        config = load_config(TEST_FILES / "small_bounds.yaml")
        assert config["bounds"]["max_partition_size"] == 3
        assert config["bounds"]["max_hecke_rank"] == 6
        assert config["defaults"]["convention"] == "v"
        assert config["defaults"]["e"] == 4

    def test_defaults_not_mutated(self):
        """Loading an override leaves DEFAULT_CONFIG untouched."""
        load_config(TEST_FILES / "small_bounds.yaml")
        assert DEFAULT_CONFIG["bounds"]["max_partition_size"] == 12

    def test_invalid_yaml_warns(self, capsys):
        """Unparseable YAML falls back to the defaults with a warning."""
        config = load_config(TEST_FILES / "bad_config.yaml")
        assert config == DEFAULT_CONFIG
        assert "Could not load config file" in capsys.readouterr().err

    def test_missing_file_warns(self, temp_dir, capsys):
        """An explicit path that does not exist is reported."""
        config = load_config(temp_dir / "absent.yaml")
        assert config == DEFAULT_CONFIG
        assert "does not exist" in capsys.readouterr().err

    def test_non_mapping_rejected(self, temp_dir, capsys):
        """A YAML list at top level is not a configuration."""
        path = temp_dir / "list.yaml"
        path.write_text("- 1\n- 2\n", encoding="utf-8")
        assert load_config(path) == DEFAULT_CONFIG
        assert "top level must be a mapping" in capsys.readouterr().err


class TestConfigValues:
    """Test interpretation of individual settings."""

    def test_padding(self):
        """minimal means None; integers fix d"""
        config = load_config()
        assert padding_from(config) is None
        config["fock"]["padding"] = "3"
        assert padding_from(config) == 3
        config["fock"]["padding"] = "wide"
        with pytest.raises(PreconditionViolation):
            padding_from(config)

    def test_suites(self):
        """Suite lists from the command line or the config"""
        config = load_config()
        assert parse_suites(None, config) == list(SUITES)
        assert parse_suites("all", config) == list(SUITES)
        assert parse_suites("relations, grading", config) == ["relations", "grading"]
        with pytest.raises(PreconditionViolation):
            parse_suites("relations,bogus", config)
