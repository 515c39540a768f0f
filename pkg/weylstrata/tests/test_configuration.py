"""
Tests for the configuration service
"""

import json
import os
import stat

import pytest

from weylstrata.core import configuration
from weylstrata.core.configuration import DEFAULT_CONFIG, ConfigurationService, SweepConfig
from weylstrata.errors import ConfigurationError


class TestConfigurationService:
    """Tests for the ConfigurationService class."""

    def test_defaults_without_saved_config(self):
        config = ConfigurationService.load_config()
        assert config == DEFAULT_CONFIG
        assert config is not DEFAULT_CONFIG

    def test_save_and_load(self):
        """Test that the saved file is owner-only and merged with defaults."""
        assert ConfigurationService.save_config({"cartan_type": "C2"})
        mode = stat.S_IMODE(os.stat(configuration.CONFIG_FILE).st_mode)
        assert mode == 0o600
        loaded = ConfigurationService.load_config()
        assert loaded["cartan_type"] == "C2"
        assert loaded["max_length"] == DEFAULT_CONFIG["max_length"]

    def test_corrupt_saved_config(self):
        ConfigurationService.ensure_config_dir()
        with open(configuration.CONFIG_FILE, "w") as f:
            f.write("{not json")
        assert ConfigurationService.load_config() == DEFAULT_CONFIG

    def test_parse_value(self):
        parse = ConfigurationService.parse_value
        assert parse("max_length", " 6 ") == 6
        assert parse("use_omega", "yes") is True
        assert parse("include_dimensions", "off") is False
        assert parse("checks", "lim, classpoly") == ["lim", "classpoly"]
        assert parse("sigma", "2,1") == [2, 1]
        assert parse("basis", "1,0;0,2") == [[1, 0], [0, 2]]
        assert parse("cache_path", "none") is None
        assert parse("cartan_type", "A2") == "A2"

    def test_parse_value_errors(self):
        with pytest.raises(ConfigurationError):
            ConfigurationService.parse_value("colour", "red")
        with pytest.raises(ConfigurationError):
            ConfigurationService.parse_value("workers", "many")
        with pytest.raises(ConfigurationError):
            ConfigurationService.parse_value("use_omega", "maybe")

    def test_key_value_file(self, tmp_path):
        path = tmp_path / "sweep.conf"
        path.write_text("# A2 with the diagram flip\ncartan-type = A2\nsigma = 2,1  # swap\n\nmax_length = 2\n")
        settings = ConfigurationService.load_key_value_file(str(path))
        assert settings == {"cartan_type": "A2", "sigma": [2, 1], "max_length": 2}

    def test_key_value_file_errors(self, tmp_path):
        with pytest.raises(ConfigurationError):
            ConfigurationService.load_key_value_file(str(tmp_path / "missing.conf"))
        path = tmp_path / "bad.conf"
        path.write_text("cartan_type A2\n")
        with pytest.raises(ConfigurationError, match="bad.conf:1"):
            ConfigurationService.load_key_value_file(str(path))

    def test_merge_order(self, tmp_path):
        """Test defaults < saved config < key-value file < overrides."""
        ConfigurationService.save_config({"cartan_type": "C2", "max_length": 7, "workers": 3})
        path = tmp_path / "sweep.conf"
        path.write_text("cartan_type = A2\nmax_length = 2\n")
        config = ConfigurationService.build_sweep_config({"max_length": 1, "workers": None}, str(path))
        assert config.cartan_type == "A2"
        assert config.max_length == 1
        assert config.workers == 3
        assert config.lattice == "sc"

    def test_saved_config_can_be_skipped(self):
        ConfigurationService.save_config({"cartan_type": "C2"})
        config = ConfigurationService.build_sweep_config(use_saved=False)
        assert config == SweepConfig()


class TestSweepConfig:
    """Tests for the SweepConfig dataclass."""

    def test_dict_form(self):
        config = SweepConfig(cartan_type="A2", sigma=(2, 1), checks=("lim",))
        data = config.to_dict()
        assert data["sigma"] == [2, 1]
        assert data["checks"] == ["lim"]
        assert json.loads(json.dumps(data)) == data
        assert SweepConfig.from_dict(data) == config

    def test_sigma_permutation(self):
        assert SweepConfig().sigma_permutation is None
        assert SweepConfig(cartan_type="A2", sigma=(2, 1)).sigma_permutation == (1, 0)

    @pytest.mark.parametrize("overrides", [
        {"max_length": -1},
        {"workers": 0},
        {"omega_radius": -2},
        {"pivot_order": "random"},
        {"checks": ("theorem1", "theorem2")},
        {"cartan_type": "Q3"},
        {"cartan_type": "A2", "sigma": (1, 1)},
        {"cartan_type": "C2", "sigma": (2, 1)},
    ])
    def test_validation_errors(self, overrides):
        with pytest.raises(ConfigurationError):
            SweepConfig(**overrides).validate()
