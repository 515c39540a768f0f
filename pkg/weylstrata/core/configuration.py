"""
Configuration service for weylstrata.

This module provides the sweep configuration and a centralized service for
loading it from the saved JSON settings, key-value files and command-line
overrides.
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional, Tuple

from weylstrata.algebra.root_datum import build_root_datum
from weylstrata.errors import ConfigurationError, RootDatumError

logger = logging.getLogger(__name__)

# Default config directory
CONFIG_DIR = os.path.expanduser("~/.weylstrata")
CONFIG_FILE = os.path.join(CONFIG_DIR, "config.json")

VALID_CHECKS = ("theorem1", "corollary", "lim", "classpoly")
PIVOT_ORDERS = ("ascending", "descending")

# Default configuration structure
DEFAULT_CONFIG = {
    "cartan_type": "A1",
    "lattice": "sc",
    "basis": None,
    "sigma": None,
    "max_length": 4,
    "checks": list(VALID_CHECKS),
    "workers": 1,
    "cache_path": None,
    "omega_radius": 1,
    "pivot_order": "ascending",
    "use_omega": False,
    "include_dimensions": True,
}

_INT_KEYS = ("max_length", "workers", "omega_radius")
_BOOL_KEYS = ("use_omega", "include_dimensions")


@dataclass(frozen=True)
class SweepConfig:
    """
    Everything needed to rebuild a sweep, picklable for worker processes.

    ``sigma`` is a 1-based node permutation, ``basis`` holds integer rows in
    fundamental-coweight coordinates.
    """

    cartan_type: str = "A1"
    lattice: str = "sc"
    basis: Optional[Tuple[Tuple[int, ...], ...]] = None
    sigma: Optional[Tuple[int, ...]] = None
    max_length: int = 4
    checks: Tuple[str, ...] = field(default=VALID_CHECKS)
    workers: int = 1
    cache_path: Optional[str] = None
    omega_radius: int = 1
    pivot_order: str = "ascending"
    use_omega: bool = False
    include_dimensions: bool = True

    @property
    def sigma_permutation(self) -> Optional[Tuple[int, ...]]:
        """The 0-based node permutation, or None for the identity."""
        if self.sigma is None:
            return None
        return tuple(i - 1 for i in self.sigma)

    @property
    def group_key(self) -> Tuple:
        return (self.cartan_type, self.lattice, self.basis, self.sigma)

    def validate(self) -> "SweepConfig":
        """
        Check ranges and that the group can be built.

        Raises:
            ConfigurationError: If any setting is invalid
        """
        if self.max_length < 0:
            raise ConfigurationError(f"max_length must be >= 0, got {self.max_length}")
        if self.workers < 1:
            raise ConfigurationError(f"workers must be >= 1, got {self.workers}")
        if self.omega_radius < 0:
            raise ConfigurationError(f"omega_radius must be >= 0, got {self.omega_radius}")
        if self.pivot_order not in PIVOT_ORDERS:
            raise ConfigurationError(f"Unknown pivot order: {self.pivot_order}")
        unknown = [c for c in self.checks if c not in VALID_CHECKS]
        if unknown:
            raise ConfigurationError(f"Unknown checks: {', '.join(unknown)}")

        try:
            datum = build_root_datum(self.cartan_type, self.lattice, self.basis)
            datum.diagram_automorphism(self.sigma_permutation)
        except RootDatumError as e:
            raise ConfigurationError(str(e)) from e
        return self

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["checks"] = list(self.checks)
        data["sigma"] = list(self.sigma) if self.sigma is not None else None
        data["basis"] = [list(row) for row in self.basis] if self.basis is not None else None
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SweepConfig":
        values = {key: data[key] for key in DEFAULT_CONFIG
                  if key in data and (data[key] is not None or key in ("basis", "sigma", "cache_path"))}
        if values.get("checks") is not None:
            values["checks"] = tuple(values["checks"])
        if values.get("sigma") is not None:
            values["sigma"] = tuple(int(i) for i in values["sigma"])
        if values.get("basis") is not None:
            values["basis"] = tuple(tuple(int(x) for x in row) for row in values["basis"])
        return cls(**values)


class ConfigurationService:
    """
    Centralized service for managing configuration settings.

    Settings are merged in the order defaults < saved JSON config < key-value
    file < explicit overrides.
    """

    @staticmethod
    def ensure_config_dir():
        """Ensure the configuration directory exists."""
        os.makedirs(CONFIG_DIR, exist_ok=True)

    @staticmethod
    def load_config() -> Dict[str, Any]:
        """Load the saved configuration, filling in defaults for missing keys."""
        if not os.path.exists(CONFIG_FILE):
            return dict(DEFAULT_CONFIG)

        try:
            with open(CONFIG_FILE, "r") as f:
                config = json.load(f)
            if not isinstance(config, dict):
                logger.warning("Saved configuration is not a mapping, using defaults")
                return dict(DEFAULT_CONFIG)

            for key, value in DEFAULT_CONFIG.items():
                if key not in config:
                    config[key] = value
            return config
        except Exception as e:
            logger.error(f"Error loading configuration: {e}")
            return dict(DEFAULT_CONFIG)

    @staticmethod
    def save_config(config: Dict[str, Any]) -> bool:
        """Save configuration to file with owner-only permissions."""
        ConfigurationService.ensure_config_dir()

        try:
            with open(CONFIG_FILE, "w") as f:
                json.dump(config, f, indent=2)

            os.chmod(CONFIG_FILE, 0o600)
            return True
        except Exception as e:
            logger.error(f"Error saving configuration: {e}")
            return False

    @staticmethod
    def parse_value(key: str, raw: str) -> Any:
        """
        Convert a textual setting to its typed value.

        Raises:
            ConfigurationError: For unknown keys or malformed values
        """
        raw = raw.strip()
        if key not in DEFAULT_CONFIG:
            raise ConfigurationError(f"Unknown configuration key: {key}")
        if raw.lower() in ("", "none", "null"):
            return None
        try:
            if key in _INT_KEYS:
                return int(raw)
            if key in _BOOL_KEYS:
                lowered = raw.lower()
                if lowered in ("true", "yes", "on", "1"):
                    return True
                if lowered in ("false", "no", "off", "0"):
                    return False
                raise ValueError(raw)
            if key == "checks":
                return [c.strip() for c in raw.split(",") if c.strip()]
            if key == "sigma":
                return [int(i) for i in raw.split(",") if i.strip()]
            if key == "basis":
                return [[int(x) for x in row.split(",")] for row in raw.split(";") if row.strip()]
        except ValueError as e:
            raise ConfigurationError(f"Invalid value for {key}: {raw!r}") from e
        return raw

    @staticmethod
    def load_key_value_file(path: str) -> Dict[str, Any]:
        """
        Read ``key = value`` lines; ``#`` starts a comment and blank lines are skipped.

        Raises:
            ConfigurationError: If the file is missing or a line is malformed
        """
        settings: Dict[str, Any] = {}
        try:
            with open(path, "r") as f:
                lines = f.readlines()
        except OSError as e:
            raise ConfigurationError(f"Cannot read configuration file {path}: {e}") from e

        for number, line in enumerate(lines, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigurationError(f"{path}:{number}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            settings[key] = ConfigurationService.parse_value(key, value)
        logger.debug(f"Loaded {len(settings)} settings from {path}")
        return settings

    @staticmethod
    def build_sweep_config(overrides: Optional[Dict[str, Any]] = None,
                           config_file: Optional[str] = None,
                           use_saved: bool = True) -> SweepConfig:
        """
        Merge all configuration sources into a validated SweepConfig.

        Args:
            overrides: Explicit settings (e.g. from the command line); None values are ignored
            config_file: Optional key-value file
            use_saved: Include the saved JSON configuration

        Returns:
            The validated configuration
        """
        merged = ConfigurationService.load_config() if use_saved else dict(DEFAULT_CONFIG)
        if config_file:
            merged.update(ConfigurationService.load_key_value_file(config_file))
        for key, value in (overrides or {}).items():
            if value is not None:
                merged[key] = value
        try:
            config = SweepConfig.from_dict(merged)
        except (TypeError, ValueError) as e:
            raise ConfigurationError(f"Invalid configuration: {e}") from e
        return config.validate()
