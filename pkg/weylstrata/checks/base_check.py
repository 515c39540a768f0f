"""
Base Check for the weylstrata verification harness

This module provides the base class for all verification checks.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from weylstrata.algebra.affine_weyl import ExtAffineElement
from weylstrata.core.configuration import SweepConfig
from weylstrata.core.service_registry import GroupContext, get_context
from weylstrata.utils.serialization import class_to_dict, element_to_dict

logger = logging.getLogger(__name__)


@dataclass
class CheckOutcome:
    """Counterexamples and tallies of one check on one element."""

    counterexamples: List[Dict[str, Any]] = field(default_factory=list)
    counters: Dict[str, int] = field(default_factory=dict)

    def count(self, name: str, amount: int = 1) -> None:
        self.counters[name] = self.counters.get(name, 0) + amount


class BaseCheck:
    """
    Base Check for the weylstrata verification harness

    Subclasses implement ``check_element``. Engines are pulled lazily from the
    shared EngineRegistry so that every check of a sweep reuses the same memo
    tables.
    """

    name = "base"

    def __init__(self, config: SweepConfig, check_type: str = "verification", cache=None):
        """
        Initialize the check.

        Args:
            config: The sweep configuration
            check_type: Type of the check, used in the logger name
            cache: Persistent ReductionCache handed to the engines
        """
        self.config = config
        self.check_type = check_type
        self.cache = cache
        self.logger = logging.getLogger(f"{__name__}.{check_type}.{self.name}")
        self._ambient: Optional[GroupContext] = None

    @property
    def ambient(self) -> GroupContext:
        """The engines of the ambient group."""
        if self._ambient is None:
            self._ambient = get_context(self.config, None, self.cache)
        return self._ambient

    def levi(self, J: Sequence[int]) -> GroupContext:
        """The engines of the Levi scope J."""
        return get_context(self.config, J, self.cache)

    def initialize(self) -> bool:
        """
        Prepare the check before a sweep.

        Returns:
            True if the check can run on this configuration
        """
        self.logger.info(f"Initializing check: {self.name} ({self.check_type})")
        return True

    def check_element(self, x: ExtAffineElement) -> CheckOutcome:
        raise NotImplementedError

    def describe(self, x: ExtAffineElement) -> Dict[str, Any]:
        return element_to_dict(self.ambient.group, x)

    def counterexample(self, x: ExtAffineElement, reason: str, **details: Any) -> Dict[str, Any]:
        record = {"check": self.name, "element": self.describe(x), "reason": reason}
        for key, value in details.items():
            record[key] = value
        self.logger.warning(f"Counterexample for {self.ambient.group.describe(x)}: {reason}")
        return record

    @staticmethod
    def classes_json(classes) -> List[Dict[str, Any]]:
        return [class_to_dict(c) for c in sorted(classes)]

    def pair_json(self, pair) -> Dict[str, Any]:
        word = self.ambient.datum.reduced_word(pair.w)
        return {"J": [j + 1 for j in pair.J], "w": [f"s{i + 1}" for i in word], "normalized": pair.normalized}
