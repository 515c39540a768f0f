"""
Engine registry for weylstrata

This module provides a centralized registry for the per-scope engines of a
sweep, ensuring that all checks share the same groups, classifiers and
reduction memo tables.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

from weylstrata.algebra.affine_weyl import AffineWeylGroup
from weylstrata.algebra.alcove import AlcoveDetector
from weylstrata.algebra.dl_reduction import ReductionEngine
from weylstrata.algebra.newton_kottwitz import SigmaClassifier
from weylstrata.algebra.root_datum import DiagramAutomorphism, RootDatum, build_root_datum
from weylstrata.core.configuration import SweepConfig

logger = logging.getLogger(__name__)


@dataclass
class GroupContext:
    """The engines of one scope J (all simple roots for the ambient group)."""

    datum: RootDatum
    sigma: DiagramAutomorphism
    group: AffineWeylGroup
    classifier: SigmaClassifier
    engine: ReductionEngine
    detector: Optional[AlcoveDetector] = None

    @property
    def scope(self) -> Tuple[int, ...]:
        return self.group.scope


class EngineRegistry:
    """
    Engine registry for weylstrata

    Singleton holding named entries; group contexts are registered under a
    name derived from the configuration and the scope.
    """

    _instance = None

    def __new__(cls):
        """Implement singleton pattern."""
        if cls._instance is None:
            cls._instance = super(EngineRegistry, cls).__new__(cls)
            cls._instance._entries = {}
        return cls._instance

    def register(self, name: str, entry: Any) -> None:
        """
        Register an entry with the registry.

        Args:
            name: Name of the entry
            entry: The engine or context
        """
        self._entries[name] = entry
        logger.debug(f"Registered entry: {name}")

    def get(self, name: str) -> Optional[Any]:
        """
        Get an entry from the registry.

        Args:
            name: Name of the entry

        Returns:
            The entry, or None if not found
        """
        return self._entries.get(name)

    def has(self, name: str) -> bool:
        return name in self._entries

    def unregister(self, name: str) -> None:
        if name in self._entries:
            del self._entries[name]
            logger.debug(f"Unregistered entry: {name}")

    def clear(self) -> None:
        """Clear all entries from the registry."""
        self._entries.clear()
        logger.debug("Cleared engine registry")

    def get_all(self) -> Dict[str, Any]:
        return self._entries.copy()

    def get_context(self, config: SweepConfig, J: Optional[Sequence[int]] = None,
                    cache=None) -> GroupContext:
        """
        Get or build the engines of scope J for a configuration.

        Args:
            config: The sweep configuration
            J: The Levi scope, None for the ambient group
            cache: Persistent ReductionCache given to newly built engines

        Returns:
            The group context
        """
        datum = build_root_datum(config.cartan_type, config.lattice, config.basis)
        scope = datum.simple_indices if J is None else tuple(sorted(J))
        name = context_name(config, scope)
        context = self.get(name)
        if context is None:
            sigma = datum.diagram_automorphism(config.sigma_permutation)
            group = AffineWeylGroup(datum, scope, sigma)
            classifier = SigmaClassifier(group)
            engine = ReductionEngine(group, classifier,
                                     pivot_order=config.pivot_order,
                                     use_omega=config.use_omega,
                                     include_dimensions=config.include_dimensions,
                                     cache=cache)
            detector = AlcoveDetector(group) if group.levi.is_ambient else None
            context = GroupContext(datum, sigma, group, classifier, engine, detector)
            self.register(name, context)
            logger.info(f"Built engines for {datum.signature}, J={list(scope)}")
        return context


def context_name(config: SweepConfig, scope: Sequence[int]) -> str:
    return (f"context:{config.cartan_type}/{config.lattice}/{config.basis}/{config.sigma}"
            f"/{config.pivot_order}/{config.use_omega}/{config.include_dimensions}"
            f"/J={','.join(str(j) for j in scope)}")


# Helper functions for common operations
def get_context(config: SweepConfig, J: Optional[Sequence[int]] = None, cache=None) -> GroupContext:
    """
    Get the engines of scope J from the shared registry.

    Args:
        config: The sweep configuration
        J: The Levi scope, None for the ambient group
        cache: Persistent ReductionCache for newly built engines

    Returns:
        The group context
    """
    return EngineRegistry().get_context(config, J, cache)


def clear_registry() -> None:
    EngineRegistry().clear()
