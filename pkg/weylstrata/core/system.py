"""
Core system class for the weylstrata verification harness
"""

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

from weylstrata.algebra.affine_weyl import ExtAffineElement
from weylstrata.checks import CHECKS
from weylstrata.checks.base_check import BaseCheck, CheckOutcome
from weylstrata.core.cache import ReductionCache
from weylstrata.core.configuration import SweepConfig
from weylstrata.core.service_registry import clear_registry, get_context

logger = logging.getLogger(__name__)


@dataclass
class VerificationReport:
    """
    Aggregated verdicts of a sweep.

    The outcomes are merged per check; since merging only concatenates and
    adds, the result does not depend on the order in which workers finish.
    """

    config: SweepConfig
    elements_swept: int = 0
    outcomes: Dict[str, CheckOutcome] = field(default_factory=dict)
    cache_stats: Dict[str, int] = field(default_factory=dict)
    timing: Dict[str, float] = field(default_factory=dict)

    @property
    def counterexamples(self) -> List[Dict[str, Any]]:
        found = []
        for name in sorted(self.outcomes):
            found.extend(self.outcomes[name].counterexamples)
        return found

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def merge(self, name: str, outcome: CheckOutcome) -> None:
        merged = self.outcomes.setdefault(name, CheckOutcome())
        merged.counterexamples.extend(outcome.counterexamples)
        for counter, amount in outcome.counters.items():
            merged.count(counter, amount)

    def to_dict(self, include_runtime: bool = True) -> Dict[str, Any]:
        """Deterministic JSON form; cache statistics and timing are left out unless include_runtime."""
        checks = []
        for name in sorted(self.outcomes):
            outcome = self.outcomes[name]
            checks.append({
                "name": name,
                "pass": not outcome.counterexamples,
                "counterexamples": sorted(outcome.counterexamples, key=_counterexample_order),
                "counters": dict(sorted(outcome.counters.items())),
            })
        data = {
            "config": self.config.to_dict(),
            "elements_swept": self.elements_swept,
            "checks": checks,
        }
        if include_runtime:
            data["cache_stats"] = dict(sorted(self.cache_stats.items()))
            data["timing"] = dict(sorted(self.timing.items()))
        return data


def _counterexample_order(record: Dict[str, Any]) -> Tuple:
    element = record.get("element", {})
    return (tuple(element.get("lambda", ())), tuple(element.get("u", ())), record.get("reason", ""),
            json.dumps(record, sort_keys=True, default=str))


def _run_shard(config: SweepConfig, elements: Sequence[ExtAffineElement]
               ) -> Tuple[Dict[str, CheckOutcome], List[str], Dict[str, int]]:
    """Worker entry point: fresh registry, cache shard seeded from the cache file, never flushed."""
    clear_registry()
    cache = ReductionCache(config.cache_path)
    system = VerificationSystem(config, cache=cache)
    outcomes = system.check_elements(elements)
    return outcomes, cache.pending_lines(), cache.stats()


class VerificationSystem:
    """
    Main system class for the weylstrata verification harness.

    This class enumerates the elements of a sweep, runs the selected checks
    on them (in worker processes when ``workers > 1``) and collects the
    verdicts into a VerificationReport.
    """

    def __init__(self, config: SweepConfig, cache: Optional[ReductionCache] = None):
        """
        Initialize the verification system.

        Args:
            config: The validated sweep configuration
            cache: Reduction cache; by default one is opened at ``config.cache_path``
        """
        self.config = config
        self.cache = cache if cache is not None else ReductionCache(config.cache_path)
        self.checks: Dict[str, BaseCheck] = {}
        logger.info(f"Initializing verification system for {config.cartan_type} ({config.lattice})")

        for name in config.checks:
            check = CHECKS[name](config, cache=self.cache)
            check.initialize()
            self.checks[name] = check

    def elements(self) -> List[ExtAffineElement]:
        """All elements of length at most ``max_length``, sorted by (length, key)."""
        group = get_context(self.config, None, self.cache).group
        return group.elements_up_to(self.config.max_length, self.config.omega_radius)

    def check_elements(self, elements: Sequence[ExtAffineElement]) -> Dict[str, CheckOutcome]:
        """Run every selected check on the given elements in this process."""
        report = VerificationReport(self.config)
        for x in elements:
            for name, check in self.checks.items():
                logger.debug(f"Running {name} on {check.ambient.group.describe(x)}")
                report.merge(name, check.check_element(x))
        return report.outcomes

    def run(self) -> VerificationReport:
        """
        Run the sweep.

        Returns:
            The aggregated report
        """
        start = time.perf_counter()
        elements = self.elements()
        enumerated = time.perf_counter()
        logger.info(f"Sweeping {len(elements)} elements with checks {', '.join(self.checks)}")

        report = VerificationReport(self.config, elements_swept=len(elements))
        for name in self.checks:
            report.outcomes[name] = CheckOutcome()

        if self.config.workers > 1 and len(elements) > 1:
            self._run_parallel(elements, report)
        else:
            for name, outcome in self.check_elements(elements).items():
                report.merge(name, outcome)

        self.cache.flush()
        report.cache_stats = self.cache.stats()
        finished = time.perf_counter()
        report.timing = {
            "enumeration_seconds": round(enumerated - start, 3),
            "checks_seconds": round(finished - enumerated, 3),
        }
        logger.info(f"Sweep finished: {len(report.counterexamples)} counterexamples "
                    f"in {finished - start:.1f}s")
        return report

    def _run_parallel(self, elements: List[ExtAffineElement], report: VerificationReport) -> None:
        workers = self.config.workers
        shards = [elements[i::workers] for i in range(workers)]
        shards = [shard for shard in shards if shard]
        logger.info(f"Distributing the sweep over {len(shards)} worker processes")

        hits = misses = 0
        with ProcessPoolExecutor(max_workers=len(shards)) as executor:
            futures = [executor.submit(_run_shard, self.config, shard) for shard in shards]
            for future in futures:
                outcomes, lines, stats = future.result()
                for name, outcome in outcomes.items():
                    report.merge(name, outcome)
                added = self.cache.merge(lines)
                hits += stats["hits"]
                misses += stats["misses"]
                logger.debug(f"Merged {added} new reduction records from a worker shard")
        self.cache.hits += hits
        self.cache.misses += misses


def run_check(config: SweepConfig, name: str) -> VerificationReport:
    """Run a single check over the sweep described by config."""
    return VerificationSystem(replace(config, checks=(name,))).run()


def verify_theorem1(config: SweepConfig) -> VerificationReport:
    return run_check(config, "theorem1")


def verify_corollary(config: SweepConfig) -> VerificationReport:
    return run_check(config, "corollary")


def verify_lim(config: SweepConfig) -> VerificationReport:
    """
    Raises:
        ConfigurationError: If the Dynkin diagram is not σ-connected
    """
    return run_check(config, "lim")


def verify_classpoly_correspondence(config: SweepConfig) -> VerificationReport:
    return run_check(config, "classpoly")
