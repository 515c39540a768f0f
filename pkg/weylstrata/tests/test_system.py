"""
Tests for the verification system
"""

from concurrent.futures import Future
from dataclasses import replace
from unittest.mock import patch

import pytest

from weylstrata.checks.base_check import CheckOutcome
from weylstrata.core.configuration import SweepConfig
from weylstrata.core.service_registry import clear_registry
from weylstrata.core.system import (
    VerificationReport,
    VerificationSystem,
    verify_classpoly_correspondence,
    verify_corollary,
    verify_lim,
    verify_theorem1,
)
from weylstrata.errors import ConfigurationError
from weylstrata.tests.conftest import DATA


class InlineExecutor:
    """Runs submitted work in the calling process."""

    submitted = 0

    def __init__(self, max_workers=None):
        self.max_workers = max_workers

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False

    def submit(self, fn, *args):
        InlineExecutor.submitted += 1
        future = Future()
        future.set_result(fn(*args))
        return future


@pytest.fixture
def a1_sweep():
    return SweepConfig(cartan_type="A1", lattice="sc", max_length=3)


class TestVerificationSystem:
    """Tests for the VerificationSystem class."""

    def test_initialization(self, a1_sweep):
        system = VerificationSystem(a1_sweep)
        assert list(system.checks) == ["theorem1", "corollary", "lim", "classpoly"]
        assert len(system.elements()) == 7

    def test_a1_sweep_passes(self, a1_sweep):
        report = VerificationSystem(a1_sweep).run()
        assert report.passed
        assert report.elements_swept == 7
        data = report.to_dict()
        assert [c["name"] for c in data["checks"]] == ["classpoly", "corollary", "lim", "theorem1"]
        assert all(c["pass"] for c in data["checks"])
        assert set(data["timing"]) == {"enumeration_seconds", "checks_seconds"}
        assert data["cache_stats"]["stored"] > 0

    def test_selected_checks(self):
        config = SweepConfig(cartan_type="A2", sigma=(2, 1), max_length=1, checks=("lim",))
        report = VerificationSystem(config).run()
        assert list(report.outcomes) == ["lim"]
        assert report.passed

    def test_report_is_deterministic(self, a1_sweep):
        first = VerificationSystem(a1_sweep).run().to_dict(include_runtime=False)
        clear_registry()
        second = VerificationSystem(a1_sweep).run().to_dict(include_runtime=False)
        assert first == second
        assert "timing" not in first

    def test_warm_cache(self, tmp_path):
        """Test that a second sweep over the same cache file reuses the stored records."""
        config = SweepConfig(cartan_type="A1", lattice="gl", max_length=2,
                             cache_path=str(tmp_path / "reductions.jsonl"))
        cold = VerificationSystem(config).run()
        assert cold.cache_stats["hits"] == 0
        clear_registry()
        warm = VerificationSystem(config).run()
        assert warm.cache_stats["loaded"] == cold.cache_stats["stored"]
        assert warm.cache_stats["hits"] > 0
        assert warm.to_dict(include_runtime=False) == cold.to_dict(include_runtime=False)

    def test_parallel_matches_serial(self, a1_sweep):
        serial = VerificationSystem(a1_sweep).run().to_dict(include_runtime=False)
        clear_registry()
        config = SweepConfig(cartan_type="A1", lattice="sc", max_length=3, workers=3)
        InlineExecutor.submitted = 0
        with patch("weylstrata.core.system.ProcessPoolExecutor", InlineExecutor):
            report = VerificationSystem(config).run()
        assert InlineExecutor.submitted == 3
        parallel = report.to_dict(include_runtime=False)
        assert parallel["checks"] == serial["checks"]
        assert parallel["elements_swept"] == 7
        assert report.cache_stats["stored"] > 0


class TestVerificationReport:
    """Tests for merging and rendering reports."""

    def test_merge(self):
        report = VerificationReport(SweepConfig())
        first = CheckOutcome(counters={"alcove_pairs": 2})
        second = CheckOutcome(counterexamples=[{"check": "lim", "element": {"lambda": [1], "u": []},
                                                "reason": "r"}],
                              counters={"alcove_pairs": 1, "spherical": 1})
        report.merge("lim", first)
        report.merge("lim", second)
        assert report.outcomes["lim"].counters == {"alcove_pairs": 3, "spherical": 1}
        assert not report.passed
        assert len(report.counterexamples) == 1

    def test_counterexamples_are_sorted(self):
        report = VerificationReport(SweepConfig())
        records = [{"check": "lim", "element": {"lambda": [lam], "u": []}, "reason": "r"} for lam in (2, -1, 0)]
        report.merge("lim", CheckOutcome(counterexamples=records))
        ordered = report.to_dict()["checks"][0]["counterexamples"]
        assert [r["element"]["lambda"] for r in ordered] == [[-1], [0], [2]]


class TestSingleCheckRuns:
    """Tests for the per-check entry points."""

    @pytest.mark.parametrize("run, name", [
        (verify_theorem1, "theorem1"),
        (verify_corollary, "corollary"),
        (verify_lim, "lim"),
        (verify_classpoly_correspondence, "classpoly"),
    ])
    def test_gl2_sweep(self, run, name):
        report = run(SweepConfig(cartan_type="A1", lattice="gl", max_length=2))
        assert list(report.outcomes) == [name]
        assert report.passed

    def test_lim_needs_sigma_connected_diagram(self):
        with pytest.raises(ConfigurationError):
            verify_lim(SweepConfig(cartan_type="A1xA1", max_length=1))


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(DATA))
def test_full_sweep_at_length_eight(name):
    """All four checks pass with no counterexamples up to length 8."""
    report = VerificationSystem(replace(DATA[name], max_length=8)).run()
    assert sorted(report.outcomes) == ["classpoly", "corollary", "lim", "theorem1"]
    assert report.passed
