"""
Tests for the engine registry module
"""

from weylstrata.core.configuration import SweepConfig
from weylstrata.core.service_registry import EngineRegistry, clear_registry, context_name, get_context
from weylstrata.tests.conftest import DATA


class TestEngineRegistry:
    """Tests for the EngineRegistry class."""

    def test_singleton_pattern(self):
        """Test that EngineRegistry implements the singleton pattern."""
        assert EngineRegistry() is EngineRegistry()

    def test_register_and_get(self):
        registry = EngineRegistry()
        registry.register("entry", "instance")
        assert registry.get("entry") == "instance"
        assert registry.get("missing") is None

    def test_has_and_unregister(self):
        registry = EngineRegistry()
        registry.register("entry", "instance")
        assert registry.has("entry") is True
        registry.unregister("entry")
        assert registry.has("entry") is False
        registry.unregister("entry")

    def test_clear_and_get_all(self):
        registry = EngineRegistry()
        registry.register("one", 1)
        registry.register("two", 2)
        entries = registry.get_all()
        assert entries == {"one": 1, "two": 2}
        entries["three"] = 3
        assert not registry.has("three")
        clear_registry()
        assert registry.get_all() == {}


class TestGroupContexts:
    """Tests for context construction and reuse."""

    def test_context_is_reused(self):
        first = get_context(DATA["A2_sc"])
        assert get_context(DATA["A2_sc"]) is first
        assert EngineRegistry().has(context_name(DATA["A2_sc"], (0, 1)))

    def test_ambient_context(self, a2):
        assert a2.scope == (0, 1)
        assert a2.detector is not None
        assert a2.engine.group is a2.group

    def test_levi_context(self, a2):
        levi = get_context(DATA["A2_sc"], [1])
        assert levi is not a2
        assert levi.scope == (1,)
        assert levi.detector is None
        assert get_context(DATA["A2_sc"], (0, 1)) is a2

    def test_options_separate_contexts(self):
        plain = get_context(DATA["A1_sc"])
        other = get_context(SweepConfig(pivot_order="descending"))
        assert plain is not other
        assert other.engine.pivot_order == "descending"

    def test_cache_is_handed_to_engines(self):
        cache = object()
        context = get_context(DATA["GL2"], None, cache)
        assert context.engine.cache is cache
