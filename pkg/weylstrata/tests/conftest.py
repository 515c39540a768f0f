"""
Configuration for pytest
"""

import logging
import os
import sys

import pytest

# Add the parent directory to the path so we can import weylstrata modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..')))

from weylstrata.core.configuration import SweepConfig  # noqa: E402
from weylstrata.core.service_registry import EngineRegistry, get_context  # noqa: E402

# Configure logging for tests
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)

# The eight reference data of the sweeps
DATA = {
    "A1_sc": SweepConfig(cartan_type="A1", lattice="sc"),
    "A1_ad": SweepConfig(cartan_type="A1", lattice="ad"),
    "GL2": SweepConfig(cartan_type="A1", lattice="gl"),
    "A1xA1_swap": SweepConfig(cartan_type="A1xA1", lattice="sc", sigma=(2, 1)),
    "A2_sc": SweepConfig(cartan_type="A2", lattice="sc"),
    "A2_flip": SweepConfig(cartan_type="A2", lattice="sc", sigma=(2, 1)),
    "C2": SweepConfig(cartan_type="C2", lattice="sc"),
    "G2": SweepConfig(cartan_type="G2", lattice="sc"),
}

# Sweep lengths that keep the suite fast
SWEEP_LENGTH = {
    "A1_sc": 5, "A1_ad": 5, "GL2": 4, "A1xA1_swap": 3,
    "A2_sc": 3, "A2_flip": 3, "C2": 3, "G2": 3,
}


@pytest.fixture(autouse=True)
def reset_registry():
    """Give every test a fresh engine registry."""
    EngineRegistry._instance = None
    yield
    EngineRegistry._instance = None


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Keep the saved configuration out of the user's home directory."""
    config_dir = tmp_path / "weylstrata-home"
    monkeypatch.setattr("weylstrata.core.configuration.CONFIG_DIR", str(config_dir))
    monkeypatch.setattr("weylstrata.core.configuration.CONFIG_FILE", str(config_dir / "config.json"))
    return config_dir


@pytest.fixture(params=sorted(DATA))
def datum_name(request):
    """Name of each reference datum in turn."""
    return request.param


@pytest.fixture
def context(datum_name):
    """The ambient engines of the parametrized datum."""
    return get_context(DATA[datum_name])


@pytest.fixture
def a1():
    """A1 with the simply connected lattice X_* = Zα∨."""
    return get_context(DATA["A1_sc"])


@pytest.fixture
def a1_ad():
    return get_context(DATA["A1_ad"])


@pytest.fixture
def gl2():
    """A1 on the lattice Z² of GL2."""
    return get_context(DATA["GL2"])


@pytest.fixture
def a2():
    return get_context(DATA["A2_sc"])


@pytest.fixture
def a2_flip():
    return get_context(DATA["A2_flip"])


@pytest.fixture
def a1xa1_swap():
    return get_context(DATA["A1xA1_swap"])


@pytest.fixture
def c2():
    return get_context(DATA["C2"])


def element(context, translation, word=()):
    """t^λ·s_{i1}⋯s_{ik} with a finite word of 0-based simple indices."""
    datum = context.datum
    return context.group.element(translation, datum.from_word(list(word)))
