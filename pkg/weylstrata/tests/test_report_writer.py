"""
Tests for the report payloads and writer
"""

import io
import json

import pytest

from weylstrata.core.configuration import SweepConfig
from weylstrata.core.service_registry import get_context
from weylstrata.core.system import VerificationSystem
from weylstrata.tests.conftest import element
from weylstrata.ui.report_writer import (
    ReportWriter,
    alcoves_payload,
    bgx_payload,
    classpoly_payload,
    element_payload,
    verify_payload,
)


class TestPayloads:
    """Tests for the payload builders."""

    def test_element_payload(self, a1):
        payload = element_payload(a1, element(a1, (-2,), [0]))
        assert payload["element"] == {"lambda": [-2], "u": ["s1"]}
        assert payload["length"] == 3
        assert payload["word"] == [0, 1, 0]
        assert payload["nu"] == ["0"]
        assert payload["basic"] is True

    def test_adjoint_moduli(self, a1_ad):
        payload = element_payload(a1_ad, element(a1_ad, (-1,), [0]))
        assert payload["length"] == 0
        assert payload["moduli"] == [2]
        assert payload["word"] == []

    def test_bgx_payload(self, a1):
        payload = bgx_payload(a1, element(a1, (-2,), [0]))
        polys = {row["poly"]: row["dimension"] for row in payload["classes"]}
        assert polys == {"q": 2, "q - 1": 1}
        assert payload["generic"]["nu"] != ["0"]

    def test_bgx_without_dimensions(self):
        context = get_context(SweepConfig(include_dimensions=False))
        payload = bgx_payload(context, element(context, (-2,), [0]))
        assert all("dimension" not in row for row in payload["classes"])

    def test_classpoly_payload(self, a1):
        payload = classpoly_payload(a1, element(a1, (-2,), [0]))
        assert payload["pivot"] == 0
        assert len(payload["leaves"]) == 2
        assert {leaf["length"] for leaf in payload["leaves"]} == {1, 2}

    def test_alcoves_payload(self, gl2):
        payload = alcoves_payload(gl2, element(gl2, (1, 0)))
        assert [(p["J"], p["w"], p["trivial"]) for p in payload["pairs"]] == [([], ["s1"], False), ([1], [], True)]
        assert payload["pairs"][0]["x_tilde"] == {"lambda": [0, 1], "u": []}
        assert all(p["condition_a"] and p["condition_b"] for p in payload["pairs"])
        assert payload["spherical"] is False

    def test_alcoves_payload_all_pairs(self, gl2):
        """Test that failing pairs are listed with the roots that break condition (b)."""
        payload = alcoves_payload(gl2, element(gl2, (1, 0)), all_pairs=True)
        pairs = {(tuple(p["J"]), tuple(p["w"])): p for p in payload["pairs"]}
        assert set(pairs) == {((), ()), ((), ("s1",)), ((1,), ())}
        failing = pairs[((), ())]
        assert failing["alcove"] is False
        assert failing["condition_a"] is True
        assert failing["failing_roots"] == ["α1"]
        assert pairs[((), ("s1",))]["alcove"] is True
        assert pairs[((), ("s1",))]["failing_roots"] == []

    def test_alcoves_payload_failing_condition_a(self, a1):
        payload = alcoves_payload(a1, element(a1, (0,), [0]), all_pairs=True)
        pair = next(p for p in payload["pairs"] if p["J"] == [] and p["w"] == [])
        assert pair["condition_a"] is False
        assert pair["alcove"] is False


class TestReportWriter:
    """Tests for the ReportWriter class."""

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            ReportWriter(io.StringIO(), "xml")

    def test_json_is_sorted(self, a1):
        stream = io.StringIO()
        ReportWriter(stream, "json").write("element", element_payload(a1, a1.group.identity))
        text = stream.getvalue()
        data = json.loads(text)
        assert data["length"] == 0
        assert text.index('"basic"') < text.index('"element"') < text.index('"word"')

    def test_tsv_class_table(self, a1):
        stream = io.StringIO()
        ReportWriter(stream, "tsv").write("bgx", bgx_payload(a1, element(a1, (-2,), [0])))
        lines = stream.getvalue().splitlines()
        assert lines[0] == "element\tnu\tkappa\tpoly\tdimension"
        assert len(lines) == 3
        assert all(line.startswith("t^(-2)·s1\t") for line in lines[1:])

    def test_tsv_alcove_table(self, gl2):
        stream = io.StringIO()
        ReportWriter(stream, "tsv").write("alcoves", alcoves_payload(gl2, element(gl2, (1, 0)), all_pairs=True))
        lines = stream.getvalue().splitlines()
        assert lines[0] == "element\tJ\tw\ttrivial\talcove\tx_tilde\tcondition_a\tfailing_roots"
        assert len(lines) == 4
        assert any(line.endswith("\tα1") for line in lines[1:])

    def test_tsv_verify_table(self):
        report = VerificationSystem(SweepConfig(max_length=1, checks=("lim",))).run()
        stream = io.StringIO()
        ReportWriter(stream, "tsv").write("verify", verify_payload(report))
        lines = stream.getvalue().splitlines()
        assert lines[0] == "check\tpass\tcounterexamples\tcounters"
        assert lines[1].startswith("lim\tTrue\t0\t")
