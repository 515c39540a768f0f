"""
Tests for element literals and the JSON encodings
"""

from fractions import Fraction

import pytest

from weylstrata.errors import ElementError
from weylstrata.tests.conftest import element
from weylstrata.utils.serialization import (
    class_from_dict,
    class_label,
    class_to_dict,
    element_to_dict,
    omega_table,
    parse_element,
    parse_rational,
    polynomial_to_str,
    rational_to_str,
    record_from_json,
    record_to_json,
    root_label,
)


class TestElementLiterals:
    """Tests for parse_element and element_to_dict."""

    def test_json_literal(self, a1):
        x = parse_element(a1.group, '{"lambda": [-2], "u": ["s"]}')
        assert x == element(a1, (-2,), [0])
        assert element_to_dict(a1.group, x) == {"lambda": [-2], "u": ["s1"]}

    def test_bare_letters(self, a1, a2):
        assert parse_element(a1.group, '{"lambda":[-2],"u":[s]}') == element(a1, (-2,), [0])
        x = parse_element(a2.group, '{"lambda": [1, 0], "u": [s1, s2]}')
        assert x == element(a2, (1, 0), [0, 1])

    def test_dict_literal_and_identity(self, a2):
        assert parse_element(a2.group, {"lambda": [0, 0]}) == a2.group.identity
        assert parse_element(a2.group, {"u": "e"}) == a2.group.identity

    def test_permutation_literal(self, gl2):
        x = parse_element(gl2.group, '{"lambda": [1, 0], "u": [2, 1]}')
        assert x == element(gl2, (1, 0), [0])
        assert parse_element(gl2.group, '{"lambda": [0, 3], "u": [1, 2]}') == element(gl2, (0, 3))

    def test_word_literal(self, a1):
        """Test that the affine word [0, 1, 0] spells t^(-2α∨)·s."""
        x = parse_element(a1.group, '{"word": [0, 1, 0]}')
        assert x == element(a1, (-2,), [0])

    def test_omega_literal(self, a1_ad):
        omegas = omega_table(a1_ad.group)
        assert omegas[0] == a1_ad.group.identity
        assert len(omegas) == 2
        tau = parse_element(a1_ad.group, {"lambda": [0], "omega": 1})
        assert tau == element(a1_ad, (-1,), [0])
        assert a1_ad.group.length(tau) == 0

    @pytest.mark.parametrize("literal", [
        "[1, 2]",
        "{lambda: ",
        '{"lambda": [0.5]}',
        '{"lambda": [0], "u": ["s2"]}',
        '{"lambda": [0], "u": ["r1"]}',
        '{"lambda": [0], "u": [1]}',
        '{"lambda": [0], "omega": 3}',
        '{"word": ["s1"]}',
    ])
    def test_malformed_literals(self, a1, literal):
        with pytest.raises(ElementError):
            parse_element(a1.group, literal)

    def test_bad_permutation(self, gl2):
        with pytest.raises(ElementError):
            parse_element(gl2.group, '{"lambda": [0, 0], "u": [1, 1]}')


class TestEncodings:
    """Tests for rationals, classes, polynomials and reduction records."""

    def test_rationals(self):
        assert rational_to_str(Fraction(1, 2)) == "1/2"
        assert rational_to_str(Fraction(-4, 2)) == "-2"
        assert parse_rational("-3/6") == Fraction(-1, 2)
        with pytest.raises(ElementError):
            parse_rational("one half")

    def test_class_dict(self, a1xa1_swap):
        c = a1xa1_swap.classifier.class_of(element(a1xa1_swap, (1, 0)))
        data = class_to_dict(c)
        assert data["nu"] == ["1/2", "1/2"]
        assert data["scope"] == [0, 1]
        assert class_from_dict(data) == c
        assert class_label(c).startswith("nu=(1/2,1/2) kappa=(")

    def test_polynomials(self):
        assert polynomial_to_str((0, 1)) == "q"
        assert polynomial_to_str((-1, 1)) == "q - 1"
        assert polynomial_to_str((1,)) == "1"
        assert polynomial_to_str(()) == "0"

    def test_record_json(self, a1):
        record = a1.engine.record(element(a1, (-2,), [0]))
        line = record_to_json("A1|J=0", record)
        assert "\n" not in line
        namespace, decoded = record_from_json(line)
        assert namespace == "A1|J=0"
        assert decoded == record
        assert record_to_json(namespace, decoded) == line

    def test_root_labels(self, a1, a2, c2):
        assert root_label(a1.datum, 0) == "α1"
        assert root_label(a1.datum, a1.datum.num_positive) == "-α1"
        labels = {root_label(a2.datum, k) for k in range(a2.datum.num_positive)}
        assert labels == {"α1", "α2", "α1+α2"}
        highest = max(range(c2.datum.num_positive), key=lambda k: sum(c2.datum.root_coefficients[k]))
        assert "2α" in root_label(c2.datum, highest)
