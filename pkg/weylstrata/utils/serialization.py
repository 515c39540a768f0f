"""
JSON encoding of elements, classes and reduction records

Rationals are written as "p/q" strings (plain "p" when integral) so that
exactness survives serialization.
"""

import json
import logging
import re
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple, Union

import sympy

from weylstrata.algebra.affine_weyl import AffineWeylGroup, ElementKey, ExtAffineElement
from weylstrata.algebra.dl_reduction import ReductionRecord, q
from weylstrata.algebra.newton_kottwitz import KottwitzPoint, NewtonPoint, SigmaClass
from weylstrata.algebra.root_datum import RootDatum
from weylstrata.errors import ElementError

logger = logging.getLogger(__name__)

_BARE_LETTER = re.compile(r'(?<![\w"])(s\d*|e)(?![\w"])')


def rational_to_str(value: Union[int, Fraction]) -> str:
    return str(Fraction(value))


def parse_rational(text: Union[str, int]) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ElementError(f"Not a rational number: {text!r}") from e


def class_to_dict(c: SigmaClass) -> Dict[str, Any]:
    return {
        "nu": [rational_to_str(x) for x in c.nu],
        "kappa": list(c.kappa.values),
        "moduli": list(c.kappa.moduli),
        "scope": list(c.scope),
    }


def class_from_dict(data: Dict[str, Any]) -> SigmaClass:
    return SigmaClass(
        KottwitzPoint(tuple(int(v) for v in data["kappa"]), tuple(int(m) for m in data["moduli"])),
        NewtonPoint(tuple(parse_rational(x) for x in data["nu"])),
        tuple(int(j) for j in data["scope"]),
    )


def class_label(c: SigmaClass) -> str:
    """Compact text form, e.g. ``nu=(1/2,1/2) kappa=(1)``."""
    nu = ",".join(rational_to_str(x) for x in c.nu)
    kappa = ",".join(str(v) for v in c.kappa.values)
    return f"nu=({nu}) kappa=({kappa})"


def root_label(datum: RootDatum, root_index: int) -> str:
    """A root in simple root coordinates, e.g. ``α1+2α2`` or ``-α1``."""
    terms = []
    for i, c in enumerate(datum.root_coefficients[root_index]):
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if terms else "")
        magnitude = "" if abs(c) == 1 else str(abs(c))
        terms.append(f"{sign}{magnitude}α{i + 1}")
    return "".join(terms)


def polynomial_to_str(coefficients: Sequence[int]) -> str:
    expression = sum(c * q ** k for k, c in enumerate(coefficients))
    return str(sympy.expand(expression))


def key_to_json(key: ElementKey) -> List[List[int]]:
    return [list(key[0]), list(key[1])]


def key_from_json(data: Sequence[Sequence[int]]) -> ElementKey:
    return (tuple(int(x) for x in data[0]), tuple(int(x) for x in data[1]))


def element_to_dict(group: AffineWeylGroup, x: ExtAffineElement) -> Dict[str, Any]:
    """Canonical form: λ and a reduced word of u."""
    word = group.datum.reduced_word(x.finite)
    return {"lambda": list(x.translation), "u": [f"s{i + 1}" for i in word]}


def _finite_from_letters(group: AffineWeylGroup, letters: Sequence[Any]):
    datum = group.datum
    if all(isinstance(letter, int) for letter in letters) and letters:
        return _finite_from_permutation(group, letters)
    word = []
    for letter in letters:
        if not isinstance(letter, str):
            raise ElementError(f"Mixed finite part literal: {letters!r}")
        letter = letter.strip()
        if letter in ("e", "1"):
            continue
        if letter == "s" and datum.semisimple_rank == 1:
            word.append(0)
            continue
        if not letter.startswith("s") or not letter[1:].isdigit():
            raise ElementError(f"Unknown simple reflection: {letter!r}")
        index = int(letter[1:]) - 1
        if not 0 <= index < datum.semisimple_rank:
            raise ElementError(f"Simple reflection out of range: {letter!r}")
        word.append(index)
    return datum.from_word(word)


def _finite_from_permutation(group: AffineWeylGroup, permutation: Sequence[int]):
    """One-line permutation u(e_i) = e_{permutation[i]} for the gl lattice of a type A datum."""
    datum = group.datum
    if datum.lattice != "gl" or len(datum.factors) != 1:
        raise ElementError("Permutation literals need a single type A factor with the gl lattice")
    r = datum.lattice_rank
    if sorted(permutation) != list(range(1, r + 1)):
        raise ElementError(f"Not a permutation of 1..{r}: {list(permutation)}")
    matrix = tuple(tuple(1 if permutation[j] - 1 == i else 0 for j in range(r)) for i in range(r))
    for u in datum.weyl_elements():
        if u.matrix == matrix:
            return u
    raise ElementError(f"Permutation {list(permutation)} is not a Weyl group element")


def parse_element(group: AffineWeylGroup, literal: Union[str, Dict[str, Any]]) -> ExtAffineElement:
    """
    Parse an element literal.

    Accepted forms:
        {"lambda": [...], "u": ["s1", "s2"]}  x = t^λ·u (``"s"`` in rank one,
            integers for a one-line permutation on the gl lattice)
        {"lambda": [...], "word": [labels], "omega": i}  x = t^λ·ω_i·s_{w1}⋯s_{wk},
            ω_i the i-th length-zero representative with trivial free part

    Raises:
        ElementError: For malformed literals
    """
    if isinstance(literal, str):
        try:
            literal = json.loads(literal)
        except json.JSONDecodeError:
            literal = _loads_with_bare_letters(literal)
    if not isinstance(literal, dict):
        raise ElementError("Element literal must be a JSON object")

    translation = literal.get("lambda", [0] * group.datum.lattice_rank)
    if not isinstance(translation, list) or not all(isinstance(v, int) for v in translation):
        raise ElementError(f"'lambda' must be a list of integers: {translation!r}")
    base = group.element(translation)

    if "word" in literal or "omega" in literal:
        omegas = omega_table(group)
        index = literal.get("omega", 0)
        if not isinstance(index, int) or not 0 <= index < len(omegas):
            raise ElementError(f"'omega' must be an index below {len(omegas)}")
        word = literal.get("word", [])
        if not isinstance(word, list) or not all(isinstance(v, int) for v in word):
            raise ElementError(f"'word' must be a list of affine labels: {word!r}")
        return group.compose(base, group.from_word(word, omegas[index]))

    letters = literal.get("u", [])
    if isinstance(letters, str):
        letters = [letters]
    finite = _finite_from_letters(group, letters)
    return group.compose(base, group.element(group.identity.translation, finite))


def _loads_with_bare_letters(text: str) -> Any:
    """Accept unquoted reflection letters such as [s] or [s1,s2]."""
    quoted = _BARE_LETTER.sub(r'"\1"', text)
    try:
        return json.loads(quoted)
    except json.JSONDecodeError as e:
        raise ElementError(f"Element literal is not valid JSON: {e}") from e


def omega_table(group: AffineWeylGroup) -> List[ExtAffineElement]:
    """Length-zero representatives with trivial free part, identity first."""
    omegas = group.omega_representatives(radius=0)
    return sorted(omegas, key=lambda w: (w != group.identity, w.key))


def record_to_json(namespace: str, record: ReductionRecord) -> str:
    """One JSON-lines entry for the reduction cache."""
    data = {
        "namespace": namespace,
        "key": key_to_json(record.key),
        "length": record.length,
        "pivot": record.pivot,
        "leaves": [class_to_dict(c) for c in sorted(record.polynomials)],
        "polys": [list(record.polynomials[c]) for c in sorted(record.polynomials)],
        "dims": [[class_to_dict(c), d] for c, d in sorted(record.dimensions.items())],
    }
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def record_from_json(line: str) -> Tuple[str, ReductionRecord]:
    data = json.loads(line)
    classes = [class_from_dict(c) for c in data["leaves"]]
    polynomials = {c: tuple(int(v) for v in coefficients) for c, coefficients in zip(classes, data["polys"])}
    dimensions = {class_from_dict(c): int(d) for c, d in data["dims"]}
    record = ReductionRecord(key_from_json(data["key"]), int(data["length"]), polynomials, dimensions,
                             data.get("pivot"))
    return data["namespace"], record
