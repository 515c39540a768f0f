"""
The extended affine Weyl group X_* ⋊ W with a Frobenius action

Elements are written x = t^λ·u and act on X_*⊗R by v ↦ λ + u·v. The base
alcove is the antidominant one: every positive root takes values in (-1, 0)
on it, and the affine simple reflection of a component with highest root θ
is s_0 = t^{-θ∨}s_θ.

An AffineWeylGroup may be built for a Levi scope J; it is then the group
X_* ⋊ W_J with the affine simple system of Φ_J and the same lattice.
"""

import itertools
import logging
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from sympy.matrices.normalforms import smith_normal_decomp

from weylstrata.algebra.root_datum import (
    DiagramAutomorphism,
    FiniteWeylElement,
    IntVector,
    LeviDatum,
    RootDatum,
)
from weylstrata.errors import ElementError, RootDatumError

logger = logging.getLogger(__name__)

ElementKey = Tuple[IntVector, Tuple[int, ...]]


@dataclass(frozen=True, eq=False)
class ExtAffineElement:
    """x = t^λ·u, compared and hashed by its canonical key (λ, key of u)."""

    translation: IntVector
    finite: FiniteWeylElement

    @property
    def key(self) -> ElementKey:
        return (self.translation, self.finite.key)

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtAffineElement) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: "ExtAffineElement") -> bool:
        return self.key < other.key


@dataclass(frozen=True, order=True)
class AffineRoot:
    """The affine function v ↦ <v, β> + level for the indexed finite root β."""

    root: int
    level: int


class AffineWeylGroup:
    """
    Extended affine Weyl group of a Levi scope of a root datum, with Frobenius σ.

    The affine simple reflections are labelled by integers: the finite simple
    reflection s_i carries label i + 1, the affine reflection of the first
    irreducible component carries label 0 and those of further components
    carry -1, -2, ...
    """

    def __init__(self, datum: RootDatum, J: Optional[Sequence[int]] = None,
                 sigma: Optional[DiagramAutomorphism] = None):
        self.datum = datum
        self.levi: LeviDatum = datum.levi(datum.simple_indices if J is None else J)
        self.sigma = sigma if sigma is not None else datum.diagram_automorphism()
        if self.sigma.permute_nodes(self.levi.simple) != self.levi.J:
            raise RootDatumError(f"σ does not stabilize J={list(self.levi.simple)}")

        self._identity = ExtAffineElement(tuple([0] * datum.lattice_rank), datum.identity)
        self._v0_pairing = self._base_point_pairings()
        self.simple_affine: Dict[int, ExtAffineElement] = self._affine_simple_reflections()
        self.labels: Tuple[int, ...] = tuple(sorted(self.simple_affine))
        self._label_of_key = {s.key: label for label, s in self.simple_affine.items()}
        self._component_of_label = self._label_components()
        logger.debug(f"Affine Weyl group on {datum.signature}, J={list(self.levi.simple)}, "
                     f"S_aff labels {list(self.labels)}")

    # construction helpers

    def _base_point_pairings(self) -> Dict[int, Fraction]:
        """<v0, γ> for every root γ of the scope, v0 an interior point of the base alcove."""
        datum = self.datum
        J = self.levi.simple
        if not J:
            return {}
        target = []
        for i in J:
            component = next(c for c, comp in enumerate(self.levi.components) if i in comp)
            coxeter = datum.height(self.levi.highest_roots[component]) + 1
            target.append(Fraction(-1, coxeter))
        coefficients = datum.cartan_inverse(J) * sympy.Matrix(target)
        v0 = [Fraction(0)] * datum.lattice_rank
        for c, i in zip(coefficients, J):
            c = Fraction(int(c.p), int(c.q))
            for k in range(datum.lattice_rank):
                v0[k] += c * datum.simple_coroots[i][k]
        pairings = {}
        for k in self.levi.positive_root_indices:
            p = datum.pair(v0, datum.roots[k])
            pairings[k] = p
            pairings[datum.negate(k)] = -p
        return pairings

    def _affine_simple_reflections(self) -> Dict[int, ExtAffineElement]:
        datum = self.datum
        reflections = {}
        for i in self.levi.simple:
            reflections[i + 1] = ExtAffineElement(self._identity.translation, datum.simple_reflection(i))
        for c, theta in enumerate(self.levi.highest_roots):
            coroot = datum.coroots[theta]
            reflections[-c] = ExtAffineElement(tuple(-x for x in coroot), datum.reflection(theta))
        return reflections

    def _label_components(self) -> Dict[int, int]:
        components = {}
        for c, comp in enumerate(self.levi.components):
            components[-c] = c
            for i in comp:
                components[i + 1] = c
        return components

    # group structure

    @property
    def identity(self) -> ExtAffineElement:
        return self._identity

    @property
    def scope(self) -> Tuple[int, ...]:
        return self.levi.simple

    def element(self, translation: Sequence[int], finite: Optional[FiniteWeylElement] = None) -> ExtAffineElement:
        """
        Build t^λ·u.

        Raises:
            ElementError: If λ does not live in the lattice or u lies outside W_J
        """
        if len(translation) != self.datum.lattice_rank:
            raise ElementError(f"Translation {list(translation)} does not live in rank {self.datum.lattice_rank}")
        finite = self.datum.identity if finite is None else finite
        if not self.levi.is_ambient and not self.datum.in_parabolic(finite, self.levi.simple):
            raise ElementError(f"Finite part is not in W_J for J={list(self.levi.simple)}")
        return ExtAffineElement(tuple(int(x) for x in translation), finite)

    def translation(self, translation: Sequence[int]) -> ExtAffineElement:
        return self.element(translation)

    def compose(self, x: ExtAffineElement, y: ExtAffineElement) -> ExtAffineElement:
        """(t^λ u)(t^μ v) = t^{λ + uμ} uv."""
        datum = self.datum
        moved = datum.weyl_action(x.finite, y.translation)
        return ExtAffineElement(
            tuple(a + b for a, b in zip(x.translation, moved)),
            datum.multiply(x.finite, y.finite),
        )

    def multiply(self, *elements: ExtAffineElement) -> ExtAffineElement:
        result = self._identity
        for x in elements:
            result = self.compose(result, x)
        return result

    def invert(self, x: ExtAffineElement) -> ExtAffineElement:
        """(t^λ u)⁻¹ = t^{-u⁻¹λ} u⁻¹."""
        inverse = self.datum.inverse(x.finite)
        moved = self.datum.weyl_action(inverse, x.translation)
        return ExtAffineElement(tuple(-a for a in moved), inverse)

    def frobenius(self, x: ExtAffineElement, power: int = 1) -> ExtAffineElement:
        """σ^power(t^λ u) = t^{δλ}·δuδ⁻¹ iterated."""
        if self.sigma.is_identity:
            return x
        for _ in range(power % self.sigma.order):
            x = ExtAffineElement(self.sigma.apply(x.translation), self.datum.conjugate(self.sigma, x.finite))
        return x

    def sigma_conjugate(self, y: ExtAffineElement, x: ExtAffineElement) -> ExtAffineElement:
        """y·x·σ(y)⁻¹."""
        return self.multiply(y, x, self.invert(self.frobenius(y)))

    # length

    def length(self, x: ExtAffineElement) -> int:
        """
        Number of affine root hyperplanes separating the base alcove from x·(base alcove).

        For a positive root β the hyperplanes <v, β> = k crossed between v0 and
        x·v0 are counted from the floors of both values.
        """
        datum = self.datum
        inverse = datum.inverse(x.finite)
        total = 0
        for k in self.levi.positive_root_indices:
            beta = datum.roots[k]
            moved = datum.pair(x.translation, beta) + self._v0_pairing[inverse.root_permutation[k]]
            total += abs(math.floor(moved) - math.floor(self._v0_pairing[k]))
        return total

    def closed_form_length(self, x: ExtAffineElement) -> int:
        """Σ_{β>0, u⁻¹β>0} |<λ,β>| + Σ_{β>0, u⁻¹β<0} |<λ,β> + 1|."""
        datum = self.datum
        inverse = datum.inverse(x.finite)
        total = 0
        for k in self.levi.positive_root_indices:
            p = datum.pair(x.translation, datum.roots[k])
            if datum.is_positive(inverse.root_permutation[k]):
                total += abs(p)
            else:
                total += abs(p + 1)
        return total

    def is_length_zero(self, x: ExtAffineElement) -> bool:
        return self.length(x) == 0

    def reflection(self, label: int) -> ExtAffineElement:
        return self.simple_affine[label]

    def label_of(self, s: ExtAffineElement) -> Optional[int]:
        return self._label_of_key.get(s.key)

    def component_of_label(self, label: int) -> int:
        return self._component_of_label[label]

    # words

    def omega_word(self, x: ExtAffineElement, side: str = "left") -> Tuple[ExtAffineElement, List[int]]:
        """
        Decompose x = ω·s_{i_1}⋯s_{i_ℓ} with ω of length zero and a reduced word.

        Args:
            x: The element
            side: ``left`` peels off left descents (smallest label first) and then
                moves ω to the front; ``right`` peels off right descents

        Returns:
            (ω, word of S_aff labels)
        """
        current = x
        length = self.length(x)
        peeled: List[int] = []
        while length > 0:
            for label in self.labels:
                s = self.simple_affine[label]
                candidate = self.compose(s, current) if side == "left" else self.compose(current, s)
                candidate_length = self.length(candidate)
                if candidate_length < length:
                    peeled.append(label)
                    current, length = candidate, candidate_length
                    break
            else:
                raise ElementError(f"No descent found for an element of length {length}")
        if side == "right":
            return current, list(reversed(peeled))
        # x = s_{a1}⋯s_{ak}·ω = ω·(ω⁻¹ s_{a1} ω)⋯(ω⁻¹ s_{ak} ω)
        omega_inverse = self.invert(current)
        word = [self.omega_conjugate_label(omega_inverse, label) for label in peeled]
        return current, word

    def from_word(self, word: Sequence[int], omega: Optional[ExtAffineElement] = None) -> ExtAffineElement:
        """ω·s_{i_1}⋯s_{i_k}."""
        result = self._identity if omega is None else omega
        for label in word:
            if label not in self.simple_affine:
                raise ElementError(f"Unknown affine simple reflection label: {label}")
            result = self.compose(result, self.simple_affine[label])
        return result

    def omega_conjugate_label(self, omega: ExtAffineElement, label: int) -> int:
        """The label of ω·s·ω⁻¹ for a length-zero ω."""
        image = self.multiply(omega, self.simple_affine[label], self.invert(omega))
        result = self._label_of_key.get(image.key)
        if result is None:
            raise ElementError("Conjugation by a length-zero element left S_aff")
        return result

    def sigma_label(self, label: int) -> int:
        """The label of σ(s)."""
        return self._label_of_key[self.frobenius(self.simple_affine[label]).key]

    # affine roots

    def affine_root_action(self, x: ExtAffineElement, a: AffineRoot) -> AffineRoot:
        """x·(γ, k) = (uγ, k - <λ, uγ>), the transport of affine functions under x."""
        image = x.finite.root_permutation[a.root]
        return AffineRoot(image, a.level - self.datum.pair(x.translation, self.datum.roots[image]))

    def iwahori_level(self, root_index: int) -> int:
        """Smallest level k with (β, k) nonnegative on the base alcove: 1 for β > 0, else 0."""
        if not 0 <= root_index < 2 * self.datum.num_positive:
            raise ElementError(f"Not a root index: {root_index}")
        return 1 if self.datum.is_positive(root_index) else 0

    def is_nonnegative_on_base(self, a: AffineRoot) -> bool:
        return a.level >= self.iwahori_level(a.root)

    # Ω and enumeration

    def omega_part(self, x: ExtAffineElement) -> ExtAffineElement:
        return self.omega_word(x)[0]

    def omega_representatives(self, radius: int = 1) -> List[ExtAffineElement]:
        """
        Length-zero elements, one per class of X_*/ZΦ_J∨ with free part bounded by ``radius``.
        """
        datum = self.datum
        r = datum.lattice_rank
        J = self.levi.simple
        if J:
            relations = sympy.Matrix([[datum.simple_coroots[j][k] for j in J] for k in range(r)])
            diagonal, left, _ = smith_normal_decomp(relations, domain=sympy.ZZ)
            left_inverse = left.inv()
            moduli = [abs(int(diagonal[i, i])) if i < min(diagonal.shape) else 0 for i in range(r)]
        else:
            left_inverse = sympy.eye(r)
            moduli = [0] * r
        ranges = [range(d) if d else range(-radius, radius + 1) for d in moduli]
        seen: Dict[ElementKey, ExtAffineElement] = {}
        for coordinates in itertools.product(*ranges):
            translation = left_inverse * sympy.Matrix(coordinates)
            omega = self.omega_part(self.translation([int(v) for v in translation]))
            seen.setdefault(omega.key, omega)
        return sorted(seen.values())

    def elements_up_to(self, max_length: int, radius: int = 1) -> List[ExtAffineElement]:
        """All ω·w with ω among the Ω representatives and ℓ(w) <= max_length, sorted by (length, key)."""
        lengths: Dict[ElementKey, int] = {}
        elements: Dict[ElementKey, ExtAffineElement] = {}
        queue = deque()
        for omega in self.omega_representatives(radius):
            lengths[omega.key] = 0
            elements[omega.key] = omega
            queue.append(omega)
        while queue:
            x = queue.popleft()
            length = lengths[x.key]
            if length >= max_length:
                continue
            for label in self.labels:
                y = self.compose(x, self.simple_affine[label])
                if y.key in lengths:
                    continue
                if self.length(y) == length + 1:
                    lengths[y.key] = length + 1
                    elements[y.key] = y
                    queue.append(y)
        logger.debug(f"Enumerated {len(elements)} elements up to length {max_length}")
        return sorted(elements.values(), key=lambda x: (lengths[x.key], x.key))

    def describe(self, x: ExtAffineElement) -> str:
        word = self.datum.reduced_word(x.finite)
        u = "*".join(f"s{i + 1}" for i in word) or "e"
        return f"t^{list(x.translation)}·{u}"

