"""
(J, w, σ)-alcove elements and σ-supports

x is a (J, w, σ)-alcove element when
  (a) x̃ = w⁻¹·x·σ(w) lies in the extended affine Weyl group of the Levi M_J, and
  (b) for every α ∈ Φ⁺∖Φ_J the level filtration of the root subgroup of β = wα
      satisfies U_β ∩ ˣI ⊆ U_β ∩ I.
Condition (b) is evaluated through affine root levels: with x = t^λu it reads
c_I(u⁻¹β) - <λ, β> >= c_I(β), where c_I(γ) is 1 for γ > 0 and 0 otherwise.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from weylstrata.algebra.affine_weyl import AffineRoot, AffineWeylGroup, ExtAffineElement
from weylstrata.algebra.root_datum import FiniteWeylElement
from weylstrata.errors import AlcoveError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlcovePair:
    """A pair (J, w) with σ(J) = J and w ∈ W."""

    J: Tuple[int, ...]
    w: FiniteWeylElement
    normalized: bool = False
    trivial: bool = False

    @property
    def sort_key(self):
        return (len(self.J), self.J, self.w.key)


@dataclass
class AlcoveDiagnostics:
    """Per-condition verdict of an alcove test."""

    condition_a: bool
    failing_roots: List[int] = field(default_factory=list)
    x_tilde: Optional[ExtAffineElement] = None

    @property
    def condition_b(self) -> bool:
        return not self.failing_roots

    @property
    def passed(self) -> bool:
        return self.condition_a and self.condition_b


@dataclass(frozen=True)
class SigmaSupport:
    """Closure of the letters of a reduced word of x under s ↦ σ(ωsω⁻¹)."""

    labels: FrozenSet[int]
    spherical: bool


class AlcoveDetector:
    """
    Detects alcove pairs of elements of an ambient AffineWeylGroup.

    ``power`` replaces σ by σ^power, which is what twisted powers x^{σ,n} need.
    """

    def __init__(self, group: AffineWeylGroup, power: int = 1):
        if not group.levi.is_ambient:
            raise AlcoveError("Alcove detection runs on the ambient group")
        self.group = group
        self.datum = group.datum
        self.power = power
        self._stable_subsets: Optional[List[Tuple[int, ...]]] = None
        self._representatives: Dict[Tuple[int, ...], List[FiniteWeylElement]] = {}

    # σ-stability

    def _sigma_nodes(self, J: Sequence[int]) -> frozenset:
        nodes = frozenset(J)
        for _ in range(self.power % max(self.group.sigma.order, 1)):
            nodes = self.group.sigma.permute_nodes(nodes)
        return nodes

    def is_sigma_stable(self, J: Sequence[int]) -> bool:
        return self._sigma_nodes(J) == frozenset(J)

    def sigma_stable_subsets(self) -> List[Tuple[int, ...]]:
        if self._stable_subsets is None:
            simple = self.datum.simple_indices
            subsets = []
            for size in range(len(simple) + 1):
                for J in itertools.combinations(simple, size):
                    if self.is_sigma_stable(J):
                        subsets.append(J)
            self._stable_subsets = subsets
        return list(self._stable_subsets)

    def coset_representatives(self, J: Sequence[int]) -> List[FiniteWeylElement]:
        """Minimal length representatives of W/W_J."""
        J = tuple(sorted(J))
        if J not in self._representatives:
            self._representatives[J] = [
                w for w in self.datum.weyl_elements() if self.datum.is_min_coset_representative(w, J)
            ]
        return list(self._representatives[J])

    # detection

    def iwahori_level(self, root_index: int) -> int:
        return self.group.iwahori_level(root_index)

    def x_tilde(self, x: ExtAffineElement, w: FiniteWeylElement) -> ExtAffineElement:
        """w⁻¹·x·σ^power(w)."""
        group = self.group
        w_element = group.element(group.identity.translation, w)
        return group.multiply(group.invert(w_element), x, group.frobenius(w_element, self.power))

    def diagnose(self, x: ExtAffineElement, J: Sequence[int], w: FiniteWeylElement) -> AlcoveDiagnostics:
        """
        Evaluate both alcove conditions.

        Raises:
            AlcoveError: If σ(J) ≠ J
        """
        J = tuple(sorted(J))
        if not self.is_sigma_stable(J):
            raise AlcoveError(f"J={list(J)} is not σ-stable")
        datum = self.datum
        x_tilde = self.x_tilde(x, w)
        condition_a = datum.in_parabolic(x_tilde.finite, J)

        levi = datum.levi(J)
        u_inverse = datum.inverse(x.finite)
        failing = []
        for alpha in range(datum.num_positive):
            if levi.contains_root(alpha):
                continue
            beta = w.root_permutation[alpha]
            level = self.iwahori_level(u_inverse.root_permutation[beta]) - datum.pair(x.translation, datum.roots[beta])
            if level < self.iwahori_level(beta):
                failing.append(alpha)
        return AlcoveDiagnostics(condition_a, failing, x_tilde)

    def is_alcove_element(self, x: ExtAffineElement, J: Sequence[int], w: FiniteWeylElement) -> bool:
        return self.diagnose(x, J, w).passed

    def containment_oracle(self, x: ExtAffineElement, J: Sequence[int], w: FiniteWeylElement) -> bool:
        """
        Condition (b) by comparing level sets directly.

        For β = wα the level set of ˣI on U_β is {k : x⁻¹·(β, k) nonnegative on the
        base alcove}; containment in I means its least element is at least c_I(β).
        """
        group = self.group
        datum = self.datum
        levi = datum.levi(J)
        x_inverse = group.invert(x)
        for alpha in range(datum.num_positive):
            if levi.contains_root(alpha):
                continue
            beta = w.root_permutation[alpha]
            bound = abs(datum.pair(x.translation, datum.roots[beta])) + 2
            levels = [k for k in range(-bound, bound + 1)
                      if group.is_nonnegative_on_base(group.affine_root_action(x_inverse, AffineRoot(beta, k)))]
            if not levels or min(levels) < self.iwahori_level(beta):
                return False
        return True

    def translation_criterion(self, mu: Sequence[int], J: Sequence[int], w: FiniteWeylElement) -> bool:
        """For x = t^μ: <w⁻¹μ, α> <= 0 for all α ∈ Φ⁺∖Φ_J."""
        datum = self.datum
        levi = datum.levi(J)
        moved = datum.weyl_action(datum.inverse(w), mu)
        return all(datum.pair(moved, datum.roots[alpha]) <= 0
                   for alpha in range(datum.num_positive) if not levi.contains_root(alpha))

    def normalize_pair(self, x: ExtAffineElement, J: Sequence[int],
                       w: FiniteWeylElement) -> Tuple[AlcovePair, ExtAffineElement]:
        """
        Replace w by the minimal representative of wW_J.

        Raises:
            AlcoveError: If (J, w) is not an alcove pair for x
        """
        if not self.is_alcove_element(x, J, w):
            raise AlcoveError(f"(J={list(J)}, w={list(w.key)}) is not an alcove pair")
        J = tuple(sorted(J))
        w_min = self.datum.min_coset_representative(w, J)
        pair = AlcovePair(J, w_min, normalized=True, trivial=len(J) == self.datum.semisimple_rank)
        return pair, self.x_tilde(x, w_min)

    def enumerate_alcove_pairs(self, x: ExtAffineElement, include_trivial: bool = True) -> List[AlcovePair]:
        """All normalized alcove pairs of x, ordered by (|J|, J, w)."""
        rank = self.datum.semisimple_rank
        pairs = []
        for J in self.sigma_stable_subsets():
            trivial = len(J) == rank
            if trivial and not include_trivial:
                continue
            for w in self.coset_representatives(J):
                if self.is_alcove_element(x, J, w):
                    pairs.append(AlcovePair(J, w, normalized=True, trivial=trivial))
        logger.debug(f"{self.group.describe(x)}: {len(pairs)} alcove pairs")
        return sorted(pairs, key=lambda p: p.sort_key)

    def enumerate_all_pairs(self, x: ExtAffineElement) -> List[AlcovePair]:
        """All alcove pairs of x, normalized or not."""
        pairs = []
        for J in self.sigma_stable_subsets():
            for w in self.datum.weyl_elements():
                if self.is_alcove_element(x, J, w):
                    normalized = self.datum.is_min_coset_representative(w, J)
                    pairs.append(AlcovePair(J, w, normalized, len(J) == self.datum.semisimple_rank))
        return sorted(pairs, key=lambda p: p.sort_key)

    # σ-support

    def sigma_support(self, x: ExtAffineElement, side: str = "left") -> SigmaSupport:
        group = self.group
        omega, word = group.omega_word(x, side=side)
        labels = set(word)
        frontier = list(labels)
        while frontier:
            label = frontier.pop()
            image = group.sigma_label(group.omega_conjugate_label(omega, label))
            if image not in labels:
                labels.add(image)
                frontier.append(image)
        spherical = True
        for component in range(len(group.levi.components)):
            nodes = {label for label in group.labels if group.component_of_label(label) == component}
            if nodes <= labels:
                spherical = False
        return SigmaSupport(frozenset(labels), spherical)

    def is_sigma_connected(self) -> bool:
        """True iff σ acts transitively on the irreducible components."""
        components = self.datum.components
        if len(components) <= 1:
            return True
        reached = {0}
        frontier = [0]
        while frontier:
            c = frontier.pop()
            image = self.group.sigma.node_permutation[components[c][0]]
            target = next(k for k, comp in enumerate(components) if image in comp)
            if target not in reached:
                reached.add(target)
                frontier.append(target)
        return len(reached) == len(components)
