"""
Deligne-Lusztig reduction

Starting from x, breadth-first σ-conjugation by affine simple reflections
s ↦ s·y·σ(s) at constant length either finds a pivot that shortens the element
or closes the orbit, which certifies minimal length. At a pivot s on y with
ℓ(s·y·σ(s)) = ℓ(y) - 2 the reduction splits into s·y·σ(s) and s·y:

    B(G)_y = B(G)_{syσ(s)} ∪ B(G)_{sy}
    f_y = (q - 1)·f_{sy} + q·f_{syσ(s)}
    dim_y(b) = max(dim_{syσ(s)}(b), dim_{sy}(b)) + 1

Minimal elements are leaves carrying their own class; their dimension is
ℓ(x) - <ν, 2ρ>.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import sympy

from weylstrata.algebra.affine_weyl import AffineWeylGroup, ElementKey, ExtAffineElement
from weylstrata.algebra.newton_kottwitz import SigmaClass, SigmaClassifier, maximal_classes
from weylstrata.errors import ReductionError

logger = logging.getLogger(__name__)

q = sympy.Symbol("q")

OMEGA_MOVE = "omega"


@dataclass
class MinimalityCertificate:
    """The closed constant-length σ-conjugation orbit of a minimal element."""

    element: ExtAffineElement
    orbit: Tuple[ElementKey, ...]

    @property
    def minimal(self) -> bool:
        return True


@dataclass
class DecreasingPivot:
    """A chain of length-preserving moves from x to y and a pivot shortening y."""

    element: ExtAffineElement
    y: ExtAffineElement
    label: int
    chain: List[Union[int, str]] = field(default_factory=list)

    @property
    def minimal(self) -> bool:
        return False


@dataclass
class ReductionRecord:
    """
    Memoized outcome of reducing one element.

    Polynomials are coefficient tuples in q, lowest degree first.
    """

    key: ElementKey
    length: int
    polynomials: Dict[SigmaClass, Tuple[int, ...]]
    dimensions: Dict[SigmaClass, int]
    pivot: Optional[int] = None

    @property
    def classes(self) -> List[SigmaClass]:
        return sorted(self.polynomials)


@dataclass
class ReductionNode:
    """A node of a reduction tree; leaves have ``leaf_class`` set."""

    element: ExtAffineElement
    length: int
    record: ReductionRecord
    chain: List[Union[int, str]] = field(default_factory=list)
    pivot: Optional[int] = None
    reduced: Optional[ExtAffineElement] = None
    children: Tuple["ReductionNode", ...] = ()
    leaf_class: Optional[SigmaClass] = None

    @property
    def is_leaf(self) -> bool:
        return self.leaf_class is not None

    def leaves(self) -> List["ReductionNode"]:
        if self.is_leaf:
            return [self]
        return [leaf for child in self.children for leaf in child.leaves()]


def _to_poly(coefficients: Tuple[int, ...]) -> sympy.Poly:
    return sympy.Poly(list(reversed(coefficients)) or [0], q, domain=sympy.ZZ)


def _from_poly(poly: sympy.Poly) -> Tuple[int, ...]:
    coefficients = [int(c) for c in reversed(poly.all_coeffs())]
    while len(coefficients) > 1 and coefficients[-1] == 0:
        coefficients.pop()
    return tuple(coefficients)


class ReductionEngine:
    """
    Runs the reduction for one AffineWeylGroup (ambient or Levi scope).

    Args:
        group: The group
        classifier: The σ-class classifier of the same scope
        pivot_order: ``ascending`` or ``descending`` order of S_aff labels
        use_omega: Also conjugate by length-zero elements during the orbit search
        include_dimensions: Compute dimension tables along with polynomials
        cache: Optional persistent ReductionCache shared across a sweep
        orbit_cap: Maximum size of a constant-length orbit
    """

    def __init__(self, group: AffineWeylGroup, classifier: SigmaClassifier,
                 pivot_order: str = "ascending", use_omega: bool = False,
                 include_dimensions: bool = True, cache=None, orbit_cap: int = 200000):
        if pivot_order not in ("ascending", "descending"):
            raise ValueError(f"Unknown pivot order: {pivot_order}")
        self.group = group
        self.classifier = classifier
        self.pivot_order = pivot_order
        self.use_omega = use_omega
        self.include_dimensions = include_dimensions
        self.cache = cache
        self.orbit_cap = orbit_cap
        self._labels = list(group.labels) if pivot_order == "ascending" else list(reversed(group.labels))
        self._omegas = [w for w in group.omega_representatives(radius=0) if w != group.identity] \
            if use_omega else []
        self._nodes: Dict[ElementKey, ReductionNode] = {}
        self._records: Dict[ElementKey, ReductionRecord] = {}

    @property
    def cache_namespace(self) -> str:
        """Records with and without dimension tables live in separate namespaces."""
        return f"{self.group.datum.signature}|J={','.join(str(j) for j in self.group.scope)}|" \
               f"σ={','.join(str(i) for i in self.group.sigma.node_permutation)}|" \
               f"dims={'on' if self.include_dimensions else 'off'}"

    def _moves(self, y: ExtAffineElement):
        group = self.group
        for label in self._labels:
            s = group.simple_affine[label]
            yield label, group.multiply(s, y, group.frobenius(s))
        for omega in self._omegas:
            yield OMEGA_MOVE, group.sigma_conjugate(omega, y)

    def minimality(self, x: ExtAffineElement) -> Union[MinimalityCertificate, DecreasingPivot]:
        """
        Search the constant-length σ-conjugation orbit of x for a shortening pivot.

        Raises:
            ReductionError: If the orbit grows past ``orbit_cap``
        """
        group = self.group
        length = group.length(x)
        parents: Dict[ElementKey, Tuple[Optional[ElementKey], Union[int, str, None]]] = {x.key: (None, None)}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for label, z in self._moves(y):
                z_length = group.length(z)
                if z_length < length:
                    if label == OMEGA_MOVE:
                        raise ReductionError("Length-zero conjugation changed the length")
                    return DecreasingPivot(x, y, label, self._chain(parents, y.key))
                if z_length == length and z.key not in parents:
                    parents[z.key] = (y.key, label)
                    queue.append(z)
                    if len(parents) > self.orbit_cap:
                        raise ReductionError(f"Orbit of {group.describe(x)} exceeds {self.orbit_cap} elements")
        return MinimalityCertificate(x, tuple(sorted(parents)))

    @staticmethod
    def _chain(parents, key) -> List[Union[int, str]]:
        chain = []
        while parents[key][0] is not None:
            key, move = parents[key]
            chain.append(move)
        return list(reversed(chain))

    def reduce(self, x: ExtAffineElement) -> ReductionNode:
        """The reduction tree of x, memoized by canonical key."""
        node = self._nodes.get(x.key)
        if node is not None:
            return node
        group = self.group
        length = group.length(x)
        outcome = self.minimality(x)
        if outcome.minimal:
            leaf_class = self.classifier.class_of(x)
            dimensions = {}
            if self.include_dimensions:
                rho2 = group.levi.rho2
                dimension = length - group.datum.pair(leaf_class.nu, rho2)
                if dimension.denominator != 1:
                    raise ReductionError(f"Non-integral dimension {dimension} at {group.describe(x)}")
                dimensions[leaf_class] = int(dimension)
            record = ReductionRecord(x.key, length, {leaf_class: (1,)}, dimensions)
            node = ReductionNode(x, length, record, leaf_class=leaf_class)
        else:
            y, label = outcome.y, outcome.label
            s = group.simple_affine[label]
            shorter = group.compose(s, y)
            twisted = group.compose(shorter, group.frobenius(s))
            if group.length(twisted) != length - 2 or group.length(shorter) != length - 1:
                raise ReductionError(
                    f"Pivot s{label} on {group.describe(y)} does not drop the length by two",
                    details={"element": group.describe(x), "pivot": label},
                )
            twisted_node = self.reduce(twisted)
            shorter_node = self.reduce(shorter)
            record = self._combine(x, length, label, twisted_node.record, shorter_node.record)
            node = ReductionNode(x, length, record, outcome.chain, label, y, (twisted_node, shorter_node))
        self._nodes[x.key] = node
        self._records[x.key] = node.record
        return node

    def _combine(self, x: ExtAffineElement, length: int, label: int,
                 twisted: ReductionRecord, shorter: ReductionRecord) -> ReductionRecord:
        polynomials: Dict[SigmaClass, Tuple[int, ...]] = {}
        for c in set(twisted.polynomials) | set(shorter.polynomials):
            poly = (q - 1) * _to_poly(shorter.polynomials.get(c, (0,))) + \
                q * _to_poly(twisted.polynomials.get(c, (0,)))
            poly = sympy.Poly(poly, q, domain=sympy.ZZ)
            if not poly.is_zero:
                polynomials[c] = _from_poly(poly)
        dimensions: Dict[SigmaClass, int] = {}
        if self.include_dimensions:
            for source in (twisted.dimensions, shorter.dimensions):
                for c, d in source.items():
                    dimensions[c] = max(dimensions.get(c, d + 1), d + 1)
        return ReductionRecord(x.key, length, polynomials, dimensions, label)

    def record(self, x: ExtAffineElement) -> ReductionRecord:
        """The reduction record of x, from memory, the persistent cache or a fresh reduction."""
        record = self._records.get(x.key)
        if record is not None:
            return record
        if self.cache is not None:
            record = self.cache.get(self.cache_namespace, x.key)
            if record is not None:
                self._records[x.key] = record
                return record
        record = self.reduce(x).record
        if self.cache is not None:
            self.cache.put(self.cache_namespace, record)
        return record

    def b_of_x(self, x: ExtAffineElement) -> List[SigmaClass]:
        return self.record(x).classes

    def class_polynomials(self, x: ExtAffineElement) -> Dict[SigmaClass, sympy.Poly]:
        return {c: _to_poly(coefficients) for c, coefficients in sorted(self.record(x).polynomials.items())}

    def dimension_table(self, x: ExtAffineElement) -> Dict[SigmaClass, int]:
        if not self.include_dimensions:
            raise ReductionError("Dimension tables are disabled for this engine")
        return dict(sorted(self.record(x).dimensions.items()))

    def generic_class(self, x: ExtAffineElement) -> SigmaClass:
        """
        The dominance-maximal class of B(G)_x.

        Raises:
            ReductionError: If the maximum is not unique
        """
        maxima = maximal_classes(self.classifier, self.b_of_x(x))
        if len(maxima) != 1:
            raise ReductionError(f"No unique generic class for {self.group.describe(x)}", details=maxima)
        return maxima[0]

    @property
    def memo_size(self) -> int:
        return len(self._records)
