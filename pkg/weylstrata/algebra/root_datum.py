"""
Based root data with an explicit cocharacter lattice

A RootDatum carries the simple roots (in character coordinates), the simple
coroots (in cocharacter coordinates), the full root system obtained by
reflection closure and the finite Weyl group acting on both lattices.
Diagram automorphisms model the Frobenius; Levi sub-data are cut out by a
subset J of the simple roots.

All arithmetic is exact: lattice vectors are tuples of ints, rational
cocharacters are tuples of ``fractions.Fraction``.
"""

import logging
import math
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from weylstrata.errors import RootDatumError

logger = logging.getLogger(__name__)

IntVector = Tuple[int, ...]
IntMatrix = Tuple[Tuple[int, ...], ...]

LATTICE_ALIASES = {
    "sc": "sc",
    "simply-connected": "sc",
    "simply_connected": "sc",
    "ad": "ad",
    "adjoint": "ad",
    "gl": "gl",
    "gl-style": "gl",
    "basis": "basis",
}

_VALID_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: 6 <= n <= 8,
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

_POSITIVE_ROOT_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}

_WEYL_ORDERS = {
    "A": lambda n: math.factorial(n + 1),
    "B": lambda n: 2 ** n * math.factorial(n),
    "C": lambda n: 2 ** n * math.factorial(n),
    "D": lambda n: 2 ** (n - 1) * math.factorial(n),
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
    "F": lambda n: 1152,
    "G": lambda n: 12,
}


def parse_cartan_type(cartan_type: str) -> Tuple[Tuple[str, int], ...]:
    """
    Parse a Cartan type string such as ``"A2"`` or ``"A1xA1"``.

    Args:
        cartan_type: Factors separated by ``x``, ``×``, ``*`` or whitespace

    Returns:
        A tuple of (letter, rank) pairs

    Raises:
        RootDatumError: If a factor is not a valid finite type
    """
    tokens = [t for t in re.split(r"[x×*\s]+", cartan_type.strip()) if t]
    if not tokens:
        raise RootDatumError(f"Empty Cartan type: {cartan_type!r}")
    factors = []
    for token in tokens:
        match = re.fullmatch(r"([A-Ga-g])(\d+)", token)
        if not match:
            raise RootDatumError(f"Unknown Cartan type factor: {token!r}")
        letter, rank = match.group(1).upper(), int(match.group(2))
        if not _VALID_RANKS[letter](rank):
            raise RootDatumError(f"Invalid rank for type {letter}: {rank}")
        factors.append((letter, rank))
    return tuple(factors)


def irreducible_cartan_matrix(letter: str, rank: int) -> List[List[int]]:
    """
    Cartan matrix of an irreducible type, entries a_ij = <α_i∨, α_j>, Bourbaki numbering.
    """
    n = rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i: int, j: int, a_ij: int = -1, a_ji: int = -1) -> None:
        c[i][j] = a_ij
        c[j][i] = a_ji

    if letter == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif letter == "B":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -1, -2)
    elif letter == "C":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -2, -1)
    elif letter == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif letter == "E":
        for i, j in ((0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)):
            if i < n and j < n:
                link(i, j)
    elif letter == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif letter == "G":
        link(0, 1, -3, -1)
    else:
        raise RootDatumError(f"Unknown Cartan type: {letter}{rank}")
    return c


def _pair(v: Sequence, chi: Sequence):
    return sum(a * b for a, b in zip(v, chi))


def _mat_vec(matrix: IntMatrix, v: Sequence) -> tuple:
    return tuple((np.array(matrix, dtype=object) @ np.array(list(v), dtype=object)).tolist())


def _mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    product = np.array(a, dtype=object) @ np.array(b, dtype=object)
    return tuple(tuple(int(x) for x in row) for row in product.tolist())


def _transpose(a: IntMatrix) -> IntMatrix:
    return tuple(zip(*a)) if a else ()


def _identity(r: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))


def _integer_inverse(matrix: IntMatrix) -> IntMatrix:
    inverse = sympy.Matrix(matrix).inv()
    if any(not entry.is_integer for entry in inverse):
        raise RootDatumError("Lattice map is not invertible over the integers")
    return tuple(tuple(int(x) for x in inverse.row(i)) for i in range(inverse.rows))


@dataclass(frozen=True, eq=False)
class FiniteWeylElement:
    """
    An element of the finite Weyl group.

    ``matrix`` acts on cocharacters, ``inverse_matrix`` is its inverse and
    ``root_permutation`` records the action on the indexed root set. The
    canonical ``key`` is the image of every simple root index.
    """

    key: Tuple[int, ...]
    matrix: IntMatrix = field(repr=False)
    inverse_matrix: IntMatrix = field(repr=False)
    root_permutation: Tuple[int, ...] = field(repr=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteWeylElement) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: "FiniteWeylElement") -> bool:
        return self.key < other.key


@dataclass(frozen=True)
class DiagramAutomorphism:
    """
    A Dynkin diagram automorphism together with its lattice map on cocharacters.

    ``node_permutation[i]`` is the image of simple index i (0-based).
    """

    node_permutation: Tuple[int, ...]
    lattice_map: IntMatrix = field(repr=False)
    inverse_lattice_map: IntMatrix = field(repr=False)
    root_permutation: Tuple[int, ...] = field(repr=False)
    order: int = 1

    @property
    def is_identity(self) -> bool:
        return self.order == 1

    def apply(self, v: Sequence) -> tuple:
        """Apply the lattice map to a cocharacter vector."""
        return _mat_vec(self.lattice_map, v)

    def apply_inverse(self, v: Sequence) -> tuple:
        return _mat_vec(self.inverse_lattice_map, v)

    def permute_nodes(self, nodes: Iterable[int]) -> FrozenSet[int]:
        return frozenset(self.node_permutation[i] for i in nodes)


@dataclass(frozen=True)
class LeviDatum:
    """
    The Levi sub-datum of a RootDatum cut out by a subset J of the simple roots.

    The lattice and pairing are shared with the ambient datum.
    """

    ambient: "RootDatum" = field(repr=False, compare=False)
    simple: Tuple[int, ...]
    positive_root_indices: Tuple[int, ...]
    rho2: IntVector
    components: Tuple[Tuple[int, ...], ...]
    highest_roots: Tuple[int, ...]

    @property
    def J(self) -> FrozenSet[int]:
        return frozenset(self.simple)

    @property
    def is_torus(self) -> bool:
        return not self.simple

    @property
    def is_ambient(self) -> bool:
        return len(self.simple) == self.ambient.semisimple_rank

    def contains_root(self, root_index: int) -> bool:
        """True iff the indexed root lies in Φ_J."""
        return self.ambient.root_support(root_index) <= self.J

    def weyl_elements(self) -> List[FiniteWeylElement]:
        return self.ambient.weyl_elements(self.simple)


class RootDatum:
    """
    A based root datum with an explicit cocharacter lattice.

    Roots are indexed: positive roots ``0..N-1`` sorted by height (simple roots
    first, in order), negative roots ``N..2N-1`` with ``-roots[k] == roots[k+N]``.
    Immutable after construction.
    """

    def __init__(self, factors: Tuple[Tuple[str, int], ...], lattice: str,
                 simple_roots: Sequence[IntVector], simple_coroots: Sequence[IntVector],
                 lattice_rank: int, basis: Optional[IntMatrix] = None):
        self.factors = factors
        self.lattice = lattice
        self.basis = basis
        self.lattice_rank = lattice_rank
        self.cartan_type = "x".join(f"{letter}{rank}" for letter, rank in factors)
        self.simple_roots: Tuple[IntVector, ...] = tuple(tuple(v) for v in simple_roots)
        self.simple_coroots: Tuple[IntVector, ...] = tuple(tuple(v) for v in simple_coroots)
        self.semisimple_rank = len(self.simple_roots)

        n = self.semisimple_rank
        self.cartan_matrix: IntMatrix = tuple(
            tuple(_pair(self.simple_coroots[i], self.simple_roots[j]) for j in range(n))
            for i in range(n)
        )
        self._check_cartan()

        coefficients = _root_closure(self.cartan_matrix)
        positives = sorted(
            (c for c in coefficients if all(x >= 0 for x in c)),
            key=lambda c: (sum(c), tuple(-x for x in c)),
        )
        self.num_positive = len(positives)
        self.root_coefficients: Tuple[IntVector, ...] = tuple(
            positives + [tuple(-x for x in c) for c in positives]
        )
        self.coroot_coefficients: Tuple[IntVector, ...] = tuple(
            coefficients[c] for c in self.root_coefficients
        )
        self.roots: Tuple[IntVector, ...] = tuple(
            self._combine(c, self.simple_roots) for c in self.root_coefficients
        )
        self.coroots: Tuple[IntVector, ...] = tuple(
            self._combine(d, self.simple_coroots) for d in self.coroot_coefficients
        )
        self.root_index: Dict[IntVector, int] = {v: k for k, v in enumerate(self.roots)}
        self.coroot_index: Dict[IntVector, int] = {v: k for k, v in enumerate(self.coroots)}
        self.rho2: IntVector = self._combine([1] * self.num_positive, self.roots[: self.num_positive])

        self.components: Tuple[Tuple[int, ...], ...] = _components(self.cartan_matrix, range(n))
        self.highest_roots: Tuple[int, ...] = tuple(
            self._highest_root(component) for component in self.components
        )
        self._simple_reflections = [self._reflection_element(i) for i in range(n)]
        self._identity = self._element(_identity(lattice_rank), _identity(lattice_rank))
        self._weyl_cache: Dict[FrozenSet[int], List[FiniteWeylElement]] = {}
        self._levi_cache: Dict[FrozenSet[int], LeviDatum] = {}
        self.cartan_inverse_cache: Dict[Tuple[int, ...], sympy.Matrix] = {}
        logger.debug(f"Built root datum {self.signature} with {self.num_positive} positive roots")

    # construction helpers

    def _combine(self, coefficients: Sequence[int], vectors: Sequence[IntVector]) -> IntVector:
        dim = len(vectors[0])
        return tuple(sum(c * v[k] for c, v in zip(coefficients, vectors)) for k in range(dim))

    def _check_cartan(self) -> None:
        offset = 0
        size = self.semisimple_rank
        blocks = [[0] * size for _ in range(size)]
        for letter, rank in self.factors:
            block = irreducible_cartan_matrix(letter, rank)
            for i in range(rank):
                for j in range(rank):
                    blocks[offset + i][offset + j] = block[i][j]
            offset += rank
        expected = tuple(tuple(row) for row in blocks)
        if expected != self.cartan_matrix:
            raise RootDatumError(
                f"Pairing of simple coroots and roots does not match type {self.factors}"
            )

    def _highest_root(self, component: Tuple[int, ...]) -> int:
        support = frozenset(component)
        best = None
        for k in range(self.num_positive):
            if self.root_support(k) <= support:
                if best is None or sum(self.root_coefficients[k]) > sum(self.root_coefficients[best]):
                    best = k
        return best

    def _root_permutation(self, inverse_matrix: IntMatrix) -> Tuple[int, ...]:
        # u acts on characters by the inverse transpose of its cocharacter matrix
        dual = _transpose(inverse_matrix)
        return tuple(self.root_index[_mat_vec(dual, chi)] for chi in self.roots)

    def _element(self, matrix: IntMatrix, inverse_matrix: IntMatrix,
                 permutation: Optional[Tuple[int, ...]] = None) -> FiniteWeylElement:
        if permutation is None:
            permutation = self._root_permutation(inverse_matrix)
        key = permutation[: self.semisimple_rank]
        return FiniteWeylElement(key, matrix, inverse_matrix, permutation)

    def _reflection_element(self, root_index: int) -> FiniteWeylElement:
        chi = self.roots[root_index]
        coroot = self.coroots[root_index]
        r = self.lattice_rank
        matrix = tuple(
            tuple((1 if i == j else 0) - coroot[i] * chi[j] for j in range(r)) for i in range(r)
        )
        return self._element(matrix, matrix)

    # basic queries

    @property
    def signature(self) -> str:
        sig = f"{self.cartan_type}/{self.lattice}"
        if self.basis is not None:
            sig += "/" + ";".join(",".join(str(x) for x in row) for row in self.basis)
        return sig

    @property
    def simple_indices(self) -> Tuple[int, ...]:
        return tuple(range(self.semisimple_rank))

    def weyl_group_order(self) -> int:
        return math.prod(_WEYL_ORDERS[letter](rank) for letter, rank in self.factors)

    def expected_positive_root_count(self) -> int:
        return sum(_POSITIVE_ROOT_COUNTS[letter](rank) for letter, rank in self.factors)

    def pair(self, v: Sequence, chi: Sequence):
        """The pairing <v, χ> of a cocharacter with a character."""
        return _pair(v, chi)

    def is_positive(self, root_index: int) -> bool:
        return root_index < self.num_positive

    def negate(self, root_index: int) -> int:
        n = self.num_positive
        return root_index + n if root_index < n else root_index - n

    def root_support(self, root_index: int) -> FrozenSet[int]:
        return frozenset(i for i, c in enumerate(self.root_coefficients[root_index]) if c)

    def height(self, root_index: int) -> int:
        return sum(self.root_coefficients[root_index])

    # Weyl group

    @property
    def identity(self) -> FiniteWeylElement:
        return self._identity

    def simple_reflection(self, i: int) -> FiniteWeylElement:
        return self._simple_reflections[i]

    def reflection(self, root_index: int) -> FiniteWeylElement:
        """The reflection s_β for the indexed root β."""
        return self._reflection_element(root_index)

    def multiply(self, u: FiniteWeylElement, v: FiniteWeylElement) -> FiniteWeylElement:
        matrix = _mat_mul(u.matrix, v.matrix)
        inverse = _mat_mul(v.inverse_matrix, u.inverse_matrix)
        permutation = tuple(u.root_permutation[k] for k in v.root_permutation)
        return self._element(matrix, inverse, permutation)

    def inverse(self, u: FiniteWeylElement) -> FiniteWeylElement:
        permutation = [0] * len(u.root_permutation)
        for k, image in enumerate(u.root_permutation):
            permutation[image] = k
        return self._element(u.inverse_matrix, u.matrix, tuple(permutation))

    def from_word(self, word: Sequence[int]) -> FiniteWeylElement:
        u = self._identity
        for i in word:
            u = self.multiply(u, self.simple_reflection(i))
        return u

    def reduced_word(self, u: FiniteWeylElement) -> List[int]:
        """Greedy left-descent reduced word of u (smallest descent first)."""
        word = []
        while u != self._identity:
            for i in range(self.semisimple_rank):
                # s_i is a left descent iff u⁻¹(α_i) < 0
                if not self.is_positive(self.inverse(u).root_permutation[i]):
                    word.append(i)
                    u = self.multiply(self.simple_reflection(i), u)
                    break
        return word

    def weyl_length(self, u: FiniteWeylElement) -> int:
        return sum(1 for k in range(self.num_positive) if not self.is_positive(u.root_permutation[k]))

    def act_on_root(self, u: FiniteWeylElement, root_index: int) -> int:
        return u.root_permutation[root_index]

    def weyl_action(self, u: FiniteWeylElement, v: Sequence) -> tuple:
        """
        Act by u on a (rational) cocharacter vector.

        Raises:
            RootDatumError: If the dimension does not match the lattice rank
        """
        if len(v) != self.lattice_rank:
            raise RootDatumError(f"Vector of length {len(v)} does not live in rank {self.lattice_rank}")
        return _mat_vec(u.matrix, v)

    def reflect(self, v: Sequence, i: int) -> tuple:
        """s_i(v) = v - <v, α_i> α_i∨."""
        p = _pair(v, self.simple_roots[i])
        return tuple(a - p * b for a, b in zip(v, self.simple_coroots[i]))

    def dominant_representative(self, v: Sequence, simple: Optional[Iterable[int]] = None,
                                antidominant: bool = False) -> Tuple[tuple, FiniteWeylElement]:
        """
        Move v into the closed dominant chamber by simple reflections.

        Args:
            v: Rational cocharacter vector
            simple: Restrict to the reflections of this subset (the Levi chamber)
            antidominant: Move into the antidominant chamber instead

        Returns:
            (v_dom, w) with w·v = v_dom, w chosen by first-descent greedy
        """
        indices = sorted(simple) if simple is not None else list(range(self.semisimple_rank))
        w = self._identity
        current = tuple(v)
        while True:
            for i in indices:
                p = _pair(current, self.simple_roots[i])
                if (p < 0 and not antidominant) or (p > 0 and antidominant):
                    current = self.reflect(current, i)
                    w = self.multiply(self.simple_reflection(i), w)
                    break
            else:
                return current, w

    def min_coset_representative(self, w: FiniteWeylElement, J: Iterable[int]) -> FiniteWeylElement:
        """The minimal length element of the coset wW_J."""
        J = sorted(J)
        while True:
            for j in J:
                if not self.is_positive(w.root_permutation[j]):
                    w = self.multiply(w, self.simple_reflection(j))
                    break
            else:
                return w

    def is_min_coset_representative(self, w: FiniteWeylElement, J: Iterable[int]) -> bool:
        return all(self.is_positive(w.root_permutation[j]) for j in J)

    def in_parabolic(self, u: FiniteWeylElement, J: Iterable[int]) -> bool:
        """True iff u lies in W_J."""
        return self.min_coset_representative(u, J) == self._identity

    def weyl_elements(self, J: Optional[Iterable[int]] = None) -> List[FiniteWeylElement]:
        """All elements of W_J (W if J is None), sorted by (length, key)."""
        gens = frozenset(self.simple_indices if J is None else J)
        if gens not in self._weyl_cache:
            seen = {self._identity.key: self._identity}
            queue = deque([self._identity])
            while queue:
                u = queue.popleft()
                for i in sorted(gens):
                    v = self.multiply(u, self.simple_reflection(i))
                    if v.key not in seen:
                        seen[v.key] = v
                        queue.append(v)
            self._weyl_cache[gens] = sorted(seen.values(), key=lambda u: (self.weyl_length(u), u.key))
        return list(self._weyl_cache[gens])

    # rational linear algebra on coroots

    def cartan_inverse(self, J: Tuple[int, ...]) -> sympy.Matrix:
        if J not in self.cartan_inverse_cache:
            sub = sympy.Matrix([[self.cartan_matrix[i][j] for j in J] for i in J])
            self.cartan_inverse_cache[J] = sub.T.inv()
        return self.cartan_inverse_cache[J]

    def coroot_coefficients_of(self, v: Sequence, J: Optional[Iterable[int]] = None
                               ) -> Optional[Tuple[Fraction, ...]]:
        """
        Coefficients c with v = Σ_{j∈J} c_j α_j∨, or None if v is not in that rational span.
        """
        J = tuple(sorted(self.simple_indices if J is None else J))
        if not J:
            return () if all(x == 0 for x in v) else None
        pairings = sympy.Matrix([Fraction(_pair(v, self.simple_roots[j])) for j in J])
        solution = self.cartan_inverse(J) * pairings
        coeffs = tuple(Fraction(int(x.p), int(x.q)) for x in solution)
        combined = tuple(
            sum(c * self.simple_coroots[j][k] for c, j in zip(coeffs, J))
            for k in range(self.lattice_rank)
        )
        if any(Fraction(a) != b for a, b in zip(v, combined)):
            return None
        return coeffs

    def central_projection(self, v: Sequence) -> Tuple[Fraction, ...]:
        """Project v to the subspace orthogonal to all roots, along the coroot span."""
        J = self.simple_indices
        if not J:
            return tuple(Fraction(x) for x in v)
        pairings = sympy.Matrix([Fraction(_pair(v, self.simple_roots[j])) for j in J])
        coeffs = [Fraction(int(x.p), int(x.q)) for x in self.cartan_inverse(J) * pairings]
        return tuple(
            Fraction(v[k]) - sum(c * self.simple_coroots[j][k] for c, j in zip(coeffs, J))
            for k in range(self.lattice_rank)
        )

    # diagram automorphisms

    def diagram_automorphism(self, node_permutation: Optional[Sequence[int]] = None) -> DiagramAutomorphism:
        """
        Build the diagram automorphism with the given 0-based node permutation.

        Raises:
            RootDatumError: If the permutation does not preserve the Cartan matrix or
                does not lift to the chosen lattice
        """
        n = self.semisimple_rank
        perm = tuple(range(n)) if node_permutation is None else tuple(node_permutation)
        if sorted(perm) != list(range(n)):
            raise RootDatumError(f"Not a permutation of the simple roots: {perm}")
        for i in range(n):
            for j in range(n):
                if self.cartan_matrix[perm[i]][perm[j]] != self.cartan_matrix[i][j]:
                    raise RootDatumError(f"Permutation {perm} does not preserve the Cartan matrix")

        lattice_map = self._lattice_map(perm)
        inverse_map = _integer_inverse(lattice_map)
        for i in range(n):
            if _mat_vec(lattice_map, self.simple_coroots[i]) != self.simple_coroots[perm[i]]:
                raise RootDatumError(f"Lattice map does not send α{i + 1}∨ to α{perm[i] + 1}∨")
            if _mat_vec(_transpose(lattice_map), self.simple_roots[perm[i]]) != self.simple_roots[i]:
                raise RootDatumError("Lattice map is not compatible with the pairing")

        permutation = self._root_permutation(inverse_map)
        order = 1
        power = lattice_map
        while power != _identity(self.lattice_rank):
            power = _mat_mul(lattice_map, power)
            order += 1
            if order > 24:
                raise RootDatumError("Lattice map of the diagram automorphism has infinite order")
        logger.debug(f"Diagram automorphism {perm} of order {order} on {self.signature}")
        return DiagramAutomorphism(perm, lattice_map, inverse_map, permutation, order)

    def _lattice_map(self, perm: Tuple[int, ...]) -> IntMatrix:
        r = self.lattice_rank
        if self.lattice in ("sc", "ad"):
            matrix = [[0] * r for _ in range(r)]
            for i in range(r):
                matrix[perm[i]][i] = 1
            return tuple(tuple(row) for row in matrix)
        if self.lattice == "basis":
            p = sympy.zeros(r, r)
            for i in range(r):
                p[perm[i], i] = 1
            bt = sympy.Matrix(self.basis).T
            m = bt.inv() * p * bt
            if any(not x.is_integer for x in m):
                raise RootDatumError(f"Permutation {perm} does not preserve the chosen lattice")
            return tuple(tuple(int(x) for x in m.row(i)) for i in range(r))
        # gl: the permutation maps A-type factors to A-type factors, possibly reversed
        matrix = [[0] * r for _ in range(r)]
        blocks = _gl_blocks(self.factors)
        for (simple_offset, rank, lattice_offset) in blocks:
            image_simple = perm[simple_offset]
            target = next(b for b in blocks if b[0] <= image_simple < b[0] + b[1])
            reversed_block = rank > 1 and perm[simple_offset] != target[0]
            for k in range(rank + 1):
                if reversed_block:
                    matrix[target[2] + rank - k][lattice_offset + k] = -1
                else:
                    matrix[target[2] + k][lattice_offset + k] = 1
        return tuple(tuple(row) for row in matrix)

    def conjugate(self, delta: DiagramAutomorphism, u: FiniteWeylElement) -> FiniteWeylElement:
        """σ(u) = δ u δ⁻¹."""
        if delta.is_identity:
            return u
        matrix = _mat_mul(_mat_mul(delta.lattice_map, u.matrix), delta.inverse_lattice_map)
        inverse = _mat_mul(_mat_mul(delta.lattice_map, u.inverse_matrix), delta.inverse_lattice_map)
        pi = delta.root_permutation
        pi_inv = [0] * len(pi)
        for k, image in enumerate(pi):
            pi_inv[image] = k
        permutation = tuple(pi[u.root_permutation[pi_inv[k]]] for k in range(len(pi)))
        return self._element(matrix, inverse, permutation)

    # Levi sub-data

    def levi(self, J: Iterable[int]) -> LeviDatum:
        J = frozenset(J)
        if not J <= frozenset(self.simple_indices):
            raise RootDatumError(f"J={sorted(J)} is not a subset of the simple roots")
        if J not in self._levi_cache:
            positives = tuple(k for k in range(self.num_positive) if self.root_support(k) <= J)
            dim = len(self.simple_roots[0])
            rho2 = tuple(sum(self.roots[k][d] for k in positives) for d in range(dim))
            components = _components(self.cartan_matrix, sorted(J))
            highest = tuple(self._highest_root(component) for component in components)
            self._levi_cache[J] = LeviDatum(self, tuple(sorted(J)), positives, rho2, components, highest)
        return self._levi_cache[J]

    @property
    def full_levi(self) -> LeviDatum:
        return self.levi(self.simple_indices)

    def __repr__(self) -> str:
        return f"RootDatum({self.signature!r})"


def _root_closure(cartan: IntMatrix) -> Dict[IntVector, IntVector]:
    """Reflection closure of the simple roots: root coefficients -> coroot coefficients."""
    n = len(cartan)
    units = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = {u: u for u in units}
    queue = deque(units)
    while queue:
        c = queue.popleft()
        d = seen[c]
        for i in range(n):
            p = sum(c[j] * cartan[i][j] for j in range(n))
            q = sum(d[j] * cartan[j][i] for j in range(n))
            nc = tuple(c[k] - (p if k == i else 0) for k in range(n))
            nd = tuple(d[k] - (q if k == i else 0) for k in range(n))
            if nc not in seen:
                seen[nc] = nd
                queue.append(nc)
    return seen


def _components(cartan: IntMatrix, nodes: Iterable[int]) -> Tuple[Tuple[int, ...], ...]:
    nodes = sorted(nodes)
    remaining = set(nodes)
    components = []
    for start in nodes:
        if start not in remaining:
            continue
        component = {start}
        stack = [start]
        remaining.discard(start)
        while stack:
            i = stack.pop()
            for j in list(remaining):
                if cartan[i][j] != 0:
                    remaining.discard(j)
                    component.add(j)
                    stack.append(j)
        components.append(tuple(sorted(component)))
    return tuple(components)


def _gl_blocks(factors) -> List[Tuple[int, int, int]]:
    blocks = []
    simple_offset = lattice_offset = 0
    for letter, rank in factors:
        blocks.append((simple_offset, rank, lattice_offset))
        simple_offset += rank
        lattice_offset += rank + 1
    return blocks


@lru_cache(maxsize=64)
def build_root_datum(cartan_type: str, lattice: str = "sc",
                     basis: Optional[IntMatrix] = None) -> RootDatum:
    """
    Build a RootDatum for a Cartan type and a lattice choice.

    Args:
        cartan_type: e.g. ``"A1"``, ``"A1xA1"``, ``"G2"``
        lattice: ``sc`` (X_* = ZΦ∨), ``ad`` (coweight lattice), ``gl``
            (Z^{n+1} per A_n factor) or ``basis``
        basis: For ``basis``, integer rows giving a lattice basis in
            fundamental-coweight coordinates

    Returns:
        The root datum

    Raises:
        RootDatumError: Unknown type, unknown lattice, or a basis whose lattice
            does not contain the coroots
    """
    factors = parse_cartan_type(cartan_type)
    if lattice not in LATTICE_ALIASES:
        raise RootDatumError(f"Unknown lattice choice: {lattice!r}")
    lattice = LATTICE_ALIASES[lattice]

    n = sum(rank for _, rank in factors)
    cartan = [[0] * n for _ in range(n)]
    offset = 0
    for letter, rank in factors:
        block = irreducible_cartan_matrix(letter, rank)
        for i in range(rank):
            for j in range(rank):
                cartan[offset + i][offset + j] = block[i][j]
        offset += rank

    if lattice == "sc":
        coroots = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        roots = [tuple(cartan[k][j] for k in range(n)) for j in range(n)]
        rank = n
    elif lattice == "ad":
        roots = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
        coroots = [tuple(cartan[i]) for i in range(n)]
        rank = n
    elif lattice == "basis":
        if basis is None:
            raise RootDatumError("Lattice choice 'basis' needs a basis matrix")
        b = sympy.Matrix(basis)
        if b.shape != (n, n) or b.rank() != n:
            raise RootDatumError(f"Basis must be a full-rank {n}x{n} integer matrix")
        roots = [tuple(int(b[k, j]) for k in range(n)) for j in range(n)]
        b_inv = b.inv()
        coroots = []
        for i in range(n):
            y = sympy.Matrix([cartan[i]]) * b_inv
            if any(not x.is_integer for x in y):
                raise RootDatumError("Basis lattice does not contain the simple coroots")
            coroots.append(tuple(int(x) for x in y))
        rank = n
        basis = tuple(tuple(int(x) for x in row) for row in basis)
    else:
        if any(letter != "A" for letter, _ in factors):
            raise RootDatumError("The gl lattice is only available for type A factors")
        rank = sum(r + 1 for _, r in factors)
        roots = []
        for simple_offset, r, lattice_offset in _gl_blocks(factors):
            for i in range(r):
                v = [0] * rank
                v[lattice_offset + i] = 1
                v[lattice_offset + i + 1] = -1
                roots.append(tuple(v))
        coroots = list(roots)

    datum = RootDatum(factors, lattice, roots, coroots, rank,
                      basis if lattice == "basis" else None)
    if datum.num_positive != datum.expected_positive_root_count():
        raise RootDatumError(
            f"Root closure produced {datum.num_positive} positive roots, "
            f"expected {datum.expected_positive_root_count()}"
        )
    logger.info(f"Root datum {datum.signature}: rank {datum.lattice_rank}, |Φ⁺|={datum.num_positive}")
    return datum


def build_levi(datum: RootDatum, J: Iterable[int]) -> LeviDatum:
    """The Levi sub-datum M_J of ``datum``."""
    return datum.levi(J)
