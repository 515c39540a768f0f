"""
Newton and Kottwitz points of σ-conjugacy classes

Newton points come from σ-twisted powers x^{σ,n} = x·σ(x)⋯σ^{n-1}(x): once
the twisted power is a translation t^μ, the Newton point is the dominant
representative of μ/n. Kottwitz points are images of the translation part in
the coinvariants X_*/(ZΦ_J∨ + (σ-1)X_*), presented through a Smith normal form.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp

from weylstrata.algebra.affine_weyl import AffineWeylGroup, ExtAffineElement
from weylstrata.errors import NewtonError

logger = logging.getLogger(__name__)

RatVector = Tuple[Fraction, ...]


@dataclass(frozen=True, order=True)
class KottwitzPoint:
    """
    A point of the finitely generated abelian group X_*/(ZΦ_J∨ + (σ-1)X_*).

    ``values[i]`` is a residue modulo ``moduli[i]``; a modulus of 0 marks a
    free coordinate.
    """

    values: Tuple[int, ...]
    moduli: Tuple[int, ...]

    def as_list(self) -> List[int]:
        return list(self.values)


@dataclass(frozen=True, order=True)
class NewtonPoint:
    """A rational cocharacter, stored dominant for its scope."""

    nu: RatVector

    def as_strings(self) -> List[str]:
        return [str(x) for x in self.nu]


@dataclass(frozen=True, order=True)
class SigmaClass:
    """The invariant (ν, κ) of a σ-conjugacy class for a scope J (all simple roots for G)."""

    kappa: KottwitzPoint
    newton: NewtonPoint
    scope: Tuple[int, ...]

    @property
    def nu(self) -> RatVector:
        return self.newton.nu


class KottwitzPresentation:
    """
    Smith normal form presentation of X_*/(ZΦ_J∨ + (σ-1)X_*).

    ``matrix`` is unimodular; row i of ``matrix·λ`` is reduced modulo
    ``moduli[i]`` for torsion rows and kept as is for free rows. The free rows
    are put in Hermite normal form so that the coordinates do not depend on
    the elimination path.
    """

    def __init__(self, group: AffineWeylGroup):
        datum = group.datum
        r = datum.lattice_rank
        columns = [datum.simple_coroots[j] for j in group.scope]
        delta = group.sigma.lattice_map
        for j in range(r):
            column = tuple(delta[k][j] - (1 if k == j else 0) for k in range(r))
            if any(column):
                columns.append(column)

        if columns:
            relations = sympy.Matrix([[c[k] for c in columns] for k in range(r)])
            diagonal, left, _ = smith_normal_decomp(relations, domain=sympy.ZZ)
            invariants = [abs(int(diagonal[i, i])) for i in range(min(diagonal.shape))]
        else:
            left = sympy.eye(r)
            invariants = []
        rank = sum(1 for d in invariants if d != 0)
        free_rows = left[rank:, :]
        if free_rows.rows:
            free_rows = hermite_normal_form(free_rows.T).T
        rows = [list(left.row(i)) for i in range(rank) if invariants[i] != 1]
        moduli = [invariants[i] for i in range(rank) if invariants[i] != 1]
        rows += [list(free_rows.row(i)) for i in range(free_rows.rows)]
        moduli += [0] * free_rows.rows

        self.moduli: Tuple[int, ...] = tuple(moduli)
        self.rows: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in rows)
        # full unimodular matrix, kept for preimages
        full = sympy.Matrix([list(left.row(i)) for i in range(rank)] +
                            [list(free_rows.row(i)) for i in range(free_rows.rows)])
        self._full_inverse = full.inv()
        self._full_moduli = invariants[:rank] + [0] * free_rows.rows
        self._kept = [i for i in range(rank) if invariants[i] != 1] + list(range(rank, r))
        logger.debug(f"Kottwitz presentation for J={list(group.scope)}: moduli {self.moduli}")

    def point(self, translation: Sequence[int]) -> KottwitzPoint:
        values = []
        for row, modulus in zip(self.rows, self.moduli):
            value = sum(a * b for a, b in zip(row, translation))
            values.append(value % modulus if modulus else value)
        return KottwitzPoint(tuple(values), self.moduli)

    def preimage(self, kappa: KottwitzPoint) -> Tuple[int, ...]:
        """A lattice vector λ with κ(t^λ) = kappa."""
        coordinates = [0] * len(self._full_moduli)
        for position, value in zip(self._kept, kappa.values):
            coordinates[position] = value
        vector = self._full_inverse * sympy.Matrix(coordinates)
        return tuple(int(x) for x in vector)


class SigmaClassifier:
    """
    Computes (ν, κ) for elements of an AffineWeylGroup (ambient or Levi scope).
    """

    def __init__(self, group: AffineWeylGroup):
        self.group = group
        self.datum = group.datum
        self.presentation = KottwitzPresentation(group)
        self._cap = self.datum.weyl_group_order()

    @property
    def scope(self) -> Tuple[int, ...]:
        return self.group.scope

    def twisted_power(self, x: ExtAffineElement, n: int) -> ExtAffineElement:
        """x·σ(x)⋯σ^{n-1}(x)."""
        if n < 1:
            raise ValueError(f"Twisted power needs n >= 1, got {n}")
        group = self.group
        result = x
        current = x
        for _ in range(n - 1):
            current = group.frobenius(current)
            result = group.compose(result, current)
        return result

    def translation_power(self, x: ExtAffineElement, multiple: int = 1) -> Tuple[Tuple[int, ...], int]:
        """
        Find n with x^{σ,n} = t^μ and σ^n = id.

        Args:
            x: The element
            multiple: Use this multiple of the minimal valid n

        Returns:
            (μ, n)

        Raises:
            NewtonError: If no translation appears within |W| steps
        """
        group = self.group
        order = group.sigma.order
        step = self.twisted_power(x, order)
        power = step
        for m in range(1, self._cap + 1):
            if power.finite == self.datum.identity:
                if multiple > 1:
                    power = self._power(power, multiple)
                return power.translation, order * m * multiple
            power = group.compose(power, step)
        raise NewtonError(f"Twisted power of {group.describe(x)} is not a translation after {self._cap} steps")

    def _power(self, y: ExtAffineElement, k: int) -> ExtAffineElement:
        result = self.group.identity
        for _ in range(k):
            result = self.group.compose(result, y)
        return result

    def newton_point(self, x: ExtAffineElement, multiple: int = 1) -> NewtonPoint:
        """The scope-dominant representative of μ/n."""
        mu, n = self.translation_power(x, multiple)
        average = tuple(Fraction(v, n) for v in mu)
        dominant, _ = self.datum.dominant_representative(average, simple=self.scope)
        return NewtonPoint(dominant)

    def kottwitz_point(self, x: ExtAffineElement) -> KottwitzPoint:
        return self.presentation.point(x.translation)

    def class_of(self, x: ExtAffineElement) -> SigmaClass:
        return SigmaClass(self.kottwitz_point(x), self.newton_point(x), self.scope)

    def is_basic(self, c: SigmaClass) -> bool:
        return all(self.datum.pair(c.nu, self.datum.roots[k]) == 0
                   for k in self.group.levi.positive_root_indices)

    def antidominant(self, c: SigmaClass) -> RatVector:
        """The scope-antidominant representative of the Newton point of c."""
        return self.datum.dominant_representative(c.nu, simple=self.scope, antidominant=True)[0]

    def basic_class(self, kappa: KottwitzPoint) -> SigmaClass:
        """
        The unique basic class with Kottwitz point kappa.

        Its Newton point is the σ-orbit average of the central projection of any
        preimage of kappa.
        """
        translation = self.presentation.preimage(kappa)
        if not self.group.levi.is_ambient:
            raise NewtonError("Basic classes are only constructed for the ambient group")
        central = self.datum.central_projection(translation)
        order = self.group.sigma.order
        total = list(central)
        image = central
        for _ in range(order - 1):
            image = self.group.sigma.apply(image)
            total = [a + b for a, b in zip(total, image)]
        nu = tuple(Fraction(v) / order for v in total)
        result = SigmaClass(kappa, NewtonPoint(nu), self.scope)
        if not self.is_basic(result):
            raise NewtonError(f"Constructed class with ν={nu} is not basic")
        return result

    def dominance_leq(self, c1: SigmaClass, c2: SigmaClass) -> bool:
        """True iff κ agree and ν2 - ν1 is a nonnegative rational combination of simple coroots."""
        if c1.scope != c2.scope:
            raise ValueError("Classes of different scopes are not comparable")
        if c1.kappa != c2.kappa:
            return False
        difference = tuple(b - a for a, b in zip(c1.nu, c2.nu))
        coefficients = self.datum.coroot_coefficients_of(difference, c1.scope)
        return coefficients is not None and all(c >= 0 for c in coefficients)


def embed_levi_class(levi_classifier: SigmaClassifier, ambient_classifier: SigmaClassifier,
                     c: SigmaClass) -> SigmaClass:
    """
    Map a class of B(M) to B(G): dominate ν and push κ through the quotient map.
    """
    datum = ambient_classifier.datum
    nu, _ = datum.dominant_representative(c.nu)
    translation = levi_classifier.presentation.preimage(c.kappa)
    kappa = ambient_classifier.presentation.point(translation)
    return SigmaClass(kappa, NewtonPoint(nu), ambient_classifier.scope)


def sort_classes(classes: Iterable[SigmaClass]) -> List[SigmaClass]:
    return sorted(set(classes))


def maximal_classes(classifier: SigmaClassifier, classes: Iterable[SigmaClass]) -> List[SigmaClass]:
    classes = sort_classes(classes)
    return [c for c in classes
            if not any(d != c and classifier.dominance_leq(c, d) for d in classes)]
