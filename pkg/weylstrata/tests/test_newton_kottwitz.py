"""
Tests for the Newton and Kottwitz point module
"""

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from weylstrata.algebra.affine_weyl import AffineWeylGroup
from weylstrata.algebra.newton_kottwitz import (
    SigmaClassifier,
    embed_levi_class,
    maximal_classes,
)
from weylstrata.errors import NewtonError
from weylstrata.tests.conftest import DATA, element
from weylstrata.core.service_registry import get_context


class TestNewtonPoints:
    """Tests for Newton points."""

    def test_a1_fixtures(self, a1):
        classifier = a1.classifier
        assert classifier.newton_point(element(a1, (1,))).nu == (Fraction(1),)
        assert classifier.newton_point(element(a1, (-1,))).nu == (Fraction(1),)
        assert classifier.newton_point(element(a1, (0,), [0])).nu == (Fraction(0),)
        assert classifier.newton_point(element(a1, (-2,), [0])).nu == (Fraction(0),)

    def test_twisted_power_with_frobenius(self, a2_flip):
        """Test that the twisted power of s1 under the flip is a Coxeter element."""
        classifier = a2_flip.classifier
        x = element(a2_flip, (0, 0), [0])
        assert classifier.twisted_power(x, 2).finite == a2_flip.datum.from_word([0, 1])
        assert classifier.is_basic(classifier.class_of(x))

    def test_frobenius_averages_translations(self, a1xa1_swap):
        """Test that t^(1,0) under the swap has Newton point (1/2, 1/2)."""
        nu = a1xa1_swap.classifier.newton_point(element(a1xa1_swap, (1, 0))).nu
        assert nu == (Fraction(1, 2), Fraction(1, 2))

    def test_newton_points_are_dominant(self, context, datum_name):
        datum = context.datum
        for x in context.group.elements_up_to(2):
            nu = context.classifier.newton_point(x).nu
            assert all(datum.pair(nu, alpha) >= 0 for alpha in datum.simple_roots)

    def test_newton_point_is_bounded_by_length(self, context):
        """Test <ν, 2ρ> <= ℓ(x)."""
        datum = context.datum
        for x in context.group.elements_up_to(3):
            nu = context.classifier.newton_point(x).nu
            assert datum.pair(nu, datum.rho2) <= context.group.length(x)

    def test_power_cap(self, a1):
        classifier = SigmaClassifier(a1.group)
        classifier._cap = 0
        with pytest.raises(NewtonError):
            classifier.newton_point(element(a1, (0,), [0]))

    def test_twisted_power_needs_positive_n(self, a1):
        with pytest.raises(ValueError):
            a1.classifier.twisted_power(a1.group.identity, 0)


class TestKottwitzPoints:
    """Tests for Kottwitz points."""

    def test_simply_connected_is_trivial(self, a1, a2_flip):
        assert a1.classifier.kottwitz_point(element(a1, (3,))).values == ()
        assert a2_flip.classifier.presentation.moduli == ()

    def test_adjoint_a1(self, a1_ad):
        """Test that X_*/ZΦ∨ is Z/2 for adjoint A1."""
        classifier = a1_ad.classifier
        assert classifier.presentation.moduli == (2,)
        assert classifier.kottwitz_point(element(a1_ad, (1,))).values == (1,)
        assert classifier.kottwitz_point(element(a1_ad, (2,))).values == (0,)

    def test_gl2_is_free(self, gl2):
        """Test that the Kottwitz point of GL2 is the determinant, up to sign."""
        classifier = gl2.classifier
        assert classifier.presentation.moduli == (0,)
        k10 = classifier.kottwitz_point(element(gl2, (1, 0)))
        k01 = classifier.kottwitz_point(element(gl2, (0, 1)))
        k11 = classifier.kottwitz_point(element(gl2, (1, 1)))
        assert k10 == k01
        assert abs(k10.values[0]) == 1
        assert k11.values[0] == 2 * k10.values[0]

    def test_swap_coinvariants(self, a1xa1_swap):
        assert a1xa1_swap.classifier.presentation.moduli == ()

    def test_preimages(self, context):
        """Test that preimages of Kottwitz points map back to the same point."""
        presentation = context.classifier.presentation
        for x in context.group.elements_up_to(1):
            kappa = context.classifier.kottwitz_point(x)
            assert presentation.point(presentation.preimage(kappa)) == kappa


class TestClasses:
    """Tests for σ-classes, basic classes and the dominance order."""

    def test_basic_class_matches_length_zero_elements(self, context):
        classifier = context.classifier
        for omega in context.group.omega_representatives(radius=1):
            c = classifier.class_of(omega)
            assert classifier.is_basic(c)
            assert classifier.basic_class(c.kappa) == c

    def test_basic_class_of_gl2(self, gl2):
        classifier = gl2.classifier
        kappa = classifier.kottwitz_point(element(gl2, (1, 0)))
        assert classifier.basic_class(kappa).nu == (Fraction(1, 2), Fraction(1, 2))

    def test_basic_class_needs_ambient_group(self, a2):
        classifier = SigmaClassifier(AffineWeylGroup(a2.datum, (0,)))
        with pytest.raises(NewtonError):
            classifier.basic_class(classifier.kottwitz_point(classifier.group.identity))

    def test_dominance_order(self, a1):
        classifier = a1.classifier
        basic = classifier.class_of(a1.group.identity)
        translation = classifier.class_of(element(a1, (1,)))
        assert classifier.dominance_leq(basic, translation)
        assert not classifier.dominance_leq(translation, basic)
        assert maximal_classes(classifier, [basic, translation]) == [translation]

    def test_different_kappa_is_incomparable(self, a1_ad):
        classifier = a1_ad.classifier
        tau = next(w for w in a1_ad.group.omega_representatives(0) if w != a1_ad.group.identity)
        c0 = classifier.class_of(a1_ad.group.identity)
        c1 = classifier.class_of(tau)
        assert not classifier.dominance_leq(c0, c1)
        assert maximal_classes(classifier, [c0, c1]) == sorted([c0, c1])

    def test_antidominant_representative(self, a1):
        c = a1.classifier.class_of(element(a1, (1,)))
        assert a1.classifier.antidominant(c) == (Fraction(-1),)

    def test_embed_torus_class(self, gl2):
        """Test B(T) → B(G) on the class of t^(0,1)."""
        torus = get_context(DATA["GL2"], ())
        c = torus.classifier.class_of(element(torus, (0, 1)))
        assert c.nu == (Fraction(0), Fraction(1))
        image = embed_levi_class(torus.classifier, gl2.classifier, c)
        assert image == gl2.classifier.class_of(element(gl2, (1, 0)))

    @pytest.mark.parametrize("name, J", [("A2_sc", (0,)), ("A2_sc", (1,)), ("C2", (0,)), ("C2", (1,)), ("G2", (1,))])
    def test_embedding_commutes_with_class_of(self, name, J):
        """Test that a translation's class in M maps to its class in G."""
        ambient = get_context(DATA[name])
        levi = get_context(DATA[name], J)
        for mu in [(0, 0), (1, 0), (0, 1), (1, -1), (-2, 1), (2, 2), (-1, -1)]:
            c = levi.classifier.class_of(levi.group.element(mu))
            image = embed_levi_class(levi.classifier, ambient.classifier, c)
            assert image == ambient.classifier.class_of(ambient.group.element(mu))


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(
    name=st.sampled_from(sorted(DATA)),
    translation=st.lists(st.integers(-3, 3), min_size=2, max_size=2),
    word=st.lists(st.integers(0, 1), max_size=6),
    conjugator=st.lists(st.integers(0, 1), max_size=4),
)
def test_newton_and_kottwitz_are_class_invariants(name, translation, word, conjugator):
    """ν does not depend on the power used, and (ν, κ) is constant on σ-conjugacy classes."""
    context = get_context(DATA[name])
    group, classifier = context.group, context.classifier
    rank = context.datum.lattice_rank
    x = group.compose(group.element(translation[:rank] + [0] * (rank - len(translation[:rank]))),
                      group.from_word([label for label in word if label in group.labels]))
    y = group.from_word([label for label in conjugator if label in group.labels])
    assert classifier.newton_point(x, multiple=2) == classifier.newton_point(x)
    assert classifier.class_of(group.sigma_conjugate(y, x)) == classifier.class_of(x)
