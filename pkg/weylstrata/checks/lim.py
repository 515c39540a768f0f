"""
Emptiness criterion for the basic Newton stratum

For a σ-connected Dynkin diagram the basic class with κ = κ(x) is missing
from B(G)_x exactly when the σ-support of x is not spherical and x is a
(J, w, σ)-alcove element for some J ⊊ Δ. Two consequences are checked along
the way: spherical support forces B(G)_x to be the single basic class, and
the σ-support does not depend on the reduced word used to compute it.
"""

import logging

from weylstrata.algebra.affine_weyl import ExtAffineElement
from weylstrata.checks.base_check import BaseCheck, CheckOutcome
from weylstrata.errors import ConfigurationError

logger = logging.getLogger(__name__)


class LimCheck(BaseCheck):
    """Checks the basic stratum emptiness criterion element by element."""

    name = "lim"

    def initialize(self) -> bool:
        """
        Raises:
            ConfigurationError: If σ does not act transitively on the components
        """
        super().initialize()
        if not self.ambient.detector.is_sigma_connected():
            raise ConfigurationError("The emptiness criterion needs a σ-connected Dynkin diagram")
        return True

    def check_element(self, x: ExtAffineElement) -> CheckOutcome:
        outcome = CheckOutcome()
        ambient = self.ambient
        detector = ambient.detector

        basic = ambient.classifier.basic_class(ambient.classifier.kottwitz_point(x))
        classes = ambient.engine.b_of_x(x)
        basic_missing = basic not in classes
        support = detector.sigma_support(x)
        proper_pairs = detector.enumerate_alcove_pairs(x, include_trivial=False)
        criterion = (not support.spherical) and bool(proper_pairs)

        if basic_missing:
            outcome.count("basic_missing")
        if support.spherical:
            outcome.count("spherical")
        if basic_missing != criterion:
            outcome.counterexamples.append(self.counterexample(
                x, "emptiness criterion disagrees with the reduction",
                basic_missing=basic_missing,
                spherical=support.spherical,
                proper_pairs=[self.pair_json(p) for p in proper_pairs],
            ))
        if support.spherical and classes != [basic]:
            outcome.counterexamples.append(self.counterexample(
                x, "spherical σ-support without a single basic class",
                b_g=self.classes_json(classes),
            ))
        if detector.sigma_support(x, side="right") != support:
            outcome.counterexamples.append(self.counterexample(
                x, "σ-support depends on the reduced word",
                support=sorted(support.labels),
            ))
        return outcome
