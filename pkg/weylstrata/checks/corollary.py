"""
Newton points of B(G)_x are congruent modulo Φ_J∨

For every alcove pair (J, w) of x, normalized or not, all pairwise
differences of Newton points in B(G)_x lie in the rational span of the
coroots of J, and <ν(b_x) - ν(b), 2ρ - 2ρ_J> = 0 for the generic class b_x.
Whether the differences even lie in the integral coroot lattice ZΦ_J∨ is
tallied as data.
"""

import itertools
import logging

from weylstrata.algebra.affine_weyl import ExtAffineElement
from weylstrata.checks.base_check import BaseCheck, CheckOutcome
from weylstrata.utils.serialization import rational_to_str

logger = logging.getLogger(__name__)


class CorollaryCheck(BaseCheck):
    """Checks the Newton point congruence on all alcove pairs."""

    name = "corollary"

    def check_element(self, x: ExtAffineElement) -> CheckOutcome:
        outcome = CheckOutcome()
        ambient = self.ambient
        datum = ambient.datum
        classes = ambient.engine.b_of_x(x)
        generic = ambient.engine.generic_class(x)
        chamber = {c: ambient.classifier.antidominant(c) for c in classes}

        for pair in ambient.detector.enumerate_all_pairs(x):
            outcome.count("alcove_pairs")
            for c1, c2 in itertools.combinations(classes, 2):
                difference = tuple(a - b for a, b in zip(chamber[c1], chamber[c2]))
                coefficients = datum.coroot_coefficients_of(difference, pair.J)
                if coefficients is None:
                    outcome.counterexamples.append(self.counterexample(
                        x, "Newton points not congruent modulo the coroots of J",
                        pair=self.pair_json(pair),
                        difference=[rational_to_str(v) for v in difference],
                    ))
                elif all(c.denominator == 1 for c in coefficients):
                    outcome.count("lattice_congruent")
                else:
                    outcome.count("rational_only")

            levi = datum.levi(pair.J)
            weight = tuple(a - b for a, b in zip(datum.rho2, levi.rho2))
            for c in classes:
                difference = tuple(a - b for a, b in zip(chamber[generic], chamber[c]))
                if datum.pair(difference, weight) != 0:
                    outcome.counterexamples.append(self.counterexample(
                        x, "generic class pairs nontrivially with 2ρ - 2ρ_J",
                        pair=self.pair_json(pair),
                        difference=[rational_to_str(v) for v in difference],
                    ))
        return outcome
