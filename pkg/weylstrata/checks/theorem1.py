"""
Bijectivity of B(M)_x̃ → B(G)_x for alcove elements

For every normalized alcove pair (J, w) of x, the classes of B(M)_x̃ are
computed by reduction inside the Levi group and pushed to G. The image must
be B(G)_x, the map must be injective, all classes of B(M)_x̃ share the
Kottwitz point of x̃ and the Newton points agree as rational vectors.
Newton points are compared in the chamber of the base alcove, that is the
M-antidominant representative against the G-antidominant one.
"""

import logging
from typing import Any, Dict, List, Set, Tuple

from weylstrata.algebra.affine_weyl import ExtAffineElement
from weylstrata.algebra.alcove import AlcoveDetector, AlcovePair
from weylstrata.algebra.newton_kottwitz import SigmaClass, embed_levi_class
from weylstrata.checks.base_check import BaseCheck, CheckOutcome
from weylstrata.utils.serialization import rational_to_str

logger = logging.getLogger(__name__)


class Theorem1Check(BaseCheck):
    """Checks the Levi correspondence of B(G)_x on every normalized alcove pair."""

    name = "theorem1"

    #: n used for the twisted power x^{σ,n}
    twisted_power = 2

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._power_detector = None

    @property
    def power_detector(self) -> AlcoveDetector:
        """Alcove detection relative to σ^n."""
        if self._power_detector is None:
            self._power_detector = AlcoveDetector(self.ambient.group, power=self.twisted_power)
        return self._power_detector

    def compare_pair(self, x: ExtAffineElement, pair: AlcovePair,
                     b_g: Set[SigmaClass]) -> List[Tuple[str, Dict[str, Any]]]:
        """
        Compare B(M)_x̃ with B(G)_x for one alcove pair.

        Returns:
            A list of (reason, details) for every violated property
        """
        ambient = self.ambient
        levi = self.levi(pair.J)
        x_tilde = ambient.detector.x_tilde(x, pair.w)
        b_m = levi.engine.b_of_x(x_tilde)
        images = {c: embed_levi_class(levi.classifier, ambient.classifier, c) for c in b_m}

        problems = []
        image_set = set(images.values())
        if image_set != b_g:
            problems.append(("image of B(M) differs from B(G)_x",
                             {"b_m": self.classes_json(b_m), "b_g": self.classes_json(b_g)}))
        if len(image_set) != len(b_m):
            problems.append(("map B(M) -> B(G) is not injective", {"b_m": self.classes_json(b_m)}))

        kappa_m = levi.classifier.kottwitz_point(x_tilde)
        if any(c.kappa != kappa_m for c in b_m):
            problems.append(("classes of B(M) have different Kottwitz points", {"b_m": self.classes_json(b_m)}))

        for c, image in sorted(images.items()):
            nu_m = levi.classifier.antidominant(c)
            nu_g = ambient.classifier.antidominant(image)
            if nu_m != nu_g:
                problems.append(("Newton points of M and G differ", {
                    "nu_m": [rational_to_str(v) for v in nu_m],
                    "nu_g": [rational_to_str(v) for v in nu_g],
                }))
        return problems

    def check_element(self, x: ExtAffineElement) -> CheckOutcome:
        outcome = CheckOutcome()
        ambient = self.ambient
        b_g = set(ambient.engine.b_of_x(x))
        power = ambient.classifier.twisted_power(x, self.twisted_power)

        for pair in ambient.detector.enumerate_alcove_pairs(x):
            outcome.count("alcove_pairs")
            if pair.trivial:
                outcome.count("trivial_pairs")
            for reason, details in self.compare_pair(x, pair, b_g):
                outcome.counterexamples.append(self.counterexample(x, reason, pair=self.pair_json(pair), **details))
            if not self.power_detector.is_alcove_element(power, pair.J, pair.w):
                outcome.counterexamples.append(self.counterexample(
                    x, "twisted power is not an alcove element for the same pair", pair=self.pair_json(pair)))

        # non-normalized pairs are tallied only
        for pair in ambient.detector.enumerate_all_pairs(x):
            if pair.normalized:
                continue
            outcome.count("non_normalized_pairs")
            if self.compare_pair(x, pair, b_g):
                outcome.count("non_normalized_violations")
        return outcome
