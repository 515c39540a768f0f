"""
Class polynomials of x against those of x̃ in the Levi group

Besides the correspondence f_{x,·} = f_{x̃,·} pushed through B(M) → B(G),
the polynomials of every element sum to 1 at q = 1, have degree at most
ℓ(x) and are supported exactly on B(G)_x.
"""

import logging
from typing import Dict

import sympy

from weylstrata.algebra.affine_weyl import ExtAffineElement
from weylstrata.algebra.dl_reduction import q
from weylstrata.algebra.newton_kottwitz import SigmaClass, embed_levi_class
from weylstrata.checks.base_check import BaseCheck, CheckOutcome
from weylstrata.utils.serialization import class_to_dict

logger = logging.getLogger(__name__)


def _render(polynomials: Dict[SigmaClass, sympy.Poly]):
    return [{"class": class_to_dict(c), "poly": str(p.as_expr())} for c, p in sorted(polynomials.items())]


class ClassPolyCheck(BaseCheck):
    """Checks class polynomial invariants and the Levi correspondence."""

    name = "classpoly"

    def check_element(self, x: ExtAffineElement) -> CheckOutcome:
        outcome = CheckOutcome()
        ambient = self.ambient
        length = ambient.group.length(x)
        polynomials = ambient.engine.class_polynomials(x)

        total = sum(int(p.eval(1)) for p in polynomials.values())
        if total != 1:
            outcome.counterexamples.append(self.counterexample(
                x, "class polynomials do not sum to 1 at q = 1", polys=_render(polynomials)))
        if any(p.degree() > length for p in polynomials.values()):
            outcome.counterexamples.append(self.counterexample(
                x, "class polynomial of degree above the length", polys=_render(polynomials)))
        if any(p.is_zero for p in polynomials.values()) or sorted(polynomials) != ambient.engine.b_of_x(x):
            outcome.counterexamples.append(self.counterexample(
                x, "class polynomials not supported on B(G)_x", polys=_render(polynomials)))

        for pair in ambient.detector.enumerate_alcove_pairs(x):
            outcome.count("alcove_pairs")
            levi = self.levi(pair.J)
            x_tilde = ambient.detector.x_tilde(x, pair.w)
            pushed: Dict[SigmaClass, sympy.Poly] = {}
            for c, p in levi.engine.class_polynomials(x_tilde).items():
                image = embed_levi_class(levi.classifier, ambient.classifier, c)
                pushed[image] = pushed.get(image, sympy.Poly(0, q, domain=sympy.ZZ)) + p
            pushed = {c: p for c, p in pushed.items() if not p.is_zero}
            if pushed != polynomials:
                outcome.counterexamples.append(self.counterexample(
                    x, "class polynomials of x and x̃ differ",
                    pair=self.pair_json(pair), polys_g=_render(polynomials), polys_m=_render(pushed),
                ))
        return outcome
