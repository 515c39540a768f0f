"""
Verification checks run by the sweep harness
"""

from weylstrata.checks.classpoly import ClassPolyCheck
from weylstrata.checks.corollary import CorollaryCheck
from weylstrata.checks.lim import LimCheck
from weylstrata.checks.theorem1 import Theorem1Check

CHECKS = {
    Theorem1Check.name: Theorem1Check,
    CorollaryCheck.name: CorollaryCheck,
    LimCheck.name: LimCheck,
    ClassPolyCheck.name: ClassPolyCheck,
}

__all__ = ["CHECKS", "ClassPolyCheck", "CorollaryCheck", "LimCheck", "Theorem1Check"]
