"""exceis: exact verification of Weyl coset censuses, degenerate Eisenstein
constant-term ledgers, archimedean multiplier recipes, and octonion/Jordan
algebra identities."""

from .exactnum import AffineForm, Poly, Rational, RatFunc, pochhammer
from .rootsys import ParabolicSpec, RootSystem
from .eiscalc import (CoordVector, LambdaTrace, ZetaFactor, ZetaProduct,
                      apply_word, gk_cfunction, order_report, rational_cfunction,
                      shifted_exponent)
from .config import load_config

__all__ = [
    "AffineForm", "Poly", "Rational", "RatFunc", "pochhammer",
    "ParabolicSpec", "RootSystem",
    "CoordVector", "LambdaTrace", "ZetaFactor", "ZetaProduct",
    "apply_word", "gk_cfunction", "order_report", "rational_cfunction",
    "shifted_exponent", "load_config",
]

__version__ = "0.1.0"
