"""hforms: exact computer algebra for h-deformed binary forms.

A braided module algebra over an ordered index set with canonical PBW
rewriting, the deformed sl(2) action, bracket calculus, the symbolic method
for invariants/covariants, twisted localization, quadratic/cubic solvers in
central extensions, differential modules, and the algebraic identity chain
behind Abel-style differential sums -- all over Q(eps)[h] with exact
arithmetic.
"""
from .scalars import CycRat, Scalar
from .pbw import PBWPoly, x, y, dx, dy

__version__ = "0.1.0"

__all__ = ["CycRat", "Scalar", "PBWPoly", "x", "y", "dx", "dy", "__version__"]
