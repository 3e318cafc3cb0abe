"""Witness polynomials and certified norm bounds on the 2-torus.

Everything lives in the compiled module; this package only re-exports it.
Exact values cross the boundary as fractions.Fraction, frequencies as
(int, int) pairs.
"""

from ._ornstein import *  # noqa: F401,F403
from ._ornstein import __version__  # noqa: F401
