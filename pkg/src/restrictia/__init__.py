"""Exact-arithmetic tools for diagonal restrictions of Hilbert Eisenstein series.

Subpackages follow the pipeline: fieldcore (totally real field data),
idealarith (fractional ideals in HNF, prime splitting, divisor sums),
latticeenum (Fincke-Pohst enumeration), qseries (exact q-expansions of
level-one modular forms), cubicforms (binary cubic forms and cusp classes),
restrict (Siegel zeta values and restriction q-expansions), petersson
(inner products against Delta).
"""

__version__ = "0.1.0"
