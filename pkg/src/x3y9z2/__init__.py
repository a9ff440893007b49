"""Exact-arithmetic resolution of x^3 + y^9 = z^2.

Re-executes every computational step behind the primitive solution list:
Mordell's parametrizations of x^3 + v^3 = z^2, cubic descent over etale
algebras, 3-adic local solubility filtering, torsion analysis of the
genus-1 quotients, and an elliptic-curve Chabauty/sieve computation over
the quartic field Q[x]/(x^4 - 2x^3 - 2x + 1).

Everything is computed over exact domains (rationals, number fields,
finite fields, fixed-precision p-adics); no floating point anywhere.
"""

__version__ = "0.1.0"
