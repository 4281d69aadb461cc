"""Exact symbolic verification of noncommutative determinant identities:
column determinants, decomplexified Capelli identities, holomorphic
factorization, CSS-type generalizations and the Cayley identity family.
"""

__version__ = "0.1.0"
