"""Exact-rational symbolic engine for homotopical algebra: homotopy
transfer of A-infinity coalgebra structures, effective L-infinity algebras
with Maurer-Cartan theory, gauge and polynomial-form homotopies, the free
cylinder Lie algebra, and convolution structures on Hom-spaces.

All arithmetic is exact over the rationals; every infinite series is
truncated by an explicit, caller-visible cap.
"""

__version__ = "0.1.0"
