"""Finite shift dynamics on Hom(K, Sigma) for a knot commutator subgroup K
and a finite abelian group Sigma."""

__version__ = "0.1.0"
