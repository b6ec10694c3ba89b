"""Exact graded symplectic calculus on differential forms over coordinate
charts: even and odd graded symplectic structures, graded Hamiltonian vector
fields, and the associated graded Poisson brackets, all over exact rational
arithmetic."""

__version__ = "0.1.0"
