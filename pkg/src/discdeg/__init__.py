"""Equivariant Brouwer degree computations for semilinear elliptic systems
on the unit disc with O(2) x Gamma x Z2 symmetry.

The package computes Burnside-ring degrees from a finite symmetry group
Gamma and a Gamma-commuting linearization matrix, and reports guaranteed
orbit types of non-radial and radial solutions.
"""

__version__ = "0.1.0"
