"""Toric quiver cells: exact lattice-polytope toolkit for flow polytopes of quivers.

Quiver polytopes, their unit cells, compressed polytopes, generation degree of
toric ideals and the classification of low-dimensional cells.
"""

__version__ = "0.1.0"
