"""Convex RP^2 surfaces: reflection groups, root systems and bulging deformations."""
__version__ = "0.1.0"
