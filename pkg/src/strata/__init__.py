"""Stratification data of the hyperkähler quotients D(g): root subsystems, orbits, posets."""

__version__ = "0.1.0"
