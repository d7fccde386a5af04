"""Finite p-group laboratory for Sylow subgroups of rank-2 Lie type groups."""

__version__ = "0.1.0"
