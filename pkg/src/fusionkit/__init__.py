"""Finite p-local group theory at desk scale: fusion and linking systems,
double Burnside modules and mod-p invariant theory."""

__version__ = "0.1.0"
