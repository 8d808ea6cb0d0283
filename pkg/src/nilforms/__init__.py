"""Exact exterior calculus and torsion-connection checks on nilpotent Lie coframes."""

__version__ = "0.1.0"
