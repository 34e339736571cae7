"""Mod-p cohomology of discrete groups against their lower exponent-p central quotient towers."""

__version__ = "0.1.0"
