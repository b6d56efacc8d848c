"""Approximate and exact maximum clique on geometric intersection graphs."""
__version__ = "0.1.0"
