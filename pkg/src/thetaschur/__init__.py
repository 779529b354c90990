"""Exact engine for the type B/C q-Schur algebras, their stabilized limit
algebras and canonical bases, with a finite-field flag-variety oracle."""

from ._kernel import IMPLEMENTATION as KERNEL

__version__ = "0.1.0"
__all__ = ["KERNEL", "__version__"]
