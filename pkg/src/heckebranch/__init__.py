"""Seminormal representations of type-B Hecke algebras and their restrictions
to the fixed subalgebras of the involutions sharp, flat and natural."""

__version__ = "0.1.0"
