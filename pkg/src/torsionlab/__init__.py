"""Desk-scale computations with Gabriel filters, silting and cosilting modules over commutative rings."""

__version__ = "0.1.0"
