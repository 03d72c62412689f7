"""Cost model and reversible-arithmetic simulator for windowed, coset-encoded
modular exponentiation on a surface-code quantum computer."""

__version__ = "0.1.0"
