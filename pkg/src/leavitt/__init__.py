"""Exact computer algebra for Leavitt path algebras of polynomial growth.

Subpackages cover the scalar fields, directed-graph combinatorics, the
normal-form rewriting engine, the ideal-chain structure report, the cycle
isomorphism onto matrices over Laurent polynomials, the Jacobson algebra
with its almost-Toeplitz matrix model, and automorphism/involution tools.
"""

__version__ = "0.1.0"
