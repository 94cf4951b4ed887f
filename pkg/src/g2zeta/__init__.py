"""Exact verification engine for the arithmetic of binary cubic forms, local
zeta polynomials, Weyl-word intertwining operators, and gamma-factor algebra,
with controlled-precision quadrature for the archimedean identities."""

__version__ = "0.1.0"
