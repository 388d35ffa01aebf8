"""Exact alcove calculus for extended affine Weyl groups of GL_n,
Serre-weight presentations, and explicit local-model chart identities."""

__version__ = "0.1.0"
