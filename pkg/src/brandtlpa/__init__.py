"""Exact computation in Leavitt and Cohn path algebras with their
canonical Brandt-semigroup gradings."""

__version__ = "0.1.0"
