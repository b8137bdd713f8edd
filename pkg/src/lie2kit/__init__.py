"""Exact computations with Lie 2-algebras, their cohomology and crossed modules."""
