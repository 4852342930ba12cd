"""Exact computation of Killing and conformal Killing tensors on metric Lie algebras."""
