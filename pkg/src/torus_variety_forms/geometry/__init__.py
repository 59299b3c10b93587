"""Exact computations on curves, polyhedral divisors and lattices."""
