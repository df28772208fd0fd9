"""Numerical laboratory for GL(2) delta-method identities and exponential-sum bounds."""

__version__ = "0.1.0"
