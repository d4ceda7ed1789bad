"""Reduction types of CM abelian varieties, elliptic products and Fermat hypersurfaces at primes."""

__version__ = "0.1.0"
