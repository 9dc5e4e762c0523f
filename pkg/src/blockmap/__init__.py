"""Block decompositions of planar maps: exact series, brute-force oracles,
critical points and exponent estimates."""

__version__ = "0.1.0"
