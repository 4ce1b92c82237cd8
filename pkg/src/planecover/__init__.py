"""Exact-arithmetic engine for (Z/2)^r Galois covers of the projective plane.

Subpackages by layer: ``group`` (bit-vector group and character algebra),
``lattice`` (Picard lattices of blown-up planes), ``cover`` (branch and
building data), ``normalize`` (normalization and resolution), ``invariants``
(chi, K^2, bicanonical class, Riemann-Hurwitz), ``classify`` (case matching
and Cremona reduction), ``census`` and ``cli`` (enumeration and interface).
"""

from .errors import CoverError

__all__ = ["CoverError"]
__version__ = "0.1.0"
