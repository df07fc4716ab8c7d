"""infint: convex analysis of integral functionals on finite atom spaces.

The package evaluates and cross-checks pointwise interchange identities
for functionals of the form x -> sum_i mu_i * f_i(x_i): infima, Legendre
conjugates, subdifferentials, Moreau envelopes, proximal points, and
recession slopes all reduce to per-atom operations, and every reduction is
verified against an independent route (closed forms against brute force,
fast transforms against quadratic oracles).
"""

from .extreal import MINUS_INF, PLUS_INF

__all__ = ["PLUS_INF", "MINUS_INF"]
__version__ = "0.1.0"
