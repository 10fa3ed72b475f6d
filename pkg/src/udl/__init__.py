"""udl: unit-distance lower-bound toolkit.

Builds square-grid point configurations whose unit distances come from
Gaussian-integer factorizations, enumerates those distances exactly, and
checks the counting bounds (path products, solution-count bounds, Chebyshev
sums over progressions) that tie the construction together.
"""

__version__ = "0.1.0"
