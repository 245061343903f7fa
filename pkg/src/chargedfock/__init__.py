"""Exact operator algebra on level-truncated charged boson Fock spaces.

Sector states are indexed by integer partitions, scalars stay rational (or
Gaussian rational) end to end, and every truncation drop is tracked so the
verification suites can tell an algebraic failure from a window artifact.
"""

__version__ = "0.1.0"
