"""Exact invariants of Bott towers.

Subpackages cover the tower groupoid (core), integer cohomology and
characteristic classes (cohomology), fans, cones and Demazure roots
(fan), the stage-3 diffeomorphism classification (topology3), symplectic
compatibility counts (symplectic), admissible extremal profiles
(admissible) and the square-fiber almost-Kahler system (almostkahler).
"""

from .core import BottMatrix

__all__ = ["BottMatrix"]
__version__ = "0.1.0"
