"""Value domains the bound formulas run over.

Each bound is written once against plain arithmetic operators (+, -, *,
division by a positive integer, multiplication by a Fraction).  A Backend
supplies the ring constants and the equality semantics that differ between
floating point and the exact domains:

* REAL        -- 64-bit floats; weight sums checked within 1e-12.
* RATIONAL    -- fractions.Fraction; everything exact, used as test oracle.
* POLYNOMIAL  -- Polynomial values in a shared parameter p; exact, unordered.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import Polynomial

__all__ = ["Backend", "REAL", "RATIONAL", "POLYNOMIAL"]


@dataclass(frozen=True)
class Backend:
    name: str
    zero: object
    one: object
    exact: bool
    ordered: bool
    weight_tol: float = 0.0

    def is_zero(self, value) -> bool:
        # Exact comparison even for floats: this decides support emptiness,
        # not numerical closeness.
        return value == self.zero

    def sum_is_one(self, total) -> bool:
        if self.exact:
            return total == self.one
        return abs(total - self.one) <= self.weight_tol


REAL = Backend("real", 0.0, 1.0, exact=False, ordered=True, weight_tol=1e-12)
RATIONAL = Backend("rational", Fraction(0), Fraction(1), exact=True, ordered=True)
POLYNOMIAL = Backend("polynomial", Polynomial(), Polynomial((1,)), exact=True, ordered=False)
