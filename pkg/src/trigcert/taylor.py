"""Directional Taylor segments for sine and cosine with certified validity.

A degree-n truncation of the sine or cosine series bounds the function from
one side on [0, sqrt((n+3)(n+4))]; which side depends only on n mod 4.  The
generators below refuse a direction that does not match the degree class:
silently flipping the inequality would make downstream "proofs" unsound.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .poly import Poly
from .scalar import NumericValue, Sign, scalar_sign


class TrigFunc(enum.Enum):
    SIN = "sin"
    COS = "cos"


class Direction(enum.Enum):
    UPPER = "upper"
    LOWER = "lower"

    def flipped(self) -> "Direction":
        return Direction.LOWER if self is Direction.UPPER else Direction.UPPER


class DirectionMismatchError(ValueError):
    """Requested direction is not the one the degree class provides."""


def direction_for(func: TrigFunc, degree: int) -> Direction:
    """Side of the function the degree-n segment lies on (for t >= 0)."""
    if func is TrigFunc.SIN:
        if degree % 2 == 0:
            raise ValueError("sine segments have odd degree")
        return Direction.UPPER if degree % 4 == 1 else Direction.LOWER
    if degree % 2 == 1:
        raise ValueError("cosine segments have even degree")
    return Direction.UPPER if degree % 4 == 0 else Direction.LOWER


@dataclass(frozen=True)
class TaylorBound:
    func: TrigFunc
    direction: Direction
    degree: int
    poly: Poly
    validity_radius_sq: Fraction

    def __str__(self) -> str:
        return f"{self.func.value}[{self.degree},{self.direction.value}]"


def sin_bound(n: int, direction: Direction) -> TaylorBound:
    """Degree-n sine segment; n odd, direction must match n mod 4."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"sine segment degree must be a positive odd number, got {n}")
    actual = direction_for(TrigFunc.SIN, n)
    if direction is not actual:
        raise DirectionMismatchError(
            f"degree-{n} sine segment is an {actual.value} bound, not {direction.value}")
    coeffs = [Fraction(0)] * (n + 1)
    for i in range((n - 1) // 2 + 1):
        coeffs[2 * i + 1] = Fraction((-1)**i, math.factorial(2 * i + 1))
    return TaylorBound(TrigFunc.SIN, direction, n, Poly.from_coeffs(coeffs),
                       Fraction((n + 3) * (n + 4)))


def cos_bound(n: int, direction: Direction) -> TaylorBound:
    """Degree-n cosine segment; n even, direction must match n mod 4."""
    if n < 0 or n % 2 == 1:
        raise ValueError(f"cosine segment degree must be a nonnegative even number, got {n}")
    actual = direction_for(TrigFunc.COS, n)
    if direction is not actual:
        raise DirectionMismatchError(
            f"degree-{n} cosine segment is an {actual.value} bound, not {direction.value}")
    coeffs = [Fraction(0)] * (n + 1)
    for i in range(n // 2 + 1):
        coeffs[2 * i] = Fraction((-1)**i, math.factorial(2 * i))
    return TaylorBound(TrigFunc.COS, direction, n, Poly.from_coeffs(coeffs),
                       Fraction((n + 3) * (n + 4)))


def make_bound(func: TrigFunc, n: int, direction: Direction) -> TaylorBound:
    return sin_bound(n, direction) if func is TrigFunc.SIN else cos_bound(n, direction)


def bound_applicable(b: TaylorBound, k: int, sup_x: NumericValue) -> bool:
    """True iff the segment is valid for arguments up to k*sup_x, decided exactly."""
    if k < 1:
        raise ValueError("angle multiplier must be a positive natural")
    if scalar_sign(sup_x) is not Sign.POSITIVE:
        raise ValueError("sup_x must be positive")
    arg_sq = (sup_x * sup_x).scaled(k * k)
    margin = NumericValue.from_fraction(b.validity_radius_sq) - arg_sq
    return scalar_sign(margin) is not Sign.NEGATIVE


def degrees_for(func: TrigFunc, direction: Direction,
                max_degree: int) -> Iterator[int]:
    """Admissible segment degrees for a direction class, ascending."""
    if func is TrigFunc.SIN:
        start = 1 if direction is Direction.UPPER else 3
    else:
        start = 0 if direction is Direction.UPPER else 2
    return iter(range(start, max_degree + 1, 4))
