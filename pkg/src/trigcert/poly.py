"""Univariate polynomials over Q(pi) with exact coefficient arithmetic.

Coefficients are NumericValue instances (see scalar); the zero polynomial is
the empty coefficient sequence and every stored leading coefficient is
nonzero, so structural equality is mathematical equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .scalar import (
    NumericValue,
    PiScalar,
    RationalInterval,
    ScalarDivisionError,
    make_value,
    scalar_from_text,
    scalar_to_text,
)

CoeffLike = Union[int, Fraction, NumericValue]


class PolyError(Exception):
    pass


class InexactDivisionError(PolyError):
    """Polynomial division left a nonzero remainder (wrong factor hypothesis)."""


class OddTermError(PolyError):
    """Even decimation applied to a polynomial with odd-degree terms."""


def _trim(cs: list[NumericValue]) -> tuple[NumericValue, ...]:
    while cs and cs[-1].is_zero:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class Poly:
    coeffs: tuple[NumericValue, ...]

    @staticmethod
    def of(*coeffs: CoeffLike) -> "Poly":
        return Poly(_trim([make_value(c) for c in coeffs]))

    @staticmethod
    def from_coeffs(coeffs: Iterable[CoeffLike]) -> "Poly":
        return Poly(_trim([make_value(c) for c in coeffs]))

    @staticmethod
    def zero() -> "Poly":
        return Poly(())

    @staticmethod
    def constant(c: CoeffLike) -> "Poly":
        return Poly.of(c)

    @staticmethod
    def x_power(n: int, coeff: CoeffLike = 1) -> "Poly":
        return Poly.from_coeffs([0] * n + [coeff])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> NumericValue:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return NumericValue.zero()

    @property
    def leading(self) -> NumericValue:
        if self.is_zero:
            raise PolyError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(_trim(out))

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero or other.is_zero:
            return Poly(())
        out = [NumericValue.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return Poly(_trim(out))

    def scaled(self, c: CoeffLike) -> "Poly":
        v = make_value(c)
        if v.is_zero:
            return Poly(())
        return Poly(tuple(a * v for a in self.coeffs))

    def derivative(self) -> "Poly":
        if self.degree < 1:
            return Poly(())
        return Poly(_trim([self.coeffs[i].scaled(i) for i in range(1, len(self.coeffs))]))

    def eval(self, at: CoeffLike) -> NumericValue:
        """Exact Horner evaluation."""
        v = make_value(at)
        acc = NumericValue.zero()
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def eval_interval(self, over: RationalInterval, precision_bits: int) -> RationalInterval:
        """Interval-Horner enclosure of {p(x) : x in over}."""
        acc = RationalInterval.point(0)
        for c in reversed(self.coeffs):
            acc = acc * over + c.enclosure(precision_bits)
        return acc

    def reflect_half_pi(self) -> "Poly":
        """Exact substitution x -> pi/2 - x (an involution)."""
        half_pi = Poly.of(NumericValue.pi(1, Fraction(1, 2)), -1)
        acc = Poly.zero()
        for c in reversed(self.coeffs):
            acc = acc * half_pi + Poly.constant(c)
        return acc

    def scale_arg(self, k: int) -> "Poly":
        """Exact substitution x -> k*x for a positive natural k."""
        if k < 1:
            raise ValueError("argument scale must be a positive natural")
        fac = NumericValue.one()
        out = []
        kv = NumericValue.from_fraction(k)
        for c in self.coeffs:
            out.append(c * fac)
            fac = fac * kv
        return Poly(_trim(out))

    def factor_out_x(self) -> tuple[int, "Poly"]:
        """Write p = x^m * q with q(0) != 0."""
        if self.is_zero:
            raise PolyError("cannot factor x out of the zero polynomial")
        m = 0
        while self.coeffs[m].is_zero:
            m += 1
        return m, Poly(self.coeffs[m:])

    def divexact(self, d: "Poly") -> "Poly":
        """Exact quotient p/d; InexactDivisionError if d does not divide p.

        Quotient coefficients must stay representable in Q[pi] localized at
        pi; a non-representable step also raises InexactDivisionError.
        """
        if d.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero:
            return Poly(())
        if self.degree < d.degree:
            raise InexactDivisionError("degree of divisor exceeds degree of dividend")
        rem = list(self.coeffs)
        lead = d.leading
        dd = d.degree
        q = [NumericValue.zero()] * (len(rem) - dd)
        try:
            for i in range(len(rem) - 1, dd - 1, -1):
                c = rem[i] / lead
                q[i - dd] = c
                if not c.is_zero:
                    for j, b in enumerate(d.coeffs):
                        rem[i - dd + j] = rem[i - dd + j] - c * b
        except ScalarDivisionError as exc:
            raise InexactDivisionError(f"quotient not representable: {exc}") from exc
        if any(not c.is_zero for c in rem[:dd]):
            raise InexactDivisionError("nonzero remainder")
        return Poly(_trim(q))

    def even_decimate(self) -> "Poly":
        """Return q with q(x^2) = p(x); requires all odd coefficients zero."""
        for i in range(1, len(self.coeffs), 2):
            if not self.coeffs[i].is_zero:
                raise OddTermError(f"nonzero coefficient at odd degree {i}")
        return Poly(self.coeffs[::2])

    def substitute_square(self) -> "Poly":
        """Return p(x^2) (inverse of even_decimate)."""
        out = []
        for c in self.coeffs:
            out.append(c)
            out.append(NumericValue.zero())
        return Poly(_trim(out[:-1] if out else out))

    def __repr__(self) -> str:
        return f"Poly({poly_to_text(self)!r})"


# ---------------------------------------------------------------------------
# Fixture text format: "degree; c0; c1; ...; cN"
# ---------------------------------------------------------------------------


def poly_to_text(p: Poly) -> str:
    if p.is_zero:
        return "-1"
    parts = [str(p.degree)] + [scalar_to_text(c) for c in p.coeffs]
    return "; ".join(parts)


def poly_from_text(text: str) -> Poly:
    parts = [s.strip() for s in text.strip().split(";")]
    if not parts or parts == [""]:
        raise PolyError("empty polynomial text")
    try:
        degree = int(parts[0])
    except ValueError as exc:
        raise PolyError(f"bad degree field {parts[0]!r}") from exc
    if degree < 0:
        return Poly.zero()
    coeffs = parts[1:]
    if len(coeffs) != degree + 1:
        raise PolyError(f"expected {degree + 1} coefficients, found {len(coeffs)}")
    p = Poly(_trim([scalar_from_text(c) for c in coeffs]))
    if p.degree != degree:
        raise PolyError(f"stated degree {degree} but leading coefficients vanish")
    return p


def poly_from_file(path) -> Poly:
    with open(path, "r", encoding="utf-8") as fh:
        return poly_from_text(fh.read())
