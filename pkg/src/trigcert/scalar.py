"""Exact arithmetic over Q and Q[pi].

Every quantity the prover certifies lives in the field Q(pi).  Values are
represented as a polynomial in pi with rational coefficients divided by a
power of pi (``PiScalar`` / ``NumericValue``), so equality is syntactic and
sign determination is decidable: a nonzero element of Q(pi) is a nonzero real
because pi is transcendental, hence evaluating over a shrinking rational
enclosure of pi must eventually separate the value from zero.

No floating point is used anywhere in this module.
"""
from __future__ import annotations

import enum
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

FractionLike = Union[int, Fraction]

DEFAULT_SIGN_START_BITS = 64
DEFAULT_SIGN_CEILING_BITS = 2**16


class ScalarError(Exception):
    """Base class for scalar-domain errors."""


class PrecisionExceededError(ScalarError):
    """The sign/decimal refinement loop hit its precision ceiling.

    This signals a likely zero value fed through a non-canonical
    representation; it is never returned as a sign.
    """


class ScalarDivisionError(ScalarError):
    """Division result is not representable in Q[pi] localized at pi."""


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    def flipped(self) -> "Sign":
        return Sign(-int(self))

    def __mul__(self, other):  # type: ignore[override]
        if isinstance(other, Sign):
            return Sign(int(self) * int(other))
        return NotImplemented


def _as_fraction(v: FractionLike) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"expected int or Fraction, got {type(v).__name__}")


# ---------------------------------------------------------------------------
# Rational intervals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval with rational endpoints, lo <= hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: [{self.lo}, {self.hi}]")

    @staticmethod
    def point(v: FractionLike) -> "RationalInterval":
        f = _as_fraction(v)
        return RationalInterval(f, f)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, v: FractionLike) -> bool:
        f = _as_fraction(v)
        return self.lo <= f <= self.hi

    def contains_interval(self, other: "RationalInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def __add__(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    def __neg__(self) -> "RationalInterval":
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other: "RationalInterval") -> "RationalInterval":
        return self + (-other)

    def __mul__(self, other: "RationalInterval") -> "RationalInterval":
        products = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
        return RationalInterval(min(products), max(products))

    def scaled(self, c: FractionLike) -> "RationalInterval":
        f = _as_fraction(c)
        if f >= 0:
            return RationalInterval(self.lo * f, self.hi * f)
        return RationalInterval(self.hi * f, self.lo * f)

    def inverse(self) -> "RationalInterval":
        if not self.excludes_zero():
            raise ZeroDivisionError("interval contains zero")
        return RationalInterval(1 / self.hi, 1 / self.lo)

    def power(self, n: int) -> "RationalInterval":
        result = RationalInterval.point(1)
        for _ in range(n):
            result = result * self
        return result


# ---------------------------------------------------------------------------
# Q[pi]
# ---------------------------------------------------------------------------


class PiScalar:
    """Polynomial in pi with rational coefficients, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[FractionLike] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("PiScalar is immutable")

    @staticmethod
    def zero() -> "PiScalar":
        return PiScalar()

    @staticmethod
    def one() -> "PiScalar":
        return PiScalar((1,))

    @staticmethod
    def from_fraction(q: FractionLike) -> "PiScalar":
        return PiScalar((q,))

    @staticmethod
    def pi_power(i: int, coeff: FractionLike = 1) -> "PiScalar":
        if i < 0:
            raise ValueError("pi power must be nonnegative")
        return PiScalar((0,) * i + (coeff,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_rational(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, PiScalar) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("PiScalar", self.coeffs))

    def __add__(self, other: "PiScalar") -> "PiScalar":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PiScalar(out)

    def __neg__(self) -> "PiScalar":
        return PiScalar(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "PiScalar") -> "PiScalar":
        return self + (-other)

    def __mul__(self, other: "PiScalar") -> "PiScalar":
        if self.is_zero or other.is_zero:
            return PiScalar()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return PiScalar(out)

    def scaled(self, q: FractionLike) -> "PiScalar":
        f = _as_fraction(q)
        return PiScalar(tuple(c * f for c in self.coeffs))

    def shifted_up(self, j: int) -> "PiScalar":
        """Multiply by pi^j."""
        if self.is_zero:
            return self
        return PiScalar((Fraction(0),) * j + self.coeffs)

    def pi_valuation(self) -> int:
        """Largest j with pi^j dividing self (0 for the zero scalar)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return 0

    def shifted_down(self, j: int) -> "PiScalar":
        """Divide by pi^j; requires the low j coefficients to vanish."""
        if self.is_zero:
            return self
        if any(c != 0 for c in self.coeffs[:j]):
            raise ScalarDivisionError("not divisible by pi^%d" % j)
        return PiScalar(self.coeffs[j:])

    def divexact(self, other: "PiScalar") -> "PiScalar":
        """Exact polynomial division in pi; raises if the remainder is nonzero."""
        if other.is_zero:
            raise ZeroDivisionError("division by zero PiScalar")
        if self.is_zero:
            return PiScalar()
        if other.is_rational:
            return self.scaled(1 / other.constant())
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        dd = other.degree
        if len(rem) - 1 < dd:
            raise ScalarDivisionError("quotient not representable in Q[pi]")
        q = [Fraction(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i] / lead
            q[i - dd] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i - dd + j] -= c * b
        if any(c != 0 for c in rem[:dd]):
            raise ScalarDivisionError("quotient not representable in Q[pi]")
        return PiScalar(q)

    def enclosure(self, pi_iv: RationalInterval) -> RationalInterval:
        """Interval Horner evaluation at pi ranging over pi_iv."""
        acc = RationalInterval.point(0)
        for c in reversed(self.coeffs):
            acc = acc * pi_iv + RationalInterval.point(c)
        return acc

    def __repr__(self) -> str:
        return f"PiScalar({list(self.coeffs)!r})"


class NumericValue:
    """Element of Q(pi) of the form num / pi^k with num in Q[pi].

    The representation is canonical: k is minimal (num has nonzero constant
    term unless k = 0), and the zero value is PiScalar() / pi^0.  Syntactic
    equality therefore coincides with mathematical equality.
    """

    __slots__ = ("num", "pi_denom_power")

    def __init__(self, num: PiScalar, pi_denom_power: int = 0):
        if pi_denom_power < 0:
            num = num.shifted_up(-pi_denom_power)
            pi_denom_power = 0
        if num.is_zero:
            pi_denom_power = 0
        else:
            v = min(num.pi_valuation(), pi_denom_power)
            if v:
                num = num.shifted_down(v)
                pi_denom_power -= v
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "pi_denom_power", pi_denom_power)

    def __setattr__(self, *a):
        raise AttributeError("NumericValue is immutable")

    @staticmethod
    def zero() -> "NumericValue":
        return NumericValue(PiScalar())

    @staticmethod
    def one() -> "NumericValue":
        return NumericValue(PiScalar.one())

    @staticmethod
    def from_fraction(q: FractionLike) -> "NumericValue":
        return NumericValue(PiScalar.from_fraction(q))

    @staticmethod
    def pi(power: int = 1, coeff: FractionLike = 1) -> "NumericValue":
        if power >= 0:
            return NumericValue(PiScalar.pi_power(power, coeff))
        return NumericValue(PiScalar.from_fraction(coeff), -power)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_rational(self) -> bool:
        return self.pi_denom_power == 0 and self.num.is_rational

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("value is not rational")
        return self.num.constant()

    def __eq__(self, other) -> bool:
        return (isinstance(other, NumericValue) and self.num == other.num
                and self.pi_denom_power == other.pi_denom_power)

    def __hash__(self) -> int:
        return hash(("NumericValue", self.num, self.pi_denom_power))

    def __add__(self, other: "NumericValue") -> "NumericValue":
        k = max(self.pi_denom_power, other.pi_denom_power)
        a = self.num.shifted_up(k - self.pi_denom_power)
        b = other.num.shifted_up(k - other.pi_denom_power)
        return NumericValue(a + b, k)

    def __neg__(self) -> "NumericValue":
        return NumericValue(-self.num, self.pi_denom_power)

    def __sub__(self, other: "NumericValue") -> "NumericValue":
        return self + (-other)

    def __mul__(self, other: "NumericValue") -> "NumericValue":
        return NumericValue(self.num * other.num,
                            self.pi_denom_power + other.pi_denom_power)

    def __truediv__(self, other: "NumericValue") -> "NumericValue":
        if other.is_zero:
            raise ZeroDivisionError("division by zero NumericValue")
        j = other.num.pi_valuation()
        m = other.num.shifted_down(j)
        q = self.num.divexact(m)
        return NumericValue(q, self.pi_denom_power + j - other.pi_denom_power)

    def scaled(self, q: FractionLike) -> "NumericValue":
        return NumericValue(self.num.scaled(q), self.pi_denom_power)

    def __pow__(self, n: int) -> "NumericValue":
        if n < 0:
            return NumericValue.one() / self**(-n)
        result = NumericValue.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def enclosure(self, precision_bits: int) -> RationalInterval:
        """Rational enclosure of the real value at the given pi precision."""
        pi_iv = pi_enclosure(precision_bits)
        iv = self.num.enclosure(pi_iv)
        if self.pi_denom_power:
            iv = iv * pi_iv.power(self.pi_denom_power).inverse()
        return iv

    def __repr__(self) -> str:
        return f"NumericValue({scalar_to_text(self)!r})"


# ---------------------------------------------------------------------------
# Enclosures of pi
# ---------------------------------------------------------------------------

_pi_lock = threading.Lock()
# series state for atan(1/5) and atan(1/239): number of terms summed and the
# two partial sums S_m, S_{m+1} needed to bracket
_pi_state = {"m": 0, "brackets": {}}


def _atan_inv_brackets(q: int, m: int) -> RationalInterval:
    """Bracket of atan(1/q) from m and m+1 terms of the alternating series."""
    s = Fraction(0)
    term_next = Fraction(0)
    sign = 1
    for i in range(m):
        s += Fraction(sign, (2 * i + 1) * q**(2 * i + 1))
        sign = -sign
    term_next = Fraction(sign, (2 * m + 1) * q**(2 * m + 1))
    s2 = s + term_next
    return RationalInterval(min(s, s2), max(s, s2))


def _pi_bracket(m: int) -> RationalInterval:
    a5 = _atan_inv_brackets(5, m)
    a239 = _atan_inv_brackets(239, m)
    lo = 16 * a5.lo - 4 * a239.hi
    hi = 16 * a5.hi - 4 * a239.lo
    return RationalInterval(lo, hi)


def pi_enclosure(precision_bits: int) -> RationalInterval:
    """Rational interval containing pi with width <= 2^-precision_bits.

    Uses Machin's identity pi = 16 atan(1/5) - 4 atan(1/239); both series are
    alternating with strictly decreasing terms, so consecutive partial sums
    bracket the limits.  Enclosures are nested: more terms give a sub-interval,
    and the term count grows monotonically with the requested precision.
    """
    if precision_bits < 4:
        raise ValueError("precision_bits must be >= 4")
    target = Fraction(1, 2**precision_bits)
    with _pi_lock:
        cached = _pi_state["brackets"].get(precision_bits)
        if cached is not None:
            return cached
        # 1/5 dominates the bracket width: ~ 2 * 16 / (5^(2m+1) (2m+1))
        m = max(_pi_state["m"], 2 + precision_bits * 10 // 46)
        iv = _pi_bracket(m)
        while iv.width > target:
            m += 2
            iv = _pi_bracket(m)
        _pi_state["m"] = m
        _pi_state["brackets"][precision_bits] = iv
        return iv


# ---------------------------------------------------------------------------
# Sign determination and decimal rendering
# ---------------------------------------------------------------------------


def scalar_sign(v: NumericValue,
                ceiling_bits: int = DEFAULT_SIGN_CEILING_BITS) -> Sign:
    """Exact sign of v, purely syntactic at zero.

    Nonzero values are separated from zero by evaluating the numerator over
    pi enclosures at doubling precision (the pi^k denominator is positive and
    cannot affect the sign).  Hitting the ceiling raises PrecisionExceededError
    rather than guessing.
    """
    if v.is_zero:
        return Sign.ZERO
    num = v.num
    if num.is_rational:
        return Sign.POSITIVE if num.constant() > 0 else Sign.NEGATIVE
    bits = DEFAULT_SIGN_START_BITS
    while bits <= ceiling_bits:
        iv = num.enclosure(pi_enclosure(bits))
        if iv.lo > 0:
            return Sign.POSITIVE
        if iv.hi < 0:
            return Sign.NEGATIVE
        bits *= 2
    raise PrecisionExceededError(
        f"sign of {scalar_to_text(v)} not separated at {ceiling_bits} bits")


def compare(a: NumericValue, b: NumericValue,
            ceiling_bits: int = DEFAULT_SIGN_CEILING_BITS) -> Sign:
    """Sign of a - b."""
    return scalar_sign(a - b, ceiling_bits)


TRUNCATION_MARK = "…"


def scalar_to_decimal(v: NumericValue, digits: int,
                      ceiling_bits: int = DEFAULT_SIGN_CEILING_BITS) -> str:
    """Certified decimal rendering with `digits` fractional digits.

    The stated digits are exact decimal-truncation digits of |v| (truncation
    toward zero), certified by an enclosure; a trailing "…" marks a truncated
    (inexact) rendering, its absence means the decimal is exact.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    scale = 10**digits
    sgn = scalar_sign(v, ceiling_bits)
    if sgn is Sign.ZERO:
        return "0." + "0" * digits
    prefix = "-" if sgn is Sign.NEGATIVE else ""
    if v.is_rational:
        r = abs(v.as_fraction())
        n = (r.numerator * scale) // r.denominator
        exact = (r.numerator * scale) % r.denominator == 0
        return prefix + _format_scaled(n, digits) + ("" if exact else TRUNCATION_MARK)
    bits = DEFAULT_SIGN_START_BITS
    while bits <= ceiling_bits:
        iv = v.enclosure(bits)
        lo, hi = (iv.lo, iv.hi) if sgn is Sign.POSITIVE else (-iv.hi, -iv.lo)
        if lo > 0:
            nlo = (lo.numerator * scale) // lo.denominator
            nhi = (hi.numerator * scale) // hi.denominator
            if nlo == nhi:
                return prefix + _format_scaled(nlo, digits) + TRUNCATION_MARK
        bits *= 2
    raise PrecisionExceededError(
        f"decimal digits of {scalar_to_text(v)} not certified at {ceiling_bits} bits")


def _format_scaled(n: int, digits: int) -> str:
    scale = 10**digits
    return f"{n // scale}.{n % scale:0{digits}d}"


def decimal_prefix_of_interval(iv: RationalInterval, digits: int) -> str | None:
    """Certified truncation digits shared by every value in iv, or None.

    Only defined for intervals that do not straddle zero.
    """
    if iv.lo <= 0 <= iv.hi:
        if iv.lo == iv.hi == 0:
            return "0." + "0" * digits
        return None
    neg = iv.hi < 0
    lo, hi = (-iv.hi, -iv.lo) if neg else (iv.lo, iv.hi)
    scale = 10**digits
    nlo = (lo.numerator * scale) // lo.denominator
    nhi = (hi.numerator * scale) // hi.denominator
    if nlo != nhi:
        return None
    return ("-" if neg else "") + _format_scaled(nlo, digits)


# ---------------------------------------------------------------------------
# Certified sine/cosine enclosures at rational points (sampling support)
# ---------------------------------------------------------------------------


def sin_enclosure(t: FractionLike, precision_bits: int = 64) -> RationalInterval:
    """Certified enclosure of sin(t) for rational t via the alternating series."""
    return _trig_enclosure(_as_fraction(t), precision_bits, odd=True)


def cos_enclosure(t: FractionLike, precision_bits: int = 64) -> RationalInterval:
    """Certified enclosure of cos(t) for rational t via the alternating series."""
    return _trig_enclosure(_as_fraction(t), precision_bits, odd=False)


def _trig_enclosure(t: Fraction, precision_bits: int, odd: bool) -> RationalInterval:
    eps = Fraction(1, 2**precision_bits)
    t2 = t * t
    if odd:
        term = t
        n = 1
    else:
        term = Fraction(1)
        n = 0
    s = term
    while True:
        # next term of the series, degree n+2
        term = -term * t2 / ((n + 1) * (n + 2))
        n += 2
        # once terms decrease in magnitude the tail is bounded by the first
        # omitted term, so we can stop as soon as it is small enough
        if abs(term) < eps and t2 < (n + 1) * (n + 2):
            lo = s + min(term, Fraction(0)) - abs(term)
            hi = s + max(term, Fraction(0)) + abs(term)
            return RationalInterval(lo, hi)
        s += term


# ---------------------------------------------------------------------------
# Text form: "q0 + q1*pi + q2*pi^2 + ..." with an optional "/pi^k" suffix
# ---------------------------------------------------------------------------


def _fraction_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def pipoly_to_text(p: PiScalar) -> str:
    if p.is_zero:
        return "0"
    parts = []
    for i, q in enumerate(p.coeffs):
        if q == 0:
            continue
        mag = abs(q)
        if i == 0:
            body = _fraction_text(mag)
        else:
            pi_part = "pi" if i == 1 else f"pi^{i}"
            body = pi_part if mag == 1 else f"{_fraction_text(mag)}*{pi_part}"
        if not parts:
            parts.append(("-" if q < 0 else "") + body)
        else:
            parts.append(("- " if q < 0 else "+ ") + body)
    return " ".join(parts)


def scalar_to_text(v: NumericValue) -> str:
    if v.pi_denom_power == 0:
        return pipoly_to_text(v.num)
    return f"({pipoly_to_text(v.num)})/pi^{v.pi_denom_power}"


class ScalarTextError(ValueError):
    """Malformed scalar text."""


def scalar_from_text(text: str) -> NumericValue:
    """Parse the text form produced by scalar_to_text.

    Accepts "0", "a/b", pi-polynomials like "-3 + 1/2*pi - pi^4", and the
    quotient form "( ... )/pi^k".
    """
    s = text.strip()
    denom_power = 0
    if s.startswith("("):
        close = s.rfind(")")
        if close < 0:
            raise ScalarTextError(f"unbalanced parentheses in {text!r}")
        suffix = s[close + 1:].strip()
        if suffix:
            if not suffix.startswith("/pi"):
                raise ScalarTextError(f"bad denominator suffix in {text!r}")
            rest = suffix[3:]
            if rest == "":
                denom_power = 1
            elif rest.startswith("^"):
                denom_power = int(rest[1:])
            else:
                raise ScalarTextError(f"bad denominator suffix in {text!r}")
        s = s[1:close].strip()
    coeffs: dict[int, Fraction] = {}
    for sign, term in _split_terms(s, text):
        power, q = _parse_term(term, text)
        coeffs[power] = coeffs.get(power, Fraction(0)) + sign * q
    size = max(coeffs, default=0) + 1
    arr = [coeffs.get(i, Fraction(0)) for i in range(size)]
    return NumericValue(PiScalar(arr), denom_power)


def _split_terms(s: str, original: str):
    if not s:
        raise ScalarTextError(f"empty scalar text in {original!r}")
    i = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        i = 1
    start = i
    while i <= len(s):
        if i == len(s) or (s[i] in "+-" and i > start and s[i - 1] in " \t"):
            term = s[start:i].strip()
            if not term:
                raise ScalarTextError(f"empty term in {original!r}")
            yield sign, term
            if i < len(s):
                sign = -1 if s[i] == "-" else 1
                start = i + 1
        i += 1


def _parse_term(term: str, original: str) -> tuple[int, Fraction]:
    """One term -> (pi power, rational coefficient magnitude)."""
    parts = [p.strip() for p in term.split("*")]
    power = 0
    coeff = Fraction(1)
    saw_number = False
    for p in parts:
        if p == "pi":
            power += 1
        elif p.startswith("pi^"):
            power += int(p[3:])
        else:
            if saw_number:
                raise ScalarTextError(f"two numeric factors in term {term!r} of {original!r}")
            coeff = _parse_fraction(p, original)
            saw_number = True
    return power, coeff


def _parse_fraction(p: str, original: str) -> Fraction:
    try:
        if "/" in p:
            a, b = p.split("/")
            return Fraction(int(a), int(b))
        return Fraction(int(p))
    except (ValueError, ZeroDivisionError) as exc:
        raise ScalarTextError(f"bad rational {p!r} in {original!r}") from exc


PI = NumericValue.pi()
HALF_PI = NumericValue.pi(1, Fraction(1, 2))
ZERO = NumericValue.zero()
ONE = NumericValue.one()


def make_value(v: Union[int, Fraction, NumericValue]) -> NumericValue:
    if isinstance(v, NumericValue):
        return v
    return NumericValue.from_fraction(_as_fraction(v))
