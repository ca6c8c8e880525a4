"""Exact extended rationals: irreducible fractions a/b with b >= 0, where
1/0 and -1/0 stand for +inf and -inf."""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd


class ExtendedRational:
    __slots__ = ("num", "den")

    num: int
    den: int

    def __init__(self, num: int, den: int = 1):
        if isinstance(num, bool) or isinstance(den, bool):
            raise TypeError("booleans are not rationals")
        num, den = int(num), int(den)
        if den < 0:
            num, den = -num, -den
        if den == 0:
            if num == 0:
                raise ZeroDivisionError("0/0 is not an extended rational")
            num = 1 if num > 0 else -1
        else:
            g = gcd(num, den)
            if g != 1:
                num //= g
                den //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def _raw(cls, num: int, den: int) -> ExtendedRational:
        # Caller guarantees the pair is already irreducible with den >= 0.
        self = object.__new__(cls)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        return self

    @classmethod
    def from_fraction(cls, f: Fraction) -> ExtendedRational:
        return cls._raw(f.numerator, f.denominator)

    def __setattr__(self, name, value):
        raise AttributeError("ExtendedRational is immutable")

    def __reduce__(self):
        return (ExtendedRational, (self.num, self.den))

    # -- classification ---------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.den != 0

    @property
    def sign(self) -> int:
        return (self.num > 0) - (self.num < 0)

    def to_fraction(self) -> Fraction:
        if not self.den:
            raise OverflowError(f"{self} has no finite value")
        return Fraction(self.num, self.den)

    # -- ordering ---------------------------------------------------------

    def _cmp(self, other: ExtendedRational) -> int:
        if self.den and other.den:
            x = self.num * other.den - other.num * self.den
        else:
            # infinities act as +-1 against finite 0 (and against each other)
            x = (0 if self.den else self.num) - (0 if other.den else other.num)
        return (x > 0) - (x < 0)

    def __eq__(self, other):
        if isinstance(other, ExtendedRational):
            return self.num == other.num and self.den == other.den
        if isinstance(other, int) and not isinstance(other, bool):
            return self.den == 1 and self.num == other
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    # Comparisons are the hot path of every search, so they avoid _cmp.
    def __lt__(self, other: ExtendedRational) -> bool:
        if self.den and other.den:
            return self.num * other.den < other.num * self.den
        return self._cmp(other) < 0

    def __le__(self, other: ExtendedRational) -> bool:
        if self.den and other.den:
            return self.num * other.den <= other.num * self.den
        return self._cmp(other) <= 0

    def __gt__(self, other: ExtendedRational) -> bool:
        if self.den and other.den:
            return self.num * other.den > other.num * self.den
        return self._cmp(other) > 0

    def __ge__(self, other: ExtendedRational) -> bool:
        if self.den and other.den:
            return self.num * other.den >= other.num * self.den
        return self._cmp(other) >= 0

    # -- a little arithmetic ----------------------------------------------

    def __neg__(self) -> ExtendedRational:
        return ExtendedRational._raw(-self.num, self.den)

    def __abs__(self) -> ExtendedRational:
        return ExtendedRational._raw(abs(self.num), self.den)

    def __add__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = ExtendedRational._raw(other, 1)
        if not isinstance(other, ExtendedRational):
            return NotImplemented
        if not (self.den and other.den):
            raise OverflowError("addition with an infinite operand")
        return ExtendedRational.from_fraction(self.to_fraction() + other.to_fraction())

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = ExtendedRational._raw(other, 1)
        if not isinstance(other, ExtendedRational):
            return NotImplemented
        return self + (-other)

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        if not self.den:
            return "inf" if self.num > 0 else "-inf"
        return f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"ExtendedRational({self.num}, {self.den})"


ZERO = ExtendedRational._raw(0, 1)
ONE = ExtendedRational._raw(1, 1)
INF = ExtendedRational._raw(1, 0)
NEG_INF = ExtendedRational._raw(-1, 0)

_LITERAL = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?")


def parse_rational(text: str) -> ExtendedRational:
    """Parse ``"a/b"``, ``"a"``, ``"inf"`` or ``"-inf"`` (optional sign)."""
    t = text.strip().lower()
    if t in ("inf", "+inf", "infinity", "+infinity"):
        return INF
    if t in ("-inf", "-infinity"):
        return NEG_INF
    m = _LITERAL.fullmatch(t)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0 and num == 0:
        raise ValueError(f"not a rational literal: {text!r}")
    return ExtendedRational(num, den)


def Q(value, den: int = 1) -> ExtendedRational:
    """Convenience coercion from int, str, Fraction or ExtendedRational."""
    if isinstance(value, ExtendedRational):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, Fraction):
        return ExtendedRational.from_fraction(value)
    return ExtendedRational(value, den)


def rational_to_json(q: ExtendedRational) -> dict:
    # decimal strings keep arbitrary precision through any JSON parser
    return {"num": str(q.num), "den": str(q.den)}


def rational_from_json(obj) -> ExtendedRational:
    if isinstance(obj, str):
        return parse_rational(obj)
    try:
        num, den = int(obj["num"]), int(obj["den"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed rational JSON: {obj!r}") from exc
    if den < 0 or (den == 0 and num not in (1, -1)):
        raise ValueError(f"malformed rational JSON: {obj!r}")
    q = ExtendedRational(num, den)
    if (q.num, q.den) != (num, den):
        raise ValueError(f"rational JSON is not irreducible: {obj!r}")
    return q


def bitlen(x: int) -> int:
    """Number of binary digits of |x|; bitlen(0) is 1."""
    return max(1, abs(x).bit_length())


def bit_size(q: ExtendedRational) -> int:
    if q.num == 0:
        return 1
    return bitlen(q.num) + bitlen(q.den)
