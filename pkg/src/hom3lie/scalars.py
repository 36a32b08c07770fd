"""Exact scalars: rationals (``gmpy2.mpq``) and Gaussian rationals.

Every structure constant, twist entry and r-matrix coefficient lives in one of
these two fields. Floating point never enters this module.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Integral, Rational

import gmpy2
from gmpy2 import mpq

__all__ = [
    "mpq",
    "GaussianRational",
    "to_scalar",
    "parse_scalar",
    "format_scalar",
    "magnitude",
    "is_zero",
    "ScalarParseError",
]

ZERO = mpq(0)
ONE = mpq(1)
_MPQ = type(ZERO)
builtins_complex = complex


class ScalarParseError(ValueError):
    """Raised when a string is not an exact rational / Gaussian rational."""


def _q(x) -> mpq:
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, (Integral, Fraction, Rational)):
        return mpq(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not an exact rational: {x!r}")


class GaussianRational:
    """``re + im*i`` with exact rational parts.

    Mixed arithmetic with ``mpq`` and ``int`` works in both directions; a
    result with zero imaginary part stays a ``GaussianRational`` but compares
    equal to the corresponding rational.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        try:
            return GaussianRational(_q(other), ZERO)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("Gaussian rational division by zero")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / den,
            (self.im * o.re - self.re * o.im) / den,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


_RAT = r"[0-9]+(?:/[0-9]+)?"
_GAUSS = re.compile(
    rf"^(?P<re>[+-]?{_RAT})?(?:(?P<isign>[+-])(?P<im>{_RAT})?i)?$"
)
_PURE_IM = re.compile(rf"^(?P<isign>[+-]?)(?P<im>{_RAT})?i$")


def _parse_rational(s: str) -> mpq:
    s = s.strip()
    try:
        if "/" in s:
            num, den = s.split("/")
            if int(den) == 0:
                raise ScalarParseError(f"zero denominator in {s!r}")
            return mpq(int(num), int(den))
        if re.fullmatch(r"[+-]?[0-9]+\.[0-9]*|[+-]?\.[0-9]+", s):
            # decimal literals are read exactly, never via float
            return mpq(Fraction(s))
        return mpq(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ScalarParseError(f"not an exact rational: {s!r}") from exc


def parse_scalar(s: str, complex: bool = False):
    """Parse ``"p/q"`` (or ``"a+bi"`` when ``complex``) exactly."""
    if not isinstance(s, str):
        raise ScalarParseError(f"expected a string, got {type(s).__name__}")
    text = s.replace(" ", "")
    if not complex or not text.endswith("i"):
        if text.endswith("i"):
            raise ScalarParseError(f"complex literal {s!r} needs complex mode")
        return _parse_rational(text)
    m = _PURE_IM.match(text)
    if m:
        im = _parse_rational(m["im"]) if m["im"] else ONE
        return GaussianRational(ZERO, -im if m["isign"] == "-" else im)
    m = _GAUSS.match(text)
    if not m or m["re"] is None:
        raise ScalarParseError(f"not a Gaussian rational: {s!r}")
    im = _parse_rational(m["im"]) if m["im"] else ONE
    return GaussianRational(
        _parse_rational(m["re"]), -im if m["isign"] == "-" else im
    )


def to_scalar(x, complex: bool = False):
    """Coerce ints, Fractions, strings and existing scalars to exact scalars."""
    if isinstance(x, GaussianRational):
        return x if x.im != 0 or complex else x.re
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, str):
        return parse_scalar(x, complex=complex)
    if isinstance(x, float):
        raise TypeError(f"floats are not exact scalars: {x!r}")
    if isinstance(x, builtins_complex):
        raise TypeError(f"Python complex is not exact: {x!r}")
    if isinstance(x, _MPQ):
        return x
    if gmpy2.is_integer(x) or isinstance(x, (Integral, Fraction, Rational)):
        return mpq(x)
    raise TypeError(f"cannot convert {x!r} to an exact scalar")


def format_scalar(x) -> str:
    """Inverse of :func:`parse_scalar`: ``"p/q"`` or ``"a+bi"``."""
    if isinstance(x, GaussianRational):
        if x.im == 0:
            return str(x.re)
        sign = "-" if x.im < 0 else "+"
        im = abs(x.im)
        im_s = "" if im == 1 else str(im)
        return f"{x.re}{sign}{im_s}i"
    return str(mpq(x))


def magnitude(x) -> mpq:
    """Exact magnitude: ``|x|`` for rationals, ``max(|re|, |im|)`` otherwise."""
    if isinstance(x, GaussianRational):
        return max(abs(x.re), abs(x.im))
    return abs(mpq(x))


def is_zero(x) -> bool:
    return x == 0
