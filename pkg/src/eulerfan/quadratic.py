"""Exact arithmetic in the real quadratic field Q(sqrt 2).

Rationals are :class:`fractions.Fraction` (arbitrary precision, always reduced).
:class:`QuadExt` stores ``a + b*sqrt2`` as a pair of Fractions; because sqrt 2 is
irrational that pair is unique, so equality is structural.

Text encoding: ``"p/q"``, ``"r/s*sqrt2"``, ``"p/q+r/s*sqrt2"`` (either term may be
omitted, whitespace is ignored, a bare ``sqrt2`` means coefficient one).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import ModeMismatch, NegativeRadicand, NotRepresentable

RationalLike = Union[int, Fraction]

_SQRT2 = math.sqrt(2.0)


def _as_fraction(x) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise ModeMismatch(f"float {x!r} cannot enter exact arithmetic")
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class QuadExt:
    """The number ``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

    __slots__ = ("_a", "_b")
    # numpy must hand mixed operations back to us instead of broadcasting
    __array_ufunc__ = None

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0):
        self._a = _as_fraction(a)
        self._b = _as_fraction(b)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @classmethod
    def coerce(cls, x) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        if isinstance(x, str):
            return parse_exact(x)
        return cls(_as_fraction(x))

    @property
    def is_rational(self) -> bool:
        return self._b == 0

    def conjugate(self) -> "QuadExt":
        return QuadExt(self._a, -self._b)

    def norm(self) -> Fraction:
        """Field norm ``a**2 - 2*b**2``; zero only for the zero element."""
        return self._a * self._a - 2 * self._b * self._b

    def _other(self, y):
        if isinstance(y, QuadExt):
            return y
        if isinstance(y, (float, complex)) or type(y).__module__ == "numpy":
            raise ModeMismatch(f"cannot mix QuadExt with {type(y).__name__}")
        if isinstance(y, Rational) and not isinstance(y, bool):
            return QuadExt(y)
        return None

    def __add__(self, y):
        y = self._other(y)
        if y is None:
            return NotImplemented
        return QuadExt(self._a + y._a, self._b + y._b)

    __radd__ = __add__

    def __sub__(self, y):
        y = self._other(y)
        if y is None:
            return NotImplemented
        return QuadExt(self._a - y._a, self._b - y._b)

    def __rsub__(self, y):
        y = self._other(y)
        if y is None:
            return NotImplemented
        return y - self

    def __mul__(self, y):
        y = self._other(y)
        if y is None:
            return NotImplemented
        a, b, c, d = self._a, self._b, y._a, y._b
        return QuadExt(a * c + 2 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, y):
        y = self._other(y)
        if y is None:
            return NotImplemented
        n = y.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt2)")
        num = self * y.conjugate()
        return QuadExt(num._a / n, num._b / n)

    def __rtruediv__(self, y):
        y = self._other(y)
        if y is None:
            return NotImplemented
        return y / self

    def __pow__(self, k):
        if isinstance(k, QuadExt):
            if not (k.is_rational and k.a.denominator == 1):
                raise NotRepresentable("only integer powers are exact")
            k = int(k.a)
        elif isinstance(k, Fraction):
            if k.denominator != 1:
                raise NotRepresentable("only integer powers are exact")
            k = int(k)
        elif not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return QuadExt(1) / (self ** (-k))
        out, base = QuadExt(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __neg__(self):
        return QuadExt(-self._a, -self._b)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if qx_sign(self) < 0 else self

    def __bool__(self):
        return bool(self._a) or bool(self._b)

    def __eq__(self, y):
        try:
            y = self._other(y)
        except ModeMismatch:
            return NotImplemented
        if y is None:
            return NotImplemented
        return self._a == y._a and self._b == y._b

    def __hash__(self):
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b))

    def _cmp(self, y) -> int:
        y = self._other(y)
        if y is None:
            raise TypeError(f"cannot compare QuadExt with {type(y).__name__}")
        return qx_sign(self - y)

    def __lt__(self, y):
        return self._cmp(y) < 0

    def __le__(self, y):
        return self._cmp(y) <= 0

    def __gt__(self, y):
        return self._cmp(y) > 0

    def __ge__(self, y):
        return self._cmp(y) >= 0

    def __float__(self):
        return qx_to_float(self)

    def __repr__(self):
        return f"QuadExt({format_exact(self)!r})"

    def __str__(self):
        return format_exact(self)


SQRT2 = QuadExt(0, 1)


def qx_binop(op: str, x, y) -> QuadExt:
    """Apply ``op`` in {add, sub, mul, div} to two exact numbers."""
    x, y = QuadExt.coerce(x), QuadExt.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def _fsign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def qx_sign(x) -> int:
    """Exact sign of ``a + b*sqrt2``; no floating point is involved."""
    x = QuadExt.coerce(x)
    sa, sb = _fsign(x.a), _fsign(x.b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the larger of a**2 and 2*b**2 wins (never equal, sqrt2 irrational)
    return sa if x.a * x.a > 2 * x.b * x.b else sb


def _rational_sqrt(q: Fraction):
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def qx_sqrt(q) -> QuadExt:
    """Non-negative square root of a rational, when it lies in Q(sqrt2).

    Succeeds when ``q = s**2`` or ``q = 2*s**2`` for rational ``s``; raises
    :class:`NotRepresentable` otherwise and :class:`NegativeRadicand` for ``q < 0``.
    """
    if isinstance(q, QuadExt):
        if not q.is_rational:
            raise NotRepresentable(f"square root of irrational {q} not attempted")
        q = q.a
    q = _as_fraction(q)
    if q < 0:
        raise NegativeRadicand(f"square root of negative number {q}")
    s = _rational_sqrt(q)
    if s is not None:
        return QuadExt(s)
    s = _rational_sqrt(q / 2)
    if s is not None:
        return QuadExt(0, s)
    raise NotRepresentable(f"sqrt({q}) is not in Q(sqrt2)")


def qx_to_float(x) -> float:
    """Nearest-double evaluation of ``a + b*sqrt2``.

    Each Fraction-to-float conversion is correctly rounded. When ``a`` and
    ``b*sqrt2`` have opposite signs the value is evaluated as
    ``norm / (a - b*sqrt2)``, whose denominator has no cancellation; either branch
    stays within 4 ulp for ``|a|, |b| < 2**500``. Raises OverflowError beyond the
    double range.
    """
    x = QuadExt.coerce(x)
    a, b = x.a, x.b
    if b == 0:
        return float(a)
    if a == 0:
        return float(b) * _SQRT2
    if (a > 0) == (b > 0):
        return float(a) + float(b) * _SQRT2
    return float(x.norm()) / (float(a) - float(b) * _SQRT2)


# -- text encoding ---------------------------------------------------------

_RAT = r"\d+(?:\.\d+)?(?:/\d+)?"
_TERM = re.compile(rf"([+-]?)(?:({_RAT})\*?sqrt2|sqrt2|({_RAT}))")


def parse_exact(text: str) -> QuadExt:
    """Parse the exact text encoding into a :class:`QuadExt`."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty exact number")
    a = b = None
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (pos > 0 and not m.group(1)):
            raise ValueError(f"malformed exact number {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(3) is not None:
            if a is not None:
                raise ValueError(f"two rational terms in {text!r}")
            a = sign * Fraction(m.group(3))
        else:
            if b is not None:
                raise ValueError(f"two sqrt2 terms in {text!r}")
            b = sign * (Fraction(m.group(2)) if m.group(2) else Fraction(1))
        pos = m.end()
    return QuadExt(a or 0, b or 0)


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_exact(x) -> str:
    """Canonical text form; ``parse_exact(format_exact(x)) == x``."""
    x = QuadExt.coerce(x)
    if x.b == 0:
        return _fmt_rat(x.a)
    tail = f"{_fmt_rat(x.b)}*sqrt2"
    if x.a == 0:
        return tail
    return f"{_fmt_rat(x.a)}{'' if x.b < 0 else '+'}{tail}"
