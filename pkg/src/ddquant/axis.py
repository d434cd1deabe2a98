"""Exact scalar types for the two axes the package works on.

Times live on the extended half line [0, inf], values in the unit interval
[0, 1].  Finite quantities are `fractions.Fraction` throughout; the point at
infinity is the module constant `INF`.  Addition treats infinity as absorbing.
Subtraction follows the conventions

    inf - p = inf   for finite p,
    inf - inf = 0,

and is otherwise only defined when the result is non-negative.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import DomainError, ParseError

ZERO = Fraction(0)
ONE = Fraction(1)


class _Infinity:
    """Singleton for the point at infinity on the time axis."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __hash__(self):
        return hash("ddquant-time-infinity")

    # Comparisons against finite rationals: INF is strictly above everything.
    def __lt__(self, other):
        if other is self or isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __le__(self, other):
        if other is self:
            return True
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __gt__(self, other):
        if other is self:
            return False
        if isinstance(other, (int, Fraction)):
            return True
        return NotImplemented

    def __ge__(self, other):
        if other is self or isinstance(other, (int, Fraction)):
            return True
        return NotImplemented


INF = _Infinity()

Time = Union[Fraction, _Infinity]


def is_infinite(t: Time) -> bool:
    return t is INF


def ensure_time(t) -> Time:
    """Coerce to a point of [0, inf]; reject negatives and non-rationals."""
    if t is INF:
        return t
    f = Fraction(t)
    if f < 0:
        raise DomainError(f"time must be non-negative, got {f}")
    return f


def ensure_unit(a) -> Fraction:
    """Coerce to a rational in [0, 1]."""
    f = Fraction(a)
    if not ZERO <= f <= ONE:
        raise DomainError(f"value must lie in [0, 1], got {f}")
    return f


def time_add(a: Time, b: Time) -> Time:
    if a is INF or b is INF:
        return INF
    return a + b


def time_sub(a: Time, b: Time) -> Time:
    """a - b with the infinity conventions above; requires a >= b."""
    if a is INF:
        return ZERO if b is INF else INF
    if b is INF:
        raise DomainError("cannot subtract infinity from a finite time")
    if a < b:
        raise DomainError(f"negative time difference: {a} - {b}")
    return a - b


def plus_implies(p: Time, q: Time) -> Time:
    """Residuation of addition on [0, inf] ordered by >= (0 is the unit).

    plus_implies(p, q) is the least r with p + r >= q in the numeric order,
    i.e. 0 when p >= q and q - p otherwise.
    """
    if p >= q:
        return ZERO
    return time_sub(q, p)


def format_scalar(v: Time) -> str:
    """Canonical text: integers bare, other rationals as num/den, inf as inf."""
    if v is INF:
        return "inf"
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def parse_scalar(text: str) -> Time:
    s = text.strip()
    if s == "inf":
        return INF
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational or inf: {text!r}") from exc
