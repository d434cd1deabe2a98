"""Certified staircase enclosures of piecewise linear distributions.

Continuous distributions that are piecewise linear cannot be represented as
staircases, but they can be bracketed between two staircases that agree
with the function at cell endpoints.  Pushing the bracket through monotone
(convolution) and antitone (implication antecedent) operations yields
rigorous two-sided bounds, and a one-sided bound suffices to certify that a
target is NOT divisible by the function.  Absence of a certificate at a
given resolution is inconclusive and is reported as such, never as a
divisibility claim.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .axis import ONE, ZERO, Time, format_scalar, is_infinite, parse_scalar
from .errors import DomainError, ParseError
from .quantale import convolve, implication
from .staircase import Staircase, envelope
from .tnorms import TNorm

Knot = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class PiecewiseLinear:
    """Monotone piecewise linear map [0, inf] -> [0, 1].

    Knots interpolate linearly; after the last knot the map is constant.
    The first knot must be (0, 0) so the map is a genuine distribution.
    """

    knots: tuple[Knot, ...]

    def __post_init__(self):
        knots = tuple((Fraction(t), Fraction(v)) for t, v in self.knots)
        object.__setattr__(self, "knots", knots)
        if not knots or knots[0] != (ZERO, ZERO):
            raise DomainError("first knot must be (0, 0)")
        for (t1, v1), (t2, v2) in zip(knots, knots[1:]):
            if t2 <= t1:
                raise DomainError("knot times must be strictly increasing")
            if v2 < v1:
                raise DomainError("knot values must be non-decreasing")
        if any(not ZERO <= v <= ONE for _, v in knots):
            raise DomainError("knot values must lie in [0, 1]")

    @property
    def times(self) -> tuple[Fraction, ...]:
        return tuple(t for t, _ in self.knots)

    @property
    def final_value(self) -> Fraction:
        return self.knots[-1][1]

    def __call__(self, t: Time) -> Fraction:
        if is_infinite(t):
            return self.final_value
        if t < 0:
            raise DomainError("negative time")
        times = self.times
        if t >= times[-1]:
            return self.final_value
        idx = bisect_right(times, t) - 1
        t1, v1 = self.knots[idx]
        t2, v2 = self.knots[idx + 1]
        return v1 + (v2 - v1) * (t - t1) / (t2 - t1)

    def __str__(self) -> str:
        body = ",".join(f"({format_scalar(t)},{format_scalar(v)})" for t, v in self.knots)
        return f"linear[{body}]"


def parse_linear(text: str) -> PiecewiseLinear:
    s = text.strip()
    if not (s.startswith("linear[") and s.endswith("]")):
        raise ParseError(f"not a piecewise linear literal: {text!r}")
    inner = s[len("linear[") : -1].strip()
    knots = []
    depth = 0
    start = None
    for i, ch in enumerate(inner):
        if ch == "(":
            if depth == 0:
                start = i + 1
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                chunk = inner[start:i]
                parts = [p.strip() for p in chunk.split(",")]
                if len(parts) != 2:
                    raise ParseError(f"knot needs (time,value), got ({chunk})")
                t, v = (parse_scalar(x) for x in parts)
                if is_infinite(t) or is_infinite(v):
                    raise DomainError("knots must be finite")
                knots.append((t, v))
        elif depth == 0 and ch not in ", \t":
            raise ParseError(f"unexpected character {ch!r} in linear literal", i)
    if depth != 0:
        raise ParseError("unbalanced parentheses in linear literal")
    return PiecewiseLinear(tuple(knots))


@dataclass(frozen=True)
class Enclosure:
    lower: Staircase
    upper: Staircase

    def __post_init__(self):
        if not self.lower.leq(self.upper):
            raise DomainError("enclosure lower bound must be below upper bound")


def bracket(f: PiecewiseLinear, n: int) -> Enclosure:
    """Two-sided staircase bracket with n cells per linear segment.

    On each left-open cell the lower staircase takes the value of f at the
    cell's left end and the upper staircase the value at its right end;
    monotonicity of f makes these pointwise bounds.  Zero-slope segments
    collapse, so staircase-shaped constants are bracketed exactly.
    """
    if n < 1:
        raise DomainError("resolution must be at least 1")
    lower_pts: list[tuple[Fraction, Fraction]] = []
    upper_pts: list[tuple[Fraction, Fraction]] = []
    for (t1, _), (t2, _) in zip(f.knots, f.knots[1:]):
        width = (t2 - t1) / n
        for j in range(n):
            left = t1 + j * width
            right = left + width
            lower_pts.append((left, f(left)))
            upper_pts.append((left, f(right)))
    # constant tail after the last knot
    tail_t, tail_v = f.knots[-1]
    lower_pts.append((tail_t, tail_v))
    upper_pts.append((tail_t, tail_v))
    return Enclosure(envelope(lower_pts), envelope(upper_pts))


def bound_convolve(t: TNorm, e1: Enclosure, e2: Enclosure) -> Enclosure:
    """Convolution is monotone in both arguments, so bounds convolve."""
    return Enclosure(
        convolve(t, e1.lower, e2.lower),
        convolve(t, e1.upper, e2.upper),
    )


def divisibility_upper_bound(
    t: TNorm, f: PiecewiseLinear, xi: Staircase, n: int
) -> Staircase:
    """A staircase above convolve(f, implication(f, xi)) at resolution n.

    The implication is antitone in its antecedent, so the lower bracket of
    f goes into the antecedent slot and the upper bracket into the
    convolution.
    """
    e = bracket(f, n)
    return convolve(t, e.upper, implication(t, e.lower, xi))


@dataclass(frozen=True)
class Certificate:
    """Proof that xi is not divisible by f: at `witness`, the certified
    upper bound of the best f-multiple below xi sits `gap` below xi."""

    witness: Fraction
    gap: Fraction


def certify_not_divisible(
    t: TNorm, f: PiecewiseLinear, xi: Staircase, n: int
) -> Certificate | None:
    """Try to certify non-divisibility of xi by f at resolution n.

    Returns the certificate with the smallest witness time, or None when
    resolution n is inconclusive.  A None result carries no information
    about divisibility.
    """
    upper = divisibility_upper_bound(t, f, xi, n)
    cuts = sorted({*upper.jumps, *xi.jumps})
    for k, b in enumerate(cuts):
        uv = upper.value_after(b)
        xv = xi.value_after(b)
        if uv < xv:
            witness = (b + cuts[k + 1]) / 2 if k + 1 < len(cuts) else b + 1
            return Certificate(witness, xv - uv)
    return None
