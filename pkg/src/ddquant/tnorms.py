"""Continuous t-norms on the rational unit interval.

A t-norm here is an ordinal sum of finitely many product and Lukasiewicz
pieces over minimum.  The empty sum is minimum itself; a single piece
covering [0, 1] gives the plain product or Lukasiewicz t-norm.  All
arithmetic is exact on `Fraction` inputs and the residuum is computed in
closed form, so the adjunction

    apply(a, c) <= b  iff  c <= implies(a, b)

holds exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .axis import ONE, ZERO
from .errors import DomainError, ParseError

PRODUCT_KIND = "prod"
LUKASIEWICZ_KIND = "luk"
_KINDS = (PRODUCT_KIND, LUKASIEWICZ_KIND)


def _base_apply(kind: str, u: Fraction, v: Fraction) -> Fraction:
    """Base t-norm on [0, 1]: u*v for prod, max(0, u+v-1) for luk."""
    if kind == PRODUCT_KIND:
        return u * v
    return max(ZERO, u + v - 1)


def _base_implies(kind: str, u: Fraction, v: Fraction) -> Fraction:
    """Base residuum for u > v: v/u for prod, 1-u+v for luk."""
    if kind == PRODUCT_KIND:
        return v / u
    return ONE - u + v


@dataclass(frozen=True)
class Piece:
    """One summand of an ordinal sum, acting on the open interval (lo, hi)."""

    lo: Fraction
    hi: Fraction
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not ZERO <= self.lo < self.hi <= ONE:
            raise DomainError(f"piece needs 0 <= lo < hi <= 1, got ({self.lo}, {self.hi})")
        if self.kind not in _KINDS:
            raise DomainError(f"unknown piece kind {self.kind!r}")


@dataclass(frozen=True)
class TNorm:
    """Ordinal sum of `pieces` over minimum; no pieces means plain minimum."""

    pieces: tuple[Piece, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        prev_hi = None
        for piece in self.pieces:
            if prev_hi is not None and piece.lo < prev_hi:
                raise DomainError("ordinal sum pieces must be disjoint and sorted")
            prev_hi = piece.hi

    def _piece_containing(self, low: Fraction, high: Fraction) -> Piece | None:
        # Closed-interval membership; values at shared endpoints agree on
        # both sides, so the first match is as good as any.
        for piece in self.pieces:
            if piece.lo <= low and high <= piece.hi:
                return piece
        return None

    def apply(self, a: Fraction, b: Fraction) -> Fraction:
        if a > b:
            a, b = b, a
        piece = self._piece_containing(a, b)
        if piece is None:
            return a
        width = piece.hi - piece.lo
        u = (a - piece.lo) / width
        v = (b - piece.lo) / width
        return piece.lo + width * _base_apply(piece.kind, u, v)

    def implies(self, a: Fraction, b: Fraction) -> Fraction:
        """Residuum: the largest c with apply(a, c) <= b."""
        if a <= b:
            return ONE
        piece = self._piece_containing(b, a)
        if piece is None:
            return b
        width = piece.hi - piece.lo
        u = (a - piece.lo) / width
        v = (b - piece.lo) / width
        return piece.lo + width * min(ONE, _base_implies(piece.kind, u, v))

    def is_idempotent(self, a: Fraction) -> bool:
        """apply(a, a) == a, i.e. a is outside every open piece."""
        return all(not (piece.lo < a < piece.hi) for piece in self.pieces)


MIN = TNorm()
PROD = TNorm((Piece(ZERO, ONE, PRODUCT_KIND),))
LUK = TNorm((Piece(ZERO, ONE, LUKASIEWICZ_KIND),))


def format_tnorm(t: TNorm) -> str:
    if not t.pieces:
        return "min"
    if t == PROD:
        return "prod"
    if t == LUK:
        return "luk"
    from .axis import format_scalar

    body = ",".join(
        f"({format_scalar(p.lo)},{format_scalar(p.hi)},{p.kind})" for p in t.pieces
    )
    return f"ordinal[{body}]"


def parse_tnorm(text: str) -> TNorm:
    """Parse `min`, `prod`, `luk`, or `ordinal[(lo,hi,kind),...]`."""
    s = text.strip()
    if s == "min":
        return MIN
    if s == "prod":
        return PROD
    if s == "luk":
        return LUK
    if s.startswith("ordinal[") and s.endswith("]"):
        inner = s[len("ordinal[") : -1].strip()
        if not inner:
            raise ParseError("ordinal sum needs at least one piece")
        pieces = []
        for chunk in _split_triples(inner):
            parts = [p.strip() for p in chunk.split(",")]
            if len(parts) != 3:
                raise ParseError(f"piece needs (lo,hi,kind), got ({chunk})")
            lo, hi, kind = parts
            if kind not in _KINDS:
                raise ParseError(f"unknown piece kind {kind!r}")
            try:
                pieces.append(Piece(Fraction(lo), Fraction(hi), kind))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad rational in piece ({chunk})") from exc
        return TNorm(tuple(pieces))
    raise ParseError(f"unknown t-norm descriptor {text!r}")


def _split_triples(inner: str) -> list[str]:
    out = []
    depth = 0
    start = None
    for i, ch in enumerate(inner):
        if ch == "(":
            if depth == 0:
                start = i + 1
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parentheses in ordinal descriptor", i)
            if depth == 0:
                out.append(inner[start:i])
        elif depth == 0 and ch not in ", \t":
            raise ParseError(f"unexpected character {ch!r} in ordinal descriptor", i)
    if depth != 0:
        raise ParseError("unbalanced parentheses in ordinal descriptor")
    if not out:
        raise ParseError("ordinal sum needs at least one piece")
    return out
