"""Brute-force laboratory for finite commutative integral quantales.

Everything here is exhaustive: lattice structure, quantale axioms,
residuation, diagonal hom-sets, and the category laws for composing
diagonals are all checked by direct enumeration over the (small) carrier.
This gives an oracle that is independent of the staircase machinery.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path


@dataclass(frozen=True)
class FiniteQuantale:
    """Carrier with an order table, a multiplication table, and a unit.

    `leq[i][j]` says element i is below element j; `mult[i][j]` is the label
    of the product.  Structural well-formedness (shapes, labels) is enforced
    at construction; the mathematical axioms are checked by
    `validate_quantale`, which reports rather than raises.
    """

    elements: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    mult: tuple[tuple[str, ...], ...]
    unit: str

    def __post_init__(self):
        elements = tuple(str(e) for e in self.elements)
        if len(set(elements)) != len(elements):
            raise ValueError("duplicate element labels")
        if not elements:
            raise ValueError("empty carrier")
        n = len(elements)
        leq = tuple(tuple(bool(v) for v in row) for row in self.leq)
        mult = tuple(tuple(str(v) for v in row) for row in self.mult)
        if len(leq) != n or any(len(row) != n for row in leq):
            raise ValueError("leq table must be n x n")
        if len(mult) != n or any(len(row) != n for row in mult):
            raise ValueError("mult table must be n x n")
        labels = set(elements)
        if any(v not in labels for row in mult for v in row):
            raise ValueError("mult table contains unknown labels")
        if self.unit not in labels:
            raise ValueError(f"unit {self.unit!r} is not an element")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "leq", leq)
        object.__setattr__(self, "mult", mult)

    @cached_property
    def index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def mult_idx(self) -> tuple[tuple[int, ...], ...]:
        ix = self.index
        return tuple(tuple(ix[v] for v in row) for row in self.mult)

    def below(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def times(self, a: int, b: int) -> int:
        return self.mult_idx[a][b]

    def upper_bounds(self, a: int, b: int) -> list[int]:
        return [k for k in range(len(self.elements)) if self.leq[a][k] and self.leq[b][k]]

    def lower_bounds(self, a: int, b: int) -> list[int]:
        return [k for k in range(len(self.elements)) if self.leq[k][a] and self.leq[k][b]]

    def join_idx(self, a: int, b: int) -> int | None:
        ubs = self.upper_bounds(a, b)
        least = [u for u in ubs if all(self.leq[u][v] for v in ubs)]
        return least[0] if len(least) == 1 else None

    def meet_idx(self, a: int, b: int) -> int | None:
        lbs = self.lower_bounds(a, b)
        greatest = [l for l in lbs if all(self.leq[v][l] for v in lbs)]
        return greatest[0] if len(greatest) == 1 else None

    @cached_property
    def top_idx(self) -> int | None:
        tops = [k for k in range(len(self.elements)) if all(self.leq[j][k] for j in range(len(self.elements)))]
        return tops[0] if len(tops) == 1 else None

    @cached_property
    def bottom_idx(self) -> int | None:
        bots = [k for k in range(len(self.elements)) if all(self.leq[k][j] for j in range(len(self.elements)))]
        return bots[0] if len(bots) == 1 else None

    def downset(self, a: int) -> frozenset[int]:
        return frozenset(k for k in range(len(self.elements)) if self.leq[k][a])


@dataclass(frozen=True)
class QuantaleReport:
    ok: bool
    problems: tuple[str, ...]


def validate_quantale(q: FiniteQuantale) -> QuantaleReport:
    """Check that the tables describe a commutative integral quantale."""
    problems: list[str] = []
    n = len(q.elements)
    e = q.elements
    for a in range(n):
        if not q.leq[a][a]:
            problems.append(f"order not reflexive at {e[a]}")
    for a in range(n):
        for b in range(n):
            if a != b and q.leq[a][b] and q.leq[b][a]:
                problems.append(f"order not antisymmetric at ({e[a]},{e[b]})")
            for c in range(n):
                if q.leq[a][b] and q.leq[b][c] and not q.leq[a][c]:
                    problems.append(f"order not transitive at ({e[a]},{e[b]},{e[c]})")
    if q.top_idx is None:
        problems.append("no greatest element")
    if q.bottom_idx is None:
        problems.append("no least element")
    for a in range(n):
        for b in range(n):
            if q.join_idx(a, b) is None:
                problems.append(f"join of ({e[a]},{e[b]}) missing")
            if q.meet_idx(a, b) is None:
                problems.append(f"meet of ({e[a]},{e[b]}) missing")
    if problems:
        # Without a lattice the remaining axioms are not well-posed.
        return QuantaleReport(False, tuple(problems))
    for a in range(n):
        for b in range(n):
            if q.times(a, b) != q.times(b, a):
                problems.append(f"multiplication not commutative at ({e[a]},{e[b]})")
            for c in range(n):
                if q.times(q.times(a, b), c) != q.times(a, q.times(b, c)):
                    problems.append(
                        f"multiplication not associative at ({e[a]},{e[b]},{e[c]})"
                    )
    u = q.index[q.unit]
    for a in range(n):
        if q.times(a, u) != a:
            problems.append(f"unit law fails at {e[a]}")
    if u != q.top_idx:
        problems.append("unit is not the top element (quantale not integral)")
    bot = q.bottom_idx
    for a in range(n):
        if q.times(a, bot) != bot:
            problems.append(f"bottom not absorbed at {e[a]}")
        for b in range(n):
            for c in range(n):
                j = q.join_idx(b, c)
                if q.times(a, j) != q.join_idx(q.times(a, b), q.times(a, c)):
                    problems.append(
                        f"multiplication does not distribute over join at "
                        f"({e[a]},{e[b]},{e[c]})"
                    )
    return QuantaleReport(not problems, tuple(problems))


def residuate(q: FiniteQuantale, a: str, b: str) -> str:
    """Largest r with a * r <= b, by exhaustive join."""
    ia, ib = q.index[a], q.index[b]
    candidates = [r for r in range(len(q.elements)) if q.leq[q.times(ia, r)][ib]]
    best = candidates[0]
    for r in candidates[1:]:
        j = q.join_idx(best, r)
        if j is None:
            raise ValueError("carrier is not a lattice; validate first")
        best = j
    return q.elements[best]


@dataclass(frozen=True)
class DiagonalHomset:
    source: str
    target: str
    members: frozenset[str]


def diag_homset(q: FiniteQuantale, p: str, r: str) -> DiagonalHomset:
    """All d divisible by both endpoints: (p -> d) * p = d = (r -> d) * r."""
    members = frozenset(
        q.elements[d]
        for d in range(len(q.elements))
        if _divides(q, q.index[p], d) and _divides(q, q.index[r], d)
    )
    return DiagonalHomset(p, r, members)


def _divides(q: FiniteQuantale, p: int, d: int) -> bool:
    arrow = q.index[residuate(q, q.elements[p], q.elements[d])]
    return q.times(arrow, p) == d


def _compose(q: FiniteQuantale, mid: str, e: str, d: str) -> tuple[str, str]:
    """Both composition formulas (mid -> e) * d and e * (mid -> d)."""
    left = q.mult[q.index[residuate(q, mid, e)]][q.index[d]]
    right = q.mult[q.index[e]][q.index[residuate(q, mid, d)]]
    return left, right


@dataclass(frozen=True)
class QuantaloidReport:
    ok: bool
    violations: tuple[str, ...]
    # pairs whose hom-set is not closed under binary join, with the escaping join
    join_gaps: tuple[str, ...]


def verify_quantaloid_laws(q: FiniteQuantale) -> QuantaloidReport:
    """Check that diagonals compose like a category enriched in sup-lattices.

    Objects are the elements, morphisms p -> r the diagonal hom-set members.
    Checks: the two composition formulas agree; composites land in the right
    hom-set; composition is associative; the object itself is an identity;
    composition preserves bottom and binary joins of diagonals.  Hom-set
    joins are computed in the ambient quantale; pairs of diagonals whose
    join is not itself a diagonal are flagged, not failed.
    """
    violations: list[str] = []
    join_gaps: list[str] = []
    els = q.elements
    homs: dict[tuple[str, str], frozenset[str]] = {}
    for p in els:
        for r in els:
            homs[(p, r)] = diag_homset(q, p, r).members
    for p in els:
        if p not in homs[(p, p)]:
            violations.append(f"identity {p} is not a diagonal on itself")
    # composition: d in hom(p, r), e in hom(r, s)
    for p in els:
        for r in els:
            for d in homs[(p, r)]:
                for s in els:
                    for ee in homs[(r, s)]:
                        left, right = _compose(q, r, ee, d)
                        if left != right:
                            violations.append(
                                f"composition formulas disagree for d={d}:{p}->{r}, "
                                f"e={ee}:{r}->{s}: {left} vs {right}"
                            )
                        if left not in homs[(p, s)]:
                            violations.append(
                                f"composite {left} of d={d}, e={ee} escapes hom({p},{s})"
                            )
    for p in els:
        for r in els:
            for d in homs[(p, r)]:
                left, _ = _compose(q, p, d, p)
                if left != d:
                    violations.append(f"identity {p} not neutral below {d}:{p}->{r}")
                left, _ = _compose(q, r, r, d)
                if left != d:
                    violations.append(f"identity {r} not neutral above {d}:{p}->{r}")
    # associativity over composable triples
    for p in els:
        for r in els:
            for s in els:
                for t_ in els:
                    for d in homs[(p, r)]:
                        for ee in homs[(r, s)]:
                            for g in homs[(s, t_)]:
                                ed, _ = _compose(q, r, ee, d)
                                a1, _ = _compose(q, s, g, ed)
                                ge, _ = _compose(q, s, g, ee)
                                a2, _ = _compose(q, r, ge, d)
                                if a1 != a2:
                                    violations.append(
                                        f"composition not associative at "
                                        f"({d},{ee},{g}) over ({p},{r},{s},{t_})"
                                    )
    # join preservation inside hom-sets, and bottom preservation
    bot = q.elements[q.bottom_idx]
    for p in els:
        for r in els:
            if bot not in homs[(p, r)]:
                violations.append(f"bottom missing from hom({p},{r})")
            for s in els:
                for ee in homs[(r, s)]:
                    left, _ = _compose(q, r, ee, bot)
                    if left != bot:
                        violations.append(f"composition with bottom not bottom for e={ee}")
            hom = sorted(homs[(p, r)], key=q.index.__getitem__)
            for i1 in range(len(hom)):
                for i2 in range(i1 + 1, len(hom)):
                    d1, d2 = hom[i1], hom[i2]
                    j = q.join_idx(q.index[d1], q.index[d2])
                    jl = q.elements[j]
                    if jl not in homs[(p, r)]:
                        join_gaps.append(
                            f"join {jl} of diagonals {d1},{d2} in hom({p},{r}) "
                            f"is not a diagonal"
                        )
                        continue
                    for s in els:
                        for ee in homs[(r, s)]:
                            cj, _ = _compose(q, r, ee, jl)
                            c1, _ = _compose(q, r, ee, d1)
                            c2, _ = _compose(q, r, ee, d2)
                            if cj != q.elements[q.join_idx(q.index[c1], q.index[c2])]:
                                violations.append(
                                    f"composition does not preserve join of "
                                    f"{d1},{d2} under e={ee}"
                                )
    return QuantaloidReport(not violations, tuple(violations), tuple(join_gaps))


@dataclass(frozen=True)
class DownsetReport:
    divisible: bool
    mismatched_pairs: tuple[tuple[str, str], ...]

    @property
    def equal_everywhere(self) -> bool:
        return not self.mismatched_pairs


def check_downset_equality(q: FiniteQuantale) -> DownsetReport:
    """Compare each diagonal hom-set with the downset of the endpoint meet.

    In a divisible quantale the two agree for every pair; divisibility is
    checked exhaustively (b <= a implies a * (a -> b) = b).
    """
    n = len(q.elements)
    divisible = all(
        q.times(a, q.index[residuate(q, q.elements[a], q.elements[b])]) == b
        for a in range(n)
        for b in range(n)
        if q.leq[b][a]
    )
    mismatches = []
    for p in q.elements:
        for r in q.elements:
            hom = {q.index[d] for d in diag_homset(q, p, r).members}
            down = set(q.downset(q.meet_idx(q.index[p], q.index[r])))
            if hom != down:
                mismatches.append((p, r))
    return DownsetReport(divisible, tuple(mismatches))


# ---------------------------------------------------------------------------
# builders and serialisation

def chain_with_min(labels: tuple[str, ...]) -> FiniteQuantale:
    """Chain ordered by position with meet as multiplication."""
    n = len(labels)
    leq = tuple(tuple(i <= j for j in range(n)) for i in range(n))
    mult = tuple(tuple(labels[min(i, j)] for j in range(n)) for i in range(n))
    return FiniteQuantale(tuple(labels), leq, mult, labels[-1])


def lukasiewicz_chain(n: int) -> FiniteQuantale:
    """n-element chain with i * j = max(0, i + j - (n - 1))."""
    if n < 2:
        raise ValueError("need at least two elements")
    from fractions import Fraction

    from .axis import format_scalar

    labels = tuple(format_scalar(Fraction(i, n - 1)) for i in range(n))
    leq = tuple(tuple(i <= j for j in range(n)) for i in range(n))
    mult = tuple(
        tuple(labels[max(0, i + j - (n - 1))] for j in range(n)) for i in range(n)
    )
    return FiniteQuantale(labels, leq, mult, labels[-1])


def drastic_chain(labels: tuple[str, str, str, str] = ("0", "a", "b", "1")) -> FiniteQuantale:
    """Four-element chain with the drastic product: x * y = 0 unless one
    argument is the unit.  A valid quantale that is not divisible."""
    n = 4
    leq = tuple(tuple(i <= j for j in range(n)) for i in range(n))

    def prod(i, j):
        if i == n - 1:
            return labels[j]
        if j == n - 1:
            return labels[i]
        return labels[0]

    mult = tuple(tuple(prod(i, j) for j in range(n)) for i in range(n))
    return FiniteQuantale(tuple(labels), leq, mult, labels[-1])


def quantale_to_dict(q: FiniteQuantale) -> dict:
    return {
        "elements": list(q.elements),
        "leq": [[1 if v else 0 for v in row] for row in q.leq],
        "mult": [list(row) for row in q.mult],
        "unit": q.unit,
    }


def quantale_from_dict(data: dict) -> FiniteQuantale:
    try:
        return FiniteQuantale(
            tuple(data["elements"]),
            tuple(tuple(bool(v) for v in row) for row in data["leq"]),
            tuple(tuple(row) for row in data["mult"]),
            data["unit"],
        )
    except KeyError as exc:
        raise ValueError(f"missing field in quantale table: {exc}") from exc


def load_quantale(path: str | Path, max_elements: int = 8) -> FiniteQuantale:
    data = json.loads(Path(path).read_text())
    q = quantale_from_dict(data)
    if len(q.elements) > max_elements:
        raise ValueError(
            f"carrier has {len(q.elements)} elements; the exhaustive checks "
            f"are capped at {max_elements} (pass max_elements to raise)"
        )
    return q
