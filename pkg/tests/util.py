"""Shared generators and independent oracles for the test suite.

Oracles here recompute results by brute pointwise enumeration, sharing no
algorithmic structure with the envelope/meet machinery they check.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ddquant import (
    INF,
    LUK,
    MIN,
    PROD,
    Staircase,
    TNorm,
    parse_tnorm,
)
from ddquant.axis import Time, is_infinite, time_add

ORDINAL = parse_tnorm("ordinal[(2/10,6/10,prod),(7/10,1,luk)]")

TNORMS: list[tuple[str, TNorm]] = [
    ("min", MIN),
    ("prod", PROD),
    ("luk", LUK),
    ("ordinal", ORDINAL),
]

_DENS = (1, 2, 3, 4, 6, 8, 12)


def rand_time(rng: random.Random, hi: int = 5) -> Fraction:
    den = rng.choice(_DENS)
    return Fraction(rng.randrange(0, hi * den + 1), den)


def rand_unit(rng: random.Random, include_zero: bool = False) -> Fraction:
    den = rng.choice(_DENS)
    lo = 0 if include_zero else 1
    return Fraction(rng.randrange(lo, den + 1), den)


def rand_staircase(
    rng: random.Random, max_steps: int = 6, allow_empty: bool = True
) -> Staircase:
    lo = 0 if allow_empty else 1
    n = rng.randrange(lo, max_steps + 1)
    if n == 0:
        return Staircase()
    jumps = sorted(rng.sample([Fraction(k, 4) for k in range(0, 24)], n))
    levels = sorted(rng.sample([Fraction(k, 12) for k in range(1, 13)], n))
    return Staircase(tuple(zip(jumps, levels)))


def rand_monotone(rng: random.Random, max_breaks: int = 5):
    """Random finite monotone step map, not necessarily left-continuous."""
    from ddquant import MonotoneStep

    n = rng.randrange(1, max_breaks + 1)
    bps = [Fraction(0)]
    bps.extend(sorted(rng.sample([Fraction(k, 4) for k in range(1, 25)], n - 1)))
    pool = sorted(rng.choice([Fraction(k, 12) for k in range(0, 13)]) for _ in range(2 * n))
    pvs = [pool[2 * i] for i in range(n)]
    cvs = [pool[2 * i + 1] for i in range(n)]
    infinity = rng.choice([None, max(cvs[-1], rand_unit(rng, include_zero=True))])
    return MonotoneStep(tuple(bps), tuple(pvs), tuple(cvs), infinity)


def probe_times(*items: Staircase) -> list[Time]:
    """Times that see every cell of every argument, plus 0 and infinity."""
    pts = {Fraction(0)}
    for sc in items:
        pts.update(sc.jumps)
    finite = sorted(pts)
    probes: list[Time] = list(finite)
    probes.extend((a + b) / 2 for a, b in zip(finite, finite[1:]))
    probes.append(finite[-1] + 1)
    probes.append(INF)
    return probes


def leq_oracle(phi: Staircase, psi: Staircase) -> bool:
    return all(phi(t) <= psi(t) for t in probe_times(phi, psi))


def eq_oracle(phi: Staircase, psi: Staircase) -> bool:
    return leq_oracle(phi, psi) and leq_oracle(psi, phi)


def conv_point_oracle(t: TNorm, phi: Staircase, psi: Staircase, at: Time) -> Fraction:
    """Pointwise sup over all step pairs landing strictly before `at`."""
    best = Fraction(0)
    for p, a in phi.steps:
        for q, b in psi.steps:
            if is_infinite(at) or time_add(p, q) < at:
                best = max(best, t.apply(a, b))
    return best


def _largest_shift_level(t: TNorm, phi: Staircase, xi: Staircase, s: Fraction) -> Fraction:
    """Largest c with the shifted one-step at s below the residual demand.

    The one-step (s, c) convolves with phi to steps at p_i + s with levels
    a_i * c; each must stay below xi just after p_i + s.
    """
    best = Fraction(1)
    for p, a in phi.steps:
        best = min(best, t.implies(a, xi.value_after(p + s)))
    return best


def imp_point_oracle(t: TNorm, phi: Staircase, xi: Staircase, at: Time) -> Fraction:
    """Pointwise value of the residuated convolution, by brute squeezing.

    The value at `at` is the sup over shifts s < at of the largest one-step
    level allowed at s.  That inner function is a nondecreasing step map of
    s whose breaks lie where some p_i + s crosses a jump of xi, so probing
    those breaks, midpoints, and points squeezed against `at` is exact.
    """
    if at == 0 or not phi.steps:
        # empty phi imposes no constraint: result is the top staircase,
        # whose value is 1 everywhere after 0
        return Fraction(0) if at == 0 else Fraction(1)
    pts = {Fraction(0)}
    for p in phi.jumps:
        for r in xi.jumps:
            if r > p:
                pts.add(r - p)
    finite = sorted(pts)
    shifts = [s for s in finite if is_infinite(at) or s < at]
    shifts.extend(
        m
        for a, b in zip(finite, finite[1:])
        for m in ((a + b) / 2,)
        if is_infinite(at) or m < at
    )
    if is_infinite(at):
        shifts.append(finite[-1] + 1)
    else:
        shifts.extend((s + at) / 2 for s in finite if s < at)
    best = Fraction(0)
    for s in shifts:
        best = max(best, _largest_shift_level(t, phi, xi, s))
    return best
