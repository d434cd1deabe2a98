"""Convolution and residuated implication of staircase distributions.

For a continuous t-norm * the sup-convolution is

    (phi (*) psi)(t) = sup_{r+s=t} phi(r) * psi(s),

and on staircases it is the upper envelope of the pairwise one-step
products: a step (p, a) of phi and (q, b) of psi contribute the candidate
step (p + q, a * b).  The implication is the right adjoint of convolution,

    phi (*) psi <= xi  iff  psi <= implication(phi, xi),

computed as the meet over the canonical steps of phi of exact one-step
implications.  `vertical_distance` evaluates the pointwise quantity

    rho(t) = inf_{q > 0} phi(q) -> xi(q + t)

by exact cell enumeration; the implication is its regularisation, which the
test-suite uses as an independent cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

from .axis import ONE, ZERO, Time, ensure_time, is_infinite
from .errors import DomainError
from .staircase import BOTTOM, MonotoneStep, Staircase, envelope, meet_all
from .tnorms import LUK, MIN, PROD, TNorm

_FAST_CUTOFF = 4096
_INT64_LIMIT = 2**62


def convolve(t: TNorm, phi: Staircase, psi: Staircase) -> Staircase:
    if not phi.steps or not psi.steps:
        return BOTTOM
    if len(phi.steps) * len(psi.steps) >= _FAST_CUTOFF:
        fast = _convolve_fast(t, phi, psi)
        if fast is not None:
            return fast
    return _convolve_plain(t, phi, psi)


def _convolve_plain(t: TNorm, phi: Staircase, psi: Staircase) -> Staircase:
    apply = t.apply
    pts = [
        (p + q, apply(a, b))
        for p, a in phi.steps
        for q, b in psi.steps
    ]
    return envelope(pts)


def _tnorm_tag(t: TNorm) -> str | None:
    if t == MIN:
        return "min"
    if t == PROD:
        return "prod"
    if t == LUK:
        return "luk"
    return None


def _convolve_fast(t: TNorm, phi: Staircase, psi: Staircase) -> Staircase | None:
    """Integer-scaled envelope for the three basic t-norms.

    Jumps and levels are rescaled to common denominators so candidate
    generation, sorting, and the running maximum all run on int64 numpy
    arrays.  Returns None (caller falls back to exact Fractions) whenever a
    scaled quantity might not fit in int64.
    """
    tag = _tnorm_tag(t)
    if tag is None:
        return None
    jd = lcm(*(p.denominator for p in phi.jumps), *(q.denominator for q in psi.jumps))
    ld = lcm(*(a.denominator for a in phi.levels), *(b.denominator for b in psi.levels))
    max_jump = max(phi.jumps[-1], psi.jumps[-1])
    if jd * max_jump * 2 >= _INT64_LIMIT:
        return None
    if tag == "prod":
        if ld * ld >= _INT64_LIMIT:
            return None
        value_den = ld * ld
    else:
        if ld * 2 >= _INT64_LIMIT:
            return None
        value_den = ld
    j1 = np.array([p.numerator * (jd // p.denominator) for p in phi.jumps], dtype=np.int64)
    j2 = np.array([q.numerator * (jd // q.denominator) for q in psi.jumps], dtype=np.int64)
    l1 = np.array([a.numerator * (ld // a.denominator) for a in phi.levels], dtype=np.int64)
    l2 = np.array([b.numerator * (ld // b.denominator) for b in psi.levels], dtype=np.int64)
    sums = np.add.outer(j1, j2).ravel()
    if tag == "min":
        vals = np.minimum.outer(l1, l2).ravel()
    elif tag == "prod":
        vals = np.multiply.outer(l1, l2).ravel()
    else:
        vals = np.add.outer(l1, l2).ravel() - ld
        np.maximum(vals, 0, out=vals)
    order = np.argsort(sums, kind="stable")
    sums = sums[order]
    vals = vals[order]
    running = np.maximum.accumulate(vals)
    shifted = np.empty_like(running)
    shifted[0] = -1
    shifted[1:] = running[:-1]
    keep = vals > shifted
    pts = [
        (Fraction(int(s), jd), Fraction(int(v), value_den))
        for s, v in zip(sums[keep], vals[keep])
    ]
    return envelope(pts)


def convolve_monotone(t: TNorm, m1: MonotoneStep, m2: MonotoneStep) -> MonotoneStep:
    """Sup-convolution of unnormalised monotone step maps.

    At finite t the supremum runs over the splittings s + (t - s) = t with
    s in [0, t]; at infinity every splitting is dominated by (inf, inf), so
    the value there is always m1(inf) * m2(inf).
    """
    sums = sorted(
        {b1 + b2 for b1 in m1.breakpoints for b2 in m2.breakpoints}
    )
    pvs = [_monotone_conv_at(t, m1, m2, s) for s in sums]
    cvs = []
    for k, b in enumerate(sums):
        if k + 1 < len(sums):
            probe = (b + sums[k + 1]) / 2
        else:
            probe = b + 1
        cvs.append(_monotone_conv_at(t, m1, m2, probe))
    inf_v = t.apply(m1.infinity_value, m2.infinity_value)
    return MonotoneStep(tuple(sums), tuple(pvs), tuple(cvs), inf_v)


def _monotone_conv_at(t: TNorm, m1: MonotoneStep, m2: MonotoneStep, at: Fraction) -> Fraction:
    """Exact sup_{s in [0, at]} m1(s) * m2(at - s) for finite at.

    The product is piecewise constant in s; it is enough to scan the
    breakpoints of both factors and the overlaps of their open cells.
    """
    apply = t.apply
    best = ZERO
    for k, b in enumerate(m1.breakpoints):
        if b <= at:
            v = apply(m1.point_values[k], m2(at - b))
            if v > best:
                best = v
    for k, d in enumerate(m2.breakpoints):
        if d <= at:
            v = apply(m1(at - d), m2.point_values[k])
            if v > best:
                best = v
    nb1 = len(m1.breakpoints)
    nb2 = len(m2.breakpoints)
    for i in range(nb1):
        lo1 = m1.breakpoints[i]
        hi1 = m1.breakpoints[i + 1] if i + 1 < nb1 else None
        for j in range(nb2):
            # s must satisfy lo1 < s < hi1 and d_j < at - s < d_{j+1}
            lo2 = m2.breakpoints[j]
            hi2 = m2.breakpoints[j + 1] if j + 1 < nb2 else None
            lo = lo1 if hi2 is None else max(lo1, at - hi2)
            hi = at - lo2 if hi1 is None else min(hi1, at - lo2)
            if lo < hi:
                v = apply(m1.cell_values[i], m2.cell_values[j])
                if v > best:
                    best = v
    return best


def step_implication(t: TNorm, p: Time, a, xi: Staircase) -> Staircase:
    """Implication with a one-step antecedent, exactly.

    The result is sup_{s<t} a -> xi(p + s): the candidate steps are the
    shifted steps (max(0, r - p), a -> c) of xi together with the floor step
    (0, a -> 0).  The floor matters for nilpotent t-norms, where a -> 0 can
    be positive; there the one-step/one-step implication is the join of the
    floor with one shifted step, not a single step.
    """
    if is_infinite(p):
        raise DomainError("one-step jump must be finite")
    p = ensure_time(p)
    a = Fraction(a)
    implies = t.implies
    pts = [(ZERO, implies(a, ZERO))]
    for r, c in xi.steps:
        shifted = r - p if r > p else ZERO
        pts.append((shifted, implies(a, c)))
    return envelope(pts)


def implication(t: TNorm, phi: Staircase, xi: Staircase) -> Staircase:
    """Right adjoint of convolution in the first argument.

    phi is a finite join of its canonical one-steps, and implication turns
    joins in the antecedent into meets.
    """
    return meet_all([step_implication(t, p, a, xi) for p, a in phi.steps])


def vertical_distance(t: TNorm, phi: Staircase, xi: Staircase, at: Time) -> Fraction:
    """Exact rho(at) = inf_{q > 0} phi(q) -> xi(q + at).

    The integrand is piecewise constant in q with breakpoints at the jumps
    of phi and at the jumps of xi shifted by -at, so the infimum is the
    minimum over those points and one interior sample per open cell.
    """
    if is_infinite(at):
        return t.implies(phi.last_level, xi.last_level)
    at = ensure_time(at)
    implies = t.implies
    bps = {q for q in phi.jumps if q > 0}
    for r in xi.jumps:
        q = r - at
        if q > 0:
            bps.add(q)
    points = sorted(bps)
    probes: list[Fraction] = []
    if not points:
        probes.append(ONE)
    else:
        probes.append(points[0] / 2)
        for k, q in enumerate(points):
            probes.append(q)
            if k + 1 < len(points):
                probes.append((q + points[k + 1]) / 2)
        probes.append(points[-1] + 1)
    return min(implies(phi(q), xi(q + at)) for q in probes)


def vertical_distance_grid(
    t: TNorm, phi: Staircase, xi: Staircase, grid: list[Time]
) -> list[tuple[Fraction, Fraction]]:
    """Lower/upper enclosures of rho at each grid point.

    rho is exactly computable on staircases, so both bounds coincide; the
    pair shape is kept so callers can treat the values as an enclosure.
    """
    out = []
    for at in grid:
        v = vertical_distance(t, phi, xi, at)
        out.append((v, v))
    return out


def vertical_distance_sup_below(t: TNorm, phi: Staircase, xi: Staircase, at: Time) -> Fraction:
    """sup_{s < at} rho(s), computed from single-point rho evaluations.

    rho is monotone and piecewise constant with breakpoints among
    {r - p > 0}, {r}, and 0 (r over jumps of xi, p over jumps of phi), so
    the supremum below `at` is the value on the open cell just under it.
    """
    if at == ZERO:
        return ZERO
    bps = {ZERO}
    for r in xi.jumps:
        bps.add(r)
        for p in phi.jumps:
            if r - p > 0:
                bps.add(r - p)
    if is_infinite(at):
        return vertical_distance(t, phi, xi, max(bps) + 1)
    below = max(b for b in bps if b < at)
    return vertical_distance(t, phi, xi, (below + at) / 2)


def residual(t: TNorm, xi: Staircase, phi: Staircase) -> Staircase:
    """The largest phi-multiple below xi: convolve(phi, implication(phi, xi))."""
    return convolve(t, phi, implication(t, phi, xi))


__all__ = [
    "convolve",
    "convolve_monotone",
    "step_implication",
    "implication",
    "vertical_distance",
    "vertical_distance_grid",
    "vertical_distance_sup_below",
    "residual",
]
