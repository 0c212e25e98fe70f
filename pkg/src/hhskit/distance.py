"""Distance-formula evaluation, quasi-isometry fits, and coarse hulls."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DegeneratePairs
from .structure import HHSStructure


@dataclass(frozen=True)
class QIFit:
    """Constants (K, C) with (1/K)*sum_s - C <= d_X <= K*sum_s + C on the pair set."""

    K: object
    C: object
    threshold_s: object
    max_lower_violation: object
    max_upper_violation: object
    degenerate: bool = False


@dataclass(frozen=True)
class HullResult:
    vertices: frozenset
    truncated: bool


def df_sum(s: HHSStructure, x: int, y: int):
    """Sum over all domains of the coordinate distance between x and y."""
    total = 0
    for d in range(s.num_domains):
        total += s.domain_spaces[d].dist(s.projections[d][x], s.projections[d][y])
    return total


def df_terms(s: HHSStructure, x: int, y: int) -> list:
    return [
        s.domain_spaces[d].dist(s.projections[d][x], s.projections[d][y])
        for d in range(s.num_domains)
    ]


def df_thresholded(s: HHSStructure, x: int, y: int, threshold_s):
    """Sum of only the terms that reach the cut-off."""
    if threshold_s < 0:
        raise ValueError("threshold must be >= 0")
    return sum(t for t in df_terms(s, x, y) if t >= threshold_s)


def fit_qi_constants(
    s: HHSStructure, pairs: Iterable[tuple[int, int]] | None = None, threshold_s=0
) -> QIFit:
    """Exact ratio-maximization fit of the coarse distance-formula inequality.

    K is the worst two-sided ratio over pairs where both d_X and the
    thresholded sum are positive; C then absorbs the residuals (pairs where
    one side vanishes included).  Deterministic and exact.
    """
    if pairs is None:
        n = s.total_space.n
        pairs = [(x, y) for x in range(n) for y in range(x + 1, n)]
    else:
        pairs = list(pairs)
    if not pairs:
        raise DegeneratePairs("empty pair set")
    rows = []
    for x, y in pairs:
        dx = s.total_space.dist(x, y)
        sm = df_thresholded(s, x, y, threshold_s)
        rows.append((dx, sm))
    if all(dx == 0 for dx, _ in rows):
        raise DegeneratePairs("all pairs have d_X = 0")

    k = Fraction(1)
    degenerate = False
    both = [(dx, sm) for dx, sm in rows if dx > 0 and sm > 0]
    if both:
        for dx, sm in both:
            r = max(Fraction(sm) / Fraction(dx), Fraction(dx) / Fraction(sm))
            if r > k:
                k = r
    else:
        degenerate = True  # thresholded sum vanished everywhere d_X is positive

    c = Fraction(0)
    for dx, sm in rows:
        lower = Fraction(sm) / k - Fraction(dx)  # amount by which the lower bound fails
        upper = Fraction(dx) - k * Fraction(sm)
        c = max(c, lower, upper)

    def simp(f: Fraction):
        return int(f) if f.denominator == 1 else f

    return QIFit(simp(k), simp(c), threshold_s, 0, 0, degenerate)


def coarse_hull(
    s: HHSStructure, x: int, y: int, slack=0, geodesic_cap: int = 1000
) -> HullResult:
    """Vertices whose every coordinate is within `slack` of some geodesic
    between the respective coordinates of x and y."""
    if slack < 0:
        raise ValueError("slack must be >= 0")
    n = s.total_space.n
    truncated = False
    allowed: list[set[int]] = []
    for d in range(s.num_domains):
        sp = s.domain_spaces[d]
        gs = sp.enumerate_geodesics(s.projections[d][x], s.projections[d][y], cap=geodesic_cap)
        truncated = truncated or gs.truncated
        on_geo = {v for path in gs.paths for v in path}
        ok = {
            c for c in range(sp.n)
            if any(sp.dist(c, g) <= slack for g in on_geo)
        }
        allowed.append(ok)
    verts = frozenset(
        z for z in range(n)
        if all(s.projections[d][z] in allowed[d] for d in range(s.num_domains))
    )
    return HullResult(verts, truncated)
