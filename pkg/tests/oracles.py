"""Naive reference implementations used to cross-check every reported constant.

Deliberately unoptimized: plain double loops over vertices and pairs, no
vectorization, no deduplication.  Geodesic enumeration is an independent
DFS driven only by the distance matrix.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


def all_geodesics(space, a, b):
    """All shortest a-b vertex paths, by DFS on the distance condition."""
    out = []

    def dfs(cur, acc):
        if cur == b:
            out.append(tuple(acc))
            return
        for w in space.neighbors(cur):
            if space.dist(cur, b) == space._exact(space.edge_weight_scaled(cur, w)) + space.dist(w, b):
                dfs(w, acc + [w])

    dfs(a, [a])
    return out


def oracle_four_point(space):
    from fractions import Fraction

    best = 0
    witness = None
    n = space.n
    for q in itertools.combinations(range(n), 4):
        x, y, z, w = q
        sums = sorted(
            [
                space.dist(x, y) + space.dist(z, w),
                space.dist(x, z) + space.dist(y, w),
                space.dist(x, w) + space.dist(y, z),
            ]
        )
        val = Fraction(sums[2] - sums[1], 2)
        if val > best:
            best = val
            witness = q
    return best, witness


def oracle_thin_triangle(space):
    best = 0
    witness = None
    for a, b, c in itertools.combinations(range(space.n), 3):
        sides = [
            space.canonical_geodesic(a, b),
            space.canonical_geodesic(a, c),
            space.canonical_geodesic(b, c),
        ]
        tri = 0
        for i in range(3):
            others = [v for j in range(3) if j != i for v in sides[j]]
            for p in sides[i]:
                m = min(space.dist(p, q) for q in others)
                if m > tri:
                    tri = m
        if tri > best:
            best = tri
            witness = (a, b, c)
    return best, witness


def oracle_lipschitz(s):
    from fractions import Fraction

    out = {}
    for d in range(s.num_domains):
        best = Fraction(0)
        for u, v, w in s.total_space.edges:
            dd = s.domain_spaces[d].dist(s.projections[d][u], s.projections[d][v])
            stretch = Fraction(dd) / Fraction(w)
            if stretch > best:
                best = stretch
        out[s.name_of(d)] = (int(best) if best.denominator == 1 else best, 0)
    return out


def oracle_kappa(s):
    from hhskit.structure import RelationKind

    best = 0
    for u in range(s.num_domains):
        for v in range(u + 1, s.num_domains):
            if s.relation_of(u, v).kind is not RelationKind.TRANSVERSE:
                continue
            for x in range(s.total_space.n):
                du = s.domain_spaces[u].dist(s.projections[u][x], s.rho[(v, u)])
                dv = s.domain_spaces[v].dist(s.projections[v][x], s.rho[(u, v)])
                if min(du, dv) > best:
                    best = min(du, dv)
    return best


def oracle_bgi(s, threshold):
    best = 0
    for u, v in sorted(s.nesting):
        sp_v = s.domain_spaces[v]
        rho = s.rho[(u, v)]

        @lru_cache(maxsize=None)
        def avoiding(a, b):
            return any(
                all(sp_v.dist(p, rho) >= threshold for p in path)
                for path in all_geodesics(sp_v, a, b)
            )

        for x in range(s.total_space.n):
            for y in range(x + 1, s.total_space.n):
                if avoiding(s.projections[v][x], s.projections[v][y]):
                    d = s.domain_spaces[u].dist(s.projections[u][x], s.projections[u][y])
                    if d > best:
                        best = d
    return best


def oracle_orthogonal_families(s, family_cap):
    from hhskit.structure import RelationKind

    doms = range(s.num_domains)
    fams = []
    for size in range(1, family_cap + 1):
        for fam in itertools.combinations(doms, size):
            if all(
                s.relation_of(a, b).kind is RelationKind.ORTHOGONAL
                for a, b in itertools.combinations(fam, 2)
            ):
                fams.append(fam)
    return fams


def oracle_realization(s, family_cap=2):
    eps = 0
    rho_eps = 0
    for fam in oracle_orthogonal_families(s, family_cap):
        ranges = [range(s.domain_spaces[d].n) for d in fam]
        for tup in itertools.product(*ranges):
            defects = []
            for x in range(s.total_space.n):
                defects.append(
                    max(
                        s.domain_spaces[d].dist(s.projections[d][x], tup[j])
                        for j, d in enumerate(fam)
                    )
                )
            m = min(defects)
            if m > eps:
                eps = m
            best_rho = None
            for x in range(s.total_space.n):
                if defects[x] != m:
                    continue
                r = 0
                for j, d in enumerate(fam):
                    for w in range(s.num_domains):
                        if s.rho_defined(d, w):
                            dd = s.domain_spaces[w].dist(s.projections[w][x], s.rho[(d, w)])
                            if dd > r:
                                r = dd
                if best_rho is None or r < best_rho:
                    best_rho = r
            if best_rho > rho_eps:
                rho_eps = best_rho
    return eps, rho_eps


def oracle_uniqueness(s, radii):
    profile = {}
    n = s.total_space.n
    for r in sorted(radii):
        best = 0
        for x in range(n):
            for y in range(x + 1, n):
                gap = max(
                    s.domain_spaces[d].dist(s.projections[d][x], s.projections[d][y])
                    for d in range(s.num_domains)
                )
                if gap <= r and s.total_space.dist(x, y) > best:
                    best = s.total_space.dist(x, y)
        profile[r] = best
    return profile


def oracle_coherence(s):
    best = 0
    for u, v in sorted(s.nesting):
        for w in range(s.num_domains):
            if w in (u, v):
                continue
            if (u, w) in s.rho and (v, w) in s.rho:
                d = s.domain_spaces[w].dist(s.rho[(u, w)], s.rho[(v, w)])
                if d > best:
                    best = d
    return best
