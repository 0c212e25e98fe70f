"""Best-constant sweeps for the metric axioms of a structure.

Every constant reported here is an exact sweep maximum over the finite
instance; nothing is estimated or thresholded a priori.  "Uniformly small"
becomes testable by comparing the same constant across truncations of
growing size.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import CombinatorialBlowup, GeodesicCapExceeded, ValidationFirst
from .structure import HHSStructure, RelationKind


@dataclass(frozen=True)
class CheckConfig:
    bgi_thresholds: tuple = (1, 2, 3)
    geodesic_cap: int = 1000
    family_cap: int = 2
    tuple_budget: int = 500000
    radii: tuple = (0, 1, 2, 4)


@dataclass(frozen=True)
class LipschitzResult:
    per_domain: dict  # name -> (K, C)
    global_k: object
    global_c: object


@dataclass(frozen=True)
class ConsistencyResult:
    kappa: object
    witness: tuple | None  # (U name, V name, x)


@dataclass(frozen=True)
class BGIResult:
    threshold: object
    bound: object
    witness: tuple | None  # (U name, V name, x, y)
    truncated: bool


@dataclass(frozen=True)
class RealizationResult:
    eps: object
    rho_eps: object
    eps_witness: tuple | None
    rho_eps_witness: tuple | None


@dataclass(frozen=True)
class CoherenceResult:
    bound: object
    witness: tuple | None  # (U name, V name, W name)


@dataclass
class AxiomReport:
    lipschitz: LipschitzResult
    consistency_kappa: ConsistencyResult
    bgi: dict  # threshold -> BGIResult
    realization: RealizationResult
    uniqueness_profile: dict  # r -> theta(r)
    rho_coherence: CoherenceResult
    flags: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        def num(v):
            if isinstance(v, Fraction):
                return str(v)
            return v

        return {
            "lipschitz": {
                "per_domain": {k: [num(a), num(b)] for k, (a, b) in self.lipschitz.per_domain.items()},
                "constant": [num(self.lipschitz.global_k), num(self.lipschitz.global_c)],
            },
            "consistency": {
                "constant": num(self.consistency_kappa.kappa),
                "witness": list(self.consistency_kappa.witness or []),
            },
            "bounded_geodesic_image": {
                str(e): {
                    "constant": num(r.bound),
                    "witness": list(r.witness or []),
                    "flags": ["truncated"] if r.truncated else [],
                }
                for e, r in self.bgi.items()
            },
            "partial_realization": {
                "constant": num(self.realization.eps),
                "rho_constant": num(self.realization.rho_eps),
                "witness": list(self.realization.eps_witness or []),
                "rho_witness": list(self.realization.rho_eps_witness or []),
            },
            "uniqueness": {str(r): num(t) for r, t in self.uniqueness_profile.items()},
            "rho_coherence": {
                "constant": num(self.rho_coherence.bound),
                "witness": list(self.rho_coherence.witness or []),
            },
            "flags": list(self.flags),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"


def _coord_arrays(s: HHSStructure) -> list[np.ndarray]:
    return [np.asarray(p, dtype=np.int64) for p in s.projections]


def _common_scale(s: HHSStructure) -> int:
    """LCM of the domain-space weight scales; lets sweeps compare distances
    from different domain spaces as integers in one common unit."""
    import math

    return math.lcm(*(sp.scale for sp in s.domain_spaces)) if s.num_domains else 1


def _exact_common(value: int, common: int):
    f = Fraction(int(value), common)
    return int(f) if f.denominator == 1 else f


def check_coarse_lipschitz(s: HHSStructure) -> LipschitzResult:
    """Edge-wise stretch of every projection; C = 0 since the sweep is per edge.

    On a geodesic graph the maximal per-edge stretch bounds the global
    Lipschitz constant, so (K, 0) is a valid coarse-Lipschitz pair.
    """
    per: dict[str, tuple] = {}
    gk = 0
    for d in range(s.num_domains):
        sp = s.domain_spaces[d]
        proj = s.projections[d]
        best: Fraction = Fraction(0)
        for u, v, w in s.total_space.edges:
            stretch = Fraction(sp.dist(proj[u], proj[v])) / Fraction(w)
            if stretch > best:
                best = stretch
        k = int(best) if best.denominator == 1 else best
        per[s.name_of(d)] = (k, 0)
        if k > gk:
            gk = k
    return LipschitzResult(per, gk, 0)


def check_transverse_consistency(s: HHSStructure) -> ConsistencyResult:
    """kappa = max over transverse (U,V) and x of min(d_U(x_U, rho^V_U), d_V(x_V, rho^U_V))."""
    coords = _coord_arrays(s)
    common = _common_scale(s)
    kappa = 0  # in common scaled units
    witness = None
    for u in range(s.num_domains):
        for v in range(u + 1, s.num_domains):
            if s.relation_of(u, v).kind is not RelationKind.TRANSVERSE:
                continue
            fu = common // s.domain_spaces[u].scale
            fv = common // s.domain_spaces[v].scale
            du = s.domain_spaces[u].dmat[coords[u], s.rho[(v, u)]] * fu
            dv = s.domain_spaces[v].dmat[coords[v], s.rho[(u, v)]] * fv
            m = np.minimum(du, dv)
            x = int(np.argmax(m))
            if int(m[x]) > kappa:
                kappa = int(m[x])
                witness = (s.name_of(u), s.name_of(v), x)
    return ConsistencyResult(_exact_common(kappa, common), witness)


def _geodesic_avoids(sp, a: int, b: int, rho: int, threshold, cap: int):
    """Whether some geodesic a->b in sp stays at distance >= threshold from rho.

    Returns (exists, truncated): truncated means the enumeration hit the cap
    before finding an avoiding geodesic, so `exists` is only a lower bound.
    """
    gs = sp.enumerate_geodesics(a, b, cap=cap)
    D = sp.dmat
    for path in gs.paths:
        if all(sp._exact(int(D[p, rho])) >= threshold for p in path):
            return True, False
    return False, gs.truncated


def check_bounded_geodesic_image(
    s: HHSStructure, threshold, geodesic_cap: int = 1000
) -> BGIResult:
    """For each U strictly nested in V: whenever some geodesic of the V-space
    between x_V and y_V stays >= threshold away from rho^U_V, record
    d_U(x_U, y_U); the bound is the max recorded value."""
    bound = 0
    witness = None
    truncated = False
    n = s.total_space.n
    for u, v in sorted(s.nesting):
        sp_v = s.domain_spaces[v]
        sp_u = s.domain_spaces[u]
        rho = s.rho[(u, v)]
        pu = s.projections[u]
        pv = s.projections[v]
        # dedupe vertices by their (V-coordinate, U-coordinate) pair
        combos = sorted({(pv[x], pu[x]) for x in range(n)})
        avoid_cache: dict[tuple[int, int], tuple[bool, bool]] = {}
        for i, (av, au) in enumerate(combos):
            for bv, bu in combos[i:]:
                key = (min(av, bv), max(av, bv))
                if key not in avoid_cache:
                    avoid_cache[key] = _geodesic_avoids(sp_v, key[0], key[1], rho, threshold, geodesic_cap)
                ok, trunc = avoid_cache[key]
                truncated = truncated or trunc
                if not ok:
                    continue
                d = sp_u.dist(au, bu)
                if d > bound:
                    bound = d
                    # report one witness vertex pair realizing the combo
                    x = next(x for x in range(n) if pv[x] == av and pu[x] == au)
                    y = next(y for y in range(n) if pv[y] == bv and pu[y] == bu)
                    witness = (s.name_of(u), s.name_of(v), x, y)
    return BGIResult(threshold, bound, witness, truncated)


def _orthogonal_families(s: HHSStructure, family_cap: int) -> list[tuple[int, ...]]:
    """All pairwise-orthogonal domain sets of size 1..family_cap."""
    orth = {(a, b) for a, b in s.orthogonal} | {(b, a) for a, b in s.orthogonal}
    families: list[tuple[int, ...]] = [(d,) for d in range(s.num_domains)]
    frontier = families
    for _ in range(1, family_cap):
        nxt = []
        for fam in frontier:
            for d in range(fam[-1] + 1, s.num_domains):
                if all((m, d) in orth for m in fam):
                    nxt.append(fam + (d,))
        families += nxt
        frontier = nxt
    return families


def check_partial_realization(
    s: HHSStructure, family_cap: int = 2, tuple_budget: int = 500000
) -> RealizationResult:
    """Worst-case defect of realizing prescribed coordinates on orthogonal families.

    eps: max over families {V_j} and coordinate tuples (p_j) of
    min_x max_j d(x_{V_j}, p_j).  rho_eps: for the best realization point
    (ties broken toward the smallest secondary defect, since the axiom only
    asserts such a point exists), the distance of its W-coordinates to the
    rho-points rho^{V_j}_W over every W where those are defined.
    """
    families = _orthogonal_families(s, family_cap)
    total_tuples = sum(
        int(np.prod([s.domain_spaces[d].n for d in fam])) for fam in families
    )
    if total_tuples > tuple_budget:
        raise CombinatorialBlowup(
            f"{total_tuples} realization tuples exceed budget {tuple_budget}"
        )
    coords = _coord_arrays(s)
    common = _common_scale(s)
    eps = 0  # common scaled units
    rho_eps = 0
    eps_wit = None
    rho_wit = None
    n = s.total_space.n
    for fam in families:
        # rho targets relevant to this family: (j, W, rho vertex)
        rho_targets = [
            (j, w, s.rho[(vj, w)])
            for j, vj in enumerate(fam)
            for w in range(s.num_domains)
            if s.rho_defined(vj, w)
        ]
        ranges = [range(s.domain_spaces[d].n) for d in fam]
        dmats = [s.domain_spaces[d].dmat for d in fam]
        factors = [common // s.domain_spaces[d].scale for d in fam]
        for tup in itertools.product(*ranges):
            defect = np.zeros(n, dtype=np.int64)
            for j, vj in enumerate(fam):
                np.maximum(defect, dmats[j][coords[vj], tup[j]] * factors[j], out=defect)
            m = int(defect.min())
            if m > eps:
                eps = m
                eps_wit = (tuple(s.name_of(d) for d in fam), tup)
            argmins = np.flatnonzero(defect == m)
            best_rho = None
            for x in argmins:
                r = 0
                for j, w, rv in rho_targets:
                    d = int(s.domain_spaces[w].dmat[coords[w][x], rv]) * (
                        common // s.domain_spaces[w].scale
                    )
                    if d > r:
                        r = d
                if best_rho is None or r < best_rho:
                    best_rho = r
                if best_rho == 0:
                    break
            if best_rho is not None and best_rho > rho_eps:
                rho_eps = best_rho
                rho_wit = (tuple(s.name_of(d) for d in fam), tup)
    return RealizationResult(_exact_common(eps, common), _exact_common(rho_eps, common), eps_wit, rho_wit)


def check_uniqueness(s: HHSStructure, radii=(0, 1, 2, 4)) -> dict:
    """theta(r) = max d_X(x,y) over pairs whose coordinate gaps are all <= r."""
    if not radii:
        raise ValueError("radii must be nonempty")
    coords = _coord_arrays(s)
    common = _common_scale(s)
    n = s.total_space.n
    gap = np.zeros((n, n), dtype=np.int64)
    for d in range(s.num_domains):
        cd = coords[d]
        f = common // s.domain_spaces[d].scale
        np.maximum(gap, s.domain_spaces[d].dmat[np.ix_(cd, cd)] * f, out=gap)
    dx = s.total_space.dmat
    profile = {}
    import math

    for r in sorted(radii):
        sel = dx[gap <= math.floor(Fraction(r) * common)]
        profile[r] = s.total_space._exact(int(sel.max())) if sel.size else 0
    return profile


def check_rho_coherence(s: HHSStructure) -> CoherenceResult:
    """max d_W(rho^U_W, rho^V_W) over U strictly nested in V with both defined."""
    bound = 0
    witness = None
    for u, v in sorted(s.nesting):
        for w in range(s.num_domains):
            if w in (u, v):
                continue
            if (u, w) in s.rho and (v, w) in s.rho:
                d = s.domain_spaces[w].dist(s.rho[(u, w)], s.rho[(v, w)])
                if d > bound:
                    bound = d
                    witness = (s.name_of(u), s.name_of(v), s.name_of(w))
    return CoherenceResult(bound, witness)


def full_report(s: HHSStructure, config: CheckConfig = CheckConfig()) -> AxiomReport:
    """Run every check; per-check failures become flagged entries, not aborts."""
    violations = s.validate_relation_axioms()
    if violations:
        raise ValidationFirst(
            f"structure fails relation validation ({len(violations)} violations); "
            "run validate_relation_axioms first"
        )
    flags: list[str] = []
    lip = check_coarse_lipschitz(s)
    kappa = check_transverse_consistency(s)
    bgi = {}
    for e in config.bgi_thresholds:
        r = check_bounded_geodesic_image(s, e, geodesic_cap=config.geodesic_cap)
        if r.truncated:
            flags.append(f"bgi-truncated@{e}")
        bgi[e] = r
    try:
        realization = check_partial_realization(
            s, family_cap=config.family_cap, tuple_budget=config.tuple_budget
        )
    except CombinatorialBlowup as exc:
        flags.append(f"realization-skipped: {exc}")
        realization = RealizationResult(None, None, None, None)
    uniqueness = check_uniqueness(s, config.radii)
    coherence = check_rho_coherence(s)
    return AxiomReport(lip, kappa, bgi, realization, uniqueness, coherence, flags)
