"""Finite geodesic metric spaces as connected weighted graphs.

All arithmetic is exact: edge weights are rationals, and internally every
weight is scaled by the LCM of the denominators so distances live in the
integers.  Queries return plain ints when every weight is integral and
Fractions otherwise; no floating point ever reaches a reported constant.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from numba import njit
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .errors import (
    DisconnectedGraph,
    EmptyTarget,
    InvalidEdge,
    SizeLimitExceeded,
)

DELTA_SWEEP_CAP = 400
PRODUCT_VERTEX_CAP = 20000

Weight = int | Fraction


def _to_weight(w) -> Fraction:
    if isinstance(w, Fraction):
        return w
    if isinstance(w, int):
        return Fraction(w)
    if isinstance(w, str):
        return Fraction(w)
    raise InvalidEdge(f"weight {w!r} is not a rational")


@dataclass(frozen=True)
class GeodesicSet:
    """All shortest paths between two vertices, truncated at a cap."""

    paths: tuple[tuple[int, ...], ...]
    truncated: bool


@dataclass(frozen=True)
class FourPointResult:
    value: Weight
    witness: tuple[int, int, int, int] | None


@dataclass(frozen=True)
class ThinTriangleResult:
    value: Weight
    witness: tuple[int, int, int] | None


@dataclass(frozen=True)
class DeltaReport:
    four_point_delta: Weight
    witness_quadruple: tuple[int, int, int, int] | None
    thin_triangle_delta_canonical: Weight
    witness_triangle: tuple[int, int, int] | None


class MetricSpace:
    """Connected undirected graph with positive rational edge weights.

    Immutable after construction.  The all-pairs distance matrix is computed
    once on first use (BFS-equivalent Dijkstra on integer-scaled weights) and
    cached; every query after that is a pure read.
    """

    def __init__(self, n: int, edges: Iterable[tuple], label: str | None = None):
        if n < 1:
            raise InvalidEdge(f"vertex count must be >= 1, got {n}")
        self.n = n
        self.label = label
        seen: set[tuple[int, int]] = set()
        norm = []
        for e in edges:
            u, v, w = (e[0], e[1], _to_weight(e[2])) if len(e) == 3 else (e[0], e[1], Fraction(1))
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidEdge(f"edge ({u},{v}) has an out-of-range endpoint")
            if u == v:
                raise InvalidEdge(f"self-loop at vertex {u}")
            if w <= 0:
                raise InvalidEdge(f"edge ({u},{v}) has nonpositive weight {w}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InvalidEdge(f"duplicate edge ({u},{v})")
            seen.add(key)
            norm.append((key[0], key[1], w))
        norm.sort()
        self.edges: tuple[tuple[int, int, Fraction], ...] = tuple(norm)

        self.scale = math.lcm(*(w.denominator for _, _, w in norm)) if norm else 1
        self._adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]  # (neighbor, scaled weight)
        for u, v, w in norm:
            sw = int(w * self.scale)
            self._adj[u].append((v, sw))
            self._adj[v].append((u, sw))
        for nbrs in self._adj:
            nbrs.sort()

        self._check_connected()
        self._dmat: np.ndarray | None = None
        self._next_hop: np.ndarray | None = None

    def _check_connected(self) -> None:
        seen = [False] * self.n
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            u = stack.pop()
            for v, _ in self._adj[u]:
                if not seen[v]:
                    seen[v] = True
                    count += 1
                    stack.append(v)
        if count != self.n:
            missing = next(i for i, s in enumerate(seen) if not s)
            raise DisconnectedGraph(f"vertex {missing} is unreachable from vertex 0")

    # -- distances -----------------------------------------------------------

    @property
    def dmat(self) -> np.ndarray:
        """All-pairs distance matrix in scaled integer units (int64)."""
        if self._dmat is None:
            if self.n == 1:
                self._dmat = np.zeros((1, 1), dtype=np.int64)
            else:
                rows, cols, data = [], [], []
                for u, v, w in self.edges:
                    sw = int(w * self.scale)
                    rows += [u, v]
                    cols += [v, u]
                    data += [sw, sw]
                g = csr_matrix((data, (rows, cols)), shape=(self.n, self.n))
                d = dijkstra(g, directed=False)
                self._dmat = np.asarray(np.rint(d), dtype=np.int64)
        return self._dmat

    def _exact(self, scaled: int) -> Weight:
        if self.scale == 1:
            return int(scaled)
        f = Fraction(int(scaled), self.scale)
        return int(f) if f.denominator == 1 else f

    def dist(self, u: int, v: int) -> Weight:
        """Exact graph distance."""
        return self._exact(self.dmat[u, v])

    def diameter(self) -> Weight:
        return self._exact(int(self.dmat.max()))

    def edge_weight_scaled(self, u: int, v: int) -> int:
        for x, sw in self._adj[u]:
            if x == v:
                return sw
        raise InvalidEdge(f"({u},{v}) is not an edge")

    def neighbors(self, u: int) -> list[int]:
        return [v for v, _ in self._adj[u]]

    # -- geodesics -----------------------------------------------------------

    @property
    def next_hop(self) -> np.ndarray:
        """next_hop[u, v]: smallest-id neighbor of u on a shortest u-v path."""
        if self._next_hop is None:
            D = self.dmat
            nh = np.full((self.n, self.n), -1, dtype=np.int32)
            np.fill_diagonal(nh, np.arange(self.n))
            for u in range(self.n):
                row = nh[u]
                du = D[u]
                for v, sw in self._adj[u]:  # ids ascending: first hit wins
                    mask = (row == -1) & (du == sw + D[v])
                    row[mask] = v
                row[u] = u
            self._next_hop = nh
        return self._next_hop

    def canonical_geodesic(self, u: int, v: int) -> tuple[int, ...]:
        """The lexicographically-least shortest path from u to v."""
        nh = self.next_hop
        path = [u]
        cur = u
        while cur != v:
            cur = int(nh[cur, v])
            path.append(cur)
        return tuple(path)

    def enumerate_geodesics(self, u: int, v: int, cap: int = 1000) -> GeodesicSet:
        """All shortest u-v paths in lexicographic order, truncated at cap."""
        if cap < 1:
            raise ValueError("cap must be >= 1")
        D = self.dmat
        paths: list[tuple[int, ...]] = []
        truncated = False
        stack: list[int] = [u]

        def dfs(cur: int) -> bool:
            # returns True when the cap was hit and more paths exist
            if cur == v:
                if len(paths) == cap:
                    return True
                paths.append(tuple(stack))
                return False
            for w, sw in self._adj[cur]:
                if D[cur, v] == sw + D[w, v]:
                    stack.append(w)
                    if dfs(w):
                        return True
                    stack.pop()
            return False

        truncated = dfs(u)
        return GeodesicSet(tuple(paths), truncated)

    # -- projections ---------------------------------------------------------

    def closest_point_projection(self, x: int, target: Iterable[int]) -> tuple[int, frozenset[int]]:
        """(smallest-id nearest target vertex, full argmin set)."""
        tgt = sorted(set(target))
        if not tgt:
            raise EmptyTarget("projection target is empty")
        D = self.dmat
        best = min(int(D[x, t]) for t in tgt)
        full = frozenset(t for t in tgt if D[x, t] == best)
        return min(full), full

    # -- hyperbolicity sweeps ------------------------------------------------

    def four_point_delta(self, max_vertices: int = DELTA_SWEEP_CAP) -> FourPointResult:
        """Exact four-point hyperbolicity constant by full quadruple sweep."""
        if self.n > max_vertices:
            raise SizeLimitExceeded(
                f"four-point sweep refused: {self.n} vertices > cap {max_vertices}"
            )
        if self.n < 4:
            return FourPointResult(self._exact(0), None)
        best, i, j, k, l = _four_point_sweep(self.dmat)
        if best == 0:
            return FourPointResult(self._exact(0), (0, 1, 2, 3))
        val = Fraction(int(best), 2 * self.scale)
        return FourPointResult(int(val) if val.denominator == 1 else val, (int(i), int(j), int(k), int(l)))

    def thin_triangle_delta_canonical(self, max_vertices: int = DELTA_SWEEP_CAP) -> ThinTriangleResult:
        """Thin-triangle constant over canonical geodesics.

        Fixes one geodesic per vertex pair (the canonical one), so this is an
        estimate tied to that choice rather than an infimum over all geodesic
        triangles.
        """
        if self.n > max_vertices:
            raise SizeLimitExceeded(
                f"thin-triangle sweep refused: {self.n} vertices > cap {max_vertices}"
            )
        if self.n < 3:
            return ThinTriangleResult(self._exact(0), None)
        best, a, b, c = _thin_triangle_sweep(self.dmat, self.next_hop)
        if best == 0:
            return ThinTriangleResult(self._exact(0), (0, 1, 2))
        return ThinTriangleResult(self._exact(int(best)), (int(a), int(b), int(c)))

    def delta_report(self, max_vertices: int = DELTA_SWEEP_CAP) -> DeltaReport:
        fp = self.four_point_delta(max_vertices)
        tt = self.thin_triangle_delta_canonical(max_vertices)
        return DeltaReport(fp.value, fp.witness, tt.value, tt.witness)

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        def enc(w: Fraction):
            return int(w) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"

        d = {"n": self.n, "edges": [[u, v, enc(w)] for u, v, w in self.edges]}
        if self.label is not None:
            d["label"] = self.label
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "MetricSpace":
        edges = [(e[0], e[1], e[2] if len(e) == 3 else 1) for e in d["edges"]]
        return cls(d["n"], edges, label=d.get("label"))

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    def to_dot(self, highlight: Iterable[int] = ()) -> str:
        hl = set(highlight)
        lines = [f'graph "{self.label or "space"}" {{']
        for v in range(self.n):
            attrs = ' [style=filled, fillcolor=lightblue]' if v in hl else ""
            lines.append(f"  {v}{attrs};")
        for u, v, w in self.edges:
            wl = "" if w == 1 else f' [label="{w}"]'
            lines.append(f"  {u} -- {v}{wl};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MetricSpace)
            and self.n == other.n
            and self.edges == other.edges
            and self.label == other.label
        )

    def __hash__(self):
        return hash((self.n, self.edges, self.label))

    def __repr__(self) -> str:
        name = f" {self.label!r}" if self.label else ""
        return f"<MetricSpace{name} n={self.n} edges={len(self.edges)}>"


def build_graph(n: int, edges: Sequence[tuple], label: str | None = None) -> MetricSpace:
    """Validate and construct a connected MetricSpace."""
    return MetricSpace(n, edges, label=label)


def path_graph(length: int, label: str | None = None) -> MetricSpace:
    """Unit-weight path with length+1 vertices 0..length."""
    if length < 0:
        raise InvalidEdge("path length must be >= 0")
    return MetricSpace(length + 1, [(i, i + 1, 1) for i in range(length)], label=label)


def l1_product(a: MetricSpace, b: MetricSpace, max_vertices: int = PRODUCT_VERTEX_CAP,
               label: str | None = None) -> MetricSpace:
    """Graph product whose distance is d_a + d_b; vertex (ua, ub) has id ua*b.n + ub."""
    if a.n * b.n > max_vertices:
        raise SizeLimitExceeded(f"product has {a.n * b.n} vertices > cap {max_vertices}")
    edges = []
    for ua, va, w in a.edges:
        for ub in range(b.n):
            edges.append((ua * b.n + ub, va * b.n + ub, w))
    for ub, vb, w in b.edges:
        for ua in range(a.n):
            edges.append((ua * b.n + ub, ua * b.n + vb, w))
    return MetricSpace(a.n * b.n, edges, label=label)


@njit(cache=True)
def _four_point_sweep(D):  # pragma: no cover - exercised via four_point_delta
    n = D.shape[0]
    best = np.int64(0)
    bi = bj = bk = bl = -1
    for i in range(n):
        for j in range(i + 1, n):
            dij = D[i, j]
            for k in range(j + 1, n):
                dik = D[i, k]
                djk = D[j, k]
                for l in range(k + 1, n):
                    s1 = dij + D[k, l]
                    s2 = dik + D[j, l]
                    s3 = D[i, l] + djk
                    if s1 >= s2:
                        hi, lo = s1, s2
                    else:
                        hi, lo = s2, s1
                    if s3 > hi:
                        sec = hi
                        hi = s3
                    elif s3 > lo:
                        sec = s3
                    else:
                        sec = lo
                    v = hi - sec
                    if v > best:
                        best = v
                        bi, bj, bk, bl = i, j, k, l
    return best, bi, bj, bk, bl


@njit(cache=True)
def _walk_path(nh, a, b, buf):  # pragma: no cover
    m = 0
    cur = a
    buf[m] = cur
    while cur != b:
        cur = nh[cur, b]
        m += 1
        buf[m] = cur
    return m + 1


@njit(cache=True)
def _thin_triangle_sweep(D, nh):  # pragma: no cover - exercised via the public method
    n = D.shape[0]
    best = np.int64(0)
    ba = bb = bc = -1
    s1 = np.empty(n, dtype=np.int32)
    s2 = np.empty(n, dtype=np.int32)
    s3 = np.empty(n, dtype=np.int32)
    for a in range(n):
        for b in range(a + 1, n):
            m1 = _walk_path(nh, a, b, s1)
            for c in range(b + 1, n):
                m2 = _walk_path(nh, a, c, s2)
                m3 = _walk_path(nh, b, c, s3)
                tri = np.int64(0)
                for probe in range(3):
                    if probe == 0:
                        pside, pm = s1, m1
                        o1, om1, o2, om2 = s2, m2, s3, m3
                    elif probe == 1:
                        pside, pm = s2, m2
                        o1, om1, o2, om2 = s1, m1, s3, m3
                    else:
                        pside, pm = s3, m3
                        o1, om1, o2, om2 = s1, m1, s2, m2
                    for ip in range(pm):
                        p = pside[ip]
                        mind = D[p, o1[0]]
                        for iq in range(1, om1):
                            d = D[p, o1[iq]]
                            if d < mind:
                                mind = d
                        for iq in range(om2):
                            d = D[p, o2[iq]]
                            if d < mind:
                                mind = d
                        if mind > tri:
                            tri = mind
                if tri > best:
                    best = tri
                    ba, bb, bc = a, b, c
    return best, ba, bb, bc
