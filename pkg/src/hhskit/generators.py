"""Deterministic generators for the bundled toy structures.

tree_of_flats: square unit grids ("flats") joined along a tree by unit
attaching edges, with the collapse map to the flat tree and per-flat axis
projections filled in by closest-point projection.

interval_complex: a general builder that glues interval products by vertex
identification and equips the result with declared interval domains.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from importlib import resources

from .errors import ConfigValidation, DisconnectedGraph, SizeLimitExceeded
from .metric import MetricSpace, l1_product, path_graph
from .structure import DomainId, HHSStructure, new_structure

DEFAULT_SPAWN_POINTS = ((1, 0), (-1, 0), (0, 1), (0, -1))


@dataclass(frozen=True)
class TreeOfFlatsConfig:
    flat_radius: int  # N: flats are (2N+1)x(2N+1) grids on [-N, N]^2
    depth: int  # D: levels of child flats below the root flat
    spawn_points: tuple = DEFAULT_SPAWN_POINTS
    max_vertices: int = 20000

    def __post_init__(self):
        if self.flat_radius < 1:
            raise ConfigValidation("flat_radius must be >= 1")
        if self.depth < 0:
            raise ConfigValidation("depth must be >= 0")
        n = self.flat_radius
        for (i, j) in self.spawn_points:
            if not (-n <= i <= n and -n <= j <= n):
                raise ConfigValidation(f"spawn point ({i},{j}) outside the flat")


def tree_of_flats(cfg: TreeOfFlatsConfig) -> tuple[MetricSpace, HHSStructure]:
    """Build the tree-of-flats space and its full hierarchical structure."""
    n = cfg.flat_radius
    side = 2 * n + 1
    per_flat = side * side

    # flats in breadth-first order: (parent flat, spawn point) per non-root flat
    flats: list[tuple[int | None, tuple | None]] = [(None, None)]
    frontier = [0]
    for _ in range(cfg.depth):
        nxt = []
        for f in frontier:
            for sp in cfg.spawn_points:
                flats.append((f, sp))
                nxt.append(len(flats) - 1)
        frontier = nxt
    num_flats = len(flats)

    total = num_flats * per_flat
    if total > cfg.max_vertices:
        raise SizeLimitExceeded(f"tree of flats has {total} vertices > cap {cfg.max_vertices}")

    def vid(f: int, i: int, j: int) -> int:
        return f * per_flat + (i + n) * side + (j + n)

    edges = []
    for f in range(num_flats):
        for i in range(-n, n + 1):
            for j in range(-n, n + 1):
                if i < n:
                    edges.append((vid(f, i, j), vid(f, i + 1, j), 1))
                if j < n:
                    edges.append((vid(f, i, j), vid(f, i, j + 1), 1))
    for f, (parent, sp) in enumerate(flats):
        if parent is not None:
            edges.append((vid(parent, sp[0], sp[1]), vid(f, 0, 0), 1))

    label = f"tree_of_flats(N={n},D={cfg.depth})"
    space = MetricSpace(total, edges, label=label)

    # gate of every vertex into every flat (unique by construction; asserted)
    dmat = space.dmat
    gates: list[list[int]] = []  # gates[f][v] = vertex of flat f closest to v
    for f in range(num_flats):
        lo, hi = f * per_flat, (f + 1) * per_flat
        block = dmat[:, lo:hi]
        mins = block.min(axis=1)
        counts = (block == mins[:, None]).sum(axis=1)
        if int(counts.max()) != 1:
            raise ConfigValidation(f"gate into flat {f} is not single-valued")
        gates.append([lo + int(k) for k in block.argmin(axis=1)])

    def local(v: int) -> tuple[int, int]:
        r = v % per_flat
        return r // side - n, r % side - n

    # domains: T, then (F{f}_x, F{f}_y) per flat
    domains = [DomainId(0, "T")]
    spaces = [MetricSpace(
        num_flats,
        [(p, f, 1) for f, (p, _) in enumerate(flats) if p is not None],
        label="flat_tree",
    ) if num_flats > 1 else MetricSpace(1, [], label="flat_tree")]
    projections: list[list[int]] = [[v // per_flat for v in range(total)]]
    nesting = []
    orthogonal = []
    rho = {}
    complements = {}

    axis_path = path_graph(2 * n, label=f"axis[{-n}..{n}]")
    for f in range(num_flats):
        dx = DomainId(1 + 2 * f, f"F{f}_x")
        dy = DomainId(2 + 2 * f, f"F{f}_y")
        domains += [dx, dy]
        spaces += [axis_path, axis_path]
        projections.append([local(gates[f][v])[0] + n for v in range(total)])
        projections.append([local(gates[f][v])[1] + n for v in range(total)])
        nesting += [(dx.id, 0), (dy.id, 0)]
        orthogonal += [(dx.id, dy.id), (dy.id, dx.id)]
        rho[(dx.id, 0)] = f
        rho[(dy.id, 0)] = f
        complements[(dx.id, 0)] = dy.id
        complements[(dy.id, 0)] = dx.id

    # transverse rho points: the gate of flat e inside flat f, per axis
    for e in range(num_flats):
        for f in range(num_flats):
            if e == f:
                continue
            egates = {gates[f][vid(e, i, j)] for i in range(-n, n + 1) for j in range(-n, n + 1)}
            if len(egates) != 1:
                raise ConfigValidation(
                    f"flat {e} does not project to a single point of flat {f}"
                )
            gi, gj = local(next(iter(egates)))
            for src in (1 + 2 * e, 2 + 2 * e):
                rho[(src, 1 + 2 * f)] = gi + n
                rho[(src, 2 + 2 * f)] = gj + n

    structure = new_structure(
        space, domains, spaces, projections, nesting, orthogonal, rho, complements
    )
    return space, structure


def flat_grid(n: int, max_vertices: int = 20000) -> MetricSpace:
    """(n+1) x (n+1) unit grid with the l1 path metric."""
    if n < 1:
        raise ConfigValidation("flat_grid requires n >= 1")
    return l1_product(path_graph(n), path_graph(n), max_vertices=max_vertices,
                      label=f"flat_grid({n})")


# ---------------------------------------------------------------------------
# interval complexes


@dataclass(frozen=True)
class Block:
    name: str
    lengths: tuple  # one or two edge-lengths; vertices are the integer box

    def coords(self):
        return itertools.product(*(range(l + 1) for l in self.lengths))


@dataclass(frozen=True)
class DomainDecl:
    name: str
    length: int  # the domain space is the unit path 0..length
    reads: dict  # block name -> axis index whose coordinate this domain reads
    defaults: dict  # block name -> constant coordinate off the domain's support


@dataclass(frozen=True)
class IntervalComplexConfig:
    blocks: tuple
    gluings: tuple  # ((block, coord), (block, coord)) vertex identifications
    domains: tuple  # DomainDecl in id order
    nesting: tuple  # (child name, parent name), transitively closed
    orthogonal: tuple  # unordered pairs of names; both directions are derived
    rho: tuple  # (of name, in name, vertex)
    complements: tuple = ()  # (v name, w name, comp name)
    label: str = "interval_complex"


def interval_complex(cfg: IntervalComplexConfig) -> tuple[MetricSpace, HHSStructure]:
    """Glue the blocks and assemble the declared structure, validating eagerly."""
    block_by_name = {b.name: b for b in cfg.blocks}
    if len(block_by_name) != len(cfg.blocks):
        raise ConfigValidation("duplicate block names")

    local: list[tuple[str, tuple]] = []
    index: dict[tuple[str, tuple], int] = {}
    for b in cfg.blocks:
        for c in b.coords():
            index[(b.name, c)] = len(local)
            local.append((b.name, c))

    parent = list(range(len(local)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (ba, ca), (bb, cb) in cfg.gluings:
        ka, kb = (ba, tuple(ca)), (bb, tuple(cb))
        if ka not in index or kb not in index:
            raise ConfigValidation(f"gluing references unknown vertex: {ka} ~ {kb}")
        ra, rb = find(index[ka]), find(index[kb])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    class_id: dict[int, int] = {}
    for k in range(len(local)):
        r = find(k)
        if r not in class_id:
            class_id[r] = len(class_id)
    n_vertices = len(class_id)

    def cid(block: str, coord: tuple) -> int:
        return class_id[find(index[(block, coord)])]

    edges = set()
    for b in cfg.blocks:
        for c in b.coords():
            for axis in range(len(b.lengths)):
                if c[axis] < b.lengths[axis]:
                    c2 = tuple(v + 1 if i == axis else v for i, v in enumerate(c))
                    u, v = cid(b.name, c), cid(b.name, c2)
                    if u == v:
                        raise ConfigValidation(
                            f"gluing collapses edge {c}-{c2} of block {b.name}"
                        )
                    edges.add((min(u, v), max(u, v), 1))
    try:
        space = MetricSpace(n_vertices, sorted(edges), label=cfg.label)
    except DisconnectedGraph as exc:
        raise ConfigValidation(f"glued complex is disconnected: {exc}") from exc

    members: list[list[tuple[str, tuple]]] = [[] for _ in range(n_vertices)]
    for k, (bname, coord) in enumerate(local):
        members[class_id[find(k)]].append((bname, coord))

    domains = [DomainId(i, d.name) for i, d in enumerate(cfg.domains)]
    by_name = {d.name: d.id for d in domains}
    spaces = [path_graph(d.length, label=f"C{d.name}") for d in cfg.domains]
    projections = []
    for decl in cfg.domains:
        for b in cfg.blocks:
            if b.name not in decl.reads and b.name not in decl.defaults:
                raise ConfigValidation(
                    f"domain {decl.name}: block {b.name} has neither a read axis nor a default"
                )
        table = []
        for v in range(n_vertices):
            vals = set()
            for bname, coord in members[v]:
                if bname in decl.reads:
                    vals.add(coord[decl.reads[bname]])
                else:
                    vals.add(decl.defaults[bname])
            if len(vals) != 1:
                raise ConfigValidation(
                    f"domain {decl.name}: glued vertex {members[v]} has inconsistent "
                    f"coordinates {sorted(vals)}"
                )
            val = vals.pop()
            if not (0 <= val <= decl.length):
                raise ConfigValidation(
                    f"domain {decl.name}: coordinate {val} outside 0..{decl.length}"
                )
            table.append(val)
        projections.append(table)

    nesting = [(by_name[c], by_name[p]) for c, p in cfg.nesting]
    orthogonal = []
    for a, b in cfg.orthogonal:
        orthogonal += [(by_name[a], by_name[b]), (by_name[b], by_name[a])]
    rho = {(by_name[u], by_name[v]): pt for u, v, pt in cfg.rho}
    complements = {(by_name[v], by_name[w]): by_name[c] for v, w, c in cfg.complements}

    from .errors import StructureInvalid

    try:
        structure = new_structure(
            space, domains, spaces, projections, nesting, orthogonal, rho, complements
        )
    except StructureInvalid as exc:
        raise ConfigValidation(f"declared relations violate the axioms: {exc}") from exc
    return space, structure


def toy2_config() -> IntervalComplexConfig:
    """The bundled seven-domain interval-gluing complex.

    A spine interval carries a G x B square (with an O x P square hanging off
    it at B-coordinate 3) and two side intervals for Y and N.  The relation
    table extends the headline facts (R maximal, O and P nested in B, G
    orthogonal to B, O orthogonal to P) by the pairs the inheritance axiom
    forces (G orthogonal to O and P) and the nestings that realize the
    orthogonal complements (G, P inside Y; G, O inside N).
    """
    blocks = (
        Block("spine", (5,)),
        Block("sq_gb", (3, 3)),
        Block("sq_op", (2, 2)),
        Block("yseg", (3,)),
        Block("nseg", (3,)),
    )
    gluings = (
        (("spine", (1,)), ("sq_gb", (0, 0))),
        (("sq_gb", (2, 3)), ("sq_op", (0, 0))),
        (("spine", (3,)), ("yseg", (0,))),
        (("spine", (4,)), ("nseg", (0,))),
    )
    domains = (
        DomainDecl("R", 5, {"spine": 0}, {"sq_gb": 1, "sq_op": 1, "yseg": 3, "nseg": 4}),
        DomainDecl("G", 3, {"sq_gb": 0}, {"spine": 0, "sq_op": 2, "yseg": 0, "nseg": 0}),
        DomainDecl("B", 3, {"sq_gb": 1}, {"spine": 0, "sq_op": 3, "yseg": 0, "nseg": 0}),
        DomainDecl("O", 2, {"sq_op": 0}, {"spine": 0, "sq_gb": 0, "yseg": 0, "nseg": 0}),
        DomainDecl("P", 2, {"sq_op": 1}, {"spine": 0, "sq_gb": 0, "yseg": 0, "nseg": 0}),
        DomainDecl("Y", 3, {"yseg": 0}, {"spine": 0, "sq_gb": 0, "sq_op": 0, "nseg": 0}),
        DomainDecl("N", 3, {"nseg": 0}, {"spine": 0, "sq_gb": 0, "sq_op": 0, "yseg": 0}),
    )
    nesting = (
        ("G", "R"), ("B", "R"), ("O", "R"), ("P", "R"), ("Y", "R"), ("N", "R"),
        ("O", "B"), ("P", "B"),
        ("G", "Y"), ("P", "Y"),
        ("G", "N"), ("O", "N"),
    )
    orthogonal = (("G", "B"), ("O", "P"), ("G", "O"), ("G", "P"))
    rho = (
        ("G", "R", 1), ("B", "R", 1), ("O", "R", 1), ("P", "R", 1),
        ("Y", "R", 3), ("N", "R", 4),
        ("O", "B", 3), ("P", "B", 3),
        ("G", "Y", 0), ("P", "Y", 0),
        ("G", "N", 0), ("O", "N", 0),
        ("B", "Y", 0), ("Y", "B", 0),
        ("B", "N", 0), ("N", "B", 0),
        ("O", "Y", 0), ("Y", "O", 0),
        ("P", "N", 0), ("N", "P", 0),
        ("Y", "N", 0), ("N", "Y", 0),
    )
    complements = (
        ("G", "R", "B"), ("B", "R", "G"),
        ("O", "R", "Y"), ("P", "R", "N"),
        ("O", "B", "P"), ("P", "B", "O"),
        ("G", "Y", "P"), ("P", "Y", "G"),
        ("G", "N", "O"), ("O", "N", "G"),
    )
    return IntervalComplexConfig(
        blocks, gluings, domains, nesting, orthogonal, rho, complements,
        label="interval_complex(toy2)",
    )


BUNDLED = {
    "toy1_small": lambda: tree_of_flats(TreeOfFlatsConfig(1, 1))[1],
    "toy1_medium": lambda: tree_of_flats(TreeOfFlatsConfig(2, 1))[1],
    "toy2": lambda: interval_complex(toy2_config())[1],
}


def bundled_structure(name: str) -> HHSStructure:
    if name not in BUNDLED:
        raise ConfigValidation(f"unknown bundled structure {name!r}")
    return BUNDLED[name]()


def bundled_json(name: str) -> str:
    """The shipped JSON text of a bundled structure."""
    if name not in BUNDLED:
        raise ConfigValidation(f"unknown bundled structure {name!r}")
    return resources.files("hhskit.data").joinpath(f"{name}.json").read_text()
