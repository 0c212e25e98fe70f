"""The HHS data model: domains, relations, projections, rho-points.

A structure is a self-contained checkable object: projections are stored as
total lookup tables, rho-points as explicit vertices, and the combinatorial
relation axioms are verified by exhaustive sweep in validate_relation_axioms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .errors import (
    DanglingReference,
    MissingRho,
    RelationConflict,
    StructureInvalid,
    UnknownDomain,
)
from .metric import MetricSpace


@dataclass(frozen=True)
class DomainId:
    id: int
    name: str


class RelationKind(Enum):
    EQUAL = "equal"
    NESTED = "nested"
    ORTHOGONAL = "orthogonal"
    TRANSVERSE = "transverse"


@dataclass(frozen=True)
class Relation:
    kind: RelationKind
    child: int | None = None  # set iff kind is NESTED
    parent: int | None = None

    def __str__(self) -> str:
        if self.kind is RelationKind.NESTED:
            return f"nested({self.child} in {self.parent})"
        return self.kind.value


@dataclass(frozen=True)
class Violation:
    """One failed relation axiom; subject names the offending tuple of domain names."""

    axiom: str
    subject: tuple[str, ...]
    message: str

    def __str__(self) -> str:
        return f"[{self.axiom}] {self.message}"


class HHSStructure:
    """Total space X plus domains, per-domain spaces, projection tables,
    nesting/orthogonality relations, rho table, and complements.

    The raw constructor is lenient (so broken structures can be loaded and
    diagnosed); new_structure() is the eager-checking entry point.
    """

    def __init__(
        self,
        total_space: MetricSpace,
        domains: Sequence[DomainId],
        domain_spaces: Sequence[MetricSpace],
        projections: Sequence[Sequence[int]],
        nesting_pairs: Iterable[tuple[int, int]],
        orthogonal_pairs: Iterable[tuple[int, int]],
        rho_table: Mapping[tuple[int, int], int],
        complements: Mapping[tuple[int, int], int],
    ):
        self.total_space = total_space
        self.domains = tuple(domains)
        self.domain_spaces = tuple(domain_spaces)
        self.projections = tuple(tuple(p) for p in projections)
        self.nesting = frozenset((c, p) for c, p in nesting_pairs)
        self.orthogonal = frozenset((a, b) for a, b in orthogonal_pairs)
        self.rho = dict(rho_table)
        self.complements = dict(complements)
        self._by_name = {d.name: d.id for d in self.domains}

    # -- lookups -------------------------------------------------------------

    @property
    def num_domains(self) -> int:
        return len(self.domains)

    def domain_by_name(self, name: str) -> DomainId:
        if name not in self._by_name:
            raise UnknownDomain(name)
        return self.domains[self._by_name[name]]

    def name_of(self, did: int) -> str:
        self._check_domain(did)
        return self.domains[did].name

    def space_of(self, did: int) -> MetricSpace:
        self._check_domain(did)
        return self.domain_spaces[did]

    def _check_domain(self, did: int) -> None:
        if not (0 <= did < len(self.domains)):
            raise UnknownDomain(f"domain id {did}")

    # -- relations -----------------------------------------------------------

    def relation_of(self, u: int, v: int) -> Relation:
        """Equal / Nested / Orthogonal, with Transverse as the derived default."""
        self._check_domain(u)
        self._check_domain(v)
        if u == v:
            return Relation(RelationKind.EQUAL)
        if (u, v) in self.nesting:
            return Relation(RelationKind.NESTED, child=u, parent=v)
        if (v, u) in self.nesting:
            return Relation(RelationKind.NESTED, child=v, parent=u)
        if (u, v) in self.orthogonal or (v, u) in self.orthogonal:
            return Relation(RelationKind.ORTHOGONAL)
        return Relation(RelationKind.TRANSVERSE)

    def is_nested_eq(self, u: int, v: int) -> bool:
        """u == v or u strictly nested in v."""
        return u == v or (u, v) in self.nesting

    def rho_defined(self, u: int, v: int) -> bool:
        """rho^u_v exists exactly when u is transverse to v or strictly nested in v."""
        r = self.relation_of(u, v)
        return r.kind is RelationKind.TRANSVERSE or (
            r.kind is RelationKind.NESTED and r.child == u
        )

    def rho_point(self, u: int, v: int) -> int | None:
        """rho^u_v as a vertex of the v-space, or None where undefined."""
        self._check_domain(u)
        self._check_domain(v)
        if not self.rho_defined(u, v):
            return None
        return self.rho[(u, v)]

    def nesting_height(self) -> int:
        """Length (in strict steps) of the longest nesting chain."""
        parents: dict[int, list[int]] = {d.id: [] for d in self.domains}
        for c, p in self.nesting:
            parents[c].append(p)
        memo: dict[int, int] = {}

        def up(d: int) -> int:
            if d not in memo:
                memo[d] = max((1 + up(p) for p in parents[d]), default=0)
            return memo[d]

        return max(up(d.id) for d in self.domains)

    def maximal_domains(self) -> list[int]:
        return [d.id for d in self.domains if not any(c == d.id for c, _ in self.nesting)]

    # -- coordinates ---------------------------------------------------------

    def coordinates(self, x: int) -> tuple[int, ...]:
        """The full coordinate vector of a vertex of X, indexed by domain id."""
        if not (0 <= x < self.total_space.n):
            raise DanglingReference(f"vertex {x} not in the total space")
        return tuple(p[x] for p in self.projections)

    def coordinate(self, x: int, did: int) -> int:
        self._check_domain(did)
        return self.projections[did][x]

    # -- validation ----------------------------------------------------------

    def check_references(self) -> None:
        """Raise on structurally broken tables (dangling ids, bad rho domain)."""
        nd = len(self.domains)
        ids = [d.id for d in self.domains]
        if ids != list(range(nd)):
            raise DanglingReference("domain ids must be dense 0..k-1 in order")
        if len({d.name for d in self.domains}) != nd:
            raise DanglingReference("duplicate domain names")
        if len(self.domain_spaces) != nd or len(self.projections) != nd:
            raise DanglingReference("one space and one projection table per domain required")
        for d in range(nd):
            proj = self.projections[d]
            if len(proj) != self.total_space.n:
                raise DanglingReference(
                    f"projection table for {self.name_of(d)} is not total on X"
                )
            cn = self.domain_spaces[d].n
            for x, c in enumerate(proj):
                if not (0 <= c < cn):
                    raise DanglingReference(
                        f"projection of vertex {x} under {self.name_of(d)} is out of range"
                    )
        for c, p in self.nesting | self.orthogonal:
            if not (0 <= c < nd and 0 <= p < nd):
                raise DanglingReference(f"relation pair ({c},{p}) references unknown domain")
        for (u, v), w in self.complements.items():
            for d in (u, v, w):
                if not (0 <= d < nd):
                    raise DanglingReference(f"complement entry ({u},{v})->{w} is dangling")
        for (u, v), pt in self.rho.items():
            if not (0 <= u < nd and 0 <= v < nd):
                raise DanglingReference(f"rho entry ({u},{v}) references unknown domain")
            if not (0 <= pt < self.domain_spaces[v].n):
                raise DanglingReference(
                    f"rho^{self.name_of(u)}_{self.name_of(v)} = {pt} is not a vertex"
                )

    def check_rho_domain(self) -> None:
        """Raise MissingRho unless rho is defined exactly where the relations require."""
        for u in range(self.num_domains):
            for v in range(self.num_domains):
                if u == v:
                    continue
                need = self.rho_defined(u, v)
                have = (u, v) in self.rho
                if need and not have:
                    raise MissingRho(
                        f"rho^{self.name_of(u)}_{self.name_of(v)} required "
                        f"({self.relation_of(u, v)}) but missing"
                    )
                if have and not need:
                    raise MissingRho(
                        f"rho^{self.name_of(u)}_{self.name_of(v)} present but the pair is "
                        f"{self.relation_of(u, v)}"
                    )

    def validate_relation_axioms(self) -> list[Violation]:
        """Exhaustive check of the combinatorial axioms; empty list means pass."""
        out: list[Violation] = []
        nm = self.name_of
        nd = self.num_domains

        # strict partial order
        for c, p in sorted(self.nesting):
            if c == p:
                out.append(Violation("partial-order", (nm(c),), f"{nm(c)} nested in itself"))
            if (p, c) in self.nesting:
                out.append(
                    Violation("partial-order", (nm(c), nm(p)),
                              f"antisymmetry fails: {nm(c)} and {nm(p)} nested in each other")
                )
        for a, b in sorted(self.nesting):
            for c, d in sorted(self.nesting):
                if b == c and a != d and (a, d) not in self.nesting:
                    out.append(
                        Violation("partial-order", (nm(a), nm(b), nm(d)),
                                  f"transitivity fails: {nm(a)} in {nm(b)} in {nm(d)} "
                                  f"but {nm(a)} not in {nm(d)}")
                    )

        # unique maximal element dominating everything
        maximal = self.maximal_domains()
        if len(maximal) != 1:
            out.append(
                Violation("unique-maximal", tuple(nm(m) for m in maximal),
                          f"no unique maximal element: {[nm(m) for m in maximal]}")
            )
        else:
            top = maximal[0]
            for d in range(nd):
                if d != top and (d, top) not in self.nesting:
                    out.append(
                        Violation("unique-maximal", (nm(d), nm(top)),
                                  f"{nm(d)} is not nested in the maximal element {nm(top)}")
                    )

        # orthogonality: anti-reflexive and symmetric
        for a, b in sorted(self.orthogonal):
            if a == b:
                out.append(
                    Violation("orthogonality-shape", (nm(a),),
                              f"{nm(a)} declared orthogonal to itself")
                )
            elif (b, a) not in self.orthogonal:
                out.append(
                    Violation("orthogonality-shape", (nm(a), nm(b)),
                              f"orthogonality not symmetric: ({nm(a)},{nm(b)}) lacks its mirror")
                )

        # no pair both nested-comparable and orthogonal
        for a, b in sorted(self.orthogonal):
            if a < b and ((a, b) in self.nesting or (b, a) in self.nesting):
                out.append(
                    Violation("relation-conflict", (nm(a), nm(b)),
                              f"{nm(a)} and {nm(b)} are both nested-comparable and orthogonal")
                )

        orth = {(a, b) for a, b in self.orthogonal} | {(b, a) for a, b in self.orthogonal}

        # inheritance: V nested-eq W and U orthogonal W implies U orthogonal V
        for v, w in sorted(self.nesting):
            for u in range(nd):
                if (u, w) in orth and (u, v) not in orth and u != v:
                    out.append(
                        Violation("inheritance", (nm(u), nm(v), nm(w)),
                                  f"{nm(u)} orthogonal {nm(w)} and {nm(v)} nested in {nm(w)} "
                                  f"but {nm(u)} not orthogonal {nm(v)}")
                    )

        # orthogonal complements
        for v, w in sorted(self.nesting):
            need = [u for u in range(nd) if (u, w) in self.nesting and (u, v) in orth]
            if not need:
                continue
            comp = self.complements.get((v, w))
            if comp is None:
                out.append(
                    Violation("complement", (nm(v), nm(w)),
                              f"complement of {nm(v)} in {nm(w)} required "
                              f"(by {[nm(u) for u in need]}) but not declared")
                )
                continue
            if (comp, w) not in self.nesting:
                out.append(
                    Violation("complement", (nm(v), nm(w), nm(comp)),
                              f"complement {nm(comp)} of {nm(v)} is not strictly nested in {nm(w)}")
                )
            for u in need:
                if not self.is_nested_eq(u, comp):
                    out.append(
                        Violation("complement", (nm(v), nm(w), nm(u)),
                                  f"{nm(u)} is orthogonal to {nm(v)} and nested in {nm(w)} "
                                  f"but not nested in complement {nm(comp)}")
                    )
        return out

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        nm = self.name_of
        return {
            "total_space": self.total_space.to_json_dict(),
            "domains": [
                {
                    "name": d.name,
                    "space": self.domain_spaces[d.id].to_json_dict(),
                    "projection": list(self.projections[d.id]),
                }
                for d in self.domains
            ],
            "nesting": [[nm(c), nm(p)] for c, p in sorted(self.nesting)],
            "orthogonal": [[nm(a), nm(b)] for a, b in sorted(self.orthogonal)],
            "rho": [
                {"of": nm(u), "in": nm(v), "vertex": pt}
                for (u, v), pt in sorted(self.rho.items())
            ],
            "complements": [
                {"v": nm(v), "w": nm(w), "comp": nm(c)}
                for (v, w), c in sorted(self.complements.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json_dict(cls, d: dict) -> "HHSStructure":
        try:
            total = MetricSpace.from_json_dict(d["total_space"])
            domains = [DomainId(i, dd["name"]) for i, dd in enumerate(d["domains"])]
            by_name = {dom.name: dom.id for dom in domains}
            spaces = [MetricSpace.from_json_dict(dd["space"]) for dd in d["domains"]]
            projections = [list(dd["projection"]) for dd in d["domains"]]
            nesting = [(by_name[c], by_name[p]) for c, p in d.get("nesting", [])]
            orthogonal = [(by_name[a], by_name[b]) for a, b in d.get("orthogonal", [])]
            rho = {
                (by_name[e["of"]], by_name[e["in"]]): e["vertex"] for e in d.get("rho", [])
            }
            complements = {
                (by_name[e["v"]], by_name[e["w"]]): by_name[e["comp"]]
                for e in d.get("complements", [])
            }
        except (KeyError, TypeError) as exc:
            from .errors import ParseError

            raise ParseError(f"malformed structure JSON: {exc!r}") from exc
        return cls(total, domains, spaces, projections, nesting, orthogonal, rho, complements)


def new_structure(
    total_space: MetricSpace,
    domains: Sequence[DomainId],
    domain_spaces: Sequence[MetricSpace],
    projections: Sequence[Sequence[int]],
    nesting_pairs: Iterable[tuple[int, int]],
    orthogonal_pairs: Iterable[tuple[int, int]],
    rho_table: Mapping[tuple[int, int], int],
    complements: Mapping[tuple[int, int], int],
) -> HHSStructure:
    """Construct a structure with every invariant checked eagerly.

    Raises DanglingReference / RelationConflict / MissingRho / StructureInvalid
    on the first violated invariant.
    """
    s = HHSStructure(
        total_space, domains, domain_spaces, projections,
        nesting_pairs, orthogonal_pairs, rho_table, complements,
    )
    s.check_references()
    violations = s.validate_relation_axioms()
    conflicts = [v for v in violations if v.axiom in ("orthogonality-shape", "relation-conflict")]
    if conflicts:
        raise RelationConflict(conflicts)
    if violations:
        raise StructureInvalid(violations)
    s.check_rho_domain()
    return s
