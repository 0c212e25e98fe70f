"""Command-line surface: generators, checkers, and exports for batch use.

Exit codes: 0 success / axioms pass, 1 relation-axiom validation failure,
2 parse or config error.
"""

from __future__ import annotations

import csv
import json
import os
import sys

import click

from .axioms import CheckConfig, full_report
from .distance import coarse_hull, df_sum, df_thresholded, fit_qi_constants
from .errors import DegeneratePairs, HHSError, ParseError
from .generators import (
    TreeOfFlatsConfig,
    flat_grid,
    interval_complex,
    toy2_config,
    tree_of_flats,
)
from .metric import MetricSpace
from .structure import HHSStructure, RelationKind


def _max_vertices_cap(default: int = 20000) -> int:
    env = os.environ.get("HHS_MAX_VERTICES")
    return int(env) if env else default


def _load_structure(path: str) -> HHSStructure:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read structure file {path}: {exc}") from exc
    s = HHSStructure.from_json_dict(data)
    try:
        s.check_references()
    except HHSError as exc:
        raise ParseError(f"structure file {path} has broken tables: {exc}") from exc
    return s


def _load_space(path: str) -> MetricSpace:
    try:
        with open(path) as fh:
            data = json.load(fh)
        return MetricSpace.from_json_dict(data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"cannot read space file {path}: {exc}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


@click.group()
def main():
    """Hierarchical structures on finite geodesic graphs."""


@main.command()
@click.option("--example", type=click.Choice(["tree-of-flats", "interval-complex", "flat-grid"]),
              required=True)
@click.option("--N", "n", type=int, default=1, help="flat radius / grid size")
@click.option("--D", "d", type=int, default=1, help="tree depth below the root flat")
@click.option("--out", type=str, default="-")
def build(example, n, d, out):
    """Generate a bundled example and write its JSON."""
    cap = _max_vertices_cap()
    if example == "tree-of-flats":
        _, s = tree_of_flats(TreeOfFlatsConfig(n, d, max_vertices=cap))
        _write(out, s.to_json())
    elif example == "interval-complex":
        _, s = interval_complex(toy2_config())
        _write(out, s.to_json())
    else:
        _write(out, flat_grid(n, max_vertices=cap).to_json())


@main.command()
@click.argument("structure_file")
@click.option("--report", "report_out", type=str, default=None, help="report JSON path")
@click.option("--geodesic-cap", type=int, default=1000)
@click.option("--family-cap", type=int, default=2)
@click.option("--tuple-budget", type=int, default=500000)
def check(structure_file, report_out, geodesic_cap, family_cap, tuple_budget):
    """Validate the relation axioms, then compute every axiom constant."""
    s = _load_structure(structure_file)
    violations = s.validate_relation_axioms()
    if violations:
        payload = {"violations": [str(v) for v in violations]}
        _write(report_out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
        for v in violations:
            click.echo(str(v), err=True)
        sys.exit(1)
    cfg = CheckConfig(geodesic_cap=geodesic_cap, family_cap=family_cap,
                      tuple_budget=tuple_budget)
    report = full_report(s, cfg)
    _write(report_out, report.to_json())
    if report_out is not None:
        click.echo(f"relation axioms pass; report written to {report_out}")


@main.command()
@click.argument("structure_file")
@click.option("--threshold", "threshold_s", type=int, default=0)
@click.option("--csv", "csv_out", type=str, default=None, help="per-pair CSV path")
@click.option("--fit-out", type=str, default="-", help="QIFit JSON path")
def distfit(structure_file, threshold_s, csv_out, fit_out):
    """Compare d_X with the (thresholded) distance-formula sum over all pairs."""
    s = _load_structure(structure_file)
    n = s.total_space.n
    if csv_out:
        with open(csv_out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "y", "d_X", "sum", "thresholded_sum"])
            for x in range(n):
                for y in range(x + 1, n):
                    w.writerow([x, y, s.total_space.dist(x, y), df_sum(s, x, y),
                                df_thresholded(s, x, y, threshold_s)])
    try:
        fit = fit_qi_constants(s, threshold_s=threshold_s)
        payload = {
            "K": str(fit.K), "C": str(fit.C), "threshold_s": threshold_s,
            "max_lower_violation": 0, "max_upper_violation": 0,
            "flags": ["degenerate"] if fit.degenerate else [],
        }
    except DegeneratePairs as exc:
        payload = {"flags": ["degenerate"], "error": str(exc)}
    _write(fit_out, json.dumps(payload, indent=2, sort_keys=True) + "\n")


@main.command()
@click.argument("space_file")
@click.option("--cap", type=int, default=400, help="vertex cap for the sweeps")
@click.option("--out", type=str, default="-")
def delta(space_file, cap, out):
    """Four-point and canonical thin-triangle hyperbolicity constants."""
    sp = _load_space(space_file)
    rep = sp.delta_report(max_vertices=cap)
    payload = {
        "four_point_delta": str(rep.four_point_delta),
        "witness_quadruple": list(rep.witness_quadruple or []),
        "thin_triangle_delta_canonical": str(rep.thin_triangle_delta_canonical),
        "witness_triangle": list(rep.witness_triangle or []),
    }
    _write(out, json.dumps(payload, indent=2, sort_keys=True) + "\n")


@main.command()
@click.argument("structure_file")
@click.option("--out", type=str, default="-")
def classify(structure_file, out):
    """Table of all domain pairs with their relation and rho availability."""
    s = _load_structure(structure_file)
    lines = []
    for u in range(s.num_domains):
        for v in range(u + 1, s.num_domains):
            rel = s.relation_of(u, v)
            if rel.kind is RelationKind.NESTED:
                desc = f"nested({s.name_of(rel.child)} in {s.name_of(rel.parent)})"
            else:
                desc = rel.kind.value
            rho_uv = "yes" if s.rho_defined(u, v) else "no"
            rho_vu = "yes" if s.rho_defined(v, u) else "no"
            lines.append(f"{s.name_of(u)}\t{s.name_of(v)}\t{desc}\trho:{rho_uv}/{rho_vu}")
    _write(out, "\n".join(lines) + ("\n" if lines else ""))


@main.command()
@click.argument("structure_file")
@click.option("--x", "x", type=int, required=True)
@click.option("--y", "y", type=int, required=True)
@click.option("--slack", type=int, default=0)
@click.option("--dot", "dot_out", type=str, default=None, help="DOT with the hull highlighted")
@click.option("--out", type=str, default="-")
def hull(structure_file, x, y, slack, dot_out, out):
    """Coarse hull of two vertices: per-domain geodesic neighborhoods."""
    s = _load_structure(structure_file)
    res = coarse_hull(s, x, y, slack=slack)
    payload = {"vertices": sorted(res.vertices),
               "flags": ["truncated"] if res.truncated else []}
    _write(out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    if dot_out:
        _write(dot_out, s.total_space.to_dot(highlight=res.vertices))


@main.command()
@click.argument("input_file")
@click.option("--format", "fmt", type=click.Choice(["json", "dot", "svg-plot"]), default="json")
@click.option("--domains", "domain_pair", type=str, default=None,
              help="U,V domain names for svg-plot")
@click.option("--out", type=str, default="-")
def export(input_file, fmt, domain_pair, out):
    """Re-export a structure (or space) as canonical JSON, DOT, or a coordinate plot."""
    with open(input_file) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"cannot parse {input_file}: {exc}") from exc
    is_structure = "domains" in data
    if fmt == "json":
        obj = HHSStructure.from_json_dict(data) if is_structure else MetricSpace.from_json_dict(data)
        _write(out, obj.to_json())
    elif fmt == "dot":
        sp = (HHSStructure.from_json_dict(data).total_space if is_structure
              else MetricSpace.from_json_dict(data))
        _write(out, sp.to_dot())
    else:
        if not is_structure or not domain_pair:
            raise ParseError("svg-plot needs a structure file and --domains U,V")
        s = HHSStructure.from_json_dict(data)
        _plot_pair(s, domain_pair, out)


def _plot_pair(s: HHSStructure, domain_pair: str, out: str) -> None:
    # scatter of (x_U, x_V) over X, with rho lines for transverse pairs
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    uname, vname = (t.strip() for t in domain_pair.split(","))
    u = s.domain_by_name(uname).id
    v = s.domain_by_name(vname).id
    xs = [s.projections[u][x] for x in range(s.total_space.n)]
    ys = [s.projections[v][x] for x in range(s.total_space.n)]
    fig, ax = plt.subplots(figsize=(4, 4))
    ax.scatter(xs, ys, s=12)
    if s.rho_defined(v, u):
        ax.axvline(s.rho[(v, u)], color="grey", linestyle="--", linewidth=1)
    if s.rho_defined(u, v):
        ax.axhline(s.rho[(u, v)], color="grey", linestyle="--", linewidth=1)
    ax.set_xlabel(uname)
    ax.set_ylabel(vname)
    target = out if out not in (None, "-") else "pair.svg"
    fig.savefig(target, format="svg")
    plt.close(fig)


def entry() -> None:
    """Console entry point mapping package errors to exit code 2."""
    try:
        main()
    except HHSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":  # pragma: no cover
    entry()
