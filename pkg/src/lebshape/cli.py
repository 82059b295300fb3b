"""Command-line front end.

Exit codes: 0 success (open orbits included), 2 bad input, 3 tied
labelings that disagree.
"""
from __future__ import annotations

import csv
import json
import sys

import click

from . import catalog as cat
from .leb import apply_word
from .metrics import (
    cluster_mean_distance,
    orbit_points,
    orbit_quality_series,
    product_distance,
    quality,
    running_minimum,
)
from .orbit import (
    DedupMode,
    InvalidPerturbation,
    NotReachable,
    cycles,
    default_threads,
    explore,
    find_word,
    frontier_counts,
    orbit_length,
    sweep,
)
from .shape import (
    DegenerateInput,
    LabelingInconsistency,
    ShapeKey,
    SquaredLengths,
    TIE_BREAKS,
    as_rational,
    key_to_point,
    labeling_keys,
    normalize,
    rational_str,
    squared_edge_lengths,
    validate_key,
)

EXIT_INPUT = 2
EXIT_INCONSISTENT = 3


class InputError(click.ClickException):
    exit_code = EXIT_INPUT


def dec(x) -> str:
    """Decimal with 12 significant digits."""
    return "%.12g" % float(x)


def _rationals(text: str, n: int, what: str) -> list:
    parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
    if len(parts) != n:
        raise InputError("%s needs %d rationals, got %d" % (what, n, len(parts)))
    try:
        return [as_rational(p) for p in parts]
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc


def parse_vertices(text: str) -> list:
    """``"x,y,z; x,y,z; x,y,z; x,y,z"``."""
    rows = [r for r in text.split(";") if r.strip()]
    if len(rows) != 4:
        raise InputError("vertices need four ';'-separated points")
    return [_rationals(r, 3, "a vertex") for r in rows]


def parse_lengths(text: str) -> SquaredLengths:
    """``"01=a,02=b,..."`` or six values in the order 01,02,03,12,13,23."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        if all("=" in p for p in parts):
            return SquaredLengths({a.strip(): b for a, b in (p.split("=", 1) for p in parts)})
        return SquaredLengths(parts)
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc


def parse_shape(text: str) -> ShapeKey:
    """A catalog name or five comma-separated rationals."""
    if "," in text:
        return ShapeKey.of(_rationals(text, 5, "a key"))
    try:
        return cat.get(text).key
    except cat.UnknownName as exc:
        raise InputError(str(exc)) from exc


def _from_json(doc: dict):
    srcs = [k for k in ("vertices", "squared_lengths", "key", "catalog") if k in doc]
    if len(srcs) != 1:
        raise InputError("input must have exactly one of vertices, squared_lengths, key, catalog")
    src = srcs[0]
    try:
        if src == "vertices":
            return "vertices", [[as_rational(c) for c in v] for v in doc["vertices"]]
        if src == "squared_lengths":
            return "lengths", SquaredLengths(doc["squared_lengths"])
        if src == "key":
            return "key", ShapeKey.of(doc["key"])
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    return "catalog", doc["catalog"]


def resolve(vertices, lengths, key, name, input_file, tie_break="canonical", strict=False):
    """Turn the mutually exclusive input options into (key, lengths or None, options)."""
    given = [x for x in (vertices, lengths, key, name, input_file) if x is not None]
    if len(given) != 1:
        raise InputError("give exactly one of --vertices, --lengths, --key, --catalog, --input")
    opts = {}
    if input_file is not None:
        try:
            doc = json.load(input_file)
        except json.JSONDecodeError as exc:
            raise InputError("bad JSON: %s" % exc) from exc
        kind, val = _from_json(doc)
        opts = {k: doc[k] for k in ("mode", "digits", "max_iter", "tie_break") if k in doc}
        tie_break = opts.get("tie_break", tie_break)
    elif vertices is not None:
        kind, val = "vertices", parse_vertices(vertices)
    elif lengths is not None:
        kind, val = "lengths", parse_lengths(lengths)
    elif key is not None:
        kind, val = "key", ShapeKey.of(_rationals(key, 5, "a key"))
    else:
        kind, val = "catalog", name
    if kind == "catalog":
        try:
            e = cat.get(val)
        except cat.UnknownName as exc:
            raise InputError(str(exc)) from exc
        if e.vertices is not None:
            kind, val = "vertices", e.vertices
        elif e.lengths is not None:
            kind, val = "lengths", e.lengths
        else:
            kind, val = "key", e.key
    if kind == "vertices":
        val = squared_edge_lengths(val)
        kind = "lengths"
    if kind == "lengths":
        return normalize(val, tie_break, strict), val, opts
    return val, None, opts


def _input_options(f):
    f = click.option("--input", "input_file", type=click.File("r"), help="JSON input record.")(f)
    f = click.option("--catalog", "name", help="Catalog name.")(f)
    f = click.option("--key", help="Five rationals z1,z2^2,w1,w2*z2,t^2.")(f)
    f = click.option("--lengths", help="Squared lengths 01=..,02=.. or six values.")(f)
    f = click.option("--vertices", help="Four points 'x,y,z; x,y,z; ...'.")(f)
    return f


def key_json(k) -> dict:
    p = key_to_point(k)
    return {"exact": list(ShapeKey.of(k).exact()),
            "point": {n: dec(v) for n, v in zip(p._fields, p)}}


def quality_json(q) -> dict:
    return {"min_dihedral_deg": dec(q.min_dihedral_deg), "min_face_deg": dec(q.min_face_deg),
            "norm_volume_pct": dec(q.norm_volume_pct)}


def _emit(obj) -> None:
    click.echo(json.dumps(obj, indent=2))


@click.group()
def main():
    """Normalize tetrahedra and explore their longest-edge bisection orbits."""


@main.command("normalize")
@_input_options
@click.option("--tie-break", type=click.Choice(TIE_BREAKS), default="canonical")
@click.option("--strict", is_flag=True, help="Fail if tied labelings disagree.")
def cmd_normalize(vertices, lengths, key, name, input_file, tie_break, strict):
    """Print the normalized key of a tetrahedron."""
    k, s, _ = resolve(vertices, lengths, key, name, input_file, tie_break, strict)
    out = {"key": key_json(k), "violations": validate_key(k), "quality": quality_json(quality(k))}
    if s is not None:
        ties = labeling_keys(s, tie_break)
        out["labelings"] = [list(p) for ps in ties.values() for p in ps]
        out["distinct_tied_keys"] = len(ties)
    _emit(out)


def write_dot(g, fh) -> None:
    fh.write("digraph orbit {\n")
    it = g.iteration_of()
    for i in range(len(g.nodes)):
        fh.write('  n%d [label="%d (iter %d)"];\n' % (i, i, it[i]))
    for a, lab, b in g.edges:
        color = "red" if lab == "L" else "blue"
        fh.write('  n%d -> n%d [label="%s", color=%s];\n' % (a, b, lab, color))
    fh.write("}\n")


def write_points(g, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["z1", "z2", "w1", "w2", "t"])
    for k in g.nodes:
        w.writerow([dec(v) for v in key_to_point(k)])


def write_metrics(g, series, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["iter", "new_shapes", "min_dihedral_deg", "min_face_deg", "min_norm_vol_pct"])
    for n, (fr, q) in enumerate(zip(g.frontiers, series)):
        w.writerow([n, len(fr), dec(q.min_dihedral_deg), dec(q.min_face_deg), dec(q.norm_volume_pct)])


def _mode(mode, opts) -> DedupMode:
    if mode is None:
        mode = opts.get("mode", "exact")
        if "digits" in opts and mode.lower() == "rounded":
            mode = "rounded:%d" % int(opts["digits"])
    try:
        return DedupMode.parse(mode)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


@main.command("orbit")
@_input_options
@click.option("--max-iter", type=click.IntRange(min=0), default=None, help="Bisection rounds (default 40).")
@click.option("--mode", default=None, help="exact (default) or rounded[:digits].")
@click.option("--tie-break", type=click.Choice(TIE_BREAKS), default="canonical")
@click.option("--threads", type=click.IntRange(min=1), default=None, help="Worker processes.")
@click.option("--out-graph", type=click.File("w"), help="Write the graph as DOT.")
@click.option("--out-points", type=click.File("w"), help="Write node points as CSV.")
@click.option("--out-metrics", type=click.File("w"), help="Write per-iteration quality as CSV.")
@click.option("--nodes/--no-nodes", default=True, help="Include every node in the JSON summary.")
@click.option("--max-cycles", type=int, default=20, show_default=True,
              help="Cycles reported for orbits of at most 500 nodes.")
def cmd_orbit(vertices, lengths, key, name, input_file, max_iter, mode, tie_break, threads,
              out_graph, out_points, out_metrics, nodes, max_cycles):
    """Explore the orbit and print a JSON summary."""
    k, _, opts = resolve(vertices, lengths, key, name, input_file, tie_break)
    tie_break = opts.get("tie_break", tie_break)
    if max_iter is None:
        max_iter = int(opts.get("max_iter", 40))
    dm = _mode(mode, opts)
    g = explore(k, max_iter, dm, tie_break, threads or default_threads())
    pts = orbit_points(g)
    series = orbit_quality_series(g, pts)
    out = {
        "root": key_json(k),
        "mode": str(dm),
        "max_iter": max_iter,
        "node_count": len(g.nodes),
        "closed": g.closed,
        "length": orbit_length(g),
        "frontier_counts": frontier_counts(g),
        "quality_minima": quality_json(running_minimum(series)),
    }
    if len(g.nodes) <= 500:
        out["cycles"] = cycles(g, limit=max_cycles)
    if nodes:
        out["nodes"] = [key_json(n) for n in g.nodes]
    if out_graph:
        write_dot(g, out_graph)
    if out_points:
        write_points(g, out_points)
    if out_metrics:
        write_metrics(g, series, out_metrics)
    _emit(out)


def _alpha_range(start, stop, step):
    a, b, s = as_rational(start), as_rational(stop), as_rational(step)
    if s <= 0:
        raise InputError("step must be positive")
    out = []
    x = a
    while x <= b:
        out.append(x)
        x += s
    return out


@main.command("sweep")
@click.option("--family", type=click.IntRange(1, 5), required=True, help="Perturbed component 1..5.")
@click.option("--start", default="1/100", show_default=True)
@click.option("--stop", default="1/10", show_default=True)
@click.option("--step", default="1/100", show_default=True)
@click.option("--max-iter", type=click.IntRange(min=0), default=100, show_default=True)
@click.option("--mode", default="exact", show_default=True)
@click.option("--max-nodes", type=click.IntRange(min=1), default=20000, show_default=True,
              help="Report an orbit as open once it exceeds this many nodes.")
def cmd_sweep(family, start, stop, step, max_iter, mode, max_nodes):
    """CSV of orbit length per alpha for a perturbation family of the halves key."""
    try:
        alphas = _alpha_range(start, stop, step)
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    dm = _mode(mode, {})
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["alpha", "length"])
    for a, n in sweep(cat.family_template(family), alphas, max_iter, dm, on_invalid="flag", max_nodes=max_nodes):
        w.writerow([rational_str(a), n])


@main.command("distance")
@click.argument("a", required=False)
@click.argument("b", required=False)
@click.option("--cluster", help="';'-separated shapes (catalog names or keys).")
@click.option("--ref", help="Reference shape for --cluster.")
def cmd_distance(a, b, cluster, ref):
    """Product hyperbolic distance between two shapes, or a cluster mean.

    Shapes are catalog names or five comma-separated rationals.
    """
    if cluster is not None:
        if ref is None or a is not None:
            raise InputError("--cluster needs --ref and no positional shapes")
        members = [parse_shape(c.strip()) for c in cluster.split(";") if c.strip()]
        if not members:
            raise InputError("empty cluster")
        click.echo(dec(cluster_mean_distance(members, parse_shape(ref))))
        return
    if a is None or b is None:
        raise InputError("give two shapes, or --cluster with --ref")
    click.echo(dec(product_distance(parse_shape(a), parse_shape(b))))


@main.command("word")
@_input_options
@click.option("--from", "src", default=None, help="Start shape (default: the root).")
@click.option("--to", "dst", required=True, help="Target shape.")
@click.option("--max-iter", type=click.IntRange(min=0), default=40, show_default=True)
@click.option("--mode", default="exact", show_default=True)
def cmd_word(vertices, lengths, key, name, input_file, src, dst, max_iter, mode):
    """Shortest L/R word between two shapes of an orbit, or 'unreachable'."""
    k, _, opts = resolve(vertices, lengths, key, name, input_file)
    g = explore(k, max_iter, _mode(mode, opts))
    start = k if src is None else parse_shape(src)
    try:
        click.echo(find_word(g, start, parse_shape(dst)))
    except NotReachable:
        click.echo("unreachable")


@main.command("apply")
@_input_options
@click.argument("word")
def cmd_apply(vertices, lengths, key, name, input_file, word):
    """Keys visited by applying an L/R word."""
    k, _, _ = resolve(vertices, lengths, key, name, input_file)
    try:
        path = apply_word(k, word)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit([key_json(x) for x in path])


@main.command("catalog")
def cmd_catalog():
    """Export the catalog as JSON."""
    click.echo(cat.export_json())


def run(argv=None) -> int:
    """Entry point returning the exit code."""
    try:
        main.main(args=argv, prog_name="lebshape", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_INPUT
    except click.exceptions.Abort:
        return 1
    except LabelingInconsistency as exc:
        click.echo("error: %s" % exc, err=True)
        return EXIT_INCONSISTENT
    except (DegenerateInput, InvalidPerturbation, ValueError, TypeError, ZeroDivisionError) as exc:
        click.echo("error: %s" % exc, err=True)
        return EXIT_INPUT
    return 0


def entry() -> None:
    sys.exit(run())


if __name__ == "__main__":
    entry()
