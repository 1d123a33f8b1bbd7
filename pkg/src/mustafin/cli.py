"""Command-line front end.

Verbs: fiber, tropical, tree, segment, classify, census, selftest.
Output is deterministic; --format json emits a single object with a schema
version, --format text a readable report.  Exit codes: 1 for parse errors,
2 for precondition violations, 3 for internal errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import building, census, groebner, trees, tropical
from .valfield import ParseError

SCHEMA = "mustafin.report/1"


class PreconditionError(ValueError):
    pass


def _load_config(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
        return building.configuration_from_dict(doc)
    except (OSError, json.JSONDecodeError, ParseError,
            building.BuildingError) as exc:
        raise ParseError(str(exc)) from exc


def _chow_str(mono):
    parts = []
    for i, e in enumerate(mono, start=1):
        if e == 1:
            parts.append(f"H{i}")
        elif e > 1:
            parts.append(f"H{i}^{e}")
    return "*".join(parts) if parts else "1"


def _report_payload(report: groebner.FiberReport):
    comps = []
    for prime, md, flag in zip(report.components, report.multidegrees,
                               report.primary):
        comps.append({
            "generators": [groebner.poly_str(g, prime.ring)
                           for g in prime.gb()],
            "multidegree": [_chow_str(m) for m in md],
            "primary_for_factor": None if flag is None else flag + 1,
        })
    return {
        "d": report.d,
        "n": report.n,
        "fiber_ideal": [groebner.poly_str(g, report.fiber.ring)
                        for g in report.fiber.gb()],
        "components": comps,
        "reduction_complex": [list(f) for f in report.complex_facets],
    }


def _emit(payload, fmt, out):
    if fmt == "json":
        payload = {"schema": SCHEMA, **payload}
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        text = _render_text(payload)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_text(payload, indent=0):
    lines = []

    def walk(key, value, depth):
        pad = "  " * depth
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            for k in value:
                walk(k, value[k], depth + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for i, item in enumerate(value, 1):
                walk(f"[{i}]", item, depth + 1)
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: " + "; ".join(str(v) for v in value))
        else:
            lines.append(f"{pad}{key}: {value}")

    for k in payload:
        walk(k, payload[k], indent)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------


def cmd_fiber(args):
    config = _load_config(args.input)
    report = groebner.special_fiber_report(config)
    _emit({"command": "fiber", **_report_payload(report)}, args.format, args.out)


def cmd_tropical(args):
    config = _load_config(args.input)
    exps = []
    for pt in config.points:
        m = building.diagonal_exponents(pt)
        if m is None:
            raise PreconditionError(
                "tropical path needs diagonal lattices (one apartment)")
        exps.append(m)
    points = [tropical.lattice_to_apartment(m) for m in exps]
    sub = tropical.mixed_subdivision(points)
    labels = tropical.classify_cell_vertices(sub, points)
    hull = tropical.tconv_lattice_points(points)
    facets = tropical.reduction_complex_from_cells(sub)
    payload = {
        "command": "tropical",
        "d": config.d,
        "n": config.n,
        "points": [list(p) for p in points],
        "cells": [{
            "anchor": list(cell.anchor),
            "sets": [sorted(s) for s in cell.sets],
            "volume": cell.volume,
            "kind": label,
        } for cell, label in zip(sub.maximal_cells, labels)],
        "hull_lattice_points": [list(p) for p in hull],
        "reduction_complex": [list(f) for f in facets],
    }
    _emit(payload, args.format, args.out)


def cmd_tree(args):
    config = _load_config(args.input)
    if config.d != 2:
        raise PreconditionError("tree analysis needs d = 2")
    tree, dist = trees.configuration_tree(config)
    n = config.n

    def nm(v):
        return f"s{v[1]}" if isinstance(v, tuple) else str(v)

    complex_facets = trees.tree_reduction_complex(tree, n)
    mono = trees.is_monomial_type_tree(tree, n)
    payload = {
        "command": "tree",
        "n": n,
        "distances": [row[:] for row in dist],
        "edges": [[nm(a), nm(b), ln] for a, b, ln in sorted(
            tree.edges(), key=lambda e: (nm(e[0]), nm(e[1])))],
        "leaves": sorted(nm(v) for v in tree.leaves()),
        "reduction_complex": [list(f) for f in complex_facets],
        "monomial_type": mono,
    }
    if n == 2:
        payload["thickness"] = trees.thickness(config.points[0].gen,
                                               config.points[1].gen)
    if mono and n > 1:
        nodes, edges = trees.monomial_tree(tree, n)
        payload["monomial_tree"] = {
            "nodes": [f"{kind}:{idx}" for kind, idx in nodes],
            "edges": [[a, b, lbl] for a, b, lbl in edges],
            "orientations": 2 ** n,
        }
    _emit(payload, args.format, args.out)


def cmd_segment(args):
    config = _load_config(args.input)
    if config.n != 2:
        raise PreconditionError("segment analysis needs exactly two lattices")
    a, b = config.points
    basis, _, exps = building.common_apartment(a, b)
    bps, lengths = tropical.tropical_segment([0] * config.d,
                                             [-e for e in exps])
    payload = {
        "command": "segment",
        "d": config.d,
        "distance": building.class_distance(a, b),
        "relative_exponents": list(exps),
        "breakpoints": [list(p) for p in bps],
        "lengths": lengths,
        "bent": len(bps) > 2,
    }
    _emit(payload, args.format, args.out)


def cmd_classify(args):
    config = _load_config(args.input)
    if config.d != 3 or config.n != 3:
        raise PreconditionError("classification needs d = n = 3")
    report = groebner.special_fiber_report(config)
    tid, planar, _sig = census.classify_triangle(config)
    payload = {
        "command": "classify",
        "type_id": tid,
        "planar": planar,
        "bent_count": census.bent_count(config),
        "expected_components": census.expected_component_count(config),
        **_report_payload(report),
    }
    _emit(payload, args.format, args.out)


def cmd_census(args):
    entries = census.census_catalog()
    summary = census.census_summary()
    payload = {
        "command": "census",
        "types": summary["types"],
        "planar": summary["planar"],
        "nonplanar": summary["nonplanar"],
        "cells": summary["cells"],
        "entries": [{
            "type_id": e.type_id,
            "components": e.component_count,
            "bent_lines": e.bent_count,
            "planar": e.planar,
            "source": e.source,
        } for e in entries],
    }
    _emit(payload, args.format, args.out)


def cmd_selftest(args):
    rng = random.Random(args.seed)
    checks = []

    def check(name, fn):
        try:
            fn(rng)
            checks.append((name, True, ""))
        except Exception as exc:  # noqa: BLE001 - report, do not crash
            checks.append((name, False, str(exc)))

    check("valuation-arithmetic", _selftest_valuation)
    check("building-metric", _selftest_metric)
    check("tropical-distance-agreement", _selftest_tropical)
    check("thickness-distance", _selftest_thickness)
    check("fiber-pipeline", _selftest_fiber)
    payload = {
        "command": "selftest",
        "seed": args.seed,
        "results": [{"check": n, "ok": ok, "detail": msg}
                    for n, ok, msg in checks],
        "ok": all(ok for _, ok, _ in checks),
    }
    _emit(payload, args.format, args.out)
    if not payload["ok"]:
        raise groebner.GroebnerError("selftest failed")


def _random_scalar(rng, lo=-2, hi=2):
    from .valfield import ValuedScalar
    e = rng.randint(lo, hi)
    c = rng.choice([-2, -1, 1, 2])
    s = ValuedScalar(c) * ValuedScalar.t_power(e)
    if rng.random() < 0.5:
        s = s + ValuedScalar(rng.randint(-2, 2)) * ValuedScalar.t_power(e + 1)
    return s


def _random_matrix(rng, d):
    from .valfield import ValuedMatrix
    while True:
        m = ValuedMatrix([[_random_scalar(rng) for _ in range(d)]
                          for _ in range(d)])
        if m.det():
            return m


def _selftest_valuation(rng):
    for _ in range(50):
        a, b = _random_scalar(rng), _random_scalar(rng)
        assert (a * b).val() == a.val() + b.val()
        if (a + b):
            assert (a + b).val() >= min(a.val(), b.val())


def _selftest_metric(rng):
    for _ in range(10):
        a = building.LatticeClass(_random_matrix(rng, 2))
        b = building.LatticeClass(_random_matrix(rng, 2))
        c = building.LatticeClass(_random_matrix(rng, 2))
        dab = building.class_distance(a, b)
        assert dab == building.class_distance(b, a)
        assert dab + building.class_distance(b, c) >= building.class_distance(a, c)


def _selftest_tropical(rng):
    for _ in range(20):
        u = tuple(rng.randint(-3, 3) for _ in range(3))
        v = tuple(rng.randint(-3, 3) for _ in range(3))
        du = tropical.trop_dist(u, v)
        a = building.LatticeClass.diagonal([-c for c in u])
        b = building.LatticeClass.diagonal([-c for c in v])
        assert du == building.class_distance(a, b)


def _selftest_thickness(rng):
    for _ in range(10):
        g, h = _random_matrix(rng, 2), _random_matrix(rng, 2)
        assert trees.thickness(g, h) == building.class_distance(
            building.LatticeClass(g), building.LatticeClass(h))


def _selftest_fiber(rng):
    conf = building.Configuration([
        building.LatticeClass.diagonal([2, 1, 0]),
        building.LatticeClass.diagonal([4, 2, 0]),
        building.LatticeClass.diagonal([6, 3, 0]),
    ])
    report = groebner.special_fiber_report(conf)
    assert report.component_count() == 6
    assert len(report.fiber.gb()) == 9


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mustafin",
        description="special fibers of Mustafin varieties: symbolic and "
                    "tropical computation, tree fibers, triangle census")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("input", help="configuration file (JSON)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--out", default=None)

    for verb, fn, needs in (("fiber", cmd_fiber, True),
                            ("tropical", cmd_tropical, True),
                            ("tree", cmd_tree, True),
                            ("segment", cmd_segment, True),
                            ("classify", cmd_classify, True),
                            ("census", cmd_census, False),
                            ("selftest", cmd_selftest, False)):
        p = sub.add_parser(verb)
        common(p, needs)
        p.set_defaults(func=fn)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except (PreconditionError, building.BuildingError, trees.TreeError,
            tropical.TropicalError, census.CensusError) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - map internal failures to 3
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
