"""Tropical convexity in the apartment Z^d / Z(1, ..., 1).

Apartment points use the min-plus convention: the point of a diagonal
lattice with exponent vector m is -m, tropical segments and hulls are
closures under componentwise min with scalar shifts, and the regular mixed
subdivision of n * Delta_{d-1} is read off from the dual hyperplane
arrangement types.  Everything is integer-exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import comb

from . import _polytope


class TropicalError(ValueError):
    pass


def canonical(coords):
    """Canonical representative modulo the all-ones vector: first coord 0."""
    c = tuple(int(x) for x in coords)
    return tuple(x - c[0] for x in c)


class ApartmentPoint:
    """Lattice point of the apartment, stored in canonical form."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = canonical(coords)

    @property
    def d(self):
        return len(self.coords)

    def __eq__(self, other):
        if isinstance(other, ApartmentPoint):
            return self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"ApartmentPoint{self.coords}"


def _pts(points):
    return [p.coords if isinstance(p, ApartmentPoint) else canonical(p)
            for p in points]


def trop_dist(u, v):
    (u, v) = _pts([u, v])
    diffs = [a - b for a, b in zip(u, v)]
    return max(diffs) - min(diffs)


def trop_member(x, points):
    """Is x in the tropical convex hull of the points?

    Tropical projection test: x belongs iff min_i(lam_i + u_i) with
    lam_i = max_j(x_j - u_ij) returns x itself.
    """
    pts = _pts(points)
    (x,) = _pts([x])
    lam = [max(xj - uj for xj, uj in zip(x, u)) for u in pts]
    proj = [min(lam[i] + pts[i][j] for i in range(len(pts)))
            for j in range(len(x))]
    return canonical(proj) == x


def tconv_lattice_points(points):
    """All lattice points of the tropical hull, as canonical tuples.

    Enumerates the coordinate-difference bounding box of the generators and
    keeps the members; the hull is contained in that box.
    """
    pts = _pts(points)
    d = len(pts[0])
    ranges = []
    for j in range(1, d):
        vals = [u[j] for u in pts]
        ranges.append(range(min(vals), max(vals) + 1))
    out = []
    for rest in product(*ranges):
        x = (0,) + rest
        if trop_member(x, pts):
            out.append(x)
    return sorted(out)


def tropical_segment(u, v):
    """Pseudo-vertices and piece lengths of the segment from u to v.

    The d-1 lengths are the consecutive gaps of the sorted coordinatewise
    differences v - u; interior breakpoints are the bend points.
    """
    (u, v) = _pts([u, v])
    diffs = sorted(b - a for a, b in zip(u, v))
    lengths = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
    levels = sorted(set(diffs))
    breakpoints = []
    for s in levels:
        pt = tuple(min(ui + s, vi) for ui, vi in zip(u, v))
        pt = canonical(pt)
        if pt not in breakpoints:
            breakpoints.append(pt)
    if not breakpoints:
        breakpoints = [canonical(u)]
    return breakpoints, lengths


def lift_coefficient(points, index_multiset):
    """Lifting height of a lattice point of n * Delta_{d-1}.

    For the multiset (i_1 <= ... <= i_n) this is the optimal assignment
    value max over permutations of sum_k -u^{(sigma(k))}_{i_k}; brute force
    covers n <= 8, larger inputs would need a min-cost matching.
    """
    pts = _pts(points)
    n = len(pts)
    idx = list(index_multiset)
    if len(idx) != n:
        raise TropicalError("index multiset length must equal n")
    if any(not 1 <= i <= len(pts[0]) for i in idx):
        raise TropicalError("index out of range")
    if n > 8:
        raise TropicalError("assignment brute force limited to n <= 8")
    best = None
    for sigma in permutations(range(n)):
        s = sum(-pts[sigma[k]][idx[k] - 1] for k in range(n))
        if best is None or s > best:
            best = s
    return best


@dataclass(frozen=True)
class CellType:
    """Maximal cell of a mixed subdivision: one direction set per summand."""

    sets: tuple  # tuple of frozensets of coordinate indices (1-based)
    anchor: tuple  # dual arrangement vertex, canonical apartment point
    volume: int

    def prime_variables(self, names=None):
        """Vanishing positions (j, i): coordinate j of factor i, 1-based."""
        out = []
        d = max(max(s) for s in self.sets)
        for i, s in enumerate(self.sets, start=1):
            for j in range(1, d + 1):
                if j not in s:
                    out.append((j, i))
        return out


@dataclass(frozen=True)
class MixedSubdivision:
    d: int
    n: int
    maximal_cells: tuple  # CellType, sorted by anchor


def _type_at(x, pts):
    sets = []
    for u in pts:
        vals = [x[j] - u[j] for j in range(len(x))]
        m = max(vals)
        sets.append(frozenset(j + 1 for j, v in enumerate(vals) if v == m))
    return tuple(sets)


def _cell_dim(sets, d):
    support = set()
    for s in sets:
        support |= s
    # connected components of the union hypergraph
    parts = {j: j for j in support}

    def find(a):
        while parts[a] != a:
            parts[a] = parts[parts[a]]
            a = parts[a]
        return a

    for s in sets:
        s = sorted(s)
        for b in s[1:]:
            ra, rb = find(s[0]), find(b)
            if ra != rb:
                parts[rb] = ra
    comps = len({find(j) for j in support})
    return len(support) - comps


def _cell_points(sets):
    """All summand-vertex sums of the Minkowski cell (integer tuples)."""
    d = max(max(s) for s in sets)
    vecs = []
    for s in sets:
        vecs.append([tuple(1 if j == k else 0 for j in range(1, d + 1))
                     for k in sorted(s)])
    pts = set()
    for choice in product(*vecs):
        pts.add(tuple(sum(c[j] for c in choice) for j in range(d)))
    return sorted(pts)


def _cell_volume(sets, d):
    pts = _cell_points(sets)
    proj = [p[:-1] for p in pts]
    return _polytope.normalized_volume(proj)


def mixed_subdivision(points):
    """Regular mixed subdivision of n * Delta_{d-1} dual to the arrangement.

    Scans the integer points of the padded difference box, keeps the types
    whose Minkowski cell is full-dimensional, and dedups by type; the unique
    scan point realizing a maximal type is the dual arrangement vertex.
    """
    pts = _pts(points)
    n = len(pts)
    d = len(pts[0])
    ranges = []
    for j in range(1, d):
        vals = [u[j] for u in pts]
        ranges.append(range(min(vals) - 1, max(vals) + 2))
    cells = {}
    for rest in product(*ranges):
        x = (0,) + rest
        sets = _type_at(x, pts)
        if sets in cells:
            continue
        if _cell_dim(sets, d) == d - 1:
            cells[sets] = x
    out = []
    for sets, anchor in cells.items():
        out.append(CellType(sets=sets, anchor=canonical(anchor),
                            volume=_cell_volume(sets, d)))
    out.sort(key=lambda c: c.anchor)
    sub = MixedSubdivision(d=d, n=n, maximal_cells=tuple(out))
    total = sum(c.volume for c in out)
    if total != n ** (d - 1):
        raise TropicalError(
            f"cell volumes sum to {total}, expected {n ** (d - 1)}")
    return sub


def _tropical_minor_singular(matrix):
    """Is the tropical determinant minimum attained more than once?"""
    k = len(matrix)
    best, count = None, 0
    for sigma in permutations(range(k)):
        s = sum(matrix[i][sigma[i]] for i in range(k))
        if best is None or s < best:
            best, count = s, 1
        elif s == best:
            count += 1
    return count > 1


def is_general_position(points):
    """Tropical general position, by minors and by the cell count.

    Both characterizations are evaluated and must agree: every square
    tropical minor (all sizes from 2 up to min(d, n), min-plus on the
    apartment coordinates) is nonsingular iff the subdivision is fine with
    binom(n+d-2, d-1) maximal cells.
    """
    pts = _pts(points)
    n = len(pts)
    d = len(pts[0])
    by_minors = degenerate_minor(pts) is None
    by_count = len(mixed_subdivision(pts).maximal_cells) == comb(n + d - 2, d - 1)
    if by_minors != by_count:
        raise TropicalError(
            "general-position tests disagree (minors vs cell count)")
    return by_minors


def degenerate_minor(points):
    """A witness (point indices, coordinate indices) of tropical singularity.

    Scans every square submatrix of every size; fineness of the subdivision
    needs more than the maximal minors (a singular 2 x 2 pair already bends
    the duality)."""
    pts = _pts(points)
    n = len(pts)
    d = len(pts[0])
    for k in range(2, min(d, n) + 1):
        for cols in combinations(range(n), k):
            for rows in combinations(range(d), k):
                minor = [[pts[c][r] for c in cols] for r in rows]
                if _tropical_minor_singular(minor):
                    return cols, rows
    return None


def monomial_special_fiber(points):
    """Primes and squarefree monomial ideal of a general-position fiber.

    Each maximal cell of type (S_1, ..., S_n) contributes the coordinate
    prime generated by the variables x_{ji} with j not in S_i; the fiber
    ideal is the intersection of these primes.  Variables are (j, i) pairs.
    """
    pts = _pts(points)
    witness = degenerate_minor(pts)
    if witness is not None:
        raise TropicalError(
            f"configuration not in general position: tropically singular "
            f"minor at points {witness[0]} coordinates {witness[1]}")
    sub = mixed_subdivision(pts)
    primes = [tuple(sorted(cell.prime_variables())) for cell in sub.maximal_cells]
    ideal = _intersect_variable_primes(primes)
    return sub, primes, ideal


def _intersect_variable_primes(primes):
    """Intersection of coordinate primes as minimal squarefree generators."""
    gens = [frozenset()]
    for prime in primes:
        vs = [frozenset([v]) for v in prime]
        gens = {g | v for g in gens for v in vs}
        gens = _minimalize(gens)
    return sorted(tuple(sorted(g)) for g in gens)


def _minimalize(sets):
    sets = sorted(sets, key=len)
    out = []
    for s in sets:
        if not any(t <= s for t in out):
            out.append(s)
    return out


def classify_cell_vertices(sub: MixedSubdivision, points):
    """primary iff the cell anchor is one of the configuration points."""
    pts = {canonical(p) for p in _pts(points)}
    return ["primary" if cell.anchor in pts else "secondary"
            for cell in sub.maximal_cells]


def reduction_complex_from_cells(sub: MixedSubdivision):
    """Facets of the nerve of the maximal cells (exact feasibility).

    A vertex set spans a simplex iff the cell polytopes share a point; sets
    are grown one element at a time, so only candidates whose subsets all
    intersect are ever tested.
    """
    cells = [_cell_points(c.sets) for c in sub.maximal_cells]
    m = len(cells)
    simplices = [frozenset([i]) for i in range(m)]
    layer = list(simplices)
    for size in range(2, m + 1):
        prev = {s for s in layer}
        nxt = []
        seen = set()
        for s in prev:
            for extra in range(m):
                if extra in s:
                    continue
                cand = s | {extra}
                if cand in seen or len(cand) != size:
                    continue
                seen.add(cand)
                if all(cand - {x} in prev for x in cand):
                    if _polytope.polytopes_intersect([cells[i] for i in sorted(cand)]):
                        nxt.append(cand)
        if not nxt:
            break
        simplices.extend(nxt)
        layer = nxt
    facets = [s for s in simplices
              if not any(s < t for t in simplices)]
    return sorted(tuple(sorted(f)) for f in facets)


def lattice_to_apartment(exponents):
    """Apartment point of the diagonal lattice with the given exponents."""
    return canonical([-m for m in exponents])


def apartment_to_exponents(point):
    """Diagonal exponent vector (canonical) of an apartment point."""
    (p,) = _pts([point])
    return tuple(-c for c in p)
