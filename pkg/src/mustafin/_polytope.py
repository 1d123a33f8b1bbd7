"""Exact polytope helpers: normalized volumes (dim <= 3) and common points.

Input points are integer lattice vectors; volumes are normalized lattice
volumes (dim! times Euclidean volume), hence integers.  Intersection
testing is exact rational linear feasibility via a phase-1 simplex with
Bland's rule.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def affine_rank(points):
    if not points:
        return -1
    base = points[0]
    rows = [[Fraction(a - b) for a, b in zip(p, base)] for p in points[1:]]
    return _rank(rows)


def _rank(rows):
    rows = [row[:] for row in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [c * inv for c in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def normalized_volume(points):
    """Normalized volume of conv(points) for full-dimensional input.

    Points are integer tuples in dimension <= 3.  Returns dim! * vol as an
    exact integer; 0 if the hull is lower-dimensional.
    """
    pts = sorted(set(tuple(int(c) for c in p) for p in points))
    if not pts:
        return 0
    dim = len(pts[0])
    if affine_rank(pts) < dim:
        return 0
    if dim == 1:
        return max(p[0] for p in pts) - min(p[0] for p in pts)
    if dim == 2:
        hull = _hull_2d(pts)
        twice = 0
        x0, y0 = hull[0]
        for (x1, y1), (x2, y2) in zip(hull[1:], hull[2:]):
            twice += (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
        return abs(twice)
    if dim == 3:
        return _volume_3d(pts)
    raise ValueError(f"volume only implemented through dimension 3, got {dim}")


def _hull_2d(pts):
    """Monotone-chain convex hull of integer points (counterclockwise)."""
    pts = sorted(pts)
    if len(pts) <= 2:
        return list(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _volume_3d(pts):
    """6 * volume of a full-dimensional 3d hull by facet-plane enumeration."""
    planes = {}
    for a, b, c in combinations(pts, 3):
        n = _cross3(_sub(b, a), _sub(c, a))
        if n == (0, 0, 0):
            continue
        g = _gcd3(n)
        n = (n[0] // g, n[1] // g, n[2] // g)
        off = _dot(n, a)
        pos = neg = False
        for p in pts:
            s = _dot(n, p) - off
            if s > 0:
                pos = True
            elif s < 0:
                neg = True
            if pos and neg:
                break
        if pos and neg:
            continue
        if pos:
            n, off = (-n[0], -n[1], -n[2]), -off
        planes[(n, off)] = None
    total = 0  # 6*vol*len(pts), accumulated in integers
    m = len(pts)
    gs = tuple(sum(p[i] for p in pts) for i in range(3))  # m * centroid
    for (n, off) in planes:
        face = [p for p in pts if _dot(n, p) == off]
        face = _order_face(face, n)
        a0 = face[0]
        for b, c in zip(face[1:], face[2:]):
            v1 = tuple(m * x - g for x, g in zip(a0, gs))
            v2 = tuple(m * x - g for x, g in zip(b, gs))
            v3 = tuple(m * x - g for x, g in zip(c, gs))
            total += abs(_det3(v1, v2, v3))
    vol6 = Fraction(total, m ** 3)
    assert vol6.denominator == 1, "non-integral normalized volume"
    return int(vol6)


def _order_face(face, normal):
    """Boundary order of a facet polygon via its projected 2d hull.

    Dropping the dominant normal axis is an affine bijection on the facet
    plane, so the projected hull order is the facet boundary order; interior
    facet points fall away with the projection hull.
    """
    ax = max(range(3), key=lambda i: abs(normal[i]))
    keep = [i for i in range(3) if i != ax]
    back = {(p[keep[0]], p[keep[1]]): p for p in face}
    hull = _hull_2d(sorted(back))
    return [back[q] for q in hull]


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _det3(a, b, c):
    return _dot(a, _cross3(b, c))


def _gcd3(n):
    from math import gcd
    g = gcd(gcd(abs(n[0]), abs(n[1])), abs(n[2]))
    return g if g else 1


# ---------------------------------------------------------------------------
# exact linear feasibility
# ---------------------------------------------------------------------------


def lp_feasible(a_rows, b):
    """Does {x >= 0 : A x = b} have a solution?  Exact phase-1 simplex."""
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    rows = []
    rhs = []
    for row, bv in zip(a_rows, b):
        row = [Fraction(c) for c in row]
        bv = Fraction(bv)
        if bv < 0:
            row = [-c for c in row]
            bv = -bv
        rows.append(row)
        rhs.append(bv)
    # tableau with artificial basis
    tab = [row + [Fraction(1 if i == j else 0) for j in range(m)] + [rhs[i]]
           for i, row in enumerate(rows)]
    basis = [n + i for i in range(m)]
    cost = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n + m + 1):
            cost[j] += tab[i][j]
    while True:
        enter = None
        for j in range(n):  # artificials never re-enter
            if cost[j] > 0:
                enter = j
                break
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            break  # unbounded in phase 1 cannot happen, defensive
        piv = tab[leave][enter]
        tab[leave] = [c / piv for c in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [c - f * p for c, p in zip(tab[i], tab[leave])]
        f = cost[enter]
        cost = [c - f * p for c, p in zip(cost, tab[leave])]
        basis[leave] = enter
    return cost[-1] == 0


def polytopes_intersect(point_sets):
    """Do the convex hulls of the given integer point sets share a point?"""
    sets = [list(ps) for ps in point_sets]
    if any(not ps for ps in sets):
        return False
    if len(sets) == 1:
        return True
    dim = len(sets[0][0])
    nvars = sum(len(ps) for ps in sets)
    rows = []
    rhs = []
    offset = []
    pos = 0
    for ps in sets:
        offset.append(pos)
        pos += len(ps)
    # convex-combination normalizations
    for k, ps in enumerate(sets):
        row = [0] * nvars
        for i in range(len(ps)):
            row[offset[k] + i] = 1
        rows.append(row)
        rhs.append(1)
    # equal coordinates: set k vs set 0
    for k in range(1, len(sets)):
        for c in range(dim):
            row = [0] * nvars
            for i, p in enumerate(sets[0]):
                row[offset[0] + i] = p[c]
            for i, p in enumerate(sets[k]):
                row[offset[k] + i] = -p[c]
            rows.append(row)
            rhs.append(0)
    return lp_feasible(rows, rhs)
