"""Lattice classes in the Bruhat-Tits building of PGL_d over K = Q(t).

A lattice is the column span over R = Q[t]_(t) of an invertible matrix; a
vertex of the building is a lattice up to homothety.  Everything here is
driven by one primitive: diagonalization of a matrix over the valuation ring
(Smith normal form with t-power invariant factors), which yields elementary
exponents, the graph metric, common apartments and residue subspaces.
"""

from __future__ import annotations

from fractions import Fraction

from .valfield import INF, ValuedMatrix, ValuedScalar


class BuildingError(ValueError):
    pass


class LatticeClass:
    """Homothety class of a rank-d lattice, represented by a generator matrix."""

    __slots__ = ("gen", "d")

    def __init__(self, gen: ValuedMatrix):
        if gen.rows != gen.cols:
            raise BuildingError("lattice generator must be square")
        if not gen.det():
            raise BuildingError("lattice generator must be invertible")
        self.gen = gen
        self.d = gen.rows

    @classmethod
    def standard(cls, d):
        return cls(ValuedMatrix.identity(d))

    @classmethod
    def diagonal(cls, exps):
        """The class of t^{m_1} R e_1 + ... + t^{m_d} R e_d."""
        return cls(ValuedMatrix.diag_t(list(exps)))

    def __repr__(self):
        return f"LatticeClass({self.gen})"


def _snf_with_transform(m: ValuedMatrix):
    """Diagonalize over R: returns (exponents, P) with P*m*Q = diag(t^e) and
    P, Q in GL_d(R).  Only the row transform P is tracked.

    Pivot: entry of minimal valuation, ties broken by smallest (row, col).
    """
    n = m.rows
    a = [row[:] for row in m.entries]
    p = [[ValuedScalar(1 if i == j else 0) for j in range(n)] for i in range(n)]
    exps = []
    one = ValuedScalar(1)
    for k in range(n):
        piv, pv = None, INF
        for i in range(k, n):
            for j in range(k, n):
                v = a[i][j].val()
                if v < pv:
                    pv, piv = v, (i, j)
        if piv is None or pv == INF:
            raise BuildingError("singular matrix in building reduction")
        pi, pj = piv
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
            p[k], p[pi] = p[pi], p[k]
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
        # normalize pivot to an exact power of t (unit row scaling)
        unit = a[k][k] / ValuedScalar.t_power(int(pv))
        uinv = one / unit
        a[k] = [e * uinv for e in a[k]]
        p[k] = [e * uinv for e in p[k]]
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / a[k][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                p[i] = [x - f * y for x, y in zip(p[i], p[k])]
        for j in range(k + 1, n):
            if a[k][j]:
                f = a[k][j] / a[k][k]
                for row in a:
                    row[j] = row[j] - f * row[k]
        exps.append(int(pv))
    return exps, ValuedMatrix(p)


def elementary_exponents(a: LatticeClass, b: LatticeClass):
    """Sorted exponents e_1 <= ... <= e_d of gen(a)^{-1} gen(b) over R."""
    if a.d != b.d:
        raise BuildingError("dimension mismatch")
    exps, _ = _snf_with_transform(a.gen.inverse() * b.gen)
    return sorted(exps)


def class_eq(a: LatticeClass, b: LatticeClass):
    e = elementary_exponents(a, b)
    return e[0] == e[-1]


def class_distance(a: LatticeClass, b: LatticeClass):
    e = elementary_exponents(a, b)
    return e[-1] - e[0]


def adjacent(a: LatticeClass, b: LatticeClass):
    return class_distance(a, b) == 1


def common_apartment(a: LatticeClass, b: LatticeClass):
    """Basis matrix B plus exponent vectors diagonalizing both classes.

    a = B R^d and b = B diag(t^e) R^d with e ascending.
    """
    if a.d != b.d:
        raise BuildingError("dimension mismatch")
    exps, p = _snf_with_transform(a.gen.inverse() * b.gen)
    basis = a.gen * p.inverse()
    return basis, [0] * a.d, exps


def lattice_intersection(a: LatticeClass, b: LatticeClass, p=0, q=0):
    """The class of t^p L_a intersected with t^q L_b."""
    basis, _, exps = common_apartment(a, b)
    merged = [max(p, q + e) for e in exps]
    return LatticeClass(basis * ValuedMatrix.diag_t(merged))


class Configuration:
    """Ordered tuple of pairwise distinct lattice classes of one dimension."""

    __slots__ = ("points", "d", "labels")

    def __init__(self, points, labels=None):
        points = list(points)
        if not points:
            raise BuildingError("empty configuration")
        d = points[0].d
        if any(pt.d != d for pt in points):
            raise BuildingError("mixed dimensions in configuration")
        for i in range(len(points)):
            for j in range(i + 1, len(points)):
                if class_eq(points[i], points[j]):
                    raise BuildingError(
                        f"lattices {i} and {j} represent the same class")
        self.points = points
        self.d = d
        self.labels = list(labels) if labels else [str(i + 1) for i in range(len(points))]

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def n(self):
        return len(self.points)


def convex_hull(config: Configuration):
    """All lattice classes in the convexity closure of the configuration.

    Fixpoint of the configuration under pairwise shifted intersections
    t^p L ∩ t^q L'; only the shift difference matters, and it is capped by
    the pairwise distance.
    """
    hull = list(config.points)

    def known(c):
        return any(class_eq(c, h) for h in hull)

    frontier = list(hull)
    while frontier:
        fresh = []
        for x in frontier:
            for y in hull:
                dist = class_distance(x, y)
                if dist <= 1:
                    continue
                basis, _, exps = common_apartment(x, y)
                for s in range(-dist, dist + 1):
                    merged = [max(0, s + e) for e in exps]
                    cand = LatticeClass(basis * ValuedMatrix.diag_t(merged))
                    if not known(cand) and not any(class_eq(cand, f) for f in fresh):
                        fresh.append(cand)
        hull.extend(fresh)
        frontier = fresh
    return hull


class ResidueSubspace:
    """Proper nontrivial subspace of the residue space k^d, by column basis."""

    __slots__ = ("basis", "d", "rank")

    def __init__(self, columns, d):
        basis = _rref_columns(columns, d)
        if not 0 < len(basis) < d:
            raise BuildingError("subspace must be proper and nontrivial")
        self.basis = basis
        self.d = d
        self.rank = len(basis)

    def __eq__(self, other):
        return (isinstance(other, ResidueSubspace)
                and self.d == other.d and self.basis == other.basis)

    def contains_vector(self, vec):
        sub = _rref_columns(self.basis + [tuple(Fraction(c) for c in vec)], self.d)
        return len(sub) == self.rank

    def __repr__(self):
        return f"ResidueSubspace(rank={self.rank}, basis={self.basis})"


def _rref_columns(columns, d):
    """Canonical reduced basis (as column tuples) of the span of columns."""
    rows = [list(col) for col in columns]  # treat columns as row vectors
    lead = 0
    out = []
    for col in range(d):
        piv = None
        for i in range(lead, len(rows)):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[lead], rows[piv] = rows[piv], rows[lead]
        inv = 1 / rows[lead][col]
        rows[lead] = [c * inv for c in rows[lead]]
        for i in range(len(rows)):
            if i != lead and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[lead])]
        lead += 1
    for i in range(lead):
        out.append(tuple(rows[i]))
    return out


def first_step_subspace(base: LatticeClass, other: LatticeClass):
    """The residue subspace of base cut out by the first step toward other.

    The representative of `other` is normalized so that it contains t*L_base
    but not L_base; the subspace is the image of the intersection in
    L_base / t L_base, expressed in the coordinates of gen(base).
    """
    if class_eq(base, other):
        raise BuildingError("first step requires distinct classes")
    exps, p = _snf_with_transform(base.gen.inverse() * other.gen)
    pinv = p.inverse()
    shift = 1 - max(exps)
    cols = []
    for i, e in enumerate(exps):
        if e + shift <= 0:
            col = tuple(pinv.entries[r][i].residue() for r in range(base.d))
            cols.append(col)
    return ResidueSubspace(cols, base.d)


def diagonal_exponents(lat: LatticeClass):
    """Diagonal form exponents in the standard basis, or None.

    The class is diagonal iff scaling row i by t^{-min row valuation} lands
    the generator in GL_d(R).
    """
    g = lat.gen
    mins = []
    for i in range(lat.d):
        v = min(e.val() for e in g.entries[i])
        mins.append(int(v))
    scaled = ValuedMatrix([[g.entries[i][j] * ValuedScalar.t_power(-mins[i])
                            for j in range(lat.d)] for i in range(lat.d)])
    if scaled.det().val() != 0:
        return None
    return mins


def configuration_from_dict(doc):
    """Configuration from a parsed JSON document.

    Expects "d" and "lattices"; each lattice is a d x d array of scalar
    strings in the field grammar, or {"diag": [m1, ..., md]} meaning
    diag(t^m1, ..., t^md).  Optional "labels" name the points.
    """
    if not isinstance(doc, dict):
        raise BuildingError("configuration document must be an object")
    try:
        d = int(doc["d"])
        lattices = doc["lattices"]
    except (KeyError, TypeError, ValueError) as exc:
        raise BuildingError(f"missing or malformed field: {exc}") from exc
    points = []
    for k, lat in enumerate(lattices):
        if isinstance(lat, dict) and "diag" in lat:
            exps = [int(m) for m in lat["diag"]]
            if len(exps) != d:
                raise BuildingError(f"lattice {k + 1}: diag length != d")
            points.append(LatticeClass.diagonal(exps))
        else:
            if len(lat) != d or any(len(row) != d for row in lat):
                raise BuildingError(f"lattice {k + 1}: expected a {d}x{d} array")
            points.append(LatticeClass(ValuedMatrix.parse(lat)))
    return Configuration(points, labels=doc.get("labels"))


def residue_map_between(src: LatticeClass, dst: LatticeClass):
    """Residue of the normalized transition matrix gen(dst)^{-1} gen(src).

    The result is a nonzero rational d x d matrix of rank equal to the
    multiplicity of the minimal elementary exponent; it is the map induced
    between the residue projective spaces in the degenerate limit.
    """
    m = dst.gen.inverse() * src.gen
    c = m.min_valuation()
    return m.scale(ValuedScalar.t_power(-int(c))).residue_matrix()
