"""Miniature multigraded polynomial kernel over Q.

Polynomials are dicts mapping exponent tuples to nonzero integers (every
generator is kept primitive, so all arithmetic is integer pseudo-division).
The fixed order is degree reverse lexicographic with x11 > x21 > ... > xdn
> t; auxiliary variables used for saturation, intersection and elimination
sit in a leading block.

The fiber pipeline: 2x2 minors of the twisted coordinate matrix, saturation
with respect to t through an inverse variable, then the t = 0 slice.
Components are split off a reduced fiber ideal by branching on factorizable
generators, with certified prime leaf shapes; a geometric decomposition via
residue maps from hull vertices backs up the splitter when a configuration
is available.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

import sympy

from . import building
from .valfield import ValuedMatrix, ValuedScalar


class GroebnerError(ValueError):
    pass


class DecompositionUnsupported(GroebnerError):
    """The component splitter hit a leaf outside its certified shapes."""


class MultiplicityError(GroebnerError):
    """A multidegree computation met a non-reduced initial ideal."""


# ---------------------------------------------------------------------------
# rings and term orders
# ---------------------------------------------------------------------------


class Ring:
    """Variable list with a block term order.

    The first `nelim` variables form an elimination block; each block is
    compared by (total degree, reverse lexicographic), blocks left to right.
    """

    __slots__ = ("names", "nelim", "nvars", "_index")

    def __init__(self, names, nelim=0):
        self.names = tuple(names)
        self.nelim = nelim
        self.nvars = len(self.names)
        self._index = {nm: i for i, nm in enumerate(self.names)}

    def key(self, mon):
        e = mon[:self.nelim]
        m = mon[self.nelim:]
        if self.nelim:
            return (sum(e), tuple(-c for c in reversed(e)),
                    sum(m), tuple(-c for c in reversed(m)))
        return (sum(m), tuple(-c for c in reversed(m)))

    def index(self, name):
        return self._index[name]

    def __repr__(self):
        return f"Ring({','.join(self.names)}; elim={self.nelim})"


def xvar_names(d, n):
    """x11 > x21 > ... > xd1 > x12 > ... > xdn (column-major)."""
    return [f"x{i}{j}" for j in range(1, n + 1) for i in range(1, d + 1)]


@lru_cache(maxsize=None)
def ring_x(d, n):
    return Ring(xvar_names(d, n))


@lru_cache(maxsize=None)
def ring_xt(d, n):
    return Ring(xvar_names(d, n) + ["t"])


# ---------------------------------------------------------------------------
# polynomial arithmetic (dict of exponent tuple -> int)
# ---------------------------------------------------------------------------


def p_zero():
    return {}


def p_content_strip(p):
    if not p:
        return p
    g = 0
    for c in p.values():
        g = gcd(g, abs(c))
        if g == 1:
            break
    if g > 1:
        return {m: c // g for m, c in p.items()}
    return dict(p)


def p_normalize(p, key):
    """Primitive with positive leading coefficient."""
    if not p:
        return {}
    p = p_content_strip(p)
    if p[max(p, key=key)] < 0:
        p = {m: -c for m, c in p.items()}
    return p


def p_add(a, b):
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def p_scale(a, c):
    if c == 0:
        return {}
    return {m: c * cc for m, cc in a.items()}


def p_mul_term(a, mon, c):
    return {tuple(x + y for x, y in zip(m, mon)): cc * c for m, cc in a.items()}


def p_mul(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            s = out.get(m, 0) + c1 * c2
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def p_total_degree(p):
    return max(sum(m) for m in p) if p else -1


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mon_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mon_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def leading(p, key):
    m = max(p, key=key)
    return m, p[m]


def nf(p, basis, key):
    """Full normal form by integer pseudo-reduction.

    `basis` is a list of (lm, lc, poly) with primitive polys; the result is
    normalized primitive (zero dict if p reduces to zero).
    """
    work = dict(p)
    tail = {}
    nb = len(basis)
    scale_bits = 0
    while work:
        if scale_bits > 192:
            scale_bits = 0
            g0 = 0
            for cc in work.values():
                g0 = gcd(g0, cc)
                if g0 == 1:
                    break
            if g0 > 1:
                for cc in tail.values():
                    g0 = gcd(g0, cc)
                    if g0 == 1:
                        break
            if g0 > 1:
                for mm in work:
                    work[mm] //= g0
                for mm in tail:
                    tail[mm] //= g0
        m = max(work, key=key)
        c = work.pop(m)
        hit = None
        for idx in range(nb):
            if _divides(basis[idx][0], m):
                hit = basis[idx]
                break
        if hit is None:
            tail[m] = c
            continue
        lm, lc, g = hit
        d = gcd(c, lc)
        mult_work = lc // d
        mult_g = -(c // d)
        if mult_work < 0:
            mult_work, mult_g = -mult_work, -mult_g
        if mult_work != 1:
            for mm in work:
                work[mm] *= mult_work
            for mm in tail:
                tail[mm] *= mult_work
            scale_bits += mult_work.bit_length()
        if lm == m:
            items = g.items()
            first = True
            for mm, cc in items:
                if first and mm == m:
                    first = False
                    continue
                if mm == m:
                    continue
                s = work.get(mm, 0) + mult_g * cc
                if s:
                    work[mm] = s
                else:
                    work.pop(mm, None)
        else:
            shift = _mon_sub(m, lm)
            for mm, cc in g.items():
                if mm == lm:
                    continue
                mshift = tuple(x + y for x, y in zip(mm, shift))
                s = work.get(mshift, 0) + mult_g * cc
                if s:
                    work[mshift] = s
                else:
                    work.pop(mshift, None)
    return p_normalize(tail, key)


def spoly(f_lm, f_lc, f, g_lm, g_lc, g):
    tau = _mon_lcm(f_lm, g_lm)
    d = gcd(abs(f_lc), abs(g_lc))
    cf = g_lc // d
    cg = f_lc // d
    a = p_mul_term(f, _mon_sub(tau, f_lm), cf)
    b = p_mul_term(g, _mon_sub(tau, g_lm), cg)
    return p_add(a, p_scale(b, -1))


def buchberger(gens, ring: Ring):
    """Reduced Groebner basis (primitive, positive leads, sorted by lm)."""
    key = ring.key
    basis = []
    for g in gens:
        g = p_normalize(g, key)
        if g:
            basis.append(g)
    basis.sort(key=lambda g: key(max(g, key=key)))
    entries = []  # (lm, lc, poly)
    for g in basis:
        g = nf(g, entries, key)
        if g:
            lm, lc = leading(g, key)
            entries.append((lm, lc, g))
    import heapq

    heap = []
    pending = set()

    def push_pairs(newidx):
        lmn = entries[newidx][0]
        for k in range(newidx):
            tau = _mon_lcm(entries[k][0], lmn)
            heapq.heappush(heap, (key(tau), k, newidx))
            pending.add((k, newidx))

    for idx in range(len(entries)):
        push_pairs(idx)

    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        lmi, lci, fi = entries[i]
        lmj, lcj, fj = entries[j]
        tau = _mon_lcm(lmi, lmj)
        if tuple(a + b for a, b in zip(lmi, lmj)) == tau:
            continue  # coprime leading monomials
        skip = False
        for k in range(len(entries)):
            if k == i or k == j:
                continue
            if _divides(entries[k][0], tau):
                a = (i, k) if i < k else (k, i)
                b = (j, k) if j < k else (k, j)
                if a not in pending and b not in pending:
                    skip = True
                    break
        if skip:
            continue
        s = spoly(lmi, lci, fi, lmj, lcj, fj)
        s = nf(s, entries, key)
        if not s:
            continue
        lm, lc = leading(s, key)
        entries.append((lm, lc, s))
        push_pairs(len(entries) - 1)
    # minimalize: drop leads divisible by another kept lead
    lms = [e[0] for e in entries]
    minimal = []
    for i, lm in enumerate(lms):
        dominated = False
        for j, other in enumerate(lms):
            if i == j:
                continue
            if _divides(other, lm) and (other != lm or j < i):
                dominated = True
                break
        if not dominated:
            minimal.append(i)
    # tail reduction
    reduced = []
    for i in minimal:
        others = [entries[k] for k in minimal if k != i]
        g = nf(entries[i][2], others, key)
        if g:
            reduced.append(g)
    reduced.sort(key=lambda g: key(max(g, key=key)))
    return reduced


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------


class MIdeal:
    """Ideal in a Ring, with cached reduced Groebner basis."""

    __slots__ = ("ring", "gens", "_gb", "_entries")

    def __init__(self, ring: Ring, gens, _gb=None):
        self.ring = ring
        self.gens = [p_normalize(g, ring.key) for g in gens if g]
        self._gb = _gb
        self._entries = None

    def gb(self):
        if self._gb is None:
            self._gb = buchberger(self.gens, self.ring)
        return self._gb

    def _gb_entries(self):
        if self._entries is None:
            key = self.ring.key
            self._entries = [(max(g, key=key), g[max(g, key=key)], g)
                             for g in self.gb()]
        return self._entries

    def normal_form(self, p):
        return nf(p, self._gb_entries(), self.ring.key)

    def contains_poly(self, p):
        return not self.normal_form(p)

    def contains(self, other: "MIdeal"):
        return all(self.contains_poly(g) for g in other.gens or other.gb())

    def is_unit(self):
        gb = self.gb()
        return len(gb) == 1 and list(gb[0].keys()) == [tuple([0] * self.ring.nvars)]

    def __eq__(self, other):
        if not isinstance(other, MIdeal) or self.ring.names != other.ring.names:
            return NotImplemented
        return self.gb() == other.gb()

    def __hash__(self):
        return hash(tuple(tuple(sorted(g.items())) for g in self.gb()))

    def __repr__(self):
        return f"MIdeal<{len(self.gens)} gens over {','.join(self.ring.names)}>"


def ideal_equal(a: MIdeal, b: MIdeal):
    return a.gb() == b.gb()


def _embed(p, src: Ring, dst: Ring):
    pos = [dst.index(nm) for nm in src.names]
    out = {}
    for m, c in p.items():
        mm = [0] * dst.nvars
        for i, e in enumerate(m):
            if e:
                mm[pos[i]] = e
        out[tuple(mm)] = c
    return out


def _project(p, src: Ring, dst: Ring):
    """Forget variables absent from dst; they must not occur in p."""
    pos = []
    for i, nm in enumerate(src.names):
        pos.append(dst._index.get(nm))
    out = {}
    for m, c in p.items():
        mm = [0] * dst.nvars
        for i, e in enumerate(m):
            if e:
                if pos[i] is None:
                    raise GroebnerError("projection drops an occurring variable")
                mm[pos[i]] = e
        out[tuple(mm)] = c
    return out


def eliminate(ideal: MIdeal, elim_names, target: Ring):
    """Intersection with the subring omitting elim_names."""
    src = ideal.ring
    big = Ring(tuple(elim_names) + tuple(nm for nm in src.names
                                         if nm not in elim_names),
               nelim=len(elim_names))
    gens = [_embed(g, src, big) for g in ideal.gens]
    gb = buchberger(gens, big)
    kept = []
    cut = len(elim_names)
    for g in gb:
        if all(all(e == 0 for e in m[:cut]) for m in g):
            kept.append(_project(g, big, target))
    return MIdeal(target, kept)


def saturate(ideal: MIdeal, f):
    """ideal : f^infinity via an inverse variable."""
    src = ideal.ring
    aux = Ring(("zsat",) + src.names, nelim=1)
    gens = [_embed(g, src, aux) for g in ideal.gens]
    finv = p_add(p_mul_term(_embed(f, src, aux), (1,) + (0,) * src.nvars, 1),
                 {tuple([0] * aux.nvars): -1})
    gens.append(finv)
    gb = buchberger(gens, aux)
    kept = []
    for g in gb:
        if all(m[0] == 0 for m in g):
            kept.append(_project(g, aux, src))
    return MIdeal(src, kept)


def saturate_t(ideal: MIdeal):
    """ideal : t^infinity in a ring whose last variable is t."""
    tvar = ideal.ring.index("t")
    f = {tuple(1 if i == tvar else 0 for i in range(ideal.ring.nvars)): 1}
    return saturate(ideal, f)


def ideal_intersection(a: MIdeal, b: MIdeal):
    """(w a + (1 - w) b) eliminated down to the common ring."""
    src = a.ring
    if b.ring.names != src.names:
        raise GroebnerError("intersection needs a common ring")
    aux = Ring(("wtag",) + src.names, nelim=1)
    w = {(1,) + (0,) * src.nvars: 1}
    one_minus_w = p_add({(0,) * aux.nvars: 1}, p_scale(w, -1))
    gens = [p_mul(w, _embed(g, src, aux)) for g in (a.gens or a.gb())]
    gens += [p_mul(one_minus_w, _embed(g, src, aux)) for g in (b.gens or b.gb())]
    gb = buchberger(gens, aux)
    kept = [_project(g, aux, src) for g in gb if all(m[0] == 0 for m in g)]
    return MIdeal(src, kept)


def intersect_all(ideals):
    out = ideals[0]
    for nxt in ideals[1:]:
        out = ideal_intersection(out, nxt)
    return out


# ---------------------------------------------------------------------------
# the fiber pipeline
# ---------------------------------------------------------------------------


def minors_ideal(mats, d=None, n=None):
    """2x2 minors of the twisted coordinate matrix of the configuration.

    Column j is g_j (x_{1j}, ..., x_{dj})^T, rescaled by a power of t so the
    minimum entry valuation is zero, then cleared of unit denominators.
    Generators live over x-variables plus t.
    """
    mats = list(mats)
    n = n or len(mats)
    d = d or mats[0].rows
    ring = ring_xt(d, n)
    tvar = ring.index("t")
    columns = []
    for j, g in enumerate(mats):
        if g.rows != d or g.cols != d:
            raise GroebnerError("generator matrices must be d x d")
        if not g.det():
            raise GroebnerError(f"matrix {j + 1} is singular")
        minval = g.min_valuation()
        scaled = g.scale(ValuedScalar.t_power(-int(minval)))
        denlcm = ValuedScalar(1)
        for row in scaled.entries:
            for e in row:
                if not e.is_polynomial():
                    denlcm = denlcm * ValuedScalar(e.den)
        if denlcm != ValuedScalar(1):
            scaled = scaled.scale(denlcm)
        col = []
        for r in range(d):
            entry = {}
            for i in range(d):
                coeff = scaled.entries[r][i]
                if not coeff:
                    continue
                if not coeff.is_polynomial():
                    raise GroebnerError("column clearing failed")
                xidx = ring.index(f"x{i + 1}{j + 1}")
                for tdeg, c in enumerate(coeff.poly_coeffs()):
                    if c == 0:
                        continue
                    mon = [0] * ring.nvars
                    mon[xidx] = 1
                    mon[tvar] = tdeg
                    entry[tuple(mon)] = entry.get(tuple(mon), Fraction(0)) + c
            col.append({m: c for m, c in entry.items() if c})
        columns.append(col)
    gens = []
    for a, b in itertools.combinations(range(n), 2):
        for r, s in itertools.combinations(range(d), 2):
            m = p_add(_pm_frac(columns[a][r], columns[b][s]),
                      p_scale_frac(_pm_frac(columns[a][s], columns[b][r]), -1))
            g = _clear_denominators(m)
            if g:
                gens.append(p_normalize(g, ring.key))
    return MIdeal(ring, gens)


def _pm_frac(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            s = out.get(m, Fraction(0)) + c1 * c2
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def p_scale_frac(a, c):
    return {m: cc * c for m, cc in a.items()}


def _clear_denominators(p):
    if not p:
        return {}
    denlcm = 1
    for c in p.values():
        c = Fraction(c)
        denlcm = denlcm * c.denominator // gcd(denlcm, c.denominator)
    return {m: int(Fraction(c) * denlcm) for m, c in p.items()}


def strip_t_content(ideal: MIdeal):
    """Divide each generator by its t-content (cheap pre-saturation)."""
    ring = ideal.ring
    tvar = ring.index("t")
    gens = []
    for g in ideal.gens:
        tmin = min(m[tvar] for m in g)
        if tmin:
            g = {tuple(e - tmin if i == tvar else e for i, e in enumerate(m)): c
                 for m, c in g.items()}
        gens.append(g)
    return MIdeal(ring, gens)


def special_fiber(config: building.Configuration, method="auto"):
    """Reduced defining ideal of the special fiber, in Q[x] alone.

    method "groebner": minors -> t-saturation -> t = 0 slice, all through
    the Buchberger engine.  method "slice": the same ideal assembled from
    its multigraded pieces, each obtained by exact module saturation over
    the valuation ring (much faster; downstream reports certify the result
    against the Chow class and radicality).  "auto" picks "slice".
    """
    if method == "auto":
        method = "slice"
    if method == "slice":
        return special_fiber_slices(config)
    d, n = config.d, config.n
    mats = [pt.gen for pt in config.points]
    mi = strip_t_content(minors_ideal(mats, d, n))
    sat = saturate_t(mi)
    rxt = sat.ring
    tvar = rxt.index("t")
    tpoly = {tuple(1 if i == tvar else 0 for i in range(rxt.nvars)): 1}
    summed = MIdeal(rxt, sat.gens + [tpoly])
    gb = summed.gb()
    rx = ring_x(d, n)
    kept = []
    for g in gb:
        if all(m[tvar] == 0 for m in g):
            kept.append(_project(g, rxt, rx))
    fiber = MIdeal(rx, buchberger(kept, rx))
    return fiber


# ---------------------------------------------------------------------------
# slice construction of the fiber: degreewise module saturation over R
# ---------------------------------------------------------------------------


def _scaled_column_coefficients(mats, d, n):
    """coeffs[j][r][i]: t-polynomial coefficient of x_{ij} in row r of the
    j-th twisted column, after the scaling used by minors_ideal."""
    out = []
    for j, g in enumerate(mats):
        if not g.det():
            raise GroebnerError(f"matrix {j + 1} is singular")
        scaled = g.scale(ValuedScalar.t_power(-int(g.min_valuation())))
        denlcm = ValuedScalar(1)
        for row in scaled.entries:
            for e in row:
                if not e.is_polynomial():
                    denlcm = denlcm * ValuedScalar(e.den)
        if denlcm != ValuedScalar(1):
            scaled = scaled.scale(denlcm)
        out.append(scaled.entries)
    return out


def _fiber_degree_vectors(n):
    out = []
    for bits in itertools.product((0, 1), repeat=n):
        if sum(bits) >= 2:
            out.append(bits)
    out.sort(key=lambda b: (sum(b), b))
    return out


def _poly_of_scalar(v: ValuedScalar):
    """Integer-coefficient list of a polynomial scalar (ascending in t)."""
    if not v.is_polynomial():
        raise GroebnerError("module entries must be polynomial in t")
    return list(v.poly_coeffs())


def _ipoly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    while out and out[-1] == 0:
        out.pop()
    return out


def _ipoly_sub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, cb in enumerate(b):
        out[i] -= cb
    while out and out[-1] == 0:
        out.pop()
    return out


def _ipoly_exact_div(a, b):
    """Exact polynomial division over Q with integral result expected."""
    if not a:
        return []
    a = [Fraction(c) for c in a]
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = Fraction(b[-1])
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, cb in enumerate(b):
                a[k + j] -= c * cb
    if any(c != 0 for c in a):
        raise GroebnerError("inexact division in fraction-free reduction")
    out = []
    for c in q:
        if c.denominator != 1:
            raise GroebnerError("non-integral quotient in fraction-free step")
        out.append(int(c))
    while out and out[-1] == 0:
        out.pop()
    return out


def _ipoly_ord(a):
    for i, c in enumerate(a):
        if c:
            return i
    return None


def _module_saturation_residues(columns, nrows):
    """Residue basis mod t of the t-saturation of the column span over R.

    Fraction-free column elimination (Bareiss): pivot on the entry of
    minimal true valuation, clear its row from the other columns, divide
    by the previous pivot.  Each pivot column scaled down by t^{pivot
    valuation} reduces to a residue vector.
    """
    from math import gcd as _gcd

    active = []
    for col in columns:
        if not col:
            continue
        entries = {}
        denlcm = 1
        for r, v in col.items():
            p = _poly_of_scalar(v)
            for c in p:
                f = Fraction(c)
                denlcm = denlcm * f.denominator // _gcd(denlcm, f.denominator)
            entries[r] = p
        norm = {}
        tmin = None
        for r, p in entries.items():
            ip = [int(Fraction(c) * denlcm) for c in p]
            o = _ipoly_ord(ip)
            if o is not None:
                if tmin is None or o < tmin:
                    tmin = o
            norm[r] = ip
        if tmin is None:
            continue
        stripped = {}
        content = 0
        for r, ip in norm.items():
            ip = ip[tmin:]
            while ip and ip[-1] == 0:
                ip.pop()
            if ip:
                stripped[r] = ip
                for c in ip:
                    content = _gcd(content, c)
        if content > 1:
            stripped = {r: [c // content for c in ip]
                        for r, ip in stripped.items()}
        active.append(stripped)
    pivots = []
    prev_pivot = [1]
    prev_offset = 0  # true val = ord(entry) - prev_offset
    while True:
        best = None
        for ci, col in enumerate(active):
            for r, p in col.items():
                o = _ipoly_ord(p)
                if best is None or o < best[0] or (
                        o == best[0] and (r, ci) < (best[1], best[2])):
                    best = (o, r, ci)
        if best is None:
            break
        o, r, ci = best
        piv = active.pop(ci)
        pivotpoly = piv[r]
        nxt = []
        for col in active:
            arj = col.pop(r, [])
            out = {}
            rows = set(col) | (set(piv) if arj else set())
            for rr in rows:
                if rr == r:
                    continue
                term = _ipoly_sub(_ipoly_mul(pivotpoly, col.get(rr, [])),
                                  _ipoly_mul(arj, piv.get(rr, []))
                                  if arj else [])
                if term:
                    out[rr] = _ipoly_exact_div(term, prev_pivot)
            if out:
                nxt.append(out)
        active = nxt
        pivots.append((piv, o - prev_offset))
        prev_offset = _ipoly_ord(pivotpoly)
        prev_pivot = pivotpoly
    residues = []
    for piv, val in pivots:
        # within the pivot column every true valuation is >= val, so the
        # residue of entry/t^val is the coefficient at ord == shifted val
        shift = min(_ipoly_ord(p) for p in piv.values())
        vec = {}
        for rr, p in piv.items():
            o = _ipoly_ord(p)
            if o == shift:
                vec[rr] = Fraction(p[o])
        residues.append(vec)
    return residues


def special_fiber_slices(config: building.Configuration):
    """Fiber ideal from its multigraded slices.

    For each squarefree multidegree, the corresponding piece of the minors
    ideal is a finite module over Q[t]; its t-saturation reduced mod t is
    exactly the fiber piece.  Squarefree degrees generate all fibers met
    here; reports certify completeness through the Chow class.
    """
    d, n = config.d, config.n
    rx = ring_x(d, n)
    if n == 1:
        return MIdeal(rx, [])
    coeffs = _scaled_column_coefficients([pt.gen for pt in config.points], d, n)
    gens = []
    zero = ValuedScalar(0)
    for degvec in _fiber_degree_vectors(n):
        blocks = [j for j in range(n) if degvec[j]]
        row_index = {}
        rows = []
        for choice in itertools.product(range(d), repeat=len(blocks)):
            row_index[choice] = len(rows)
            rows.append(choice)
        columns = []
        for bp, bq in itertools.combinations(range(len(blocks)), 2):
            jp, jq = blocks[bp], blocks[bq]
            others = [b for b in range(len(blocks)) if b not in (bp, bq)]
            for r, s in itertools.combinations(range(d), 2):
                # minor over rows (r, s), columns (jp, jq)
                minor = {}
                for i in range(d):
                    for k in range(d):
                        c = (coeffs[jp][r][i] * coeffs[jq][s][k]
                             - coeffs[jp][s][i] * coeffs[jq][r][k])
                        if c:
                            minor[(i, k)] = c
                if not minor:
                    continue
                for mult in itertools.product(range(d), repeat=len(others)):
                    col = {}
                    for (i, k), c in minor.items():
                        choice = [0] * len(blocks)
                        choice[bp] = i
                        choice[bq] = k
                        for o, mv in zip(others, mult):
                            choice[o] = mv
                        col[row_index[tuple(choice)]] = c
                    columns.append(col)
        residues = _module_saturation_residues(columns, len(rows))
        for vec in residues:
            poly = {}
            for ridx, q in vec.items():
                mon = [0] * rx.nvars
                for b, i in zip(blocks, rows[ridx]):
                    mon[b * d + i] = 1
                poly[tuple(mon)] = q
            g = _clear_denominators(poly)
            if g:
                gens.append(g)
    return MIdeal(rx, buchberger(gens, rx))


# ---------------------------------------------------------------------------
# squarefree monomial decomposition
# ---------------------------------------------------------------------------


def is_monomial_poly(p):
    return len(p) == 1


def minimal_primes_squarefree(ideal: MIdeal):
    """Minimal primes of a squarefree monomial ideal, via vertex covers."""
    ring = ideal.ring
    supports = []
    for g in ideal.gb():
        if not is_monomial_poly(g):
            raise GroebnerError("input is not a monomial ideal")
        (mon,) = g.keys()
        if any(e > 1 for e in mon):
            raise GroebnerError("input is not squarefree")
        supports.append(frozenset(i for i, e in enumerate(mon) if e))
    if not supports:
        return []
    covers = set()

    def branch(remaining, chosen):
        if not remaining:
            covers.add(frozenset(chosen))
            return
        nxt = min(remaining, key=lambda s: (len(s), sorted(s)))
        for v in sorted(nxt):
            branch([s for s in remaining if v not in s], chosen | {v})

    branch(supports, frozenset())
    minimal = [c for c in covers
               if not any(o < c for o in covers)]
    primes = []
    for cover in sorted(minimal, key=lambda c: (len(c), sorted(c))):
        gens = []
        for v in sorted(cover):
            mon = tuple(1 if i == v else 0 for i in range(ring.nvars))
            gens.append({mon: 1})
        primes.append(MIdeal(ring, gens))
    return primes


def _intersect_variable_supports(supports, nvars):
    """Minimal monomial generators of the intersection of variable primes."""
    gens = [tuple([0] * nvars)]
    for sup in supports:
        nxt = set()
        for g in gens:
            for v in sup:
                mon = tuple(min(1, e + (1 if i == v else 0))
                            for i, e in enumerate(g))
                nxt.add(mon)
        # minimalize by divisibility
        nxt = sorted(nxt, key=sum)
        kept = []
        for m in nxt:
            if not any(_divides(k, m) for k in kept):
                kept.append(m)
        gens = kept
    return sorted(gens)


def _variable_ideal_support(ideal: MIdeal):
    """Variable indices when every generator is a single variable, else None."""
    out = []
    for g in ideal.gb():
        if len(g) != 1:
            return None
        (mon,) = g.keys()
        if sum(mon) != 1:
            return None
        out.append(mon.index(1))
    return sorted(out)


# ---------------------------------------------------------------------------
# sympy bridge (factorization of small generators)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _symbols_for(names):
    return sympy.symbols(list(names))


def _to_sympy(p, ring: Ring):
    syms = _symbols_for(ring.names)
    expr = sympy.Integer(0)
    for m, c in p.items():
        term = sympy.Integer(c)
        for i, e in enumerate(m):
            if e:
                term *= syms[i] ** e
        expr += term
    return expr


def _from_sympy(expr, ring: Ring):
    syms = _symbols_for(ring.names)
    poly = sympy.Poly(sympy.expand(expr), *syms)
    out = {}
    for mon, coeff in poly.terms():
        q = Fraction(str(coeff))
        out[tuple(int(e) for e in mon)] = q
    return _clear_denominators(out)


def factor_generator(p, ring: Ring):
    """Irreducible factors over Q (exponents dropped), normalized."""
    if is_monomial_poly(p):
        (mon,) = p.keys()
        out = []
        for i, e in enumerate(mon):
            if e:
                out.append({tuple(1 if k == i else 0
                                  for k in range(ring.nvars)): 1})
        return out
    _, factors = sympy.factor_list(_to_sympy(p, ring))
    out = []
    for f, _mult in factors:
        q = p_normalize(_from_sympy(f, ring), ring.key)
        if q and p_total_degree(q) > 0:
            out.append(q)
    return out


# ---------------------------------------------------------------------------
# component splitting
# ---------------------------------------------------------------------------


def _linear_nonlinear(gb):
    lin, nonlin = [], []
    for g in gb:
        (lin if p_total_degree(g) <= 1 else nonlin).append(g)
    return lin, nonlin


def _poly_vars(p):
    out = set()
    for m in p:
        for i, e in enumerate(m):
            if e:
                out.add(i)
    return out


def _binomial_quadric_vars(g):
    """(vars_of_mon1, vars_of_mon2, c1, c2) for a 4-variable binomial
    quadric, or None."""
    if len(g) != 2 or p_total_degree(g) != 2:
        return None
    (m1, c1), (m2, c2) = sorted(g.items())
    v1 = tuple(i for i, e in enumerate(m1) if e == 1)
    v2 = tuple(i for i, e in enumerate(m2) if e == 1)
    if len(v1) != 2 or len(v2) != 2 or len(set(v1 + v2)) != 4:
        return None
    return v1, v2, c1, c2


def _rank_one_matrix_certificate(nonlin, ring: Ring):
    """Certify ideals of all 2x2 minors of a 2xm matrix of scaled distinct
    variables (rank-one loci are irreducible with ideal the minors).

    Columns are recovered as pairwise intersections of generator supports;
    both row orientations are tried per column, and the scaling factors
    must be multiplicative.
    """
    data = []
    for g in nonlin:
        q = _binomial_quadric_vars(g)
        if q is None:
            return False
        data.append(q)
    variables = sorted({v for q in data for v in q[0] + q[1]})
    if len(variables) % 2:
        return False
    m = len(variables) // 2
    if m < 3 or len(nonlin) != comb(m, 2):
        return False
    supports = [frozenset(q[0] + q[1]) for q in data]
    columns = set()
    for a, b in itertools.combinations(range(len(supports)), 2):
        inter = supports[a] & supports[b]
        if len(inter) == 2:
            columns.add(tuple(sorted(inter)))
    columns = sorted(columns)
    if len(columns) != m:
        return False
    flat = sorted(v for col in columns for v in col)
    if flat != variables:
        return False
    for flips in itertools.product((0, 1), repeat=m - 1):
        oriented = [columns[0]]
        for col, flip in zip(columns[1:], flips):
            oriented.append((col[1], col[0]) if flip else col)
        if _verify_minor_family(data, oriented):
            return True
    return False


def _verify_minor_family(data, cols):
    """Do the binomial quadrics form all minors of the oriented columns,
    with multiplicative scalings?"""
    idx = {}
    for k, (top, bot) in enumerate(cols):
        idx[top] = (k, 0)
        idx[bot] = (k, 1)
    lam = {}

    def shape(vs):
        return tuple(sorted(idx[v] for v in vs))

    for v1, v2, c1, c2 in data:
        cols1 = {idx[v][0] for v in v1}
        cols2 = {idx[v][0] for v in v2}
        if len(cols1) != 2 or cols1 != cols2:
            return False
        k, l = sorted(cols1)
        want_a = ((k, 0), (l, 1))  # top_k * bot_l
        want_b = ((k, 1), (l, 0))  # bot_k * top_l
        s1, s2 = shape(v1), shape(v2)
        if s1 == want_a and s2 == want_b:
            lam[(k, l)] = Fraction(-c2, c1)
        elif s1 == want_b and s2 == want_a:
            lam[(k, l)] = Fraction(-c1, c2)
        else:
            return False
    m = len(cols)
    if len(lam) != comb(m, 2) or any(v == 0 for v in lam.values()):
        return False
    for k in range(m):
        for l in range(k + 1, m):
            for q in range(l + 1, m):
                if lam[(k, l)] * lam[(l, q)] != lam[(k, q)]:
                    return False
    return True


def _certify_prime_leaf(ideal: MIdeal):
    """Certified prime shapes: linear ideals, linear forms plus a single
    irreducible generator, and rank-one determinantal families.

    In a reduced basis the nonlinear generators avoid the leading variables
    of the linear forms, so irreducibility over Q in the ambient variables
    is irreducibility in the quotient."""
    gb = ideal.gb()
    lin, nonlin = _linear_nonlinear(gb)
    if not nonlin:
        return True
    if len(nonlin) == 1:
        g = nonlin[0]
        factors = factor_generator(g, ideal.ring)
        return (len(factors) == 1
                and p_total_degree(factors[0]) == p_total_degree(g))
    return _rank_one_matrix_certificate(nonlin, ideal.ring)


def components(ideal: MIdeal, d, n, config=None):
    """Minimal primes of a reduced special-fiber ideal.

    Monomial ideals decompose combinatorially.  Otherwise generators with a
    nontrivial factorization are branched on; leaves must land in a
    certified prime shape.  When the generating configuration is known, a
    geometric decomposition through residue maps is used as a fallback.
    The intersection of the returned primes is checked against the input.
    """
    if ideal.is_unit():
        raise GroebnerError("unit ideal has no components")
    try:
        primes = _components_splitter(ideal, d, n)
    except DecompositionUnsupported:
        if config is None:
            raise
        primes = _components_geometric(ideal, config)
    primes = _minimalize_primes(primes, d, n)
    if not primes:
        raise GroebnerError("no components found")
    supports = [_variable_ideal_support(p) for p in primes]
    if all(s is not None for s in supports):
        nv = ideal.ring.nvars
        gens = []
        for g in _intersect_variable_supports(supports, nv):
            gens.append({g: 1})
        glued = MIdeal(ideal.ring, gens)
    else:
        glued = intersect_all(primes)
    if not ideal_equal(glued, ideal):
        raise GroebnerError(
            "component certificate failed: intersection does not match")
    return primes


def _minimalize_primes(primes, d, n):
    uniq = []
    for p in primes:
        if p.is_unit() or _contains_block(p, d, n):
            continue
        if not any(ideal_equal(p, q) for q in uniq):
            uniq.append(p)
    out = []
    for p in uniq:
        if not any(q is not p and p.contains(q) for q in uniq):
            out.append(p)
    out.sort(key=_prime_sort_key)
    return out


def _prime_sort_key(p: MIdeal):
    return tuple(tuple(sorted(g.items())) for g in p.gb())


def _contains_block(p: MIdeal, d, n):
    """Does the ideal contain a whole block irrelevant ideal (empty locus)?"""
    for j in range(n):
        if all(p.contains_poly({tuple(1 if k == j * d + i else 0
                                      for k in range(p.ring.nvars)): 1})
               for i in range(d)):
            return True
    return False


def _components_splitter(ideal: MIdeal, d, n, depth=0):
    if depth > 40:
        raise DecompositionUnsupported("splitter recursion too deep")
    gb = ideal.gb()
    if not gb:
        return [ideal]
    if gb and all(is_monomial_poly(g) for g in gb):
        return minimal_primes_squarefree(ideal)
    ring = ideal.ring
    for g in sorted(gb, key=lambda g: (p_total_degree(g), ring.key(max(g, key=ring.key)))):
        factors = factor_generator(g, ring)
        if len(factors) >= 2:
            out = []
            for f in factors:
                child = MIdeal(ring, ideal.gens + [f] if ideal.gens else gb + [f])
                if child.is_unit():
                    continue
                out.extend(_components_splitter(child, d, n, depth + 1))
            if not out:
                raise DecompositionUnsupported("all branches collapsed")
            return out
        if len(factors) == 1 and factors[0] != g and not ideal.contains_poly(factors[0]):
            child = MIdeal(ring, (ideal.gens or gb) + [factors[0]])
            return _components_splitter(child, d, n, depth + 1)
    if _certify_prime_leaf(ideal):
        return [MIdeal(ideal.ring, ideal.gb())]
    raise DecompositionUnsupported(
        "leaf outside certified shapes (linear + one irreducible generator "
        "or a rank-one determinantal family)")


def _components_geometric(fiber: MIdeal, config: building.Configuration):
    """Components as closures of residue-map images from hull vertices.

    Candidate vertices are the configuration points and the bend points of
    all pairs; for d <= 3 every component arises this way.
    """
    d, n = config.d, config.n
    if d > 3:
        raise DecompositionUnsupported(
            "geometric decomposition implemented for d <= 3")
    from . import tropical as trop
    candidates = list(config.points)
    for a, b in itertools.combinations(config.points, 2):
        basis, _, exps = building.common_apartment(a, b)
        bps, lengths = trop.tropical_segment([0] * d, [-e for e in exps])
        if len(bps) > 2:
            for w in bps[1:-1]:
                cand = building.LatticeClass(
                    basis * ValuedMatrix.diag_t([-c for c in w]))
                candidates.append(cand)
    uniq = []
    for c in candidates:
        if not any(building.class_eq(c, u) for u in uniq):
            uniq.append(c)
    primes = []
    for v in uniq:
        j = _graph_component_ideal(config, v)
        if j is not None and not j.is_unit() and j.contains(fiber):
            primes.append(j)
    return primes


def _graph_component_ideal(config: building.Configuration, vertex):
    """Prime of the closure of p -> (phi_1 p, ..., phi_n p).

    phi_j is the residue of the normalized transition matrix from the
    vertex to the j-th point.  Junk loci of the incidence (p inside a
    kernel, or a coordinate block identically zero) are removed by
    sequential saturation before the parameter block is eliminated.
    """
    d, n = config.d, config.n
    phis = [building.residue_map_between(vertex, pt) for pt in config.points]
    pnames = [f"p{i}" for i in range(1, d + 1)]
    rpx = Ring(tuple(pnames) + tuple(xvar_names(d, n)))
    nv = rpx.nvars

    def var(nm):
        i = rpx.index(nm)
        return tuple(1 if k == i else 0 for k in range(nv))

    gens = []
    sat_factors = []
    for j, phi in enumerate(phis, start=1):
        rows = []
        first_nonzero = None
        for r in range(d):
            form = {}
            for i in range(d):
                c = phi[r][i]
                if c:
                    form = p_add(form, p_scale_frac({var(f"p{i + 1}"): 1}, c))
            form = _clear_denominators(form)
            rows.append(form)
            if form and first_nonzero is None:
                first_nonzero = r
        for r, s in itertools.combinations(range(d), 2):
            a = p_mul({var(f"x{r + 1}{j}"): 1}, rows[s]) if rows[s] else {}
            b = p_mul({var(f"x{s + 1}{j}"): 1}, rows[r]) if rows[r] else {}
            g = p_add(a, p_scale(b, -1))
            if g:
                gens.append(g)
        rank = _rational_rank([[Fraction(c) for c in phi[r]] for r in range(d)])
        if rank < d:
            sat_factors.append(rows[first_nonzero])
        sat_factors.append({var(f"x{first_nonzero + 1}{j}"): 1})
    ideal = MIdeal(rpx, gens)
    seen = []
    for f in sorted(sat_factors, key=lambda f: (p_total_degree(f),
                                                sorted(f.items()))):
        f = p_normalize(f, rpx.key)
        if f in seen:
            continue
        seen.append(f)
        ideal = saturate(ideal, f)
    rx = ring_x(d, n)
    out = eliminate(ideal, pnames, rx)
    if not out.gens:
        return None
    return MIdeal(rx, out.gb())


def _rational_rank(rows):
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


# ---------------------------------------------------------------------------
# multidegrees and primary flags
# ---------------------------------------------------------------------------


def multidegree(prime: MIdeal, d, n):
    """Chow monomials of a component, as a sorted tuple of exponent tuples.

    Products of coordinate subspaces carry a single monomial; otherwise the
    class is read off the minimal primes of the monomial initial ideal,
    which must be squarefree with multiplicity one throughout.
    """
    support = _variable_ideal_support(prime)
    if support is not None:
        profile = [0] * n
        for v in support:
            profile[v // d] += 1
        return (tuple(profile),)
    ring = prime.ring
    key = ring.key
    lms = []
    for g in prime.gb():
        lm = max(g, key=key)
        if any(e > 1 for e in lm):
            raise MultiplicityError("initial ideal not squarefree")
        lms.append({lm: 1})
    init = MIdeal(ring, lms)
    covers = minimal_primes_squarefree(init)
    codim = (d - 1) * (n - 1)
    out = []
    for c in covers:
        support = _variable_ideal_support(c)
        if len(support) < codim:
            raise MultiplicityError("initial ideal drops codimension")
        if len(support) > codim:
            continue
        profile = [0] * n
        for v in support:
            profile[v // d] += 1
        out.append(tuple(profile))
    if len(set(out)) != len(out):
        raise MultiplicityError("repeated Chow monomial (multiplicity > 1)")
    return tuple(sorted(out))


def full_diagonal_class(d, n):
    """All Chow monomials of total degree (d-1)(n-1) with entries <= d-1."""
    total = (d - 1) * (n - 1)
    out = []
    for profile in itertools.product(range(d), repeat=n):
        if sum(profile) == total:
            out.append(profile)
    return tuple(sorted(out))


def primary_factor(multideg, d, n):
    """Factor index (0-based) the component is primary for, or None."""
    for i in range(n):
        target = tuple(0 if j == i else d - 1 for j in range(n))
        if target in multideg:
            return i
    return None


def primary_flags(multidegs, d, n):
    """One flag per component; exactly one primary per factor enforced."""
    owners = {}
    flags = []
    for idx, md in enumerate(multidegs):
        i = primary_factor(md, d, n)
        flags.append(i)
        if i is not None:
            if i in owners:
                raise GroebnerError(f"two primary components for factor {i + 1}")
            owners[i] = idx
    if len(owners) != n:
        raise GroebnerError(
            f"expected one primary component per factor, found {len(owners)}")
    return flags


# ---------------------------------------------------------------------------
# multiprojective emptiness and the reduction complex
# ---------------------------------------------------------------------------


def _substitute_one(p, var, nvars):
    out = {}
    for m, c in p.items():
        mm = tuple(0 if i == var else e for i, e in enumerate(m))
        s = out.get(mm, 0) + c
        if s:
            out[mm] = s
        else:
            out.pop(mm, None)
    return out


def _patch_has_point(gens, ring: Ring, patch_vars):
    sub = []
    for g in gens:
        for v in patch_vars:
            g = _substitute_one(g, v, ring.nvars)
        if g:
            sub.append(g)
    if not sub:
        return True
    if all(p_total_degree(g) <= 1 for g in sub):
        return _affine_linear_consistent(sub, ring.nvars)
    gb = buchberger(sub, ring)
    return not (len(gb) == 1 and sum(max(gb[0], key=ring.key)) == 0)


def _affine_linear_consistent(gens, nvars):
    rows = []
    for g in gens:
        row = [Fraction(0)] * (nvars + 1)
        for m, c in g.items():
            deg = sum(m)
            if deg == 0:
                row[nvars] += c
            else:
                row[m.index(1)] += c
        rows.append(row)
    rank = 0
    for col in range(nvars):
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
    for i in range(rank, len(rows)):
        if rows[i][nvars] != 0 and all(c == 0 for c in rows[i][:nvars]):
            return False
    for i in range(rank):
        if all(c == 0 for c in rows[i][:nvars]) and rows[i][nvars] != 0:
            return False
    return True


def multiproj_nonempty(ideal_gens, ring: Ring, d, n):
    """Is the multiprojective zero set nonempty?  Affine patch scan."""
    for choice in itertools.product(range(d), repeat=n):
        patch = [ring.index(f"x{j + 1}{i + 1}") for i, j in enumerate(choice)]
        if _patch_has_point(ideal_gens, ring, patch):
            return True
    return False


def multiproj_nonempty_intersection(p: MIdeal, q: MIdeal, d, n):
    gens = (p.gens or p.gb()) + (q.gens or q.gb())
    return multiproj_nonempty(gens, p.ring, d, n)


def reduction_complex(primes, d, n):
    """Facets of the nerve of the components in multiprojective space."""
    m = len(primes)
    ring = primes[0].ring if primes else None
    simplices = [frozenset([i]) for i in range(m)]
    layer = set(simplices)
    for size in range(2, m + 1):
        nxt = set()
        tested = set()
        for s in layer:
            for extra in range(m):
                if extra in s:
                    continue
                cand = frozenset(s | {extra})
                if cand in tested:
                    continue
                tested.add(cand)
                if not all(cand - {x} in layer for x in cand):
                    continue
                gens = []
                for i in sorted(cand):
                    gens.extend(primes[i].gb())
                if multiproj_nonempty(gens, ring, d, n):
                    nxt.add(cand)
        if not nxt:
            break
        simplices.extend(sorted(nxt, key=sorted))
        layer = nxt
    facets = [s for s in simplices if not any(s < t for t in simplices)]
    return sorted(tuple(sorted(f)) for f in facets)


# ---------------------------------------------------------------------------
# fiber reports
# ---------------------------------------------------------------------------


@dataclass
class FiberReport:
    d: int
    n: int
    fiber: MIdeal
    components: list
    multidegrees: list
    primary: list  # factor index (0-based) or None per component
    complex_facets: list

    def component_count(self):
        return len(self.components)


def special_fiber_report(config: building.Configuration):
    """Full pipeline: fiber ideal, components, classes, flags, complex."""
    d, n = config.d, config.n
    fiber = special_fiber(config)
    prims = components(fiber, d, n, config=config)
    multidegs = [multidegree(p, d, n) for p in prims]
    total = []
    for md in multidegs:
        total.extend(md)
    if tuple(sorted(total)) != full_diagonal_class(d, n):
        raise GroebnerError("multidegrees do not sum to the diagonal class")
    if len(prims) > comb(n + d - 2, d - 1):
        raise GroebnerError("component count exceeds the binomial bound")
    flags = primary_flags(multidegs, d, n)
    order = sorted(range(len(prims)),
                   key=lambda i: (flags[i] is None,
                                  flags[i] if flags[i] is not None else 0,
                                  _prime_sort_key(prims[i])))
    prims = [prims[i] for i in order]
    multidegs = [multidegs[i] for i in order]
    flags = [flags[i] for i in order]
    facets = reduction_complex(prims, d, n)
    return FiberReport(d=d, n=n, fiber=fiber, components=prims,
                       multidegrees=multidegs, primary=flags,
                       complex_facets=facets)


# ---------------------------------------------------------------------------
# printing and parsing
# ---------------------------------------------------------------------------


def poly_str(p, ring: Ring):
    if not p:
        return "0"
    key = ring.key
    parts = []
    for m in sorted(p, key=key, reverse=True):
        c = p[m]
        factors = []
        for i, e in enumerate(m):
            if e == 1:
                factors.append(ring.names[i])
            elif e > 1:
                factors.append(f"{ring.names[i]}^{e}")
        body = "*".join(factors) if factors else "1"
        if factors:
            if c == 1:
                term = body
            elif c == -1:
                term = f"-{body}"
            else:
                term = f"{c}*{body}"
        else:
            term = str(c)
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


def ideal_str(ideal: MIdeal):
    """Deterministic printer: reduced basis, ascending leading monomials."""
    return "\n".join(poly_str(g, ideal.ring) for g in ideal.gb())


def parse_poly(text, ring: Ring):
    """Sum-of-terms parser: ints, variable names, * and ^, unary signs."""
    text = text.replace("-", "+-").replace(" ", "")
    if text.startswith("+"):
        text = text[1:]
    out = {}
    for chunk in text.split("+"):
        if not chunk:
            continue
        sign = 1
        while chunk.startswith("-"):
            sign = -sign
            chunk = chunk[1:]
        coeff = sign
        mon = [0] * ring.nvars
        for factor in chunk.split("*"):
            if not factor:
                raise GroebnerError(f"bad term in {text!r}")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            if "^" in factor:
                name, e = factor.split("^")
                e = int(e)
            else:
                name, e = factor, 1
            if name not in ring._index:
                raise GroebnerError(f"unknown variable {name!r}")
            mon[ring.index(name)] += e
        m = tuple(mon)
        s = out.get(m, 0) + coeff
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def parse_ideal(lines, ring: Ring):
    gens = [parse_poly(line, ring) for line in lines if line.strip()]
    return MIdeal(ring, gens)
