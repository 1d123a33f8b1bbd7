import itertools
import random

import pytest

from mustafin import building as B
from mustafin import tropical as T
from mustafin.valfield import INF, ValuedMatrix, ValuedScalar, parse_scalar

from helpers import (lattice_cols, random_gl_k, random_invertible,
                     random_unit_matrix, random_diagonal_config)


def snf_exponent_oracle(m: ValuedMatrix):
    """Invariant-factor exponents from minor valuation minima.

    e_1 + ... + e_k equals the minimal valuation over all k x k minors;
    independent of the pivoting reduction used in production.
    """
    d = m.rows
    sums = [0]
    for k in range(1, d + 1):
        best = INF
        for rows in itertools.combinations(range(d), k):
            for cols in itertools.combinations(range(d), k):
                sub = ValuedMatrix([[m.entries[r][c] for c in cols]
                                    for r in rows])
                v = sub.det().val()
                if v < best:
                    best = v
        sums.append(best)
    return [int(sums[k] - sums[k - 1]) for k in range(1, d + 1)]


def test_elementary_exponents_examples():
    i3 = B.LatticeClass.standard(3)
    assert B.elementary_exponents(i3, B.LatticeClass.diagonal([0, 1, 3])) == [0, 1, 3]
    assert B.elementary_exponents(i3, i3) == [0, 0, 0]
    i2 = B.LatticeClass.standard(2)
    two = B.LatticeClass(ValuedMatrix.parse([["1", "1"], ["0", "t"]]))
    assert B.elementary_exponents(i2, two) == [0, 1]


def test_elementary_exponents_against_minor_oracle():
    rng = random.Random(10)
    i3 = B.LatticeClass.standard(3)
    for _ in range(40):
        m = random_invertible(rng, 3)
        lat = B.LatticeClass(m)
        assert B.elementary_exponents(i3, lat) == snf_exponent_oracle(m)


def test_class_distance_examples():
    a = B.LatticeClass.diagonal([2, 1, 0])
    b = B.LatticeClass.diagonal([4, 2, 0])
    assert B.class_distance(a, b) == 2
    assert B.class_distance(a, a) == 0
    i3 = B.LatticeClass.standard(3)
    assert B.class_distance(i3, B.LatticeClass.diagonal([0, 1, 1])) == 1


def test_adjacent():
    i3 = B.LatticeClass.standard(3)
    assert B.adjacent(i3, B.LatticeClass.diagonal([0, 1, 1]))
    assert not B.adjacent(i3, B.LatticeClass.diagonal([0, 2, 0]))
    assert not B.adjacent(i3, i3)


def test_distance_is_a_metric():
    rng = random.Random(11)
    for _ in range(25):
        pts = [B.LatticeClass(random_invertible(rng, 2)) for _ in range(3)]
        a, b, c = pts
        assert B.class_distance(a, b) == B.class_distance(b, a)
        assert (B.class_distance(a, b) == 0) == B.class_eq(a, b)
        assert (B.class_distance(a, b) + B.class_distance(b, c)
                >= B.class_distance(a, c))


def test_distance_invariance():
    rng = random.Random(12)
    for _ in range(20):
        a = B.LatticeClass(random_invertible(rng, 3))
        b = B.LatticeClass(random_invertible(rng, 3))
        dist = B.class_distance(a, b)
        g = random_gl_k(rng, 3)
        assert B.class_distance(B.LatticeClass(g * a.gen),
                                B.LatticeClass(g * b.gen)) == dist
        u = random_unit_matrix(rng, 3)
        assert B.class_distance(B.LatticeClass(a.gen * u), b) == dist


def test_lattice_intersection_examples():
    i2 = B.LatticeClass.standard(2)
    down = B.LatticeClass.diagonal([0, 1])
    inter = B.lattice_intersection(i2, down, 0, 0)
    assert B.class_eq(inter, down)
    lat = B.LatticeClass.diagonal([0, 0])
    assert B.class_eq(B.lattice_intersection(lat, lat, 0, 1), lat)
    spread = B.LatticeClass.diagonal([-1, 1])
    got = B.lattice_intersection(i2, spread, 0, 0)
    assert B.class_eq(got, B.LatticeClass.diagonal([0, 1]))


def test_convex_hull_examples():
    two = B.Configuration([B.LatticeClass.standard(3),
                           B.LatticeClass.diagonal([0, 1, 1])])
    assert len(B.convex_hull(two)) == 2

    units = B.Configuration([B.LatticeClass.diagonal(e)
                             for e in ([-1, 0, 0], [0, -1, 0], [0, 0, -1])])
    hull = B.convex_hull(units)
    assert len(hull) == 4
    assert any(B.class_eq(h, B.LatticeClass.standard(3)) for h in hull)

    # segment: frozen from the tropical enumeration oracle (4 classes)
    seg = B.Configuration([B.LatticeClass.diagonal([0, 0, 0]),
                           B.LatticeClass.diagonal([0, 1, 3])])
    hull = B.convex_hull(seg)
    assert len(hull) == 4


def test_convex_hull_closure_idempotent():
    rng = random.Random(13)
    conf = random_diagonal_config(rng, 3, 3, lo=-2, hi=2)
    hull = B.convex_hull(conf)
    for x in hull:
        for y in hull:
            dist = B.class_distance(x, y)
            basis, _, exps = B.common_apartment(x, y)
            for s in range(-dist, dist + 1):
                merged = [max(0, s + e) for e in exps]
                cand = B.LatticeClass(basis * ValuedMatrix.diag_t(merged))
                assert any(B.class_eq(cand, h) for h in hull)


def test_hull_matches_tropical_lattice_points():
    rng = random.Random(14)
    for _ in range(10):
        conf = random_diagonal_config(rng, 3, 3, lo=-2, hi=2)
        hull = B.convex_hull(conf)
        pts = [T.lattice_to_apartment(B.diagonal_exponents(p))
               for p in conf.points]
        tc = T.tconv_lattice_points(pts)
        assert len(hull) == len(tc)
        hull_pts = sorted(T.canonical([-m for m in B.diagonal_exponents(h)])
                          for h in hull)
        assert hull_pts == tc


def test_common_apartment():
    i2 = B.LatticeClass.standard(2)
    lat = B.LatticeClass.diagonal([0, 2])
    basis, ea, eb = B.common_apartment(i2, lat)
    assert ea == [0, 0] and eb == [0, 2]

    # both classes diagonalize in the returned basis
    rng = random.Random(15)
    for _ in range(15):
        a = B.LatticeClass(random_invertible(rng, 3))
        b = B.LatticeClass(random_invertible(rng, 3))
        basis, ea, eb = B.common_apartment(a, b)
        assert B.class_eq(B.LatticeClass(basis), a)
        assert B.class_eq(B.LatticeClass(basis * ValuedMatrix.diag_t(eb)), b)


def test_common_apartment_exponents_invariant():
    rng = random.Random(16)
    for _ in range(15):
        exps = sorted(rng.randint(-2, 2) for _ in range(3))
        a = B.LatticeClass.standard(3)
        b = B.LatticeClass.diagonal(exps)
        u = random_unit_matrix(rng, 3)
        a2 = B.LatticeClass(a.gen * u)
        g = random_gl_k(rng, 3)
        _, _, eb = B.common_apartment(
            B.LatticeClass(g * a2.gen), B.LatticeClass(g * b.gen * u))
        spread = [e - eb[0] for e in eb]
        assert spread == [e - exps[0] for e in exps]


def test_first_step_subspace_examples():
    i3 = B.LatticeClass.standard(3)
    # lattice spanned by t e1, t e2, t e3 and e1
    l1 = lattice_cols(["1", "0", "0"], ["0", "t", "0"], ["0", "0", "t"])
    w = B.first_step_subspace(i3, l1)
    assert w.rank == 1 and w.contains_vector([1, 0, 0])

    # diagonal exponents (0,-1,-1) in apartment coordinates: generator
    # diag(1, t, t) gives the same span{e1}
    other = B.LatticeClass.diagonal([0, 1, 1])
    w2 = B.first_step_subspace(i3, other)
    assert w2 == w

    l3 = lattice_cols(["1", "1", "0"], ["0", "t", "0"], ["0", "0", "t"])
    w3 = B.first_step_subspace(i3, l3)
    assert w3.rank == 1 and w3.contains_vector([1, 1, 0])


def test_first_step_subspace_rank_bounds():
    rng = random.Random(17)
    i3 = B.LatticeClass.standard(3)
    for _ in range(20):
        other = B.LatticeClass(random_invertible(rng, 3))
        if B.class_eq(i3, other):
            continue
        w = B.first_step_subspace(i3, other)
        assert 0 < w.rank < 3


def test_configuration_rejects_duplicates():
    with pytest.raises(B.BuildingError):
        B.Configuration([B.LatticeClass.standard(2),
                         B.LatticeClass.diagonal([1, 1])])


def test_configuration_from_dict():
    doc = {"d": 3, "lattices": [{"diag": [2, 1, 0]},
                                [["1", "0", "0"], ["0", "t", "0"],
                                 ["0", "0", "t^2"]]],
           "labels": ["a", "b"]}
    conf = B.configuration_from_dict(doc)
    assert conf.n == 2 and conf.labels == ["a", "b"]
    with pytest.raises(B.BuildingError):
        B.configuration_from_dict({"d": 2, "lattices": [{"diag": [0]}]})
