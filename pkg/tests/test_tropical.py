import itertools
import random
from math import comb

import pytest

from mustafin import building as B
from mustafin import tropical as T


def member_oracle(x, points, span=8):
    """Brute-force membership: search integer shifts directly."""
    x = T.canonical(x)
    pts = [T.canonical(p) for p in points]
    d = len(x)
    for lams in itertools.product(range(-span, span + 1), repeat=len(pts)):
        y = tuple(min(lams[i] + pts[i][j] for i in range(len(pts)))
                  for j in range(d))
        if T.canonical(y) == x:
            return True
    return False


def test_trop_dist_examples():
    assert T.trop_dist((-2, -1, 0), (-4, -2, 0)) == 2
    assert T.trop_dist((1, 5, 2), (1, 5, 2)) == 0


def test_trop_dist_matches_building_distance():
    rng = random.Random(20)
    for _ in range(40):
        u = tuple(rng.randint(-3, 3) for _ in range(3))
        v = tuple(rng.randint(-3, 3) for _ in range(3))
        a = B.LatticeClass.diagonal([-c for c in u])
        b = B.LatticeClass.diagonal([-c for c in v])
        assert T.trop_dist(u, v) == B.class_distance(a, b)


def test_trop_member_examples():
    gamma = [(0, 0, 0), (0, -1, -3)]
    for g in gamma:
        assert T.trop_member(g, gamma)
    # the bent segment passes through (0,0,-1) and (0,0,-2); the reflected
    # candidates are outside (cross-checked against the lambda-search oracle)
    assert T.trop_member((0, 0, -1), gamma)
    assert T.trop_member((0, 0, -2), gamma)
    assert not T.trop_member((0, -1, -1), gamma)
    assert not T.trop_member((0, -3, -1), gamma)
    assert member_oracle((0, 0, -1), gamma)
    assert not member_oracle((0, -1, -1), gamma)


def test_trop_member_against_oracle():
    rng = random.Random(21)
    for _ in range(30):
        pts = [tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(2)]
        x = tuple(rng.randint(-3, 3) for _ in range(3))
        assert T.trop_member(x, pts) == member_oracle(x, pts)


def test_tconv_lattice_points_golden():
    # frozen from the membership oracle: the bent segment has 4 points
    got = T.tconv_lattice_points([(0, 0, 0), (0, -1, -3)])
    assert got == [(0, -1, -3), (0, 0, -2), (0, 0, -1), (0, 0, 0)]
    for p in got:
        assert member_oracle(p, [(0, 0, 0), (0, -1, -3)])

    units = T.tconv_lattice_points([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert len(units) == 4 and T.canonical((0, 0, 0)) in units

    assert T.tconv_lattice_points([(2, 1, 7)]) == [T.canonical((2, 1, 7))]


def test_tropical_segment():
    bps, lengths = T.tropical_segment((0, 0, 0), (0, -1, -3))
    assert sorted(lengths) == [1, 2]
    assert len(bps) == 3  # one interior breakpoint

    bps, lengths = T.tropical_segment((0, 0, 0), (0, 0, -3))
    assert sorted(lengths) == [0, 3]
    assert len(bps) == 2  # unbent

    bps, lengths = T.tropical_segment((1, 2, 3), (1, 2, 3))
    assert lengths == [0, 0] and len(bps) == 1


def test_tropical_segment_properties():
    rng = random.Random(22)
    for _ in range(40):
        u = tuple(rng.randint(-4, 4) for _ in range(4))
        v = tuple(rng.randint(-4, 4) for _ in range(4))
        _, l1 = T.tropical_segment(u, v)
        _, l2 = T.tropical_segment(v, u)
        assert l1 == list(reversed(l2))
        shift = tuple(c + 5 for c in u), tuple(c + 5 for c in v)
        _, l3 = T.tropical_segment(*shift)
        assert l1 == l3
        # breakpoints enumerate the segment's pseudo-vertices
        bps, lengths = T.tropical_segment(u, v)
        assert sum(lengths) == T.trop_dist(u, v)
        for p in bps:
            assert T.trop_member(p, [u, v])


EXPLODING = [(0, 0, 0, 0), (0, -1, 0, -1), (0, 0, -1, -1)]


def test_lift_coefficient_golden():
    # heights of the degree-3 lifting: one 0, seven 1s, twelve 2s
    values = {}
    for idx in itertools.combinations_with_replacement(range(1, 5), 3):
        values[idx] = T.lift_coefficient(EXPLODING, idx)
    assert values[(1, 1, 1)] == 0
    assert values[(1, 2, 3)] == 2
    from collections import Counter
    counts = Counter(values.values())
    assert counts == {0: 1, 1: 7, 2: 12}
    assert len(values) == 20


def test_lift_coefficient_single_point():
    pt = (0, -2, 5)
    for j in range(1, 4):
        assert T.lift_coefficient([pt], (j,)) == -T.canonical(pt)[j - 1]


def test_mixed_subdivision_examples():
    sub = T.mixed_subdivision(EXPLODING)
    assert len(sub.maximal_cells) == 4
    assert sum(c.volume for c in sub.maximal_cells) == 27

    ex22 = [(-2, -1, 0), (-4, -2, 0), (-6, -3, 0)]
    sub2 = T.mixed_subdivision(ex22)
    assert len(sub2.maximal_cells) == 6
    assert sum(c.volume for c in sub2.maximal_cells) == 9

    single = T.mixed_subdivision([(0, -1, 4)])
    assert len(single.maximal_cells) == 1
    assert sorted(single.maximal_cells[0].sets[0]) == [1, 2, 3]


def test_mixed_subdivision_anchor_types_incomparable():
    rng = random.Random(23)
    for _ in range(15):
        pts = [tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(3)]
        try:
            sub = T.mixed_subdivision(pts)
        except T.TropicalError:
            continue
        cells = sub.maximal_cells
        for a, b in itertools.combinations(cells, 2):
            fwd = all(sa <= sb for sa, sb in zip(a.sets, b.sets))
            bwd = all(sb <= sa for sa, sb in zip(a.sets, b.sets))
            assert not (fwd or bwd)


def test_is_general_position():
    assert T.is_general_position([(-2, -1, 0), (-4, -2, 0), (-6, -3, 0)])
    assert not T.is_general_position([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert not T.is_general_position([(0, 0, 0), (0, 0, 0), (1, 2, 3)])


def test_monomial_special_fiber_example22():
    pts = [(-2, -1, 0), (-4, -2, 0), (-6, -3, 0)]
    sub, primes, ideal = T.monomial_special_fiber(pts)
    assert len(primes) == 6
    # nine quadratic monomial generators
    assert len(ideal) == 9 and all(len(g) == 2 for g in ideal)
    labels = T.classify_cell_vertices(sub, pts)
    assert labels.count("primary") == 3 and labels.count("secondary") == 3


def test_monomial_special_fiber_rejects_degenerate():
    with pytest.raises(T.TropicalError):
        T.monomial_special_fiber([(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def test_secondary_count_formula():
    rng = random.Random(24)
    found = 0
    while found < 10:
        pts = [tuple(rng.randint(-4, 4) for _ in range(3)) for _ in range(3)]
        if len({T.canonical(p) for p in pts}) < 3:
            continue
        if not T.is_general_position(pts):
            continue
        sub = T.mixed_subdivision(pts)
        labels = T.classify_cell_vertices(sub, pts)
        n, d = 3, 3
        assert labels.count("secondary") == comb(n + d - 2, d - 1) - n
        found += 1


def test_reduction_complex_from_cells():
    ex22 = [(-2, -1, 0), (-4, -2, 0), (-6, -3, 0)]
    sub = T.mixed_subdivision(ex22)
    facets = T.reduction_complex_from_cells(sub)
    sizes = sorted(len(f) for f in facets)
    # a tetrahedron with two attached triangles
    assert sizes == [3, 3, 4]
    tet = [f for f in facets if len(f) == 4][0]
    tris = [f for f in facets if len(f) == 3]
    edges = [tuple(sorted(set(t) & set(tet))) for t in tris]
    assert all(len(e) == 2 for e in edges)
    shared = set(edges[0]) & set(edges[1])
    assert len(shared) == 1  # attached at two adjacent edges

    sub1 = T.mixed_subdivision([(0, 0, 0)])
    assert T.reduction_complex_from_cells(sub1) == [(0,)]


def test_volume_conservation_random():
    rng = random.Random(25)
    for _ in range(10):
        n = rng.randint(1, 4)
        pts = [tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(n)]
        sub = T.mixed_subdivision(pts)
        assert sum(c.volume for c in sub.maximal_cells) == n ** 2
