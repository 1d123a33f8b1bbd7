import random

import pytest

from mustafin import building as B
from mustafin import trees as T
from mustafin.valfield import ValuedMatrix

from helpers import lattice_cols, random_invertible, random_unit_matrix


def collinear_triple():
    return B.Configuration([B.LatticeClass.diagonal([0, s])
                            for s in (0, 1, 3)])


def star_triple():
    g1 = ValuedMatrix.parse([["1", "0"], ["0", "t"]])
    g2 = ValuedMatrix.parse([["1", "0"], ["1", "t"]])
    g3 = ValuedMatrix.parse([["1", "0"], ["2", "t"]])
    return B.Configuration([B.LatticeClass(m) for m in (g1, g2, g3)])


def caterpillar_config():
    """Eight points whose tree has six leaves and two internal labels.

    The main apartment carries u at 0 and v at 2 with Steiner stops at -1
    (s1), 1 (s2) and a fresh neighbor of v (s3); two leaves branch off
    each stop in fresh residue directions.
    """
    u = B.LatticeClass.standard(2)
    v = B.LatticeClass.diagonal([0, 2])
    c = lattice_cols(["1", "t"], ["t", "0"])
    d = lattice_cols(["1", "-t"], ["t", "0"])
    a = lattice_cols(["t", "1"], ["t^2", "0"])
    b = lattice_cols(["2*t", "1"], ["t^2", "0"])
    e = lattice_cols(["1+t", "t^2"], ["t^2", "0"])
    f = lattice_cols(["1+2*t", "t^2"], ["t^2", "0"])
    return B.Configuration([u, v, c, d, a, b, e, f])


def test_thickness_examples():
    i2 = ValuedMatrix.identity(2)
    assert T.thickness(i2, i2) == 0
    assert T.thickness(i2, ValuedMatrix.diag_t([0, 3])) == 3


def test_thickness_equals_distance():
    rng = random.Random(40)
    for _ in range(150):
        g = random_invertible(rng, 2)
        h = random_invertible(rng, 2)
        assert T.thickness(g, h) == B.class_distance(
            B.LatticeClass(g), B.LatticeClass(h))


def test_thickness_right_invariance():
    rng = random.Random(41)
    g = random_invertible(rng, 2)
    h = random_invertible(rng, 2)
    base = T.thickness(g, h)
    for _ in range(20):
        u = random_unit_matrix(rng, 2)
        assert T.thickness(g * u, h) == base
        assert T.thickness(g, h * u) == base


def random_integer_tree(rng, nleaves):
    """Random metric tree; returns the distance matrix of its labels."""
    tree = T.PhylogeneticTree()
    tree.add_node(0)
    labels = [0]
    # grow by attaching new labeled nodes to random existing nodes through
    # optional Steiner midpoints
    nodes = [0]
    for x in range(1, nleaves):
        tree.add_node(x)
        anchor = rng.choice(nodes)
        tree.add_edge(anchor, x, rng.randint(1, 4))
        nodes.append(x)
        labels.append(x)
    n = len(labels)
    dist = [[tree.distance(i, j) for j in range(n)] for i in range(n)]
    return dist


def test_phylogenetic_tree_reconstruction_roundtrip():
    rng = random.Random(42)
    for _ in range(30):
        n = rng.randint(2, 7)
        dist = random_integer_tree(rng, n)
        tree = T.phylogenetic_tree(dist)
        for i in range(n):
            for j in range(n):
                if i != j:
                    assert tree.distance(i, j) == dist[i][j]


def test_phylogenetic_tree_collinear():
    dist = [[0, 1, 3], [1, 0, 2], [3, 2, 0]]
    tree = T.phylogenetic_tree(dist)
    # path 0 - 1 - 2 with lengths 1, 2 and no Steiner nodes
    assert tree.degree(1) == 2
    assert len(tree.nodes()) == 3


def test_phylogenetic_tree_star():
    dist = [[0, 2, 2], [2, 0, 2], [2, 2, 0]]
    tree = T.phylogenetic_tree(dist)
    steiner = [v for v in tree.nodes() if isinstance(v, tuple)]
    assert len(steiner) == 1
    assert tree.degree(steiner[0]) == 3
    assert all(tree.adj[steiner[0]][nb] == 1 for nb in tree.adj[steiner[0]])


def test_phylogenetic_tree_rejects_non_tree_metric():
    # violates the four point condition
    bad = [[0, 2, 2, 3], [2, 0, 3, 2], [2, 3, 0, 2], [3, 2, 2, 0]]
    with pytest.raises(T.TreeError):
        T.phylogenetic_tree(bad)


def test_tree_reduction_complex_collinear():
    conf = collinear_triple()
    tree, _ = T.configuration_tree(conf)
    assert T.tree_reduction_complex(tree, 3) == [(0, 1), (1, 2)]


def test_tree_reduction_complex_star():
    conf = star_triple()
    tree, _ = T.configuration_tree(conf)
    assert T.tree_reduction_complex(tree, 3) == [(0, 1, 2)]


def test_reduction_complex_covers_and_geodesics():
    rng = random.Random(43)
    for _ in range(10):
        n = rng.randint(2, 6)
        dist = random_integer_tree(rng, n)
        tree = T.phylogenetic_tree(dist)
        facets = T.tree_reduction_complex(tree, n)
        covered = set()
        for f in facets:
            covered.update(f)
        assert covered == set(range(n))
        for i in range(n):
            for j in range(i + 1, n):
                path = tree.path(i, j)
                interior_labels = [v for v in path[1:-1]
                                   if not isinstance(v, tuple)]
                share = any(i in f and j in f for f in facets)
                assert share == (not interior_labels)


def test_monomial_type_tree():
    conf = collinear_triple()
    tree, _ = T.configuration_tree(conf)
    assert T.is_monomial_type_tree(tree, 3)

    # a labeled node of degree three is not of monomial type
    dist = [[0, 2, 2, 1], [2, 0, 2, 1], [2, 2, 0, 1], [1, 1, 1, 0]]
    t2 = T.phylogenetic_tree(dist)
    assert t2.degree(3) == 3
    assert not T.is_monomial_type_tree(t2, 4)


def test_monomial_tree_small():
    conf = B.Configuration([B.LatticeClass.diagonal([0, s]) for s in (0, 2)])
    tree, _ = T.configuration_tree(conf)
    nodes, edges = T.monomial_tree(tree, 2)
    assert len(nodes) == 3 and len(edges) == 2


def test_monomial_tree_star():
    conf = star_triple()
    tree, _ = T.configuration_tree(conf)
    nodes, edges = T.monomial_tree(tree, 3)
    assert len(nodes) == 4 and len(edges) == 3
    # star: all edges share a common node
    centers = set(edges[0][:2]) & set(edges[1][:2]) & set(edges[2][:2])
    assert len(centers) == 1


def test_caterpillar_shape():
    conf = caterpillar_config()
    tree, dist = T.configuration_tree(conf)
    leaves = [v for v in tree.leaves() if not isinstance(v, tuple)]
    assert len(leaves) == 6
    internal_labels = [i for i in range(8) if tree.degree(i) == 2]
    assert sorted(internal_labels) == [0, 1]
    assert T.is_monomial_type_tree(tree, 8)
    nodes, edges = T.monomial_tree(tree, 8)
    assert len(nodes) == 9 and len(edges) == 8


def test_cross_check_fiber_collinear():
    out = T.cross_check_fiber_d2(collinear_triple())
    assert out["complex"] == [(0, 1), (1, 2)]
    report = out["report"]
    from mustafin import groebner as G
    got = {G.ideal_str(p) for p in report.components}
    rx = G.ring_x(2, 3)
    expected = {
        G.ideal_str(G.MIdeal(rx, [G.parse_poly(v, rx) for v in vs]))
        for vs in (("x12", "x13"), ("x21", "x13"), ("x21", "x22"))
    }
    assert got == expected


def test_cross_check_fiber_pair():
    conf = B.Configuration([B.LatticeClass.diagonal([0, s]) for s in (0, 1)])
    out = T.cross_check_fiber_d2(conf)
    assert out["complex"] == [(0, 1)]
    from mustafin import groebner as G
    fib = out["report"].fiber
    rx = G.ring_x(2, 2)
    assert G.ideal_equal(fib, G.MIdeal(rx, [G.parse_poly("x21*x12", rx)]))


def test_cross_check_fiber_random():
    rng = random.Random(44)
    for _ in range(5):
        n = rng.randint(2, 4)
        while True:
            try:
                conf = B.Configuration([
                    B.LatticeClass(random_invertible(rng, 2))
                    for _ in range(n)])
                break
            except B.BuildingError:
                continue
        T.cross_check_fiber_d2(conf)
