"""The rank-two theory: the building is a tree and fibers are chains of lines.

A configuration in the tree determines an integer tree metric; the convex
hull realizes it as a phylogenetic tree whose punctured components give the
reduction complex.  Thickness of a two-point degeneration is computed by
the column-determinant formula and doubles as an independent check of the
building metric.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import building, groebner
from .valfield import ValuedMatrix


class TreeError(ValueError):
    pass


def thickness(g: ValuedMatrix, h: ValuedMatrix):
    """Node thickness of the two-point degeneration spanned by g, h.

    v(det(g1 h1) det(g2 h2) - det(g1 h2) det(g2 h1)) minus twice the
    minimal valuation of the four column determinants; the columns of g
    and h are paired into 2x2 determinants.
    """
    if g.rows != 2 or h.rows != 2:
        raise TreeError("thickness needs 2x2 matrices")

    def coldet(a, i, b, j):
        return (a.entries[0][i] * b.entries[1][j]
                - a.entries[1][i] * b.entries[0][j])

    d11 = coldet(g, 0, h, 0)
    d12 = coldet(g, 0, h, 1)
    d21 = coldet(g, 1, h, 0)
    d22 = coldet(g, 1, h, 1)
    combo = d11 * d22 - d12 * d21
    vmin = min(x.val() for x in (d11, d12, d21, d22))
    return int(combo.val() - 2 * vmin)


class PhylogeneticTree:
    """Metric tree on labeled configuration nodes plus Steiner vertices."""

    def __init__(self):
        self.adj = {}  # node -> {neighbor: length}
        self._steiner = 0

    def nodes(self):
        return list(self.adj)

    def add_node(self, node):
        self.adj.setdefault(node, {})

    def new_steiner(self):
        self._steiner += 1
        node = ("s", self._steiner)
        self.add_node(node)
        return node

    def add_edge(self, a, b, length):
        if length <= 0:
            raise TreeError("edge lengths must be positive")
        self.adj[a][b] = length
        self.adj[b][a] = length

    def remove_edge(self, a, b):
        del self.adj[a][b]
        del self.adj[b][a]

    def degree(self, node):
        return len(self.adj[node])

    def leaves(self):
        return [v for v in self.adj if len(self.adj[v]) == 1]

    def edges(self):
        out = []
        for a in self.adj:
            for b, ln in self.adj[a].items():
                if (b, a) not in [(x, y) for x, y, _ in out]:
                    out.append((a, b, ln))
        seen = set()
        uniq = []
        for a, b, ln in out:
            k = frozenset((a, b))
            if k not in seen:
                seen.add(k)
                uniq.append((a, b, ln))
        return uniq

    def path(self, a, b):
        """Node path from a to b."""
        prev = {a: None}
        stack = [a]
        while stack:
            x = stack.pop()
            if x == b:
                break
            for y in self.adj[x]:
                if y not in prev:
                    prev[y] = x
                    stack.append(y)
        if b not in prev:
            raise TreeError("disconnected tree")
        out = [b]
        while out[-1] != a:
            out.append(prev[out[-1]])
        return list(reversed(out))

    def distance(self, a, b):
        p = self.path(a, b)
        return sum(self.adj[x][y] for x, y in zip(p, p[1:]))


def _check_tree_metric(dist):
    n = len(dist)
    for i in range(n):
        if dist[i][i] != 0:
            raise TreeError("nonzero diagonal")
        for j in range(i + 1, n):
            if dist[i][j] != dist[j][i] or dist[i][j] <= 0:
                raise TreeError("distance matrix must be symmetric positive")
    for quad in itertools.combinations(range(n), 4):
        i, j, k, l = quad
        sums = sorted([dist[i][j] + dist[k][l],
                       dist[i][k] + dist[j][l],
                       dist[i][l] + dist[j][k]])
        if sums[1] != sums[2]:
            raise TreeError(f"four-point condition fails on {quad}")


def phylogenetic_tree(dist):
    """The unique tree realizing an integer tree metric, labels 0..n-1.

    Exact incremental insertion: each new point attaches at the deepest
    meeting point along paths from a reference node, located by integer
    Gromov products.  Labeled nodes may be internal.
    """
    n = len(dist)
    _check_tree_metric(dist)
    tree = PhylogeneticTree()
    tree.add_node(0)
    if n == 1:
        return tree
    placed = [0]
    tree.add_node(1)
    tree.add_edge(0, 1, dist[0][1])
    placed.append(1)
    for x in range(2, n):
        a = placed[0]
        h = 0
        target = placed[1]
        for b in placed[1:]:
            two_gp = dist[a][b] + dist[a][x] - dist[b][x]
            if two_gp % 2:
                raise TreeError("metric is not realizable with integer nodes")
            gp = two_gp // 2
            if gp > h:
                h = gp
                target = b
        # walk from a toward target to the point at distance h
        node = _locate(tree, a, target, h)
        stub = dist[a][x] - h
        if stub == 0:
            if isinstance(node, tuple) and node[0] == "s":
                _relabel(tree, node, x)
            else:
                raise TreeError("two configuration points coincide in the tree")
        else:
            tree.add_node(x)
            tree.add_edge(node, x, stub)
        placed.append(x)
    # exactness audit: the realized path metric must match the input
    for i in range(n):
        for j in range(i + 1, n):
            if tree.distance(i, j) != dist[i][j]:
                raise TreeError("tree does not realize the metric exactly")
    return tree


def _locate(tree, a, b, h):
    """Node at distance h from a on the path to b, splitting an edge if
    necessary (the split vertex is a new Steiner node)."""
    if h == 0:
        return a
    p = tree.path(a, b)
    acc = 0
    for x, y in zip(p, p[1:]):
        ln = tree.adj[x][y]
        if acc + ln == h:
            return y
        if acc + ln > h:
            s = tree.new_steiner()
            tree.remove_edge(x, y)
            tree.add_edge(x, s, h - acc)
            tree.add_edge(s, y, acc + ln - h)
            return s
        acc += ln
    raise TreeError("attachment point beyond the path")


def _relabel(tree, old, new):
    tree.add_node(new)
    for nb, ln in list(tree.adj[old].items()):
        tree.remove_edge(old, nb)
        tree.add_edge(new, nb, ln)
    del tree.adj[old]


def configuration_tree(config: building.Configuration):
    """Phylogenetic tree of a rank-2 configuration via pairwise distances."""
    if config.d != 2:
        raise TreeError("tree reconstruction is the d = 2 theory")
    n = config.n
    dist = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            dij = building.class_distance(config.points[i], config.points[j])
            dist[i][j] = dist[j][i] = dij
    return phylogenetic_tree(dist), dist


def tree_reduction_complex(tree: PhylogeneticTree, n):
    """Maximal simplices: one per connected component of the punctured
    tree, with vertices the labeled nodes in the component closure."""
    labeled = set(range(n))
    if n == 1:
        return [(0,)]
    simplices = []
    # direct edges between labeled nodes are their own punctured components
    for a, b, _ in tree.edges():
        if a in labeled and b in labeled:
            simplices.append(frozenset((a, b)))
    # components of the Steiner subgraph
    steiner = [v for v in tree.adj if v not in labeled]
    seen = set()
    for s in steiner:
        if s in seen:
            continue
        comp = set()
        stack = [s]
        seen.add(s)
        boundary = set()
        while stack:
            x = stack.pop()
            comp.add(x)
            for y in tree.adj[x]:
                if y in labeled:
                    boundary.add(y)
                elif y not in seen:
                    seen.add(y)
                    stack.append(y)
        simplices.append(frozenset(boundary))
    facets = [s for s in simplices if not any(s < t for t in simplices)]
    return sorted(tuple(sorted(f)) for f in facets)


def is_monomial_type_tree(tree: PhylogeneticTree, n):
    """Monomial type: every labeled node is a leaf or inside an edge."""
    return all(tree.degree(i) <= 2 for i in range(n))


def monomial_tree(tree: PhylogeneticTree, n):
    """Edge-labeled tree on n+1 nodes encoding a monomial-type fiber.

    One node per leaf of the tree, one per punctured component; each
    configuration element labels the edge between the parts it touches.
    Edges are undirected: each of the 2^n orientations corresponds to a
    choice of the two torus-fixed points on that line.
    """
    if not is_monomial_type_tree(tree, n):
        raise TreeError("configuration is not of monomial type")
    if n == 1:
        raise TreeError("monomial tree needs n > 1")
    labeled = set(range(n))
    comp_of = {}
    comps = []
    seen = set()
    for v in tree.adj:
        if v in labeled or v in seen:
            continue
        comp = set()
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.add(x)
            for y in tree.adj[x]:
                if y not in labeled and y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(frozenset(comp))
        for x in comp:
            comp_of[x] = len(comps) - 1
    # direct labeled-labeled edges are also punctured components
    direct = []
    for a, b, _ in tree.edges():
        if a in labeled and b in labeled:
            direct.append((a, b))
    node_names = []
    leaf_node = {}
    for i in range(n):
        if tree.degree(i) == 1:
            leaf_node[i] = len(node_names)
            node_names.append(("leaf", i))
    comp_node = {}
    for ci in range(len(comps)):
        comp_node[ci] = len(node_names)
        node_names.append(("comp", ci))
    direct_node = {}
    for k, (a, b) in enumerate(direct):
        direct_node[(a, b)] = len(node_names)
        node_names.append(("edge-comp", k))
    edges = []

    def incident_parts(v):
        parts = []
        for nb in tree.adj[v]:
            if nb in labeled:
                key = (min(v, nb), max(v, nb))
                for (a, b) in direct:
                    if (a, b) == key or (b, a) == key:
                        parts.append(direct_node[(a, b)])
            else:
                parts.append(comp_node[comp_of[nb]])
        return parts

    for i in range(n):
        parts = incident_parts(i)
        if tree.degree(i) == 1:
            edges.append((leaf_node[i], parts[0], i))
        else:
            if len(parts) != 2:
                raise TreeError("internal labeled node must touch two parts")
            edges.append((parts[0], parts[1], i))
    if len(node_names) != n + 1 or len(edges) != n:
        raise TreeError("monomial tree bookkeeping failed")
    return node_names, edges


def cross_check_fiber_d2(config: building.Configuration):
    """Symbolic fiber of a tree configuration against its tree predictions.

    The fiber must have n components, each a product of points with one
    line (a single Chow monomial), and the symbolic reduction complex must
    equal the punctured-tree complex.
    """
    if config.d != 2:
        raise TreeError("d = 2 required")
    n = config.n
    tree, dist = configuration_tree(config)
    predicted = tree_reduction_complex(tree, n)
    report = groebner.special_fiber_report(config)
    if report.component_count() != n:
        raise TreeError(f"expected {n} components, got {report.component_count()}")
    for md in report.multidegrees:
        if len(md) != 1:
            raise TreeError("component with a non-monomial class in the tree case")
    # order components by the factor they are primary for
    by_factor = {}
    for idx, f in enumerate(report.primary):
        if f is None:
            raise TreeError("secondary component in the tree case")
        by_factor[idx] = f
    relabeled = sorted(
        tuple(sorted(by_factor[i] for i in facet))
        for facet in report.complex_facets)
    if relabeled != list(predicted):
        raise TreeError(
            f"reduction complexes disagree: symbolic {relabeled}, "
            f"tree {list(predicted)}")
    return {"tree": tree, "distances": dist, "report": report,
            "complex": predicted,
            "monomial_type": is_monomial_type_tree(tree, n)}
