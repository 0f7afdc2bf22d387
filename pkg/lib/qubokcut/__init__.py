"""
QUBO and reduced-QUBO reformulations of the weighted max k-cut problem.

The purpose of this is to build penalty-based unconstrained binary models of
max k-cut with closed-form penalty coefficients, to solve them exactly or
heuristically on small instances, and to check that their optima really are
max k-cut optima.

For example::

    import qubokcut.edgelist as qel
    from qubokcut.penalty import penalty_tight_qubo
    from qubokcut.model import build_qubo
    from qubokcut.solve import solve_exhaustive

    graph = qel.read('k4.txt')
    c = penalty_tight_qubo(graph, k=3, eps=0.1)
    model = build_qubo(graph, 3, c)
    result = solve_exhaustive(model)
    print(result.optimum)

This top-level module holds the graph representation.  Vertex numbers are
0-based here: the 1-based numbering used in edge-list files and in the
:mod:`qubokcut.shorts` constructors is converted on input.

Graphs are immutable once made: operations that "change" a graph, such as
those in :mod:`qubokcut.generate`, return a new one.

"""
import networkx as nx
import numpy as np


__version__ = '0.1.x'


class GraphError(ValueError):
    """Exception raised when graph content is invalid."""
    pass


def _readonly(array):
    array.flags.writeable = False
    return array


class WeightedDegrees:
    """
    Positive and negative weighted degrees of every vertex of a graph.

    For a vertex v, `d_plus[v]` is the sum of the positive weights of the
    edges at v, and `d_minus[v]` the sum of the negative ones.

    """
    def __init__(self, d_plus, d_minus):
        #: Per-vertex sums of positive incident weights (all >= 0).
        self.d_plus = _readonly(np.array(d_plus, dtype=float))

        #: Per-vertex sums of negative incident weights (all <= 0).
        self.d_minus = _readonly(np.array(d_minus, dtype=float))

        if self.d_plus.shape != self.d_minus.shape:
            raise GraphError('d_plus has {} entries, but d_minus has '
                             '{}.'.format(len(self.d_plus),
                                          len(self.d_minus)))

    @property
    def total(self):
        """Total incident weight of each vertex."""
        return self.d_plus + self.d_minus

    def __len__(self):
        return len(self.d_plus)

    def __getitem__(self, vertex):
        """Return the pair (d_plus, d_minus) for a 0-based vertex."""
        return float(self.d_plus[vertex]), float(self.d_minus[vertex])

    def __eq__(self, other):
        return (isinstance(other, WeightedDegrees) and
                np.array_equal(self.d_plus, other.d_plus) and
                np.array_equal(self.d_minus, other.d_minus))

    def __repr__(self):
        return 'WeightedDegrees(d_plus={}, d_minus={})'.format(
            self.d_plus.tolist(), self.d_minus.tolist())


class Graph:
    """
    An undirected graph with signed, nonzero edge weights.

    Edges are held as (u, v, w) triples with 0-based vertices and u < v, in
    the order they were given.

    """
    def __init__(self, n, edges=None, name=None, dropped_edges=0):
        """
        Args:

        * n (int):
            The number of vertices (at least 1).

        Kwargs:

        * edges (iterable of (int, int, float)):
            Edges as (u, v, w) with 0-based vertex numbers.  No self-loops,
            no repeated vertex pairs, and w must not be zero.
        * name (string):
            An identifier, used in reports and CSV output.
        * dropped_edges (int):
            How many zero-weight edges were discarded when this was read.

        """
        if isinstance(n, (bool, np.bool_)) or int(n) != n or n < 1:
            raise GraphError('invalid vertex count {!r}: must be a '
                             'positive integer.'.format(n))
        n = int(n)
        seen = set()
        clean_edges = []
        for u, v, w in edges or []:
            u, v, w = _check_edge(n, u, v, w)
            if (u, v) in seen:
                raise GraphError('duplicate edge {{{}, {}}}.'.format(u, v))
            seen.add((u, v))
            clean_edges.append((u, v, w))

        self._n = n
        self._edges = tuple(clean_edges)
        self._name = name
        self._dropped_edges = int(dropped_edges)
        self._degrees = None

    @property
    def n(self):
        """Number of vertices."""
        return self._n

    @property
    def m(self):
        """Number of edges."""
        return len(self._edges)

    @property
    def edges(self):
        """Tuple of (u, v, w) edges, 0-based, with u < v."""
        return self._edges

    @property
    def name(self):
        """Identifier of the graph, if any."""
        return self._name

    @property
    def dropped_edges(self):
        """Count of zero-weight edges discarded on input."""
        return self._dropped_edges

    @property
    def endpoints(self):
        """The edge endpoints, as a pair of integer arrays (us, vs)."""
        us = np.array([u for u, _, _ in self._edges], dtype=int)
        vs = np.array([v for _, v, _ in self._edges], dtype=int)
        return us, vs

    @property
    def weights(self):
        """The edge weights, as a float array in edge order."""
        return np.array([w for _, _, w in self._edges], dtype=float)

    @property
    def positive_edges(self):
        """The edges with positive weight (E+)."""
        return tuple(edge for edge in self._edges if edge[2] > 0)

    @property
    def negative_edges(self):
        """The edges with negative weight (E-)."""
        return tuple(edge for edge in self._edges if edge[2] < 0)

    @property
    def total_weight(self):
        """Sum of all edge weights."""
        return float(sum(w for _, _, w in self._edges))

    @property
    def total_abs_weight(self):
        """Sum of the absolute values of all edge weights."""
        return float(sum(abs(w) for _, _, w in self._edges))

    @property
    def degrees(self):
        """The :class:`WeightedDegrees` of this graph (computed once)."""
        if self._degrees is None:
            self._degrees = weighted_degrees(self)
        return self._degrees

    @property
    def max_degree(self):
        """The largest (unweighted) vertex degree."""
        counts = np.zeros(self._n, dtype=int)
        us, vs = self.endpoints
        np.add.at(counts, us, 1)
        np.add.at(counts, vs, 1)
        return int(counts.max())

    def with_weights(self, weights, name=None):
        """
        Return a copy of this graph with new edge weights.

        Args:

        * weights (iterable of float):
            One weight per edge, in edge order.

        Kwargs:

        * name (string):
            Name for the result.  Defaults to the name of this graph.

        """
        weights = list(weights)
        if len(weights) != self.m:
            raise GraphError('{} weights given for a graph with {} '
                             'edges.'.format(len(weights), self.m))
        edges = [(u, v, w) for (u, v, _), w in zip(self._edges, weights)]
        return Graph(self._n, edges,
                     name=self._name if name is None else name,
                     dropped_edges=self._dropped_edges)

    def to_networkx(self):
        """Return an equivalent :class:`networkx.Graph`."""
        nx_graph = nx.Graph(name=self._name or '')
        nx_graph.add_nodes_from(range(self._n))
        nx_graph.add_weighted_edges_from(self._edges)
        return nx_graph

    @classmethod
    def from_networkx(cls, nx_graph, name=None, default_weight=1.0):
        """
        Make a graph from a :class:`networkx.Graph`.

        Nodes are numbered in sorted order.  Edge weights come from the
        'weight' attribute, or `default_weight` where there is none.
        Zero-weight edges are dropped.

        """
        nodes = sorted(nx_graph.nodes())
        index = {node: i_node for i_node, node in enumerate(nodes)}
        edges = []
        dropped = 0
        for a, b, data in nx_graph.edges(data=True):
            w = float(data.get('weight', default_weight))
            if w == 0:
                dropped += 1
                continue
            edges.append((index[a], index[b], w))
        return cls(len(nodes), edges, name=name, dropped_edges=dropped)

    def __eq__(self, other):
        return (isinstance(other, Graph) and
                other.n == self.n and
                sorted(other.edges) == sorted(self.edges))

    def __ne__(self, other):
        return not (self == other)

    def __str__(self):
        return '<Graph "{}": n={}, m={}>'.format(self._name or '',
                                                 self._n, self.m)

    def __repr__(self):
        repstr = 'Graph({}, edges={!r}'.format(self._n, list(self._edges))
        if self._name:
            repstr += ', name={!r}'.format(self._name)
        return repstr + ')'


def _check_edge(n, u, v, w):
    # Validate one 0-based edge and return it normalised as u < v.
    for vertex in (u, v):
        if int(vertex) != vertex or not 0 <= vertex < n:
            raise GraphError('vertex {!r} is out of range for a graph with '
                             '{} vertices.'.format(vertex, n))
    u, v, w = int(u), int(v), float(w)
    if u == v:
        raise GraphError('self-loop at vertex {}.'.format(u))
    if w == 0 or not np.isfinite(w):
        raise GraphError('invalid weight {!r} on edge {{{}, {}}}: weights '
                         'must be finite and nonzero.'.format(w, u, v))
    if u > v:
        u, v = v, u
    return u, v, w


def weighted_degrees(graph):
    """
    Compute the positive and negative weighted degrees of a graph.

    Args:

    * graph (:class:`Graph`):
        The graph to examine.

    Returns:
        A :class:`WeightedDegrees`.

    """
    d_plus = np.zeros(graph.n)
    d_minus = np.zeros(graph.n)
    us, vs = graph.endpoints
    weights = graph.weights
    positive = weights > 0
    for ends in (us, vs):
        np.add.at(d_plus, ends[positive], weights[positive])
        np.add.at(d_minus, ends[~positive], weights[~positive])
    return WeightedDegrees(d_plus, d_minus)
