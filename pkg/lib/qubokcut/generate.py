"""
Seeded random graph instances.

Every function here is a pure function of its arguments: the same seed always
gives the same graph.  Erdős–Rényi sampling is done by
:func:`networkx.gnp_random_graph`; all other random choices use a numpy
PCG64 :class:`numpy.random.Generator` seeded with the given integer.

"""
import networkx as nx
import numpy as np

from qubokcut import Graph, GraphError


#: Seeds are reduced modulo this before seeding numpy.
SEED_MODULUS = 2 ** 64


class EmptyEdgeSetError(GraphError):
    """Exception raised when an operation needs at least one edge."""
    pass


class WeightSetError(ValueError):
    """Exception raised when a set of weights to draw from is invalid."""
    pass


def rng(seed, *spawn_key):
    """
    Return the numpy random generator for a seed and optional sub-stream.

    Sub-streams (e.g. one per shot, or one per trial) are distinguished by
    their spawn key, so each is independent of how many others exist.

    Any integer is a valid seed: it is taken modulo 2**64, so a negative
    seed s gives the same stream as 2**64 + s.

    """
    sequence = np.random.SeedSequence(entropy=int(seed) % SEED_MODULUS,
                                      spawn_key=tuple(spawn_key))
    return np.random.Generator(np.random.PCG64(sequence))


def gen_erdos_renyi(n, p, seed, name=None):
    """
    Make a random G(n, p) graph with unit edge weights.

    Args:

    * n (int):
        Number of vertices (at least 1).
    * p (float):
        Probability, in [0, 1], that each vertex pair is an edge.
    * seed (int):
        Random seed, taken modulo :data:`SEED_MODULUS`.

    """
    if not 0 <= p <= 1:
        raise ValueError('edge probability {!r} is not in [0, 1].'.format(p))
    if n < 1:
        raise GraphError('invalid vertex count {!r}.'.format(n))
    nx_graph = nx.gnp_random_graph(n, p, seed=int(seed) % SEED_MODULUS)
    edges = sorted((min(a, b), max(a, b), 1.0) for a, b in nx_graph.edges())
    return Graph(n, edges, name=name)


def apply_heavy_edge(graph, weight, seed, name=None):
    """
    Return a copy of a graph with one randomly chosen edge reweighted.

    Args:

    * graph (:class:`qubokcut.Graph`):
        The source graph, which must have at least one edge.
    * weight (float):
        The new weight for the chosen edge.
    * seed (int):
        Random seed.

    """
    if graph.m == 0:
        raise EmptyEdgeSetError('graph "{}" has no edges to '
                                'reweight.'.format(graph.name or ''))
    chosen = int(rng(seed).integers(graph.m))
    weights = graph.weights
    weights[chosen] = weight
    return graph.with_weights(weights, name=name)


def randomize_signed_weights(graph, weight_set, seed, name=None):
    """
    Return a copy of a graph with every weight drawn from a set.

    Args:

    * graph (:class:`qubokcut.Graph`):
        The source graph.
    * weight_set (iterable of float):
        Nonzero weights to draw from, uniformly and independently per edge.
    * seed (int):
        Random seed.

    """
    choices = sorted(set(float(w) for w in weight_set))
    if not choices:
        raise WeightSetError('the weight set is empty.')
    if 0 in choices:
        raise WeightSetError('the weight set {} contains zero.'.format(
            choices))
    picks = rng(seed).choice(len(choices), size=graph.m)
    return graph.with_weights([choices[i] for i in picks], name=name)
