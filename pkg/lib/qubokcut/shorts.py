"""Convenient shorthands for qubokcut object constructors."""
import qubokcut as qkc
from qubokcut.model import Assignment, ONE_HOT
from qubokcut.penalty import PenaltyVector


def og(n, ee=None, name=None):
    """
    Shortform :class:`qubokcut.Graph` constructor.

    Args:

    * n (int):
        vertex count

    Kwargs:

    * ee (iterable of (u, v) or (u, v, w)):
        edges, with 1-based vertices (unit weight if none given)

    """
    edges = []
    for edge in ee or []:
        u, v = edge[:2]
        w = edge[2] if len(edge) > 2 else 1.0
        edges.append((u - 1, v - 1, w))
    return qkc.Graph(n, edges, name=name)


def oc(*cc):
    """
    Shortform 'custom' :class:`qubokcut.penalty.PenaltyVector` constructor.

    Args:

    * cc (floats):
        the coefficients of vertices 1, 2, ...

    """
    return PenaltyVector(cc)


def oa(labels, k, kind=ONE_HOT):
    """
    Shortform :class:`qubokcut.model.Assignment` constructor.

    Args:

    * labels (iterable of int):
        1-based partition of each vertex
    * k (int):
        number of partitions

    Kwargs:

    * kind (string):
        encoding

    """
    return Assignment.from_partitions([label - 1 for label in labels], k,
                                      kind=kind)
