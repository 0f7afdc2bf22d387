"""
Small max 3-cut instances that show how tight the penalty bounds are.

Each function returns a :class:`qubokcut.Graph`.  The docstrings give the
tight coefficients, the max 3-cut optimum, and what happens when one
coefficient drops just below its bound.

"""
from qubokcut.shorts import og


def example1_graph():
    """
    K4 with unit weights.  Max 3-cut optimum 5.

    With c_v = d+/3 + eps = 1 + eps the QUBO optima are all max 3-cuts.
    Lowering c_2 to 1 - eps makes the optimum leave vertex 2 unassigned,
    with value 5 + eps.

    """
    return og(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
              name='example1')


def example2_graph():
    """
    K4 with w_12 = -1, all other weights 1.  Max 3-cut optimum 5.

    The tight QUBO coefficients are c_1 = c_2 = 1.5 + eps and
    c_3 = c_4 = 1 + eps.  Lowering c_2 a little below 1.5 keeps every QUBO
    optimum feasible, so the bound is not tight for signed weights.

    """
    return og(4, [(1, 2, -1), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
              name='example2')


def example3_graph():
    """
    Five vertices, six unit edges.  Max 3-cut optimum 6.

    The tight R-QUBO coefficients are c_2 = c_3 = 3 + eps and 2 + eps at
    the other vertices.  Lowering c_2 to 3 - eps makes the optimum put
    vertex 2 in two partitions at once, with value 6 + eps.

    """
    return og(5, [(1, 2), (1, 3), (2, 4), (2, 5), (3, 4), (3, 5)],
              name='example3')


def example4_graph():
    """
    The :func:`example3_graph` edges, with w_12 = -1.  Max 3-cut optimum 5.

    The tight R-QUBO coefficients are c_1 = c_3 = 3 + eps, c_2 = 4 + eps and
    c_4 = c_5 = 2 + eps.  Lowering c_2 a little below 4 keeps every R-QUBO
    optimum feasible.

    """
    return og(5, [(1, 2, -1), (1, 3), (2, 4), (2, 5), (3, 4), (3, 5)],
              name='example4')


#: All the instances, by name.
TIGHTNESS_GRAPHS = {
    'example1': example1_graph,
    'example2': example2_graph,
    'example3': example3_graph,
    'example4': example4_graph,
}
