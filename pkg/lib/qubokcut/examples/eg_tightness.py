"""
Show the penalty bounds failing just below their value on nonnegative
graphs, and surviving below it on signed ones.

Run as a script: prints one verify record per case.

"""
from qubokcut.analysis import verify_reformulation
from qubokcut.examples.tightness_graphs import (example1_graph,
                                                example2_graph,
                                                example3_graph,
                                                example4_graph)
from qubokcut.model import ONE_HOT, REDUCED
from qubokcut.penalty import penalty_tight_qubo, penalty_tight_rqubo


EPS = 0.1


def tightness_cases():
    """
    Return the cases as (label, graph, penalty vector, encoding) tuples.

    Each instance appears with its tight coefficients, and again with the
    coefficient of vertex 2 lowered to its bound minus EPS.

    """
    cases = []
    for graph, encoding in ((example1_graph(), ONE_HOT),
                            (example2_graph(), ONE_HOT),
                            (example3_graph(), REDUCED),
                            (example4_graph(), REDUCED)):
        if encoding == ONE_HOT:
            tight = penalty_tight_qubo(graph, 3, eps=EPS)
        else:
            tight = penalty_tight_rqubo(graph, eps=EPS)
        lowered = tight.with_coefficient(1, tight[1] - 2 * EPS)
        cases.append((graph.name + ' tight', graph, tight, encoding))
        cases.append((graph.name + ' lowered', graph, lowered, encoding))
    return cases


def main():
    for label, graph, c, encoding in tightness_cases():
        report = verify_reformulation(graph, 3, c, encoding=encoding,
                                      graph_id=label.replace(' ', '-'))
        print(report)


if __name__ == '__main__':
    main()
