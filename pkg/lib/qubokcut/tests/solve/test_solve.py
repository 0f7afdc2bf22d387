import unittest as tests

import io
import itertools

import numpy as np

from qubokcut import Graph
from qubokcut.generate import gen_erdos_renyi, randomize_signed_weights
from qubokcut.examples.tightness_graphs import (example1_graph,
                                                example2_graph,
                                                example3_graph,
                                                example4_graph)
from qubokcut.model import (MINIMIZE, QuboModel, build_qubo, build_rqubo,
                            decode)
from qubokcut.penalty import penalty_tight_qubo, penalty_tight_rqubo
from qubokcut.shorts import oc
from qubokcut.solve import (AnnealParams, AnnealParamsError, CapacityError,
                            anneal_schedule, solve_anneal, solve_exhaustive,
                            solve_maxkcut_oracle)


TOL = 1e-9


class _BaseTest_Exhaustive(tests.TestCase):
    def solve(self, model):
        result = solve_exhaustive(model)
        self.assertEqual(result.num_optima, len(result.optima))
        return result, [decode(model, bits) for bits in result.optima]


class Test_solve_exhaustive__qubo(_BaseTest_Exhaustive):
    def test_example1_tight(self):
        g = example1_graph()
        result, optima = self.solve(build_qubo(g, 3, penalty_tight_qubo(
            g, 3, eps=0.1)))
        self.assertAlmostEqual(result.optimum, 5.0, delta=TOL)
        self.assertEqual(result.states_visited, 2 ** 12)
        # Six pairings times 3! labellings.
        self.assertEqual(result.num_optima, 36)
        self.assertTrue(all(a.feasible for a in optima))

    def test_example1_lowered(self):
        g = example1_graph()
        model = build_qubo(g, 3, oc(1.1, 0.9, 1.1, 1.1))
        result, optima = self.solve(model)
        self.assertAlmostEqual(result.optimum, 5.1, delta=TOL)
        for a in optima:
            self.assertEqual(a.bits[1].tolist(), [0, 0, 0])

    def test_example2_tight(self):
        g = example2_graph()
        c = penalty_tight_qubo(g, 3, eps=0.1)
        result, optima = self.solve(build_qubo(g, 3, c))
        self.assertAlmostEqual(result.optimum, 5.0, delta=TOL)
        self.assertTrue(all(a.feasible for a in optima))

    def test_example2_below_tight(self):
        g = example2_graph()
        result, optima = self.solve(build_qubo(g, 3, oc(1.6, 1.4, 1.1, 1.1)))
        self.assertAlmostEqual(result.optimum, 5.0, delta=TOL)
        self.assertTrue(all(a.feasible for a in optima))


class Test_solve_exhaustive__rqubo(_BaseTest_Exhaustive):
    def test_example3_tight(self):
        g = example3_graph()
        result, optima = self.solve(build_rqubo(g, 3, penalty_tight_rqubo(
            g, eps=0.1)))
        self.assertAlmostEqual(result.optimum, 6.0, delta=TOL)
        self.assertEqual(result.states_visited, 2 ** 10)
        self.assertTrue(all(a.feasible for a in optima))

    def test_example3_lowered(self):
        g = example3_graph()
        model = build_rqubo(g, 3, oc(2.1, 2.9, 3.1, 2.1, 2.1))
        result, optima = self.solve(model)
        self.assertAlmostEqual(result.optimum, 6.1, delta=TOL)
        self.assertTrue(any(a.row_sums[1] == 2 for a in optima))

    def test_example4_tight(self):
        g = example4_graph()
        result, optima = self.solve(build_rqubo(g, 3, penalty_tight_rqubo(
            g, eps=0.1)))
        self.assertAlmostEqual(result.optimum, 5.0, delta=TOL)
        self.assertTrue(all(a.feasible for a in optima))

    def test_example4_below_tight(self):
        g = example4_graph()
        result, optima = self.solve(build_rqubo(g, 3, oc(3.1, 3.9, 3.1,
                                                         2.1, 2.1)))
        self.assertAlmostEqual(result.optimum, 5.0, delta=TOL)
        self.assertTrue(all(a.feasible for a in optima))


class Test_solve_exhaustive(tests.TestCase):
    def test_minimise(self):
        model = QuboModel(2, {0: 1.0, 1: -2.0}, sense=MINIMIZE)
        result = solve_exhaustive(model)
        self.assertEqual(result.optimum, -2.0)
        self.assertEqual(result.optima, ((0, 1),))

    def test_ties_in_order(self):
        result = solve_exhaustive(QuboModel(2))
        self.assertEqual(result.optimum, 0.0)
        self.assertEqual(result.optima, ((0, 0), (1, 0), (0, 1), (1, 1)))

    def test_max_optima(self):
        result = solve_exhaustive(QuboModel(3), max_optima=2)
        self.assertEqual(result.num_optima, 8)
        self.assertEqual(len(result.optima), 2)

    def test_tolerance(self):
        model = QuboModel(1, {0: 1e-12})
        self.assertEqual(solve_exhaustive(model).num_optima, 2)
        self.assertEqual(solve_exhaustive(model, tol=0).num_optima, 1)

    def test_workers(self):
        g = example2_graph()
        model = build_qubo(g, 3, penalty_tight_qubo(g, 3))
        self.assertEqual(solve_exhaustive(model, workers=3),
                         solve_exhaustive(model))

    def test_capacity(self):
        with self.assertRaises(CapacityError):
            solve_exhaustive(QuboModel(31), cap_vars=40)
        with self.assertRaises(CapacityError):
            solve_exhaustive(QuboModel(6), cap_vars=5)

    def test_bad_tol(self):
        with self.assertRaises(ValueError):
            solve_exhaustive(QuboModel(2), tol=-1)


class Test_solve_maxkcut_oracle(tests.TestCase):
    def test_k4_three(self):
        result = solve_maxkcut_oracle(example1_graph(), 3)
        self.assertEqual(result.optimum, 5.0)
        self.assertEqual(len(result.partitions), 36)

    def test_k4_canonical(self):
        result = solve_maxkcut_oracle(example1_graph(), 3, canonical=True)
        self.assertEqual(len(result.partitions), 6)
        self.assertTrue(all(p[0] == 0 for p in result.partitions))

    def test_k4_bisection(self):
        result = solve_maxkcut_oracle(example1_graph(), 2, canonical=True)
        self.assertEqual(result.optimum, 4.0)
        self.assertEqual(sorted(result.partitions),
                         [(0, 0, 1, 1), (0, 1, 0, 1), (0, 1, 1, 0)])

    def test_signed(self):
        self.assertEqual(solve_maxkcut_oracle(example4_graph(), 3).optimum,
                         5.0)

    def test_all_negative(self):
        g = Graph(3, [(0, 1, -1.0), (1, 2, -2.0)])
        result = solve_maxkcut_oracle(g, 2, canonical=True)
        self.assertEqual(result.optimum, 0.0)
        self.assertEqual(result.partitions, ((0, 0, 0),))

    def test_empty_graph(self):
        result = solve_maxkcut_oracle(Graph(2), 2)
        self.assertEqual(result.optimum, 0.0)
        self.assertEqual(len(result.partitions), 4)

    def test_workers(self):
        g = example3_graph()
        self.assertEqual(solve_maxkcut_oracle(g, 3, workers=4),
                         solve_maxkcut_oracle(g, 3))

    def test_capacity(self):
        with self.assertRaises(CapacityError):
            solve_maxkcut_oracle(Graph(10), 3, cap=100)

    def test_bad_k(self):
        with self.assertRaises(ValueError):
            solve_maxkcut_oracle(Graph(2), 1)


class Test_solve_maxkcut_oracle__bipartitions(tests.TestCase):
    # Max 2-cut against a plain enumeration of vertex subsets.
    def max_bisection_cut(self, graph):
        best = 0.0
        for sides in itertools.product((0, 1), repeat=graph.n):
            cut = sum(w for u, v, w in graph.edges if sides[u] != sides[v])
            best = max(best, cut)
        return best

    def test_random_graphs(self):
        for seed in range(50):
            graph = gen_erdos_renyi(7, 0.5, seed)
            graph = randomize_signed_weights(graph, (-2, -1, 1, 2, 3), seed)
            self.assertAlmostEqual(solve_maxkcut_oracle(graph, 2).optimum,
                                   self.max_bisection_cut(graph),
                                   msg='seed={}'.format(seed))


class Test_AnnealParams(tests.TestCase):
    def test_defaults(self):
        params = AnnealParams()
        self.assertEqual(params.sweeps, 100)
        self.assertIsNone(params.t_start)

    def test_from_config(self):
        source = io.StringIO('sweeps = 20\nt_start = 2.0\n# comment\n')
        params = AnnealParams.from_config(source)
        self.assertEqual(params, AnnealParams(20, t_start=2.0))

    def test_from_config__overrides(self):
        source = io.StringIO('sweeps = 20\ncooling = 0.9\n')
        params = AnnealParams.from_config(source, sweeps=30, t_end=None)
        self.assertEqual(params, AnnealParams(30, cooling=0.9))

    def test_from_config__unknown(self):
        with self.assertRaises(AnnealParamsError):
            AnnealParams.from_config(io.StringIO('steps = 3\n'))

    def test_bad_values(self):
        for kwargs in (dict(sweeps=0), dict(cooling=1.0),
                       dict(t_start=-1.0), dict(t_start=1.0, t_end=2.0)):
            with self.assertRaises(AnnealParamsError):
                AnnealParams(**kwargs)

    def test_resolve(self):
        model = QuboModel(2, {0: 1.0}, {(0, 1): -2.2})
        params = AnnealParams(sweeps=11).resolve(model)
        self.assertAlmostEqual(params.t_start, 2.2)
        self.assertAlmostEqual(params.t_end, 2.2e-3)
        self.assertAlmostEqual(params.cooling, 1e-3 ** 0.1)

    def test_resolve__zero_model(self):
        params = AnnealParams(sweeps=1).resolve(QuboModel(2))
        self.assertEqual((params.t_start, params.cooling), (1.0, 0.5))


class Test_anneal_schedule(tests.TestCase):
    def test_geometric(self):
        model = QuboModel(1, {0: 4.0})
        temps = anneal_schedule(model, AnnealParams(sweeps=5))
        self.assertEqual(len(temps), 5)
        self.assertAlmostEqual(temps[0], 4.0)
        self.assertAlmostEqual(temps[-1], 4e-3)
        self.assertTrue(np.all(np.diff(temps) < 0))

    def test_floor(self):
        model = QuboModel(1, {0: 1.0})
        params = AnnealParams(sweeps=10, t_start=1.0, t_end=0.5, cooling=0.5)
        temps = anneal_schedule(model, params)
        self.assertEqual(temps.min(), 0.5)


class Test_solve_anneal(tests.TestCase):
    def setUp(self):
        self.graph = example1_graph()
        self.model = build_qubo(self.graph, 3, penalty_tight_qubo(
            self.graph, 3, eps=0.1))
        self.params = AnnealParams(sweeps=50)

    def test_deterministic(self):
        s1 = solve_anneal(self.model, self.params, shots=20, seed=4)
        s2 = solve_anneal(self.model, self.params, shots=20, seed=4)
        self.assertEqual(s1, s2)

    def test_seed_matters(self):
        s1 = solve_anneal(self.model, self.params, shots=20, seed=4)
        s2 = solve_anneal(self.model, self.params, shots=20, seed=5)
        self.assertNotEqual(s1, s2)

    def test_workers(self):
        s1 = solve_anneal(self.model, self.params, shots=300, seed=1)
        s2 = solve_anneal(self.model, self.params, shots=300, seed=1,
                          workers=4)
        self.assertEqual(s1, s2)

    def test_samples(self):
        samples = solve_anneal(self.model, self.params, shots=50, seed=0,
                               graph=self.graph)
        self.assertEqual(len(samples), 50)
        for sample in samples:
            self.assertEqual(len(sample.bits), 12)
            self.assertAlmostEqual(sample.value,
                                   self.model.evaluate(sample.bits))
            if sample.feasible:
                self.assertAlmostEqual(sample.cut, sample.value, delta=TOL)
                self.assertLessEqual(sample.cut, 5.0)
            else:
                self.assertIsNone(sample.cut)
        self.assertTrue(any(s.feasible and abs(s.cut - 5.0) < TOL
                            for s in samples))

    def test_values_bounded_by_exhaustive(self):
        # Feasible or not, no sample beats the global optimum.
        signed = randomize_signed_weights(gen_erdos_renyi(5, 0.7, 2),
                                          (-2, -1, 1, 2), 3)
        models = [self.model,
                  build_qubo(self.graph, 3, oc(1.1, 0.9, 1.1, 1.1)),
                  build_rqubo(example3_graph(), 3,
                              oc(2.1, 2.9, 3.1, 2.1, 2.1)),
                  build_qubo(signed, 2, oc(0.5, 0.5, 0.5, 0.5, 0.5)),
                  build_rqubo(signed, 3, oc(0.1, 0.1, 0.1, 0.1, 0.1))]
        for model in models:
            optimum = solve_exhaustive(model).optimum
            samples = solve_anneal(model, AnnealParams(sweeps=20),
                                   shots=200, seed=6)
            self.assertLessEqual(max(s.value for s in samples),
                                 optimum + TOL)

    def test_negative_seed(self):
        self.assertEqual(
            solve_anneal(self.model, self.params, shots=5, seed=-4),
            solve_anneal(self.model, self.params, shots=5,
                         seed=2 ** 64 - 4))

    def test_no_encoding(self):
        model = QuboModel(2, {0: 1.0, 1: 1.0})
        samples = solve_anneal(model, shots=3)
        self.assertTrue(all(s.feasible and s.cut == s.value
                            for s in samples))

    def test_minimise(self):
        model = QuboModel(3, {0: 1.0, 1: -1.0, 2: 1.0}, sense=MINIMIZE)
        samples = solve_anneal(model, AnnealParams(sweeps=30), shots=10)
        self.assertIn((0, 1, 0), [s.bits for s in samples])

    def test_bad_shots(self):
        with self.assertRaises(ValueError):
            solve_anneal(self.model, shots=0)


if __name__ == '__main__':
    tests.main()
