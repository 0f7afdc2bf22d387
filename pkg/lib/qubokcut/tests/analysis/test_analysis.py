import unittest as tests

import io
import os
import shutil
import tempfile

import mock
import numpy as np

from qubokcut import Graph
import qubokcut.analysis as qan
from qubokcut.analysis import (ScanConfig, UndefinedRatioError,
                               approximation_ratio, benchmark_sweep,
                               conjecture_scan, dump_counterexample,
                               feasible_subspace_ratio, heavy_edge_graphs,
                               reproducer_text, sample_feasibility_fraction,
                               sample_stats, scan_instance,
                               verify_reformulation)
from qubokcut.edgelist import read
from qubokcut.examples.tightness_graphs import (example1_graph,
                                                example2_graph,
                                                example3_graph,
                                                example4_graph)
from qubokcut.formats import BENCHMARK_FIELDS, format_bits, parse_penalty
from qubokcut.model import ONE_HOT, REDUCED, ModelError
from qubokcut.penalty import (TIGHT_QUBO, penalty_tight_qubo,
                              penalty_tight_rqubo)
from qubokcut.shorts import oa, oc
from qubokcut.solve import AnnealParams, Sample


class Test_verify_reformulation(tests.TestCase):
    def test_example1_tight(self):
        g = example1_graph()
        report = verify_reformulation(g, 3, penalty_tight_qubo(g, 3, eps=0.1))
        self.assertTrue(report.valid)
        self.assertEqual(report.oracle_opt, 5.0)
        self.assertAlmostEqual(report.qubo_opt, 5.0)
        self.assertEqual(report.graph_id, 'example1')
        self.assertEqual(report.scheme, TIGHT_QUBO)
        self.assertIsNone(report.witness)
        self.assertEqual(report.num_optima, 36)

    def test_example1_lowered(self):
        report = verify_reformulation(example1_graph(), 3,
                                      [1.1, 0.9, 1.1, 1.1])
        self.assertFalse(report.valid)
        self.assertAlmostEqual(report.qubo_opt, 5.1)
        self.assertGreater(report.infeasible_optima_count, 0)
        self.assertEqual(report.witness[3:6], (0, 0, 0))
        self.assertEqual(report.scheme, 'custom')

    def test_example2_below_tight(self):
        report = verify_reformulation(example2_graph(), 3,
                                      oc(1.6, 1.4, 1.1, 1.1))
        self.assertTrue(report.valid)

    def test_example3(self):
        g = example3_graph()
        report = verify_reformulation(g, 3, penalty_tight_rqubo(g, eps=0.1),
                                      encoding=REDUCED)
        self.assertTrue(report.valid)
        self.assertEqual(report.oracle_opt, 6.0)

    def test_example3_lowered(self):
        report = verify_reformulation(example3_graph(), 3,
                                      oc(2.1, 2.9, 3.1, 2.1, 2.1),
                                      encoding=REDUCED, graph_id='low')
        self.assertFalse(report.valid)
        self.assertEqual(report.graph_id, 'low')
        self.assertEqual(report.witness[2:4], (1, 1))

    def test_example4(self):
        g = example4_graph()
        for c in (penalty_tight_rqubo(g, eps=0.1),
                  oc(3.1, 3.9, 3.1, 2.1, 2.1)):
            report = verify_reformulation(g, 3, c, encoding=REDUCED)
            self.assertTrue(report.valid)
            self.assertEqual(report.qubo_opt, 5.0)

    def test_unknown_encoding(self):
        with self.assertRaises(ModelError):
            verify_reformulation(example1_graph(), 3, oc(1, 1, 1, 1),
                                 encoding='binary')


class Test_tight_scans(tests.TestCase):
    # The tight bounds hold on every signed instance.
    def check_arm(self, which, seed):
        config = ScanConfig(which, trials=100, n_max=5, k_set=(2, 3, 4),
                            weight_set=(-3, -2, -1, 1, 2, 3), seed=seed)
        reports = conjecture_scan(config, workers=4)
        self.assertEqual(len(reports), 100)
        self.assertEqual([str(r) for r in reports if not r.valid], [])

    def test_qubo(self):
        self.check_arm('theorem1', 1)

    def test_rqubo(self):
        self.check_arm('theorem2', 2)


class Test_conjecture_scan(tests.TestCase):
    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def check_arm(self, which, seed):
        reports = conjecture_scan(ScanConfig(which, seed=seed),
                                  dump_dir=self.temp_dir)
        self.assertEqual(len(reports), 500)
        self.assertEqual([str(r) for r in reports if not r.valid], [])

    def test_conjecture1(self):
        self.check_arm('conjecture1', 11)

    def test_conjecture2(self):
        self.check_arm('conjecture2', 12)

    def test_workers(self):
        config = ScanConfig('conjecture2', trials=20, seed=3)
        self.assertEqual([str(r) for r in conjecture_scan(config)],
                         [str(r) for r in conjecture_scan(config, workers=3)])

    def test_positive_weights(self):
        config = ScanConfig('conjecture1', trials=5, weight_set=(1,))
        with mock.patch('qubokcut.analysis.logger') as mock_logger:
            reports = conjecture_scan(config)
        self.assertTrue(all(report.valid for report in reports))
        self.assertIn('no negative weights',
                      mock_logger.info.call_args_list[0][0][0])

    def test_counterexample_logged(self):
        bad = verify_reformulation(example1_graph(), 3, oc(1.1, 0.9, 1.1,
                                                           1.1))
        config = ScanConfig('theorem1', trials=2)
        with mock.patch('qubokcut.analysis.verify_reformulation',
                        return_value=bad), \
                mock.patch('qubokcut.analysis.logger') as mock_logger:
            reports = conjecture_scan(config)
        self.assertEqual(len(reports), 2)
        self.assertEqual(mock_logger.warning.call_count, 2)
        # The warning carries the whole reproducer, with no dump directory.
        args = mock_logger.warning.call_args[0]
        self.assertEqual(args[-1], reproducer_text(bad))
        text = args[-1]
        self.assertTrue(text.startswith('# invalid '))
        self.assertIn('\n4 6\n', text)
        self.assertIn('\n2 0.9\n', text)
        self.assertIn('\n' + format_bits(bad.witness) + '\n', text)


class Test_ScanConfig(tests.TestCase):
    def test_arms(self):
        config = ScanConfig('conjecture2')
        self.assertEqual((config.scheme, config.encoding),
                         ('conjectured_rqubo', REDUCED))

    def test_bad(self):
        for kwargs in (dict(which='conjecture3'), dict(trials=0),
                       dict(n_min=4, n_max=3), dict(k_set=(1, 2)),
                       dict(k_set=())):
            with self.assertRaises(ValueError):
                ScanConfig(**kwargs)


class Test_scan_instance(tests.TestCase):
    def test_ranges(self):
        config = ScanConfig('conjecture1', n_max=5, k_set=(2, 3), seed=5)
        for trial in range(30):
            graph, k = scan_instance(config, trial)
            self.assertTrue(2 <= graph.n <= 5)
            self.assertIn(k, (2, 3))
            self.assertTrue(all(w in (-2, -1, 1, 2)
                                for _, _, w in graph.edges))
            self.assertEqual(graph.name, 'conjecture1-{}'.format(trial))

    def test_repeatable(self):
        config = ScanConfig('theorem2', seed=5)
        self.assertEqual(scan_instance(config, 7), scan_instance(config, 7))


class Test_dump_counterexample(tests.TestCase):
    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def test_files(self):
        g = example1_graph()
        report = verify_reformulation(g, 3, oc(1.1, 0.9, 1.1, 1.1))
        target = os.path.join(self.temp_dir, 'ce')
        paths = dump_counterexample(report, target)
        self.assertEqual([os.path.basename(path) for path in paths],
                         ['example1.edges', 'example1.penalty',
                          'example1.witness'])
        self.assertEqual(read(paths[0]), g)
        with open(paths[1]) as penalty_file:
            self.assertEqual(list(parse_penalty(penalty_file.read())),
                             [1.1, 0.9, 1.1, 1.1])
        with open(paths[2]) as witness_file:
            lines = witness_file.read().splitlines()
        self.assertTrue(lines[0].startswith('# invalid oracle_opt=5 '))
        self.assertEqual(tuple(int(bit) for bit in lines[1]), report.witness)

    def test_path_graph_id(self):
        report = verify_reformulation(example1_graph(), 3,
                                      oc(1.1, 0.9, 1.1, 1.1),
                                      graph_id='/some/dir/my graph.txt')
        paths = dump_counterexample(report, self.temp_dir)
        self.assertEqual(paths[0], os.path.join(self.temp_dir,
                                                'my_graph.txt.edges'))

    def test_no_instance(self):
        report = qan.VerifyReport('x', 2, ONE_HOT, 'custom', 1.0, 2.0, 1)
        with self.assertRaises(ValueError):
            dump_counterexample(report, self.temp_dir)


class Test_approximation_ratio(tests.TestCase):
    def setUp(self):
        self.g = example1_graph()

    def test_optimal(self):
        self.assertEqual(approximation_ratio(self.g, 3, oa([1, 2, 3, 1], 3),
                                             5.0), 1.0)

    def test_suboptimal(self):
        self.assertEqual(approximation_ratio(self.g, 3, oa([1, 1, 2, 2], 3),
                                             5.0), 0.8)

    def test_reduced(self):
        a = oa([3, 2, 3, 1], 3, kind=REDUCED)
        self.assertEqual(approximation_ratio(self.g, 3, a, 5.0), 1.0)

    def test_undefined(self):
        for opt in (0.0, -1.0):
            with self.assertRaises(UndefinedRatioError):
                approximation_ratio(self.g, 3, oa([1, 2, 3, 1], 3), opt)

    def test_wrong_k(self):
        with self.assertRaises(ModelError):
            approximation_ratio(self.g, 2, oa([1, 2, 3, 1], 3), 5.0)


class Test_feasible_subspace_ratio(tests.TestCase):
    def test_one_hot(self):
        self.assertAlmostEqual(feasible_subspace_ratio(6, 3, ONE_HOT),
                               (3 / 8.) ** 6)
        self.assertAlmostEqual(feasible_subspace_ratio(6, 3, ONE_HOT),
                               729 / 262144.)

    def test_reduced(self):
        self.assertAlmostEqual(feasible_subspace_ratio(6, 3, REDUCED),
                               (3 / 4.) ** 6)

    def test_bisection(self):
        self.assertEqual(feasible_subspace_ratio(1, 2, ONE_HOT), 0.5)
        self.assertEqual(feasible_subspace_ratio(7, 2, REDUCED), 1.0)

    def test_encoding_gain(self):
        for n, k in ((3, 2), (4, 3), (5, 4)):
            gain = (feasible_subspace_ratio(n, k, REDUCED) /
                    feasible_subspace_ratio(n, k, ONE_HOT))
            self.assertAlmostEqual(gain, 2.0 ** n)

    def test_bad(self):
        for args in ((0, 3, ONE_HOT), (3, 1, ONE_HOT)):
            with self.assertRaises(ValueError):
                feasible_subspace_ratio(*args)
        with self.assertRaises(ModelError):
            feasible_subspace_ratio(3, 3, 'binary')


class Test_sample_feasibility_fraction(tests.TestCase):
    CELLS = [(n, k, encoding) for n, k in ((4, 2), (6, 3), (5, 4))
             for encoding in (ONE_HOT, REDUCED)]

    def misses(self, seed, samples=100000):
        # The cells whose estimate is outside 3 sigma of the exact ratio.
        result = []
        for n, k, encoding in self.CELLS:
            exact = feasible_subspace_ratio(n, k, encoding)
            estimate = sample_feasibility_fraction(n, k, encoding, samples,
                                                   seed=seed)
            sigma = np.sqrt(exact * (1 - exact) / samples)
            if abs(estimate - exact) > 3 * sigma:
                result.append((seed, n, k, encoding, estimate, exact))
        return result

    def test_agrees(self):
        all_misses = []
        for seed in range(5):
            misses = self.misses(seed)
            self.assertLessEqual(len(misses), 1, misses)
            all_misses.extend(misses)
        self.assertEqual(all_misses, [])

    def test_negative_seed(self):
        self.assertEqual(
            sample_feasibility_fraction(3, 3, REDUCED, 500, seed=-3),
            sample_feasibility_fraction(3, 3, REDUCED, 500,
                                        seed=2 ** 64 - 3))

    def test_repeatable(self):
        self.assertEqual(
            sample_feasibility_fraction(3, 3, REDUCED, 500, seed=1),
            sample_feasibility_fraction(3, 3, REDUCED, 500, seed=1))

    def test_bad_samples(self):
        with self.assertRaises(ValueError):
            sample_feasibility_fraction(3, 3, REDUCED, 0, seed=1)


class Test_sample_stats(tests.TestCase):
    def setUp(self):
        self.samples = [Sample((), 5.0, True, 5.0),
                        Sample((), 4.0, True, 4.0),
                        Sample((), 7.0, False, None),
                        Sample((), 4.5, True, 4.5)]

    def test_stats(self):
        stats = sample_stats(self.samples, 5.0, t=0.25, encoding=ONE_HOT,
                             graph=example1_graph(), k=3, graph_id='g')
        self.assertEqual(stats.n_feasible, 3)
        self.assertEqual(stats.feasible_fraction, 0.75)
        self.assertAlmostEqual(stats.mean_approx_ratio, 0.9)
        self.assertAlmostEqual(stats.std_approx_ratio,
                               np.std([1.0, 0.8, 0.9]))
        self.assertEqual((stats.n, stats.m, stats.k), (4, 6, 3))
        self.assertFalse(stats.failed)

    def test_no_feasible(self):
        stats = sample_stats(self.samples[2:3], 5.0)
        self.assertEqual(stats.n_feasible, 0)
        self.assertEqual(stats.feasible_fraction, 0.0)
        self.assertIsNone(stats.mean_approx_ratio)

    def test_zero_optimum(self):
        stats = sample_stats(self.samples, 0.0)
        self.assertIsNone(stats.mean_approx_ratio)
        self.assertIsNone(stats.std_approx_ratio)


class Test_heavy_edge_graphs(tests.TestCase):
    def test_graphs(self):
        graphs = heavy_edge_graphs(5, 6, 0.5, 10.0, seed=3)
        self.assertEqual([g.name for g in graphs],
                         ['g0', 'g1', 'g2', 'g3', 'g4'])
        for g in graphs:
            weights = sorted(w for _, _, w in g.edges)
            self.assertEqual(weights[-1], 10.0)
            self.assertTrue(all(w == 1.0 for w in weights[:-1]))

    def test_repeatable(self):
        self.assertEqual(heavy_edge_graphs(3, 6, 0.5, 10.0, seed=3),
                         heavy_edge_graphs(3, 6, 0.5, 10.0, seed=3))

    def test_never_empty(self):
        graphs = heavy_edge_graphs(4, 3, 0.1, 10.0, seed=0)
        self.assertTrue(all(g.m >= 1 for g in graphs))


class Test_benchmark_sweep(tests.TestCase):
    def setUp(self):
        self.graphs = heavy_edge_graphs(4, 6, 0.5, 10.0, seed=0)
        self.t_grid = (0.0, 0.25, 0.5, 0.75, 1.0)
        self.params = AnnealParams(sweeps=30)

    def sweep(self, **kwargs):
        return benchmark_sweep(self.graphs, 3, self.t_grid, 200,
                               params=self.params, seed=9, **kwargs)

    def test_rows(self):
        results = self.sweep()
        self.assertEqual(len(results), 4 * 5 * 2)
        self.assertEqual(
            [(r.graph_id, r.t, r.encoding) for r in results[:3]],
            [('g0', 0.0, ONE_HOT), ('g0', 0.0, REDUCED),
             ('g0', 0.25, ONE_HOT)])
        for stats in results:
            self.assertFalse(stats.failed)
            self.assertEqual(stats.shots, 200)
            self.assertTrue(0 <= stats.feasible_fraction <= 1)
            if stats.n_feasible:
                self.assertLessEqual(stats.mean_approx_ratio, 1.0 + 1e-9)
                self.assertGreaterEqual(stats.mean_approx_ratio, 0.0)

    def test_csv_repeatable(self):
        out1, out2 = io.StringIO(), io.StringIO()
        self.sweep(out=out1)
        self.sweep(out=out2, workers=4)
        self.assertEqual(out1.getvalue(), out2.getvalue())
        lines = out1.getvalue().splitlines()
        self.assertEqual(lines[0], ','.join(BENCHMARK_FIELDS))
        self.assertEqual(len(lines), 41)

    def test_csv_path(self):
        temp_dir = tempfile.mkdtemp()
        try:
            path = os.path.join(temp_dir, 'bench.csv')
            benchmark_sweep(self.graphs[:1], 3, (0.5,), 10,
                            params=self.params, out=path)
            with open(path) as csv_file:
                self.assertEqual(len(csv_file.read().splitlines()), 3)
        finally:
            shutil.rmtree(temp_dir)

    def test_failed_rows(self):
        big = Graph(20, [(0, 1, 1.0)], name='big')
        with mock.patch('qubokcut.analysis.logger') as mock_logger:
            results = benchmark_sweep([big] + self.graphs[:1], 3, (0.5,), 10,
                                      params=self.params)
        self.assertEqual([r.failed for r in results],
                         [True, True, False, False])
        self.assertIsNone(results[0].feasible_fraction)
        self.assertTrue(mock_logger.warning.called)

    def test_bad_grid(self):
        with self.assertRaises(ValueError):
            benchmark_sweep(self.graphs, 3, (0.5, 1.5), 10)
        with self.assertRaises(ValueError):
            benchmark_sweep([], 3, (0.5,), 10)


if __name__ == '__main__':
    tests.main()
