"""
Checks of the penalty results against exhaustive oracles, and sampling
benchmarks.

 * :func:`verify_reformulation` compares the exhaustive optimum of a model
   with the max k-cut oracle.
 * :func:`conjecture_scan` runs that comparison over many random signed
   instances.
 * :func:`feasible_subspace_ratio` and :func:`sample_feasibility_fraction`
   give the share of bit vectors that encode a partition, exactly and by
   Monte-Carlo.
 * :func:`benchmark_sweep` anneals interpolated-penalty models over a grid,
   and collects feasibility and approximation-ratio statistics.

"""
import logging
import os
import os.path
import re

import numpy as np

from qubokcut import edgelist
from qubokcut.formats import (format_benchmark, format_bits, format_penalty,
                              format_verify_report)
from qubokcut.generate import (apply_heavy_edge, gen_erdos_renyi,
                               randomize_signed_weights, rng)
from qubokcut.model import (ENCODINGS, ONE_HOT, REDUCED, ModelError,
                            build_qubo, build_rqubo, cut_weight, decode, lift)
from qubokcut.penalty import (CONJECTURED_QUBO, CONJECTURED_RQUBO,
                              TIGHT_QUBO, TIGHT_RQUBO, PenaltyVector,
                              penalty_vector)
from qubokcut.solve import (DEFAULT_CAP_VARS, DEFAULT_TOL, ordered_map,
                            solve_anneal, solve_exhaustive,
                            solve_maxkcut_oracle)


logger = logging.getLogger(__name__)


#: The penalty scheme and encoding checked by each conjecture-scan arm.
SCAN_ARMS = {
    'conjecture1': (CONJECTURED_QUBO, ONE_HOT),
    'conjecture2': (CONJECTURED_RQUBO, REDUCED),
    'theorem1': (TIGHT_QUBO, ONE_HOT),
    'theorem2': (TIGHT_RQUBO, REDUCED),
}


class UndefinedRatioError(ValueError):
    """Exception raised when an approximation ratio has no meaning."""
    pass


def _build(graph, k, c, encoding):
    if encoding == ONE_HOT:
        return build_qubo(graph, k, c)
    if encoding == REDUCED:
        return build_rqubo(graph, k, c)
    raise ModelError('unknown encoding "{}", expected one of {}.'.format(
        encoding, ENCODINGS))


class VerifyReport:
    """
    The outcome of comparing a model optimum with the max k-cut optimum.

    A report is valid when the optima agree within tolerance and no optimal
    bit vector of the model is infeasible.  An invalid report carries a
    witness: the first infeasible optimum, or else the first optimum.

    """
    def __init__(self, graph_id, k, encoding, scheme, oracle_opt, qubo_opt,
                 infeasible_optima_count, witness=None, num_optima=None,
                 tol=DEFAULT_TOL, graph=None, penalty=None):
        self.graph_id = graph_id
        self.k = k
        self.encoding = encoding
        self.scheme = scheme
        self.oracle_opt = oracle_opt
        self.qubo_opt = qubo_opt
        self.infeasible_optima_count = infeasible_optima_count
        self.num_optima = num_optima
        self.valid = (abs(qubo_opt - oracle_opt) <= tol and
                      infeasible_optima_count == 0)
        #: The witness bit vector (a tuple), only for invalid reports.
        self.witness = None if self.valid else witness

        # The instance itself, for reproducing a failure.
        self.graph = graph
        self.penalty = penalty

    def __str__(self):
        return format_verify_report(self)

    def __repr__(self):
        return '<VerifyReport: {}>'.format(format_verify_report(self))


def verify_reformulation(graph, k, c, encoding=ONE_HOT, tol=DEFAULT_TOL,
                         graph_id=None, cap_vars=DEFAULT_CAP_VARS, workers=1):
    """
    Check that a penalty model has exactly the max k-cut optima.

    Args:

    * graph (:class:`qubokcut.Graph`):
        The graph.
    * k (int):
        Number of partitions.
    * c (:class:`~qubokcut.penalty.PenaltyVector` or sequence of float):
        The penalty coefficients.

    Kwargs:

    * encoding (string):
        'one_hot' to check the QUBO model, 'reduced' for the R-QUBO model.
    * tol (float):
        Tolerance for equal objective values.
    * graph_id (string):
        Label for the report.  Defaults to the graph name.
    * cap_vars (int):
        Limit on model size for the exhaustive search.
    * workers (int):
        Number of threads for the searches.

    Returns:
        A :class:`VerifyReport`.

    """
    if not isinstance(c, PenaltyVector):
        c = PenaltyVector(c)
    model = _build(graph, k, c, encoding)
    exact = solve_exhaustive(model, tol=tol, cap_vars=cap_vars,
                             workers=workers)
    oracle = solve_maxkcut_oracle(graph, k, tol=tol, workers=workers)
    infeasible = [bits for bits in exact.optima
                  if not decode(model, bits).feasible]
    if infeasible:
        witness = infeasible[0]
    else:
        witness = exact.optima[0]
    report = VerifyReport(
        graph_id if graph_id is not None else graph.name, k, encoding,
        c.scheme, oracle.optimum, exact.optimum, len(infeasible),
        witness=witness, num_optima=exact.num_optima, tol=tol, graph=graph,
        penalty=c)
    logger.debug('%s', report)
    return report


def approximation_ratio(graph, k, assignment, oracle_opt):
    """
    Return the cut weight of a feasible assignment over the optimum cut.

    Reduced assignments are lifted to one_hot first.

    Raises :class:`UndefinedRatioError` when the optimum is not positive.

    """
    if oracle_opt <= 0:
        raise UndefinedRatioError('the approximation ratio is undefined for '
                                  'an optimum cut of {!r}.'.format(oracle_opt))
    if assignment.k != k:
        raise ModelError('assignment is for k={}, not k={}.'.format(
            assignment.k, k))
    return cut_weight(graph, lift(assignment)) / oracle_opt


class ScanConfig:
    """Settings for :func:`conjecture_scan`."""
    def __init__(self, which='conjecture1', trials=500, n_max=5,
                 k_set=(2, 3), weight_set=(-2, -1, 1, 2), seed=0, eps=None,
                 p=0.6, n_min=2):
        """
        Kwargs:

        * which (string):
            The scan arm, a key of :data:`SCAN_ARMS`.
        * trials (int):
            Number of random instances.
        * n_max, n_min (int):
            Range of vertex counts, drawn uniformly per trial.
        * k_set (sequence of int):
            Partition counts, drawn uniformly per trial.
        * weight_set (sequence of float):
            Edge weights, drawn uniformly per edge.
        * seed (int):
            Master random seed.  Trial i uses the sub-stream (seed, i).
        * eps (float or None):
            The margin above the bound.
        * p (float):
            Edge probability of the underlying G(n, p) graphs.

        """
        if which not in SCAN_ARMS:
            raise ValueError('unknown scan "{}", expected one of {}.'.format(
                which, sorted(SCAN_ARMS)))
        if int(trials) != trials or trials < 1:
            raise ValueError('trials={!r} must be an integer >= 1.'.format(
                trials))
        if not 1 <= n_min <= n_max:
            raise ValueError('vertex range {}..{} is empty.'.format(n_min,
                                                                    n_max))
        if not k_set or min(k_set) < 2:
            raise ValueError('k_set {} must hold values >= 2.'.format(
                list(k_set)))
        self.which = which
        self.trials = int(trials)
        self.n_max = int(n_max)
        self.n_min = int(n_min)
        self.k_set = tuple(sorted(int(k) for k in k_set))
        self.weight_set = tuple(sorted(float(w) for w in weight_set))
        self.seed = seed
        self.eps = eps
        self.p = p

    @property
    def scheme(self):
        return SCAN_ARMS[self.which][0]

    @property
    def encoding(self):
        return SCAN_ARMS[self.which][1]

    def __repr__(self):
        return ('ScanConfig(which={!r}, trials={}, n_max={}, k_set={}, '
                'weight_set={}, seed={!r}, eps={!r}, p={!r})'.format(
                    self.which, self.trials, self.n_max, self.k_set,
                    self.weight_set, self.seed, self.eps, self.p))


def scan_instance(config, trial):
    """Return the (graph, k) of one conjecture-scan trial."""
    stream = rng(config.seed, trial)
    n = int(stream.integers(config.n_min, config.n_max + 1))
    k = int(stream.choice(config.k_set))
    graph_seed, weight_seed = (int(s) for s in stream.integers(2 ** 31,
                                                               size=2))
    graph = gen_erdos_renyi(n, config.p, graph_seed)
    name = '{}-{}'.format(config.which, trial)
    graph = randomize_signed_weights(graph, config.weight_set, weight_seed,
                                     name=name)
    return graph, k


def conjecture_scan(config, workers=1, dump_dir=None):
    """
    Verify the penalty bound of a scan arm on random signed instances.

    Counterexamples are not errors: they are returned as invalid reports,
    logged as warnings with their full reproducer text (see
    :func:`reproducer_text`), and also dumped to files in `dump_dir` if one
    is given.

    Returns:
        The list of :class:`VerifyReport`, in trial order.

    """
    if not any(w < 0 for w in config.weight_set):
        logger.info('weight set %s has no negative weights: the %s bound '
                    'is covered by the proven results here.',
                    list(config.weight_set), config.which)

    def run_trial(trial):
        graph, k = scan_instance(config, trial)
        c = penalty_vector(graph, config.scheme, k, eps=config.eps)
        return verify_reformulation(graph, k, c, encoding=config.encoding)

    reports = ordered_map(run_trial, range(config.trials), workers)
    counterexamples = [report for report in reports if not report.valid]
    for report in counterexamples:
        logger.warning('counterexample to the %s bound: %s\n%s', config.which,
                       report, reproducer_text(report))
        if dump_dir is not None:
            dump_counterexample(report, dump_dir)
    logger.info('%s scan: %d trials, %d counterexamples.', config.which,
                len(reports), len(counterexamples))
    return reports


def _reproducer_parts(report):
    # Edge list, penalty block and witness text of an invalid report.
    if report.graph is None or report.penalty is None:
        raise ValueError('report carries no instance to dump.')
    comments = ['k={} encoding={}'.format(report.k, report.encoding)]
    witness = '# {}\n'.format(format_verify_report(report))
    if report.witness is not None:
        witness += format_bits(report.witness) + '\n'
    return (edgelist.serialize(report.graph, comments=comments),
            format_penalty(report.penalty, comments=comments),
            witness)


def reproducer_text(report):
    """
    All the text needed to reproduce an invalid report, as one block.

    This is the witness record and bits, then the graph edge list, then the
    penalty block.

    """
    edges, penalty, witness = _reproducer_parts(report)
    return witness + edges + penalty


def dump_counterexample(report, directory):
    """
    Write the files that reproduce an invalid report.

    Three files are written, named after the report graph id: the graph
    edge list (".edges"), the penalty block (".penalty"), and the witness
    with the report record (".witness").

    Returns:
        The three paths.

    """
    parts = _reproducer_parts(report)
    if not os.path.isdir(directory):
        os.makedirs(directory)
    label = os.path.basename(report.graph_id or '') or 'counterexample'
    stem = os.path.join(directory, re.sub(r'[^\w.-]+', '_', label))
    paths = (stem + '.edges', stem + '.penalty', stem + '.witness')
    for path, text in zip(paths, parts):
        with open(path, 'w') as out_file:
            out_file.write(text)
    logger.info('reproducer written to %s.*', stem)
    return paths


def feasible_subspace_ratio(n, k, encoding):
    """
    The fraction of all bit vectors that encode a partition.

    This is (k / 2**k)**n for one_hot, and (k / 2**(k-1))**n for reduced.

    """
    if int(n) != n or n < 1:
        raise ValueError('n={!r} must be an integer >= 1.'.format(n))
    if int(k) != k or k < 2:
        raise ValueError('k={!r} must be an integer >= 2.'.format(k))
    if encoding not in ENCODINGS:
        raise ModelError('unknown encoding "{}".'.format(encoding))
    width = k if encoding == ONE_HOT else k - 1
    return (k / 2.0 ** width) ** n


def sample_feasibility_fraction(n, k, encoding, samples, seed):
    """
    Estimate :func:`feasible_subspace_ratio` from uniform random bits.

    Args:

    * n, k (int):
        Vertex and partition counts.
    * encoding (string):
        'one_hot' or 'reduced'.
    * samples (int):
        Number of random bit matrices.
    * seed (int):
        Random seed.

    """
    if int(samples) != samples or samples < 1:
        raise ValueError('samples={!r} must be an integer >= 1.'.format(
            samples))
    feasible_subspace_ratio(n, k, encoding)
    width = k if encoding == ONE_HOT else k - 1
    bits = rng(seed).integers(0, 2, size=(int(samples), n, width),
                              dtype=np.int8)
    sums = bits.sum(axis=2)
    if encoding == ONE_HOT:
        feasible = np.all(sums == 1, axis=1)
    else:
        feasible = np.all(sums <= 1, axis=1)
    return float(np.count_nonzero(feasible)) / samples


class SampleStats:
    """
    Feasibility and approximation-ratio statistics of a batch of samples.

    The ratio statistics cover the feasible samples only, and are None when
    there are none or when the optimum cut is not positive.  A failed row
    has `error` set, and None for all the statistics.

    """
    def __init__(self, t, encoding, shots, n_feasible=None,
                 mean_approx_ratio=None, std_approx_ratio=None,
                 graph_id=None, n=None, m=None, k=None, oracle_opt=None,
                 error=None):
        if n_feasible is not None and not 0 <= n_feasible <= shots:
            raise ValueError('{} feasible of {} shots.'.format(n_feasible,
                                                               shots))
        self.t = t
        self.encoding = encoding
        self.shots = shots
        self.n_feasible = n_feasible
        self.mean_approx_ratio = mean_approx_ratio
        self.std_approx_ratio = std_approx_ratio
        self.graph_id = graph_id
        self.n = n
        self.m = m
        self.k = k
        self.oracle_opt = oracle_opt
        self.error = error

    @property
    def feasible_fraction(self):
        if self.n_feasible is None:
            return None
        return self.n_feasible / float(self.shots)

    @property
    def failed(self):
        return self.error is not None

    def __repr__(self):
        return ('SampleStats(graph_id={!r}, encoding={!r}, t={!r}, '
                'shots={}, n_feasible={!r}, mean_approx_ratio={!r}, '
                'std_approx_ratio={!r})'.format(
                    self.graph_id, self.encoding, self.t, self.shots,
                    self.n_feasible, self.mean_approx_ratio,
                    self.std_approx_ratio))


def sample_stats(samples, oracle_opt, t=None, encoding=None, graph=None,
                 k=None, graph_id=None):
    """
    Summarise annealer samples.

    Args:

    * samples (list of :data:`~qubokcut.solve.Sample`):
        The samples, with cut weights set for the feasible ones.
    * oracle_opt (float):
        The optimum cut weight.

    Kwargs are recorded on the result.

    Returns:
        A :class:`SampleStats`.

    """
    cuts = [sample.cut for sample in samples if sample.feasible]
    mean = std = None
    if cuts and oracle_opt > 0:
        ratios = np.array(cuts, dtype=float) / oracle_opt
        mean, std = float(ratios.mean()), float(ratios.std())
    return SampleStats(
        t, encoding, len(samples), n_feasible=len(cuts),
        mean_approx_ratio=mean, std_approx_ratio=std,
        graph_id=graph_id, n=None if graph is None else graph.n,
        m=None if graph is None else graph.m, k=k, oracle_opt=oracle_opt)


def heavy_edge_graphs(count, n, p, weight, seed):
    """
    Make the benchmark instances: G(n, p) graphs, each with one heavy edge.

    Graph i is drawn from the sub-streams (seed, i, attempt), redrawing
    while the graph has no edge to make heavy.

    """
    graphs = []
    for i_graph in range(count):
        for attempt in range(1000):
            graph_seed, edge_seed = (
                int(s) for s in rng(seed, i_graph, attempt).integers(
                    2 ** 31, size=2))
            graph = gen_erdos_renyi(n, p, graph_seed)
            if graph.m:
                break
        else:
            raise ValueError('no edges in 1000 draws of G({}, {!r}).'.format(
                n, p))
        graphs.append(apply_heavy_edge(graph, weight, edge_seed,
                                       name='g{}'.format(i_graph)))
    return graphs


def benchmark_sweep(graphs, k, t_grid, shots, params=None, seed=0,
                    encodings=ENCODINGS, eps=None, workers=1, out=None):
    """
    Anneal interpolated-penalty models over graphs, t values and encodings.

    For each graph, t and encoding (in that nesting order) the penalty is
    (1 - t) times the encoding's tight vector plus t times the naive one.
    Row (i, j, l) anneals with its own seed, drawn from the sub-stream
    (seed, i, j, l), so rows are independent of each other and of `workers`.

    Args:

    * graphs (sequence of :class:`qubokcut.Graph`):
        The instances, small enough for the max k-cut oracle.
    * k (int):
        Number of partitions.
    * t_grid (sequence of float):
        Interpolation parameters, in [0, 1].
    * shots (int):
        Annealer shots per row.

    Kwargs:

    * params (:class:`~qubokcut.solve.AnnealParams`):
        Annealer settings.
    * seed (int):
        Master seed.
    * encodings (sequence of string):
        Encodings to run.
    * eps (float or None):
        Margin for the tight vectors.
    * workers (int):
        Number of rows to run at once.
    * out (string or file-like):
        If given, the benchmark CSV is written here.

    Returns:
        The list of :class:`SampleStats`, in row order.  Rows whose solve
        failed are included, marked with their error.

    """
    graphs = list(graphs)
    t_grid = [float(t) for t in t_grid]
    if not graphs or not t_grid or not encodings:
        raise ValueError('benchmark grids must be non-empty.')
    bad = [t for t in t_grid if not 0 <= t <= 1]
    if bad:
        raise ValueError('t values {} are not in [0, 1].'.format(bad))

    graph_ids = [graph.name or 'g{}'.format(i_graph)
                 for i_graph, graph in enumerate(graphs)]
    optima = []
    for graph, graph_id in zip(graphs, graph_ids):
        try:
            optima.append(solve_maxkcut_oracle(graph, k).optimum)
        except ValueError as error:
            logger.warning('no optimum for graph %s: %s', graph_id, error)
            optima.append(error)

    rows = [(i_graph, i_t, i_enc)
            for i_graph in range(len(graphs))
            for i_t in range(len(t_grid))
            for i_enc in range(len(encodings))]

    def run_row(row):
        i_graph, i_t, i_enc = row
        graph, t, encoding = graphs[i_graph], t_grid[i_t], encodings[i_enc]
        graph_id = graph_ids[i_graph]
        info = dict(graph_id=graph_id, n=graph.n, m=graph.m, k=k)
        try:
            oracle_opt = optima[i_graph]
            if isinstance(oracle_opt, Exception):
                raise oracle_opt
            c = penalty_vector(graph, 'interp', k, eps=eps,
                               encoding=encoding, t=t)
            model = _build(graph, k, c, encoding)
            row_seed = int(rng(seed, *row).integers(2 ** 32))
            samples = solve_anneal(model, params, shots=shots,
                                   seed=row_seed, graph=graph)
        except ValueError as error:
            logger.warning('row graph=%s t=%r encoding=%s failed: %s',
                         graph_id, t, encoding, error)
            return SampleStats(t, encoding, shots, error=str(error), **info)
        stats = sample_stats(samples, oracle_opt, t=t, encoding=encoding,
                             graph=graph, k=k, graph_id=graph_id)
        logger.debug('%r', stats)
        return stats

    results = ordered_map(run_row, rows, workers)
    logger.info('benchmark sweep: %d rows, %d failed.', len(results),
                sum(stats.failed for stats in results))
    if out is not None:
        text = format_benchmark(results)
        if hasattr(out, 'write'):
            out.write(text)
        else:
            with open(out, 'w') as csv_file:
                csv_file.write(text)
    return results
