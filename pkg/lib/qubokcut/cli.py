"""
The 'qubokcut' command line tool.

Each subcommand wraps one library operation, and writes the same text the
:mod:`qubokcut.formats` functions give, to stdout or to the --out file.
Diagnostics go to stderr.

Exit status is 0 on success, 1 on a domain error (bad input file, invalid
values), 2 on a usage error, and 3 when scan-conjecture finds a
counterexample.

"""
import argparse
import logging
import sys

import numpy as np

import qubokcut
from qubokcut import analysis, edgelist, formats
from qubokcut.generate import apply_heavy_edge, gen_erdos_renyi
from qubokcut.model import (ENCODINGS, MAXIMIZE, MINIMIZE, ONE_HOT, REDUCED,
                            build_qubo, build_rqubo, decode)
from qubokcut.penalty import PenaltyError, penalty_vector
from qubokcut.solve import (DEFAULT_CAP_VARS, AnnealParams, solve_anneal,
                            solve_exhaustive, solve_maxkcut_oracle)


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE = 2
EXIT_COUNTEREXAMPLE = 3

SCHEMES = ('tight', 'conjectured', 'naive', 'interp', 'tight_qubo',
           'tight_rqubo', 'conjectured_qubo', 'conjectured_rqubo')


def _real_list(text):
    try:
        return [float(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            'expected a comma-separated list of numbers, got '
            '"{}".'.format(text))


def _int_list(text):
    values = _real_list(text)
    if any(int(value) != value for value in values):
        raise argparse.ArgumentTypeError(
            'expected a comma-separated list of integers, got '
            '"{}".'.format(text))
    return [int(value) for value in values]


def _coefficient(text):
    try:
        vertex, value = text.split('=')
        return int(vertex), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(
            'expected V=VALUE, got "{}".'.format(text))


def _emit(args, text):
    if args.out:
        with open(args.out, 'w') as out_file:
            out_file.write(text)
    else:
        sys.stdout.write(text)


def _read_graph(args):
    return edgelist.read(args.graph)


def _penalty(args, graph, k):
    if args.penalty:
        with open(args.penalty) as penalty_file:
            c = formats.parse_penalty(penalty_file.read())
        if len(c) != graph.n:
            raise PenaltyError('penalty file has {} coefficients for a '
                               '{}-vertex graph.'.format(len(c), graph.n))
    else:
        c = penalty_vector(graph, args.scheme, k, eps=args.eps,
                           encoding=args.encoding, t=args.t)
    for vertex, value in args.set_c or []:
        if not 1 <= vertex <= graph.n:
            raise PenaltyError('--set-c vertex {} is not in 1..{}.'.format(
                vertex, graph.n))
        c = c.with_coefficient(vertex - 1, value)
    return c


def _build(args, graph):
    c = _penalty(args, graph, args.k)
    if args.encoding == ONE_HOT:
        return build_qubo(graph, args.k, c)
    return build_rqubo(graph, args.k, c)


def _anneal_params(args):
    overrides = dict(sweeps=args.sweeps, t_start=args.t_start,
                     t_end=args.t_end, cooling=args.cooling)
    if args.anneal_config:
        return AnnealParams.from_config(args.anneal_config, **overrides)
    return AnnealParams(**dict((key, value)
                               for key, value in overrides.items()
                               if value is not None))


def cmd_gen(args):
    graph = gen_erdos_renyi(args.n, args.p, args.seed)
    comments = ['gen n={} p={!r} seed={}'.format(args.n, args.p, args.seed)]
    _emit(args, edgelist.serialize(graph, comments=comments))


def cmd_heavy_edge(args):
    graph = apply_heavy_edge(_read_graph(args), args.weight, args.seed)
    comments = ['heavy-edge weight={} seed={}'.format(
        formats.format_real(args.weight), args.seed)]
    _emit(args, edgelist.serialize(graph, comments=comments))


def cmd_degrees(args):
    degrees = _read_graph(args).degrees
    lines = ['# v d_plus d_minus']
    lines.extend('{} {} {}'.format(v + 1, formats.format_real(d_plus),
                                   formats.format_real(d_minus))
                 for v, (d_plus, d_minus) in enumerate(
                     zip(degrees.d_plus, degrees.d_minus)))
    _emit(args, '\n'.join(lines) + '\n')


def cmd_penalty(args):
    graph = _read_graph(args)
    c = _penalty(args, graph, args.k)
    _emit(args, formats.format_penalty(c, comments=[
        'k={} encoding={}'.format(args.k, args.encoding)]))


def cmd_build(args):
    model = _build(args, _read_graph(args))
    _emit(args, formats.export_qubo(model, sense=args.sense, spin=args.spin))


def cmd_solve_exact(args):
    if args.model:
        with open(args.model) as model_file:
            model = formats.parse_qubo(model_file.read())
    elif args.graph:
        if args.k is None:
            raise ValueError('solve-exact --graph needs --k.')
        model = _build(args, _read_graph(args))
    else:
        raise ValueError('solve-exact needs --graph or --model.')
    result = solve_exhaustive(model, cap_vars=args.cap_vars,
                              workers=args.workers)
    lines = ['# optimum={} num_optima={} states_visited={}'.format(
        formats.format_real(result.optimum), result.num_optima,
        result.states_visited)]
    for bits in result.optima:
        line = formats.format_bits(bits)
        if model.encoding is not None:
            assignment = decode(model, bits)
            line += ' feasible={}'.format(int(assignment.feasible))
            if assignment.feasible:
                line += ' partitions={}'.format(','.join(
                    str(label + 1) for label in assignment.partitions))
        lines.append(line)
    _emit(args, '\n'.join(lines) + '\n')


def cmd_oracle(args):
    result = solve_maxkcut_oracle(_read_graph(args), args.k,
                                  canonical=args.canonical,
                                  workers=args.workers)
    lines = ['# optimum={} num_optima={}'.format(
        formats.format_real(result.optimum), len(result.partitions))]
    lines.extend(','.join(str(label + 1) for label in partition)
                 for partition in result.partitions)
    _emit(args, '\n'.join(lines) + '\n')


def cmd_anneal(args):
    graph = _read_graph(args)
    model = _build(args, graph)
    logger.info('annealing with seed=%d shots=%d', args.seed, args.shots)
    samples = solve_anneal(model, _anneal_params(args), shots=args.shots,
                           seed=args.seed, graph=graph, workers=args.workers)
    _emit(args, formats.format_samples(samples))


def cmd_verify(args):
    graph = _read_graph(args)
    c = _penalty(args, graph, args.k)
    report = analysis.verify_reformulation(
        graph, args.k, c, encoding=args.encoding, cap_vars=args.cap_vars,
        workers=args.workers)
    if not report.valid and args.dump_dir:
        analysis.dump_counterexample(report, args.dump_dir)
    _emit(args, formats.format_verify_report(report) + '\n')


def _scan_header(config):
    # The settings that regenerate every trial of a scan.
    fields = ['which={}'.format(config.which),
              'seed={}'.format(config.seed),
              'trials={}'.format(config.trials),
              'n_max={}'.format(config.n_max),
              'k_set={}'.format(','.join(str(k) for k in config.k_set)),
              'weights={}'.format(','.join(formats.format_real(w)
                                           for w in config.weight_set)),
              'p={}'.format(formats.format_real(config.p))]
    if config.eps is not None:
        fields.append('eps={}'.format(formats.format_real(config.eps)))
    return '# ' + ' '.join(fields)


def cmd_scan_conjecture(args):
    config = analysis.ScanConfig(
        which=args.which, trials=args.trials, n_max=args.n_max,
        k_set=args.k_set, weight_set=args.weights, seed=args.seed,
        eps=args.eps, p=args.p)
    logger.info('scanning %r', config)
    reports = analysis.conjecture_scan(config, workers=args.workers,
                                       dump_dir=args.dump_dir)
    lines = [_scan_header(config)]
    lines.extend(formats.format_verify_report(report) for report in reports)
    _emit(args, '\n'.join(lines) + '\n')
    if not all(report.valid for report in reports):
        return EXIT_COUNTEREXAMPLE


def cmd_feas_ratio(args):
    exact = analysis.feasible_subspace_ratio(args.n, args.k, args.encoding)
    if args.samples is None:
        text = formats.format_real(exact) + '\n'
    else:
        empirical = analysis.sample_feasibility_fraction(
            args.n, args.k, args.encoding, args.samples, args.seed)
        sigma = np.sqrt(exact * (1.0 - exact) / args.samples)
        text = 'exact={} empirical={} samples={} seed={} sigma={}\n'.format(
            formats.format_real(exact), formats.format_real(empirical),
            args.samples, args.seed, formats.format_real(sigma))
    _emit(args, text)


def cmd_bench(args):
    if args.graph:
        graphs = [edgelist.read(path) for path in args.graph]
    else:
        graphs = analysis.heavy_edge_graphs(args.graphs, args.n, args.p,
                                            args.weight, args.seed)
    logger.info('benchmark over %d graphs, seed=%d', len(graphs), args.seed)
    encodings = ENCODINGS if args.encoding is None else (args.encoding,)
    stats = analysis.benchmark_sweep(
        graphs, args.k, args.t_grid, args.shots, params=_anneal_params(args),
        seed=args.seed, encodings=encodings, eps=args.eps,
        workers=args.workers)
    text = formats.format_benchmark(stats)
    if args.csv:
        with open(args.csv, 'w') as csv_file:
            csv_file.write(text)
    else:
        _emit(args, text)


def _add_penalty_args(parser, k_required=True):
    parser.add_argument('--k', type=int, required=k_required,
                        help='number of partitions')
    parser.add_argument('--encoding', choices=ENCODINGS, default=ONE_HOT,
                        help='one_hot (QUBO) or reduced (R-QUBO)')
    parser.add_argument('--scheme', choices=SCHEMES, default='tight',
                        help='penalty scheme')
    parser.add_argument('--eps', type=float,
                        help='margin above the bound (default '
                        '1e-6*(1+bound) per vertex)')
    parser.add_argument('--t', type=float,
                        help='interpolation parameter for --scheme interp')
    parser.add_argument('--set-c', type=_coefficient, action='append',
                        metavar='V=VALUE',
                        help='override the coefficient of vertex V')
    parser.add_argument('--penalty', metavar='PATH',
                        help='read the coefficients from a penalty file')


def _add_anneal_args(parser):
    parser.add_argument('--shots', type=int, default=1000)
    parser.add_argument('--sweeps', type=int)
    parser.add_argument('--t-start', type=float)
    parser.add_argument('--t-end', type=float)
    parser.add_argument('--cooling', type=float)
    parser.add_argument('--anneal-config', metavar='PATH',
                        help='file of "key = value" annealing settings')


def make_parser():
    """Return the argument parser."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--out', metavar='PATH',
                        help='write output here, instead of stdout')
    common.add_argument('--workers', type=int, default=1)
    common.add_argument('-v', '--verbose', action='store_true')
    common.add_argument('-q', '--quiet', action='store_true')

    with_graph = argparse.ArgumentParser(add_help=False, parents=[common])
    with_graph.add_argument('--graph', metavar='PATH', required=True,
                            help='edge-list file')

    parser = argparse.ArgumentParser(
        prog='qubokcut', description='QUBO models of weighted max k-cut.')
    parser.add_argument('--version', action='version',
                        version=qubokcut.__version__)
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    sub = commands.add_parser('gen', parents=[common],
                              help='random G(n, p) graph')
    sub.add_argument('--n', type=int, required=True)
    sub.add_argument('--p', type=float, required=True)
    sub.add_argument('--seed', type=int, default=0)
    sub.set_defaults(function=cmd_gen)

    sub = commands.add_parser('heavy-edge', parents=[with_graph],
                              help='reweight one random edge')
    sub.add_argument('--weight', type=float, default=10.0)
    sub.add_argument('--seed', type=int, default=0)
    sub.set_defaults(function=cmd_heavy_edge)

    sub = commands.add_parser('degrees', parents=[with_graph],
                              help='weighted degrees')
    sub.set_defaults(function=cmd_degrees)

    sub = commands.add_parser('penalty', parents=[with_graph],
                              help='penalty coefficients')
    _add_penalty_args(sub)
    sub.set_defaults(function=cmd_penalty)

    sub = commands.add_parser('build', parents=[with_graph],
                              help='export a QUBO or R-QUBO model')
    _add_penalty_args(sub)
    sub.add_argument('--sense', choices=(MAXIMIZE, MINIMIZE),
                     default=MAXIMIZE)
    sub.add_argument('--spin', action='store_true',
                     help='write the model in spin variables')
    sub.set_defaults(function=cmd_build)

    sub = commands.add_parser('solve-exact', parents=[common],
                              help='enumerate a model')
    sub.add_argument('--graph', metavar='PATH')
    sub.add_argument('--model', metavar='PATH',
                     help='a binary model export, instead of --graph')
    _add_penalty_args(sub, k_required=False)
    sub.add_argument('--cap-vars', type=int, default=DEFAULT_CAP_VARS)
    sub.set_defaults(function=cmd_solve_exact)

    sub = commands.add_parser('oracle', parents=[with_graph],
                              help='enumerate the max k-cut')
    sub.add_argument('--k', type=int, required=True)
    sub.add_argument('--canonical', action='store_true',
                     help='list optimal partitions once up to relabelling')
    sub.set_defaults(function=cmd_oracle)

    sub = commands.add_parser('anneal', parents=[with_graph],
                              help='sample a model by annealing')
    _add_penalty_args(sub)
    _add_anneal_args(sub)
    sub.add_argument('--seed', type=int, default=0)
    sub.set_defaults(function=cmd_anneal)

    sub = commands.add_parser('verify', parents=[with_graph],
                              help='compare model and max k-cut optima')
    _add_penalty_args(sub)
    sub.add_argument('--cap-vars', type=int, default=DEFAULT_CAP_VARS)
    sub.add_argument('--dump-dir', metavar='DIR')
    sub.set_defaults(function=cmd_verify)

    sub = commands.add_parser('scan-conjecture', parents=[common],
                              help='verify a bound on random instances')
    sub.add_argument('--which', choices=sorted(analysis.SCAN_ARMS),
                     default='conjecture1')
    sub.add_argument('--trials', type=int, default=500)
    sub.add_argument('--n-max', type=int, default=5)
    sub.add_argument('--k-set', type=_int_list, default=[2, 3])
    sub.add_argument('--weights', type=_real_list, default=[-2, -1, 1, 2])
    sub.add_argument('--p', type=float, default=0.6)
    sub.add_argument('--eps', type=float)
    sub.add_argument('--seed', type=int, default=0)
    sub.add_argument('--dump-dir', metavar='DIR')
    sub.set_defaults(function=cmd_scan_conjecture)

    sub = commands.add_parser('feas-ratio', parents=[common],
                              help='feasible share of the bit vectors')
    sub.add_argument('--n', type=int, required=True)
    sub.add_argument('--k', type=int, required=True)
    sub.add_argument('--encoding', choices=ENCODINGS, default=ONE_HOT)
    sub.add_argument('--samples', type=int,
                     help='also estimate the share from this many samples')
    sub.add_argument('--seed', type=int, default=0)
    sub.set_defaults(function=cmd_feas_ratio)

    sub = commands.add_parser('bench', parents=[common],
                              help='annealing sweep over penalty blends')
    sub.add_argument('--graph', metavar='PATH', action='append',
                     help='edge-list file (repeatable); default: random')
    sub.add_argument('--graphs', type=int, default=20,
                     help='number of random graphs')
    sub.add_argument('--n', type=int, default=6)
    sub.add_argument('--p', type=float, default=0.5)
    sub.add_argument('--weight', type=float, default=10.0)
    sub.add_argument('--k', type=int, default=3)
    sub.add_argument('--encoding', choices=(ONE_HOT, REDUCED),
                     help='run one encoding only')
    sub.add_argument('--eps', type=float)
    sub.add_argument('--t-grid', type=_real_list,
                     default=[0.0, 0.25, 0.5, 0.75, 1.0])
    _add_anneal_args(sub)
    sub.add_argument('--seed', type=int, default=0)
    sub.add_argument('--csv', metavar='PATH',
                     help='write the CSV here, instead of --out or stdout')
    sub.set_defaults(function=cmd_bench)

    return parser


def _configure_logging(args):
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(stream=sys.stderr, level=level,
                        format='%(levelname)s %(name)s: %(message)s')


def run(argv=None):
    """
    Run the tool on a list of arguments, and return the exit status.

    """
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return exit_.code
    _configure_logging(args)
    try:
        status = args.function(args)
    except (ValueError, OSError) as error:
        logger.error('%s', error)
        return EXIT_DOMAIN_ERROR
    return EXIT_OK if status is None else status


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
