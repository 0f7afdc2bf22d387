"""
Text forms of penalty vectors, models, samples, reports and benchmark rows.

All machine-readable output of the package is produced here, so the command
line tool and library callers get identical text.

Formats:

 * penalty block: a header "# scheme=<tag> eps=<value>", then one line
   "v c_v" per vertex, 1-based.
 * QUBO export: a header
   "# vars=<N> sense=<max|min> constant=<c> encoding=<kind> n=<n> k=<k>",
   then "i i coeff" for each linear term and "i j coeff" (i < j) for each
   pairwise term, with 0-based variable numbers.  The spin form adds
   "vartype=spin" to the header, and its terms are in s = 2x - 1.
 * sample CSV: "shot,value,feasible,cut".
 * verify record: one line of space-separated key=value pairs, led by the
   word "valid" or "invalid".
 * benchmark CSV: the columns in :data:`BENCHMARK_FIELDS`.

"""
import csv
import io

import dimod
import numpy as np

from qubokcut.model import Encoding, MAXIMIZE, MINIMIZE, QuboModel
from qubokcut.penalty import (BOUND_SCHEMES, DEFAULT_REL_EPS, PenaltyError,
                              PenaltyVector)


BENCHMARK_FIELDS = ('graph_id', 'n', 'm', 'k', 'encoding', 't', 'shots',
                    'feasible_fraction', 'n_feasible', 'mean_approx_ratio',
                    'std_approx_ratio')

SAMPLE_FIELDS = ('shot', 'value', 'feasible', 'cut')


def format_real(value):
    """
    Format a real at full precision, with integral values shown as integers.

    None gives an empty string.

    """
    if value is None:
        return ''
    value = float(value)
    if np.isfinite(value) and value.is_integer():
        return str(int(value))
    return repr(value)


def format_short(value):
    """Format a real to 12 significant figures, for human-facing output."""
    if value is None:
        return 'none'
    return '{:.12g}'.format(float(value))


def _format_eps(penalty):
    if penalty.epsilon is not None:
        return format_real(penalty.epsilon)
    if (penalty.scheme in BOUND_SCHEMES or
            penalty.scheme.startswith('interpolated')):
        return '{!r}*(1+bound)'.format(DEFAULT_REL_EPS)
    return 'none'


def format_penalty(penalty, comments=None):
    """Return the text block for a :class:`~qubokcut.penalty.PenaltyVector`."""
    lines = ['# {}'.format(comment) for comment in comments or []]
    lines.append('# scheme={} eps={}'.format(penalty.scheme,
                                             _format_eps(penalty)))
    lines.extend('{} {}'.format(v + 1, format_real(c_v))
                 for v, c_v in enumerate(penalty))
    return '\n'.join(lines) + '\n'


def parse_penalty(text):
    """
    Read a penalty text block back.

    The result is tagged 'custom', whatever the header says, since nothing
    ties the coefficients to a graph any more.

    """
    coefficients = {}
    for i_line, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        fields = line.split()
        try:
            vertex, value = int(fields[0]), float(fields[1])
        except (ValueError, IndexError):
            raise PenaltyError('line {}: expected "v c_v", got "{}".'.format(
                i_line, line))
        coefficients[vertex] = value
    if sorted(coefficients) != list(range(1, len(coefficients) + 1)):
        raise PenaltyError('penalty vertices must be 1..n, got {}.'.format(
            sorted(coefficients)))
    return PenaltyVector([coefficients[v] for v in sorted(coefficients)])


def _spin_terms(model):
    # The model polynomial in spin variables, by way of dimod.
    bqm = model.to_bqm().change_vartype(dimod.SPIN, inplace=False)
    sign = -1.0 if model.sense == MAXIMIZE else 1.0
    linear = {int(v): sign * bias for v, bias in bqm.linear.items()}
    quadratic = {(min(int(u), int(v)), max(int(u), int(v))): sign * bias
                 for (u, v), bias in bqm.quadratic.items()}
    return sign * bqm.offset, linear, quadratic


def export_qubo(model, sense=None, spin=False, comments=None):
    """
    Return the text export of a model.

    Kwargs:

    * sense (string):
        'max' or 'min'.  If it differs from the model sense, all the
        coefficients and the constant are negated.  Defaults to the model
        sense.
    * spin (bool):
        If set, write the terms for spin variables s = 2x - 1 in {-1, +1}.
    * comments (iterable of string):
        Lines to put above the header, each prefixed with '# '.

    """
    if sense is not None and sense != model.sense:
        model = model.negated()
    if spin:
        constant, linear, quadratic = _spin_terms(model)
    else:
        constant = model.constant
        linear, quadratic = model.linear, model.quadratic
    enc = model.encoding
    header = '# vars={} sense={} constant={}'.format(
        model.num_vars, model.sense, format_real(constant))
    if enc is not None:
        header += ' encoding={} n={} k={}'.format(enc.kind, enc.n, enc.k)
    if spin:
        header += ' vartype=spin'
    lines = ['# {}'.format(comment) for comment in comments or []]
    lines.append(header)
    lines.extend('{0} {0} {1}'.format(i, format_real(linear[i]))
                 for i in sorted(linear) if linear[i] != 0)
    lines.extend('{} {} {}'.format(i, j, format_real(quadratic[i, j]))
                 for i, j in sorted(quadratic) if quadratic[i, j] != 0)
    return '\n'.join(lines) + '\n'


def parse_qubo(text):
    """
    Read a (binary) QUBO export back as a :class:`~qubokcut.model.QuboModel`.

    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    headers = [i_line for i_line, line in enumerate(lines)
               if line.startswith('# vars=')]
    if not headers:
        raise ValueError('QUBO text has no "# vars=..." header line.')
    lines = lines[headers[0]:]
    header = dict(field.split('=', 1) for field in lines[0][1:].split()
                  if '=' in field)
    if header.get('vartype', 'binary') != 'binary':
        raise ValueError('only binary QUBO text can be read, not '
                         '"{}".'.format(header['vartype']))
    try:
        num_vars = int(header['vars'])
        constant = float(header.get('constant', 0))
    except (KeyError, ValueError):
        raise ValueError('QUBO header "{}" lacks vars or constant.'.format(
            lines[0]))
    sense = header.get('sense', MAXIMIZE)
    if sense not in (MAXIMIZE, MINIMIZE):
        raise ValueError('unknown sense "{}".'.format(sense))
    encoding = None
    if 'encoding' in header:
        encoding = Encoding(header['encoding'], int(header['n']),
                            int(header['k']))
    linear = {}
    quadratic = {}
    for i_line, line in enumerate(lines[1:], start=2):
        if line.startswith('#'):
            continue
        try:
            i, j, coeff = line.split()
            i, j, coeff = int(i), int(j), float(coeff)
        except ValueError:
            raise ValueError('line {}: expected "i j coeff", got '
                             '"{}".'.format(i_line, line))
        if i == j:
            linear[i] = linear.get(i, 0.0) + coeff
        else:
            quadratic[i, j] = quadratic.get((i, j), 0.0) + coeff
    return QuboModel(num_vars, linear, quadratic, constant, sense=sense,
                     encoding=encoding)


def _csv_text(fields, rows):
    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(fields)
    writer.writerows(rows)
    return stream.getvalue()


def format_samples(samples):
    """Return the CSV text for a list of :data:`qubokcut.solve.Sample`."""
    rows = [(shot, format_real(sample.value), int(sample.feasible),
             format_real(sample.cut))
            for shot, sample in enumerate(samples)]
    return _csv_text(SAMPLE_FIELDS, rows)


def format_bits(bits):
    """A bit vector as a string of 0/1 characters."""
    return ''.join(str(int(bit)) for bit in bits)


def format_verify_report(report):
    """Return the one-line record for a verification report."""
    fields = [
        'valid' if report.valid else 'invalid',
        'oracle_opt={}'.format(format_short(report.oracle_opt)),
        'qubo_opt={}'.format(format_short(report.qubo_opt)),
        'graph_id={}'.format(report.graph_id or ''),
        'k={}'.format(report.k),
        'encoding={}'.format(report.encoding),
        'scheme={}'.format(report.scheme),
        'infeasible_optima={}'.format(report.infeasible_optima_count)]
    if report.witness is not None:
        fields.append('witness={}'.format(format_bits(report.witness)))
    return ' '.join(fields)


def benchmark_row(stats):
    """The CSV fields of a :class:`~qubokcut.analysis.SampleStats`."""
    return (stats.graph_id or '', stats.n, stats.m, stats.k, stats.encoding,
            format_real(stats.t), stats.shots,
            format_real(stats.feasible_fraction),
            '' if stats.n_feasible is None else stats.n_feasible,
            format_real(stats.mean_approx_ratio),
            format_real(stats.std_approx_ratio))


def format_benchmark(stats_rows):
    """Return the benchmark CSV text for a list of SampleStats."""
    return _csv_text(BENCHMARK_FIELDS, [benchmark_row(stats)
                                        for stats in stats_rows])
