"""
Exact and heuristic solvers for small models and graphs.

 * :func:`solve_exhaustive` enumerates every bit vector of a
   :class:`~qubokcut.model.QuboModel`.
 * :func:`solve_maxkcut_oracle` enumerates every k-partition of a graph,
   independently of any model, giving the reference max k-cut optimum.
 * :func:`solve_anneal` is a seeded single-flip Metropolis annealer, for
   sampling models too large to enumerate.

Work is split into blocks that may be handed to a thread pool with the
`workers` keyword.  Results never depend on the number of workers: blocks are
reduced in order, and each annealing shot draws from its own random stream,
keyed by the master seed and the shot index.

"""
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
import configparser
import io
import logging

import numpy as np

from qubokcut.generate import rng
from qubokcut.model import MAXIMIZE, cut_weight, decode


logger = logging.getLogger(__name__)


#: Absolute tolerance for counting tied optima.
DEFAULT_TOL = 1e-9

#: Largest model size that :func:`solve_exhaustive` will ever enumerate.
HARD_CAP_VARS = 30

#: Default limit on model size for :func:`solve_exhaustive`.
DEFAULT_CAP_VARS = HARD_CAP_VARS

#: Default limit on k**n for :func:`solve_maxkcut_oracle`.
DEFAULT_ORACLE_CAP = 10 ** 8

#: Default limit on how many tied optima are listed (all are counted).
DEFAULT_MAX_OPTIMA = 1 << 16

_BLOCK_STATES = 1 << 16
_BLOCK_SHOTS = 256


class CapacityError(ValueError):
    """Exception raised when an instance is too large to enumerate."""
    pass


class AnnealParamsError(ValueError):
    """Exception raised for invalid annealing parameters."""
    pass


#: The result of an exhaustive search.  `optima` lists the first (up to
#: max_optima) optimal bit vectors in enumeration order, and `num_optima`
#: counts them all.
ExactResult = namedtuple('ExactResult',
                         'optimum optima states_visited num_optima')

#: The result of the max k-cut oracle: the optimum cut weight, and all the
#: optimal partitions as tuples of 0-based partition numbers.
OracleResult = namedtuple('OracleResult', 'optimum partitions')

#: One annealer sample.  `cut` is None unless the sample is feasible.
Sample = namedtuple('Sample', 'bits value feasible cut')


def ordered_map(function, items, workers):
    """Map a function over items, in order, on a thread pool if workers > 1."""
    if workers is None or workers <= 1:
        return list(map(function, items))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(function, items))


def _blocks(total, size):
    return [(start, min(start + size, total))
            for start in range(0, total, size)]


def _state_bits(start, stop, num_vars):
    # Bit i of state s is variable i.
    states = np.arange(start, stop, dtype=np.int64)
    return ((states[:, None] >> np.arange(num_vars)) & 1).astype(np.int8)


def solve_exhaustive(model, tol=DEFAULT_TOL, cap_vars=DEFAULT_CAP_VARS,
                     max_optima=DEFAULT_MAX_OPTIMA, workers=1):
    """
    Find the global optimum of a model by enumerating all bit vectors.

    Args:

    * model (:class:`~qubokcut.model.QuboModel`):
        The model, maximised or minimised according to its sense.

    Kwargs:

    * tol (float):
        Bit vectors within this of the optimum all count as optima.
    * cap_vars (int):
        Refuse models with more variables than this (never more than
        :data:`HARD_CAP_VARS`).
    * max_optima (int):
        Limit on the number of optima listed.
    * workers (int):
        Number of threads to use.

    Returns:
        An :data:`ExactResult`.

    """
    num_vars = model.num_vars
    cap = min(cap_vars, HARD_CAP_VARS)
    if num_vars > cap:
        raise CapacityError('model has {} variables, more than the '
                            'exhaustive limit of {}.'.format(num_vars, cap))
    if tol < 0:
        raise ValueError('tolerance {!r} is negative.'.format(tol))
    sign = 1.0 if model.sense == MAXIMIZE else -1.0
    total = 1 << num_vars
    blocks = _blocks(total, _BLOCK_STATES)
    logger.debug('enumerating %d states of a %d-variable model in %d '
                 'blocks.', total, num_vars, len(blocks))

    def block_values(block):
        return sign * model.evaluate_many(_state_bits(block[0], block[1],
                                                      num_vars))

    # First pass finds the best value; the second collects the ties, only
    # revisiting blocks that can contain one.
    block_bests = ordered_map(
        lambda block: float(block_values(block).max()), blocks, workers)
    best = max(block_bests)
    optima = []
    num_optima = 0
    for block, block_best in zip(blocks, block_bests):
        if block_best < best - tol:
            continue
        values = block_values(block)
        tied = np.flatnonzero(values >= best - tol)
        num_optima += len(tied)
        for state in tied[:max(0, max_optima - len(optima))]:
            optima.append(tuple(int(bit) for bit in _state_bits(
                block[0] + state, block[0] + state + 1, num_vars)[0]))
    return ExactResult(sign * best, tuple(optima), total, num_optima)


def _canonical(labels):
    # Renumber partitions in order of first appearance.
    mapping = {}
    return tuple(mapping.setdefault(label, len(mapping)) for label in labels)


def solve_maxkcut_oracle(graph, k, canonical=False, cap=DEFAULT_ORACLE_CAP,
                         tol=DEFAULT_TOL, workers=1):
    """
    Solve max k-cut exactly, by enumerating every k-partition.

    Args:

    * graph (:class:`qubokcut.Graph`):
        The graph.
    * k (int):
        Number of partitions (>= 2).

    Kwargs:

    * canonical (bool):
        If set, list each optimal partition once, up to renumbering of the
        partitions (classes numbered in order of their smallest vertex).
    * cap (int):
        Refuse instances where k**n exceeds this.
    * tol (float):
        Partitions within this of the optimum all count as optimal.
    * workers (int):
        Number of threads to use.

    Returns:
        An :data:`OracleResult`.

    """
    if int(k) != k or k < 2:
        raise ValueError('number of partitions k={!r} must be an integer '
                         '>= 2.'.format(k))
    n = graph.n
    total = k ** n
    if total > cap:
        raise CapacityError('{}**{} = {} partitions is more than the oracle '
                            'limit of {}.'.format(k, n, total, cap))
    us, vs = graph.endpoints
    weights = graph.weights
    powers = k ** np.arange(n, dtype=np.int64)
    blocks = _blocks(total, _BLOCK_STATES)

    def block_labels(block):
        states = np.arange(block[0], block[1], dtype=np.int64)
        return (states[:, None] // powers) % k

    def block_cuts(block):
        labels = block_labels(block)
        return (labels[:, us] != labels[:, vs]) @ weights

    block_bests = ordered_map(
        lambda block: float(block_cuts(block).max()), blocks, workers)
    best = max(block_bests)
    partitions = []
    seen = set()
    for block, block_best in zip(blocks, block_bests):
        if block_best < best - tol:
            continue
        labels = block_labels(block)
        for row in labels[block_cuts(block) >= best - tol]:
            partition = tuple(int(label) for label in row)
            if canonical:
                partition = _canonical(partition)
                if partition in seen:
                    continue
                seen.add(partition)
            partitions.append(partition)
    return OracleResult(best, tuple(partitions))


class AnnealParams:
    """
    Settings for :func:`solve_anneal`.

    The temperature at sweep s is ``t_start * cooling**s``, never falling
    below t_end.  Unset values are resolved against each model:

     * t_start defaults to the largest absolute model coefficient;
     * t_end defaults to 1e-3 * t_start;
     * cooling defaults to the factor that reaches t_end at the last sweep.

    """
    #: Names accepted in a config file.
    KEYS = ('sweeps', 't_start', 't_end', 'cooling')

    def __init__(self, sweeps=100, t_start=None, t_end=None, cooling=None):
        if int(sweeps) != sweeps or sweeps < 1:
            raise AnnealParamsError('sweeps={!r} must be an integer '
                                    '>= 1.'.format(sweeps))
        if cooling is not None and not 0 < cooling < 1:
            raise AnnealParamsError('cooling={!r} must be in (0, '
                                    '1).'.format(cooling))
        for name, value in (('t_start', t_start), ('t_end', t_end)):
            if value is not None and not value > 0:
                raise AnnealParamsError('{}={!r} must be > 0.'.format(
                    name, value))
        if t_start is not None and t_end is not None and not t_start > t_end:
            raise AnnealParamsError('t_start={!r} must exceed '
                                    't_end={!r}.'.format(t_start, t_end))
        self.sweeps = int(sweeps)
        self.t_start = None if t_start is None else float(t_start)
        self.t_end = None if t_end is None else float(t_end)
        self.cooling = None if cooling is None else float(cooling)

    @classmethod
    def from_config(cls, source, **overrides):
        """
        Read parameters from 'key = value' lines.

        Args:

        * source (string or file-like):
            A path, or an open text stream.

        Kwargs:

        * overrides:
            Values that take precedence over the file (None values are
            ignored).

        """
        if isinstance(source, str):
            with io.open(source, encoding='utf-8') as stream:
                text = stream.read()
        else:
            text = source.read()
        parser = configparser.ConfigParser()
        parser.read_string('[anneal]\n' + text)
        section = parser['anneal']
        unknown = set(section.keys()) - set(cls.KEYS)
        if unknown:
            raise AnnealParamsError('unknown annealing setting(s): '
                                    '{}.'.format(', '.join(sorted(unknown))))
        settings = {}
        if 'sweeps' in section:
            settings['sweeps'] = section.getint('sweeps')
        for key in ('t_start', 't_end', 'cooling'):
            if key in section:
                settings[key] = section.getfloat(key)
        settings.update((key, value) for key, value in overrides.items()
                        if value is not None)
        return cls(**settings)

    def resolve(self, model):
        """
        Return fully specified parameters for a model.

        """
        t_start = self.t_start
        if t_start is None:
            _, h, q = model.arrays()
            scale = max(np.abs(h).max(initial=0.0), np.abs(q).max(initial=0.0))
            t_start = scale if scale > 0 else 1.0
        t_end = self.t_end
        if t_end is None:
            t_end = 1e-3 * t_start
        if not t_start > t_end:
            raise AnnealParamsError('t_start={!r} must exceed '
                                    't_end={!r}.'.format(t_start, t_end))
        cooling = self.cooling
        if cooling is None:
            if self.sweeps > 1:
                cooling = (t_end / t_start) ** (1.0 / (self.sweeps - 1))
            else:
                cooling = 0.5
        return AnnealParams(self.sweeps, t_start, t_end, cooling)

    def __eq__(self, other):
        return (isinstance(other, AnnealParams) and
                [getattr(other, key) for key in self.KEYS] ==
                [getattr(self, key) for key in self.KEYS])

    def __ne__(self, other):
        return not (self == other)

    def __repr__(self):
        return 'AnnealParams({})'.format(', '.join(
            '{}={!r}'.format(key, getattr(self, key)) for key in self.KEYS))


def anneal_schedule(model, params):
    """Return the temperature of each sweep, for a model and parameters."""
    params = params.resolve(model)
    temps = params.t_start * params.cooling ** np.arange(params.sweeps)
    return np.maximum(temps, params.t_end)


def _anneal_block(model, temps, seed, shots):
    # Anneal a block of shots together.  Each shot draws its start point and
    # acceptance variates from its own stream.
    num_vars = model.num_vars
    sign = 1.0 if model.sense == MAXIMIZE else -1.0
    _, h, q = model.arrays()
    h = sign * h
    couplings = sign * (q + q.T)
    streams = [rng(seed, shot) for shot in shots]
    x = np.array([stream.integers(0, 2, size=num_vars)
                  for stream in streams], dtype=float).reshape(len(shots),
                                                               num_vars)
    uniforms = np.array([stream.random((len(temps), num_vars))
                         for stream in streams]).reshape(
        len(shots), len(temps), num_vars)
    field = h + x @ couplings
    for i_sweep, temp in enumerate(temps):
        for i_var in range(num_vars):
            step = 1.0 - 2.0 * x[:, i_var]
            gain = step * field[:, i_var]
            accept = ((gain >= 0) |
                      (uniforms[:, i_sweep, i_var] <
                       np.exp(np.minimum(gain, 0.0) / temp)))
            step = np.where(accept, step, 0.0)
            x[:, i_var] += step
            field += step[:, None] * couplings[i_var][None, :]
    return x.astype(np.int8)


def solve_anneal(model, params=None, shots=1, seed=0, graph=None, workers=1):
    """
    Sample a model by simulated annealing.

    Each shot starts from a random bit vector and makes `params.sweeps`
    sweeps of single-bit Metropolis moves, with geometric cooling.

    Args:

    * model (:class:`~qubokcut.model.QuboModel`):
        The model to sample.

    Kwargs:

    * params (:class:`AnnealParams`):
        Annealing settings (defaults if None).
    * shots (int):
        Number of independent restarts.
    * seed (int):
        Master random seed.
    * graph (:class:`qubokcut.Graph`):
        If given, the cut of each feasible sample is computed on it.
        Otherwise the cut is taken as the sample value, which equals the cut
        at feasible points.
    * workers (int):
        Number of threads to use.

    Returns:
        A list of :data:`Sample`, in shot order.  Models without an
        assignment encoding give samples that all count as feasible.

    """
    if int(shots) != shots or shots < 1:
        raise ValueError('shots={!r} must be an integer >= 1.'.format(shots))
    params = AnnealParams() if params is None else params
    temps = anneal_schedule(model, params)
    logger.debug('annealing %d shots: %r', shots, params.resolve(model))
    blocks = _blocks(int(shots), _BLOCK_SHOTS)
    results = ordered_map(
        lambda block: _anneal_block(model, temps, seed, range(*block)),
        blocks, workers)

    samples = []
    for bits in (row for block in results for row in block):
        bits = tuple(int(bit) for bit in bits)
        value = model.evaluate(bits)
        if model.encoding is None:
            feasible, cut = True, value
        else:
            assignment = decode(model, bits)
            feasible = assignment.feasible
            cut = None
            if feasible:
                cut = (value if graph is None
                       else cut_weight(graph, assignment))
        samples.append(Sample(bits, value, feasible, cut))
    return samples
