"""
Quadratic binary models of max k-cut, and the assignments they encode.

Two encodings of a vertex's partition are supported:

 * 'one_hot' : k bits per vertex, feasible when exactly one is set.  This is
   the encoding of the QUBO model built by :func:`build_qubo`.
 * 'reduced' : k-1 bits per vertex, feasible when at most one is set, with
   an all-zero row meaning the last partition.  This is the encoding of the
   R-QUBO model built by :func:`build_rqubo`.

Variables are numbered row-major by vertex: the bit for 0-based vertex v and
0-based partition j is ``v * width + j``, where width is k (one_hot) or k-1
(reduced).

Models are held in maximise form, as a constant plus linear and pairwise
terms.  :meth:`QuboModel.negated` and :meth:`QuboModel.to_bqm` give the
minimise form expected by most QUBO tools.

"""
from collections import defaultdict
from types import MappingProxyType

import dimod
import numpy as np


ONE_HOT = 'one_hot'
REDUCED = 'reduced'
ENCODINGS = (ONE_HOT, REDUCED)

MAXIMIZE = 'max'
MINIMIZE = 'min'


class ModelError(ValueError):
    """Exception raised for inconsistent model or assignment data."""
    pass


class InfeasibleAssignmentError(ModelError):
    """Exception raised when an operation needs a feasible assignment."""
    pass


class Encoding:
    """The bit layout of a vertex-to-partition assignment."""
    def __init__(self, kind, n, k):
        """
        Args:

        * kind (string):
            'one_hot' or 'reduced'.
        * n (int):
            Number of vertices.
        * k (int):
            Number of partitions (>= 2).

        """
        if kind not in ENCODINGS:
            raise ModelError('unknown encoding "{}": expected one of '
                             '{}.'.format(kind, ', '.join(ENCODINGS)))
        if int(k) != k or k < 2:
            raise ModelError('number of partitions k={!r} must be an '
                             'integer >= 2.'.format(k))
        self.kind = kind
        self.n = int(n)
        self.k = int(k)

    @property
    def width(self):
        """Number of bits per vertex."""
        return self.k if self.kind == ONE_HOT else self.k - 1

    @property
    def num_vars(self):
        """Total number of bits."""
        return self.n * self.width

    def var(self, vertex, partition):
        """The variable index of a 0-based (vertex, partition) pair."""
        if not 0 <= partition < self.width:
            raise ModelError('partition {} has no variable in a {} encoding '
                             'with k={}.'.format(partition, self.kind,
                                                 self.k))
        return vertex * self.width + partition

    def index_map(self):
        """Return a dict mapping (vertex, partition) to variable index."""
        return {(v, j): self.var(v, j)
                for v in range(self.n) for j in range(self.width)}

    def __eq__(self, other):
        return (isinstance(other, Encoding) and
                (other.kind, other.n, other.k) == (self.kind, self.n, self.k))

    def __ne__(self, other):
        return not (self == other)

    def __repr__(self):
        return 'Encoding({!r}, n={}, k={})'.format(self.kind, self.n, self.k)


class QuboModel:
    """
    A quadratic form in binary variables.

    The value at a bit vector x is
    ``constant + sum(linear[i] * x[i]) + sum(quadratic[i, j] * x[i] * x[j])``.

    """
    def __init__(self, num_vars, linear=None, quadratic=None, constant=0.0,
                 sense=MAXIMIZE, encoding=None):
        """
        Args:

        * num_vars (int):
            Number of binary variables.

        Kwargs:

        * linear (dict of int: float):
            Linear coefficients.
        * quadratic (dict of (int, int): float):
            Pairwise coefficients, keyed by distinct variable pairs.  A pair
            given in both orders is summed.
        * constant (float):
            Constant offset.
        * sense (string):
            'max' or 'min'.
        * encoding (:class:`Encoding`):
            The assignment layout of the variables, if they encode one.

        """
        if sense not in (MAXIMIZE, MINIMIZE):
            raise ModelError('unknown objective sense "{}".'.format(sense))
        if encoding is not None and encoding.num_vars != num_vars:
            raise ModelError('encoding {!r} needs {} variables, not '
                             '{}.'.format(encoding, encoding.num_vars,
                                          num_vars))

        lin = {}
        for i, coeff in (linear or {}).items():
            self._check_index(i, num_vars)
            lin[i] = lin.get(i, 0.0) + float(coeff)
        quad = {}
        for (i, j), coeff in (quadratic or {}).items():
            self._check_index(i, num_vars)
            self._check_index(j, num_vars)
            if i == j:
                raise ModelError('quadratic term ({0}, {0}) is not a distinct '
                                 'pair.'.format(i))
            key = (min(i, j), max(i, j))
            quad[key] = quad.get(key, 0.0) + float(coeff)

        self._num_vars = int(num_vars)
        self._linear = MappingProxyType(lin)
        self._quadratic = MappingProxyType(quad)
        self._constant = float(constant)
        self._sense = sense
        self._encoding = encoding
        self._arrays = None

    @staticmethod
    def _check_index(i, num_vars):
        if not 0 <= i < num_vars:
            raise ModelError('variable {} is out of range 0..{}.'.format(
                i, num_vars - 1))

    @property
    def num_vars(self):
        return self._num_vars

    @property
    def linear(self):
        """Read-only mapping of linear coefficients."""
        return self._linear

    @property
    def quadratic(self):
        """Read-only mapping of pairwise coefficients, keys (i, j), i < j."""
        return self._quadratic

    @property
    def constant(self):
        return self._constant

    @property
    def sense(self):
        return self._sense

    @property
    def encoding(self):
        return self._encoding

    def arrays(self):
        """
        Return the model as arrays (constant, h, Q).

        h is the linear coefficient vector and Q the strictly upper-triangular
        matrix of pairwise coefficients.

        """
        if self._arrays is None:
            h = np.zeros(self._num_vars)
            for i, coeff in self._linear.items():
                h[i] = coeff
            q = np.zeros((self._num_vars, self._num_vars))
            for (i, j), coeff in self._quadratic.items():
                q[i, j] = coeff
            h.flags.writeable = False
            q.flags.writeable = False
            self._arrays = (self._constant, h, q)
        return self._arrays

    def evaluate(self, bits):
        """Return the model value at one bit vector."""
        bits = np.asarray(bits).reshape(-1)
        if len(bits) != self._num_vars:
            raise ModelError('{} bits given for a model with {} '
                             'variables.'.format(len(bits), self._num_vars))
        value = self._constant
        for i, coeff in self._linear.items():
            if bits[i]:
                value += coeff
        for (i, j), coeff in self._quadratic.items():
            if bits[i] and bits[j]:
                value += coeff
        return float(value)

    def evaluate_many(self, bits):
        """Return the model values at each row of a 2-D bit array."""
        bits = np.asarray(bits, dtype=float)
        if bits.ndim != 2 or bits.shape[1] != self._num_vars:
            raise ModelError('bit array of shape {} does not match a model '
                             'with {} variables.'.format(bits.shape,
                                                         self._num_vars))
        constant, h, q = self.arrays()
        return constant + bits @ h + np.einsum('ij,ij->i', bits @ q, bits)

    def negated(self):
        """Return the equivalent model with the opposite sense."""
        sense = MINIMIZE if self._sense == MAXIMIZE else MAXIMIZE
        return QuboModel(self._num_vars,
                         {i: -c for i, c in self._linear.items()},
                         {ij: -c for ij, c in self._quadratic.items()},
                         constant=-self._constant, sense=sense,
                         encoding=self._encoding)

    def to_bqm(self):
        """
        Return a :class:`dimod.BinaryQuadraticModel` of this model.

        The result is in dimod's minimise (energy) form, so for a 'max' model
        the energy of any sample is minus its value here.

        """
        model = self if self._sense == MINIMIZE else self.negated()
        linear = {i: model.linear.get(i, 0.0) for i in range(self._num_vars)}
        return dimod.BinaryQuadraticModel(linear, dict(model.quadratic),
                                          model.constant, dimod.BINARY)

    def __repr__(self):
        return ('QuboModel({}, sense={!r}, constant={!r}, {} linear, {} '
                'quadratic{})'.format(
                    self._num_vars, self._sense, self._constant,
                    len(self._linear), len(self._quadratic),
                    ', encoding={!r}'.format(self._encoding)
                    if self._encoding else ''))


def evaluate(model, bits):
    """Return the value of a :class:`QuboModel` at a bit vector."""
    return model.evaluate(bits)


def _check_penalty(graph, c):
    if len(c) != graph.n:
        raise ModelError('penalty vector has {} coefficients, but the graph '
                         'has {} vertices.'.format(len(c), graph.n))


def build_qubo(graph, k, c):
    """
    Build the one-hot QUBO model of max k-cut.

    The model value is
    ``sum_E w_uv (1 - sum_j x_uj x_vj) - sum_V c_v (sum_j x_vj - 1)^2``.
    Expanding the square with x*x = x gives a constant -c_v, linear terms +c_v
    and pairwise terms -2 c_v for each vertex.

    Args:

    * graph (:class:`qubokcut.Graph`):
        The graph.
    * k (int):
        Number of partitions.
    * c (:class:`qubokcut.penalty.PenaltyVector` or sequence):
        Penalty coefficients, one per vertex.

    """
    _check_penalty(graph, c)
    enc = Encoding(ONE_HOT, graph.n, k)
    linear = defaultdict(float)
    quadratic = defaultdict(float)
    constant = graph.total_weight
    for u, v, w in graph.edges:
        for j in range(k):
            quadratic[enc.var(u, j), enc.var(v, j)] -= w
    for v in range(graph.n):
        c_v = float(c[v])
        constant -= c_v
        for i in range(k):
            linear[enc.var(v, i)] += c_v
            for j in range(i + 1, k):
                quadratic[enc.var(v, i), enc.var(v, j)] -= 2 * c_v
    return QuboModel(enc.num_vars, linear, quadratic, constant,
                     sense=MAXIMIZE, encoding=enc)


def build_rqubo(graph, k, c):
    """
    Build the reduced (R-QUBO) model of max k-cut, with k-1 bits per vertex.

    The model value is
    ``sum_E w_uv [1 - sum_j x_uj x_vj - (1 - s_u)(1 - s_v)]
    - sum_V c_v sum_{i<j} x_vi x_vj``, where s_v is the row sum of vertex v.
    Per edge the bracket expands to
    ``s_u + s_v - sum_j x_uj x_vj - sum_{i,j} x_ui x_vj``, so the constants
    cancel: each edge gives linear terms +w on both rows, -2w between equal
    partitions and -w between different ones.

    Args:

    * graph (:class:`qubokcut.Graph`):
        The graph.
    * k (int):
        Number of partitions.
    * c (:class:`qubokcut.penalty.PenaltyVector` or sequence):
        Penalty coefficients, one per vertex.

    """
    _check_penalty(graph, c)
    enc = Encoding(REDUCED, graph.n, k)
    width = enc.width
    linear = defaultdict(float)
    quadratic = defaultdict(float)
    for u, v, w in graph.edges:
        for j in range(width):
            linear[enc.var(u, j)] += w
            linear[enc.var(v, j)] += w
            for i in range(width):
                coeff = -2 * w if i == j else -w
                quadratic[enc.var(u, i), enc.var(v, j)] += coeff
    for v in range(graph.n):
        c_v = float(c[v])
        for i in range(width):
            for j in range(i + 1, width):
                quadratic[enc.var(v, i), enc.var(v, j)] -= c_v
    return QuboModel(enc.num_vars, linear, quadratic, 0.0,
                     sense=MAXIMIZE, encoding=enc)


class Assignment:
    """
    A vertex-to-partition assignment, as a bit matrix in some encoding.

    The assignment need not be feasible: rows may have several bits set (or,
    for one_hot, none).

    """
    def __init__(self, bits, encoding):
        """
        Args:

        * bits (array-like):
            An n x width 0/1 matrix, or a flat vector of n * width bits.
        * encoding (:class:`Encoding`):
            The layout of the bits.

        """
        bits = np.array(bits, dtype=np.int8)
        if bits.size != encoding.num_vars:
            raise ModelError('{} bits given for encoding {!r}.'.format(
                bits.size, encoding))
        bits = bits.reshape(encoding.n, encoding.width)
        if np.any((bits != 0) & (bits != 1)):
            raise ModelError('assignment bits must all be 0 or 1.')
        bits.flags.writeable = False
        self._bits = bits
        self._encoding = encoding

    @classmethod
    def from_partitions(cls, partitions, k, kind=ONE_HOT):
        """
        Make a feasible assignment from per-vertex partition numbers.

        Args:

        * partitions (sequence of int):
            The 0-based partition of each vertex.
        * k (int):
            Number of partitions.

        Kwargs:

        * kind (string):
            The encoding to use.

        """
        encoding = Encoding(kind, len(partitions), k)
        bits = np.zeros((encoding.n, encoding.width), dtype=np.int8)
        for v, part in enumerate(partitions):
            if not 0 <= part < k:
                raise ModelError('partition {} of vertex {} is out of range '
                                 'for k={}.'.format(part, v, k))
            if part < encoding.width:
                bits[v, part] = 1
        return cls(bits, encoding)

    @property
    def bits(self):
        """The n x width bit matrix (read-only)."""
        return self._bits

    @property
    def flat(self):
        """The bits as a flat vector in variable order."""
        return self._bits.reshape(-1)

    @property
    def encoding(self):
        return self._encoding

    @property
    def n(self):
        return self._encoding.n

    @property
    def k(self):
        return self._encoding.k

    @property
    def row_sums(self):
        """Number of bits set for each vertex."""
        return self._bits.sum(axis=1)

    def feasible_rows(self):
        """Boolean array saying which vertices are validly assigned."""
        sums = self.row_sums
        if self._encoding.kind == ONE_HOT:
            return sums == 1
        return sums <= 1

    @property
    def feasible(self):
        """Whether every vertex is validly assigned."""
        return bool(np.all(self.feasible_rows()))

    @property
    def partitions(self):
        """
        The 0-based partition of each vertex.

        Raises :class:`InfeasibleAssignmentError` if not feasible.

        """
        if not self.feasible:
            bad = np.flatnonzero(~self.feasible_rows()).tolist()
            raise InfeasibleAssignmentError(
                'assignment is infeasible at vertices {}.'.format(bad))
        labels = np.argmax(self._bits, axis=1)
        if self._encoding.kind == REDUCED:
            labels[self.row_sums == 0] = self._encoding.k - 1
        return tuple(int(label) for label in labels)

    def __eq__(self, other):
        return (isinstance(other, Assignment) and
                other.encoding == self.encoding and
                np.array_equal(other.bits, self.bits))

    def __ne__(self, other):
        return not (self == other)

    def __repr__(self):
        return 'Assignment({}, {!r})'.format(self._bits.tolist(),
                                             self._encoding)


def decode(encoding, bits):
    """
    Read a bit vector as an :class:`Assignment`.

    Args:

    * encoding (:class:`Encoding` or :class:`QuboModel`):
        The layout, or a model carrying one.
    * bits (array-like):
        The bits, flat in variable order.

    """
    if isinstance(encoding, QuboModel):
        if encoding.encoding is None:
            raise ModelError('model {!r} has no assignment '
                             'encoding.'.format(encoding))
        encoding = encoding.encoding
    return Assignment(bits, encoding)


def lift(assignment):
    """
    Convert a feasible reduced assignment to the one_hot encoding.

    The last-partition bit of each vertex is one minus its row sum.

    """
    enc = assignment.encoding
    if enc.kind == ONE_HOT:
        return assignment
    if not assignment.feasible:
        bad = np.flatnonzero(~assignment.feasible_rows()).tolist()
        raise InfeasibleAssignmentError(
            'cannot lift: vertices {} are in more than one '
            'partition.'.format(bad))
    last = 1 - assignment.row_sums
    bits = np.column_stack([assignment.bits, last])
    return Assignment(bits, Encoding(ONE_HOT, enc.n, enc.k))


def cut_weight(graph, assignment):
    """
    Return the total weight of edges between different partitions.

    Args:

    * graph (:class:`qubokcut.Graph`):
        The graph.
    * assignment (:class:`Assignment` or sequence of int):
        A feasible assignment, or the 0-based partition of each vertex.

    """
    if isinstance(assignment, Assignment):
        if assignment.n != graph.n:
            raise ModelError('assignment has {} vertices, but the graph has '
                             '{}.'.format(assignment.n, graph.n))
        labels = assignment.partitions
    else:
        labels = assignment
    return float(sum(w for u, v, w in graph.edges if labels[u] != labels[v]))


def objective_parts(graph, k, c, assignment):
    """
    Evaluate the model objective directly from its closed form, in two parts.

    Args:

    * graph (:class:`qubokcut.Graph`):
        The graph.
    * k (int):
        Number of partitions.
    * c (sequence of float):
        Penalty coefficients.
    * assignment (:class:`Assignment`):
        The point to evaluate, in either encoding.

    Returns:
        (q1, q2), the edge part and the penalty part.  Their sum is the QUBO
        value (one_hot) or the R-QUBO value (reduced).

    """
    if assignment.k != k:
        raise ModelError('assignment is for k={}, not k={}.'.format(
            assignment.k, k))
    _check_penalty(graph, c)
    x = assignment.bits.astype(float)
    sums = x.sum(axis=1)
    c = np.asarray(c, dtype=float)
    q1 = 0.0
    if assignment.encoding.kind == ONE_HOT:
        for u, v, w in graph.edges:
            q1 += w * (1.0 - x[u] @ x[v])
        q2 = -float(np.sum(c * (sums - 1.0) ** 2))
    else:
        for u, v, w in graph.edges:
            q1 += w * (1.0 - x[u] @ x[v] - (1.0 - sums[u]) * (1.0 - sums[v]))
        q2 = -float(np.sum(c * sums * (sums - 1.0) / 2.0))
    return float(q1), q2
