"""
Penalty coefficient vectors for the QUBO and R-QUBO models of max k-cut.

Every scheme gives one coefficient per vertex.  The degree-based schemes take
a bound computed from the weighted degrees d+ and d- of each vertex, and add
a strictness margin `eps` to it:

================== ================================= ==========
scheme             bound at vertex v                 model
================== ================================= ==========
tight_qubo         max(d+/k, -3/2 d-)                QUBO
tight_rqubo        d+ - 2 d-                         R-QUBO
conjectured_qubo   max(d+/k, -1/2 d-)                QUBO
conjectured_rqubo  d+ - d-                           R-QUBO
================== ================================= ==========

The tight bounds are proven sufficient for the model optimum to be a max
k-cut optimum, and are the smallest such values on graphs with nonnegative
weights.  The conjectured bounds are believed sufficient for signed weights.

The naive scheme is the uniform value max(n/k, k*m) for unit weights, with
m replaced by the total absolute edge weight for weighted graphs.

When `eps` is None, the margin at each vertex is
``DEFAULT_REL_EPS * (1 + bound)``.

"""
import numpy as np


#: Relative strictness margin used when no explicit eps is given.
DEFAULT_REL_EPS = 1e-6

TIGHT_QUBO = 'tight_qubo'
TIGHT_RQUBO = 'tight_rqubo'
CONJECTURED_QUBO = 'conjectured_qubo'
CONJECTURED_RQUBO = 'conjectured_rqubo'
NAIVE = 'naive'
CUSTOM = 'custom'

#: Schemes whose coefficients are a bound plus a margin.
BOUND_SCHEMES = (TIGHT_QUBO, TIGHT_RQUBO, CONJECTURED_QUBO, CONJECTURED_RQUBO)


class PenaltyError(ValueError):
    """Exception raised for invalid penalty settings or vectors."""
    pass


def interpolated_tag(t):
    """The scheme tag of an interpolated vector."""
    return 'interpolated({!r})'.format(float(t))


class PenaltyVector:
    """Per-vertex penalty coefficients, tagged with the producing scheme."""
    def __init__(self, c, scheme=CUSTOM, epsilon=None):
        """
        Args:

        * c (iterable of float):
            The coefficients, one per vertex, all nonnegative.

        Kwargs:

        * scheme (string):
            Tag naming how the coefficients were made.
        * epsilon (float or None):
            The margin used above the scheme bound.  None means the default
            relative margin (or no margin, for schemes without a bound).

        """
        c = np.array(c, dtype=float).reshape(-1)
        if not np.all(np.isfinite(c)) or np.any(c < 0):
            raise PenaltyError('penalty coefficients must be finite and '
                               'nonnegative, got {}.'.format(c.tolist()))
        c.flags.writeable = False

        #: The coefficient array (read-only).
        self.c = c

        #: The scheme tag.
        self.scheme = scheme

        #: The margin above the scheme bound.
        self.epsilon = epsilon

    def __len__(self):
        return len(self.c)

    def __getitem__(self, vertex):
        return float(self.c[vertex])

    def __iter__(self):
        return iter(self.c.tolist())

    def with_coefficient(self, vertex, value):
        """
        Return a 'custom' copy with one coefficient changed.

        Args:

        * vertex (int):
            0-based vertex.
        * value (float):
            Its new coefficient.

        """
        c = self.c.copy()
        c[vertex] = value
        return PenaltyVector(c, scheme=CUSTOM, epsilon=self.epsilon)

    def __eq__(self, other):
        return (isinstance(other, PenaltyVector) and
                other.scheme == self.scheme and
                other.epsilon == self.epsilon and
                np.array_equal(other.c, self.c))

    def __ne__(self, other):
        return not (self == other)

    def __repr__(self):
        return 'PenaltyVector({}, scheme={!r}, epsilon={!r})'.format(
            self.c.tolist(), self.scheme, self.epsilon)


def _check_k(k):
    if int(k) != k or k < 2:
        raise PenaltyError('number of partitions k={!r} must be an integer '
                           '>= 2.'.format(k))
    return int(k)


def _with_margin(bound, scheme, eps):
    # Add the strictness margin to a bound vector.
    if eps is None:
        margin = DEFAULT_REL_EPS * (1.0 + bound)
    elif eps <= 0:
        raise PenaltyError('eps={!r} must be > 0 for scheme "{}".'.format(
            eps, scheme))
    else:
        margin = eps
    return PenaltyVector(bound + margin, scheme=scheme, epsilon=eps)


def scheme_bound(graph, scheme, k=None):
    """
    Return the per-vertex bound of a degree-based scheme (with no margin).

    Args:

    * graph (:class:`qubokcut.Graph`):
        The graph.
    * scheme (string):
        One of :data:`BOUND_SCHEMES`.

    Kwargs:

    * k (int):
        Number of partitions, needed by the QUBO schemes.

    """
    d_plus = graph.degrees.d_plus
    d_minus = graph.degrees.d_minus
    if scheme == TIGHT_QUBO:
        bound = np.maximum(d_plus / _check_k(k), -1.5 * d_minus)
    elif scheme == CONJECTURED_QUBO:
        bound = np.maximum(d_plus / _check_k(k), -0.5 * d_minus)
    elif scheme == TIGHT_RQUBO:
        bound = d_plus - 2.0 * d_minus
    elif scheme == CONJECTURED_RQUBO:
        bound = d_plus - d_minus
    else:
        raise PenaltyError('"{}" is not a degree-based scheme.'.format(
            scheme))
    # Avoid negative zeros from scaling d- = 0.
    return bound + 0.0


def degree_bound(graph, k):
    """
    The uniform value max-degree / k.

    For unit-weight graphs this bounds every tight QUBO coefficient, in
    contrast to the naive value which grows with the edge count.

    """
    return graph.max_degree / float(_check_k(k))


def penalty_tight_qubo(graph, k, eps=None):
    """
    Coefficients just above max(d+/k, -3/2 d-) at each vertex.

    With these, every optimum of the QUBO model is a max k-cut optimum.

    Args:

    * graph (:class:`qubokcut.Graph`):
        The graph.
    * k (int):
        Number of partitions (>= 2).

    Kwargs:

    * eps (float or None):
        The margin above the bound.

    """
    return _with_margin(scheme_bound(graph, TIGHT_QUBO, k), TIGHT_QUBO, eps)


def penalty_tight_rqubo(graph, eps=None):
    """
    Coefficients just above d+ - 2 d- at each vertex.

    With these, every optimum of the R-QUBO model is a max k-cut optimum.

    """
    return _with_margin(scheme_bound(graph, TIGHT_RQUBO), TIGHT_RQUBO, eps)


def penalty_conjectured_qubo(graph, k, eps=None):
    """Coefficients just above max(d+/k, -1/2 d-) at each vertex."""
    return _with_margin(scheme_bound(graph, CONJECTURED_QUBO, k),
                        CONJECTURED_QUBO, eps)


def penalty_conjectured_rqubo(graph, eps=None):
    """Coefficients just above d+ - d- at each vertex."""
    return _with_margin(scheme_bound(graph, CONJECTURED_RQUBO),
                        CONJECTURED_RQUBO, eps)


def penalty_naive(graph, k):
    """
    The uniform coefficient max(n/k, k * sum|w|).

    On unit-weight graphs sum|w| is the edge count m, which gives the usual
    max(n/k, k*m).

    """
    k = _check_k(k)
    value = max(graph.n / float(k), k * graph.total_abs_weight)
    return PenaltyVector(np.full(graph.n, value), scheme=NAIVE, epsilon=0.0)


def penalty_interpolate(c_tight, c_naive, t):
    """
    Blend two coefficient vectors as (1 - t) * c_tight + t * c_naive.

    Args:

    * c_tight, c_naive (:class:`PenaltyVector`):
        The end points, of equal length.
    * t (float):
        The blend parameter, in [0, 1].

    """
    if len(c_tight) != len(c_naive):
        raise PenaltyError('cannot interpolate vectors of lengths {} and '
                           '{}.'.format(len(c_tight), len(c_naive)))
    if not 0 <= t <= 1:
        raise PenaltyError('interpolation parameter t={!r} is not in '
                           '[0, 1].'.format(t))
    if t == 0:
        c = c_tight.c
    elif t == 1:
        c = c_naive.c
    else:
        c = (1.0 - t) * c_tight.c + t * c_naive.c
    return PenaltyVector(c, scheme=interpolated_tag(t),
                         epsilon=c_tight.epsilon)


def penalty_vector(graph, scheme, k, eps=None, encoding='one_hot', t=None):
    """
    Make a penalty vector by scheme name.

    Args:

    * graph (:class:`qubokcut.Graph`):
        The graph.
    * scheme (string):
        A full scheme tag (e.g. 'tight_rqubo', 'naive'), or one of the short
        names 'tight', 'conjectured' or 'interp', which are resolved against
        the encoding.  'interp' blends the encoding's tight scheme with the
        naive one.
    * k (int):
        Number of partitions.

    Kwargs:

    * eps (float or None):
        Margin for the bound schemes.
    * encoding (string):
        'one_hot' (QUBO) or 'reduced' (R-QUBO).
    * t (float):
        Blend parameter, required for 'interp'.

    """
    if encoding not in ('one_hot', 'reduced'):
        raise PenaltyError('unknown encoding "{}", expected "one_hot" or '
                           '"reduced".'.format(encoding))
    suffix = 'rqubo' if encoding == 'reduced' else 'qubo'
    if scheme in ('tight', 'conjectured'):
        scheme = '{}_{}'.format(scheme, suffix)
    if scheme == TIGHT_QUBO:
        result = penalty_tight_qubo(graph, k, eps)
    elif scheme == TIGHT_RQUBO:
        result = penalty_tight_rqubo(graph, eps)
    elif scheme == CONJECTURED_QUBO:
        result = penalty_conjectured_qubo(graph, k, eps)
    elif scheme == CONJECTURED_RQUBO:
        result = penalty_conjectured_rqubo(graph, eps)
    elif scheme == NAIVE:
        result = penalty_naive(graph, k)
    elif scheme in ('interp', 'interpolated'):
        if t is None:
            raise PenaltyError('scheme "interp" needs a value for t.')
        tight = penalty_vector(graph, 'tight', k, eps=eps, encoding=encoding)
        result = penalty_interpolate(tight, penalty_naive(graph, k), t)
    else:
        raise PenaltyError('unknown penalty scheme "{}".'.format(scheme))
    return result
