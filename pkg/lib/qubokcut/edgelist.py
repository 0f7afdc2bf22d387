"""
Module for reading and writing graphs in edge-list text form.

The format is line-based UTF-8 text:

 * lines starting with '#' are comments, and blank lines are ignored;
 * the first other line is "n m", the vertex and edge counts;
 * then come m lines "u v w", with 1-based vertex numbers and a real weight.

For example, the complete graph on 4 vertices with unit weights::

    # K4
    4 6
    1 2 1
    1 3 1
    1 4 1
    2 3 1
    2 4 1
    3 4 1

Zero-weight edges are dropped (they contribute nothing to any cut), with a
logged warning, and counted in :attr:`qubokcut.Graph.dropped_edges`.

"""
import io
import logging

from qubokcut import Graph, GraphError, _check_edge
from qubokcut.formats import format_real


logger = logging.getLogger(__name__)


class GraphFormatError(GraphError):
    """Exception raised when edge-list text cannot be read as a graph."""
    def __init__(self, line_number, message):
        msg = 'line {}: {}'.format(line_number, message)
        super(GraphFormatError, self).__init__(msg)
        #: The 1-based line number where the problem was found.
        self.line_number = line_number


def _content_lines(text):
    # Yield (line_number, fields) for all non-comment, non-blank lines.
    for i_line, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        yield i_line, line.split()


def _parse_header(i_line, fields):
    if len(fields) != 2:
        raise GraphFormatError(i_line, 'expected "n m", got {} '
                                       'fields.'.format(len(fields)))
    try:
        n, m = int(fields[0]), int(fields[1])
    except ValueError:
        raise GraphFormatError(i_line, 'header "{}" is not two '
                                       'integers.'.format(' '.join(fields)))
    if n < 1 or m < 0:
        raise GraphFormatError(i_line, 'invalid counts n={}, m={}.'.format(
            n, m))
    return n, m


def _parse_edge(i_line, fields):
    if len(fields) != 3:
        raise GraphFormatError(i_line, 'expected "u v w", got {} '
                                       'fields.'.format(len(fields)))
    try:
        u, v = int(fields[0]), int(fields[1])
        w = float(fields[2])
    except ValueError:
        raise GraphFormatError(i_line, 'edge "{}" is not two integers and '
                                       'a real.'.format(' '.join(fields)))
    return u, v, w


def load_graph(text, name=None):
    """
    Make a :class:`qubokcut.Graph` from edge-list text.

    Args:

    * text (string):
        The edge-list document.

    Kwargs:

    * name (string):
        A name for the resulting graph.

    Returns:
        A validated graph.

    Any malformed line, self-loop, duplicate edge or out-of-range vertex
    raises a :class:`GraphFormatError` giving the line number.

    """
    lines = _content_lines(text)
    try:
        i_line, fields = next(lines)
    except StopIteration:
        raise GraphFormatError(0, 'no "n m" header line found.')
    n, m = _parse_header(i_line, fields)

    edges = []
    seen = set()
    dropped = 0
    n_edge_lines = 0
    for i_line, fields in lines:
        n_edge_lines += 1
        if n_edge_lines > m:
            raise GraphFormatError(i_line, 'more than the {} edges declared '
                                           'in the header.'.format(m))
        u, v, w = _parse_edge(i_line, fields)
        for vertex in (u, v):
            if not 1 <= vertex <= n:
                raise GraphFormatError(i_line, 'vertex {} is out of range '
                                               '1..{}.'.format(vertex, n))
        if u == v:
            raise GraphFormatError(i_line, 'self-loop at vertex {}.'.format(
                u))
        pair = (min(u, v), max(u, v))
        if pair in seen:
            raise GraphFormatError(i_line, 'duplicate edge {{{}, {}}}.'.format(
                *pair))
        seen.add(pair)
        if w == 0:
            dropped += 1
            continue
        try:
            edges.append(_check_edge(n, u - 1, v - 1, w))
        except GraphError as err:
            raise GraphFormatError(i_line, str(err))

    if n_edge_lines < m:
        raise GraphFormatError(i_line, 'found {} edges, but the header '
                                       'declares {}.'.format(n_edge_lines, m))
    if dropped:
        logger.warning('dropped %d zero-weight edge(s)%s.', dropped,
                       ' from "{}"'.format(name) if name else '')
    return Graph(n, edges, name=name, dropped_edges=dropped)


def serialize(graph, comments=None):
    """
    Make the edge-list text for a graph.

    Weights are written at full precision, so that reading the result
    gives back an equal graph.

    Kwargs:

    * comments (iterable of string):
        Lines to put at the top, each prefixed with '# '.

    """
    lines = ['# {}'.format(comment) for comment in comments or []]
    lines.append('{} {}'.format(graph.n, graph.m))
    lines.extend('{} {} {}'.format(u + 1, v + 1, format_real(w))
                 for u, v, w in graph.edges)
    return '\n'.join(lines) + '\n'


def read(source, name=None):
    """
    Read a graph from an edge-list file.

    Args:

    * source (string or file-like):
        A path to open, or an open readable text stream.

    Kwargs:

    * name (string):
        Name for the graph.  Defaults to the path, when one is given.

    """
    if isinstance(source, str):
        with io.open(source, encoding='utf-8') as stream:
            return load_graph(stream.read(),
                              name=source if name is None else name)
    return load_graph(source.read(), name=name)


def write(target, graph, comments=None):
    """
    Write a graph to an edge-list file.

    Args:

    * target (string or file-like):
        A path to create, or an open writeable text stream.
    * graph (:class:`qubokcut.Graph`):
        The graph to write.

    """
    text = serialize(graph, comments=comments)
    if isinstance(target, str):
        with io.open(target, 'w', encoding='utf-8') as stream:
            stream.write(text)
    else:
        target.write(text)
