#!/usr/bin/env python3
#
# trace_io.py - Read and write traceroute trace files and edge lists

"""
trace_io.py - Read and write traceroute trace files and edge lists

Trace format (UTF-8 text):

    # comment
    label label label ...

    One route per line, source first, labels separated by white space.
    Labels are any tokens: router addresses, dotted quads, names.
    A line holding a '*' token (an unresolved hop) is dropped.
    A line with fewer than 2 nodes is dropped.
    Consecutive repeats of one label (a hop that answered twice) are collapsed.

Edge list format (UTF-8 text):

    # comment
    u v

    One undirected edge per line.  Writers emit edges sorted by (min id, max id).

Labels are densified to ids 0, 1, 2, ... in order of first appearance.
"""

# import modules
#
import inspect

# import from modules
#
from dataclasses import dataclass, field


# import the tracesim common utility code
#
# Sort the import list with: sort -d -u
#
from .graph_core import \
        Route, \
        build_topology
from .tracesim_common import \
        MODEL_TRACE, \
        debug, \
        fail, \
        info


# trace_io.py version
#
# NOTE: Use string of the form: "x.y[.z] YYYY-MM-DD"
#
VERSION_TRACE_IO = "1.1.2 2026-10-17"

# token of an unresolved traceroute hop
#
UNRESOLVED_HOP = "*"


@dataclass(frozen=True)
class TraceDataset:
    """
    Routes read from a trace file and the topology they induce.

    labels[i] is the external label of node id i; label_map is its inverse.
    """

    routes: tuple
    topology: object
    labels: tuple
    label_map: dict = field(compare=False)
    sources: frozenset = frozenset()
    destinations: frozenset = frozenset()
    dropped_short: int = 0
    dropped_unresolved: int = 0
    collapsed: int = 0


class LabelTable:
    """
    Assign dense ids to labels in order of first appearance.
    """

    def __init__(self):
        self.label_map = {}
        self.labels = []

    def lookup(self, label):
        """
        Return the id of label, assigning the next id if it is new.
        """
        node_id = self.label_map.get(label)
        if node_id is None:
            node_id = len(self.labels)
            self.label_map[label] = node_id
            self.labels.append(label)
        return node_id


def _content_lines(stream):
    """
    Yield (line number, stripped line) for non-empty, non-comment lines.
    """
    for line_num, line in enumerate(stream, start=1):
        text = line.strip()
        if not text or text.startswith('#'):
            continue
        yield line_num, text


# pylint: disable=too-many-locals
#
def parse_traces(stream):
    """
    Read routes from a trace stream.

    Given:
        stream      iterable of text lines

    Returns:
        TraceDataset    at least one valid route
        None            empty stream or no valid route
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    label_routes = []
    dropped_short = 0
    dropped_unresolved = 0
    collapsed = 0

    try:
        for _, text in _content_lines(stream):
            tokens = text.split()
            if UNRESOLVED_HOP in tokens:
                dropped_unresolved += 1
                continue
            nodes = []
            for token in tokens:
                if nodes and nodes[-1] == token:
                    collapsed += 1
                    continue
                nodes.append(token)
            if len(nodes) < 2:
                dropped_short += 1
                continue
            label_routes.append(nodes)

    except UnicodeDecodeError as errcode:
        return fail(me, f'invalid UTF-8 in trace stream: <<{errcode}>>')

    if not label_routes:
        return fail(me, 'no valid route in trace stream')

    if dropped_short or dropped_unresolved:
        info(f'{me}: dropped {dropped_short} short and {dropped_unresolved} unresolved routes')

    ds = _dataset_from_labels(label_routes,
                              dropped_short=dropped_short,
                              dropped_unresolved=dropped_unresolved,
                              collapsed=collapsed)
    if ds is None:
        return None

    debug(f'{me}: end: routes: {len(ds.routes)} nodes: {ds.topology.node_count} edges: {ds.topology.edge_count}')
    return ds
#
# pylint: enable=too-many-locals


def _dataset_from_labels(label_routes, dropped_short=0, dropped_unresolved=0, collapsed=0):
    """
    Densify the labels of label_routes and build the dataset they induce.

    Ids follow the order of first appearance over label_routes.
    """
    table = LabelTable()
    id_routes = [tuple(table.lookup(label) for label in nodes) for nodes in label_routes]

    topology = build_topology((a, b) for nodes in id_routes for a, b in zip(nodes, nodes[1:]))
    if topology is None:
        return None

    routes = tuple(Route(nodes[0], nodes[-1], nodes, MODEL_TRACE) for nodes in id_routes)
    return TraceDataset(routes=routes,
                        topology=topology,
                        labels=tuple(table.labels),
                        label_map=dict(table.label_map),
                        sources=frozenset(r.source for r in routes),
                        destinations=frozenset(r.destination for r in routes),
                        dropped_short=dropped_short,
                        dropped_unresolved=dropped_unresolved,
                        collapsed=collapsed)


def parse_edge_list_labeled(stream):
    """
    Read an edge list, keeping the label of every node id.

    Returns:
        (Topology, labels tuple)    success
        (None, None)                malformed line (message has the line number) or no edges
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    table = LabelTable()
    pairs = []
    try:
        for line_num, text in _content_lines(stream):
            tokens = text.split()
            if len(tokens) != 2:
                fail(me, f'line {line_num}: expected "u v", found {len(tokens)} fields')
                return None, None
            pairs.append((table.lookup(tokens[0]), table.lookup(tokens[1])))

    except UnicodeDecodeError as errcode:
        fail(me, f'invalid UTF-8 in edge list stream: <<{errcode}>>')
        return None, None

    topology = build_topology(pairs, node_count=len(table.labels))
    if topology is None:
        return None, None
    if topology.dropped > 0:
        info(f'{me}: dropped {topology.dropped} self-loop or duplicate edges')

    debug(f'{me}: end: nodes: {topology.node_count} edges: {topology.edge_count}')
    return topology, tuple(table.labels)


def parse_edge_list(stream):
    """
    Read an edge list into a Topology, or None on error.
    """
    topology, _ = parse_edge_list_labeled(stream)
    return topology


def _label(labels, node_id):
    """
    Return the external label of node_id.
    """
    return str(node_id) if labels is None else str(labels[node_id])


def write_edge_list(t, stream, labels=None):
    """
    Write t as an edge list, one "u v" line per edge sorted by (min id, max id).

    Given:
        labels      labels to write in place of ids, or None
    """
    for u, v in t.edges():
        stream.write(f'{_label(labels, u)} {_label(labels, v)}\n')


def write_traces(routes, stream, labels=None):
    """
    Write routes in trace format, one route per line.
    """
    for route in routes:
        stream.write(' '.join(_label(labels, v) for v in route.nodes))
        stream.write('\n')


def read_traces_file(path):
    """
    Parse the trace file at path, or return None with an error message.
    """

    me = inspect.currentframe().f_code.co_name
    try:
        with open(path, 'r', encoding='utf-8') as trace_fp:
            return parse_traces(trace_fp)
    except OSError as errcode:
        return fail(me, f'cannot read trace file: {path} failed: <<{errcode}>>')


def read_edge_list_file(path):
    """
    Parse the edge list file at path.

    Returns:
        (Topology, labels) or (None, None)
    """

    me = inspect.currentframe().f_code.co_name
    try:
        with open(path, 'r', encoding='utf-8') as edge_fp:
            return parse_edge_list_labeled(edge_fp)
    except OSError as errcode:
        fail(me, f'cannot read edge list file: {path} failed: <<{errcode}>>')
        return None, None


def common_destination_filter(ds):
    """
    Keep only routes whose destination is reached from every source.

    The kept destinations are the intersection of the per-source destination
    sets.  The topology and label table are rebuilt from the kept routes
    alone, so nodes and edges seen only on dropped routes are gone and ids
    are densified again in order of first appearance.

    Returns:
        TraceDataset    filtered dataset
        None            empty dataset or empty intersection
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    if not ds.routes:
        return fail(me, 'empty dataset')

    per_source = {}
    for route in ds.routes:
        per_source.setdefault(route.source, set()).add(route.destination)
    common = set.intersection(*per_source.values())
    if not common:
        return fail(me, f'no destination is common to all {len(per_source)} sources: review the dataset')

    kept = [r for r in ds.routes if r.destination in common]
    if len(kept) < len(ds.routes):
        info(f'{me}: kept {len(kept)} of {len(ds.routes)} routes to {len(common)} common destinations')

    filtered = _dataset_from_labels([tuple(ds.labels[v] for v in r.nodes) for r in kept],
                                    dropped_short=ds.dropped_short,
                                    dropped_unresolved=ds.dropped_unresolved,
                                    collapsed=ds.collapsed)
    if filtered is None:
        return None

    debug(f'{me}: end: nodes: {filtered.topology.node_count} edges: {filtered.topology.edge_count}')
    return filtered
