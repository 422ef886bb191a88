#!/usr/bin/env python3
#
# graph_core.py - Immutable undirected topology, structural metrics and shortest paths

"""
graph_core.py - Immutable undirected topology, structural metrics and shortest paths

Node ids are dense integers 0 .. node_count-1.  Mapping external labels
(router addresses, AS numbers, ...) onto dense ids is done by trace_io.

Every shortest path in this module is deterministic: among equal cost
predecessors, the one with the smallest node id is chosen at every step.
"""

# import modules
#
import math
import heapq
import inspect

# import from modules
#
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property


# 3rd party imports
#
import numpy as np


# import the tracesim common utility code
#
# Sort the import list with: sort -d -u
#
from .tracesim_common import \
        caution, \
        debug, \
        fail


# graph_core.py version
#
# NOTE: Use string of the form: "x.y[.z] YYYY-MM-DD"
#
VERSION_GRAPH_CORE = "1.2.0 2026-10-17"

# relative tolerance under which two path costs are equal
#
COST_REL_TOL = 1e-12


@dataclass(frozen=True)
class Topology:
    """
    Immutable undirected simple graph.

    adjacency[v] is the strictly ascending tuple of neighbors of v.
    dropped counts the self-loops and duplicate pairs removed at build time.
    """

    node_count: int
    edge_count: int
    adjacency: tuple
    dropped: int = 0

    def degree(self, v):
        """
        Return the degree of node v.
        """
        return len(self.adjacency[v])

    @cached_property
    def degrees(self):
        """
        Tuple of node degrees, indexed by node id.
        """
        return tuple(len(nbrs) for nbrs in self.adjacency)

    @cached_property
    def arc_offsets(self):
        """
        Start of each node's outgoing arcs in the canonical arc order.

        The canonical arc order is: node ascending, then neighbor ascending.
        arc_offsets has node_count+1 entries, the last being 2*edge_count.
        """
        offsets = [0]
        for nbrs in self.adjacency:
            offsets.append(offsets[-1] + len(nbrs))
        return tuple(offsets)

    def has_node(self, v):
        """
        Return True if v is a valid node id.
        """
        return isinstance(v, (int, np.integer)) and 0 <= v < self.node_count

    def has_edge(self, u, v):
        """
        Return True if {u,v} is an edge.
        """
        if not self.has_node(u) or not self.has_node(v):
            return False
        nbrs = self.adjacency[u]
        i = bisect_left(nbrs, v)
        return i < len(nbrs) and nbrs[i] == v

    def edges(self):
        """
        Yield every edge once as (min id, max id), sorted.
        """
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield (u, v)


@dataclass(frozen=True)
class TopologyMetrics:
    """
    Structural metrics of a topology.

    gamma is NaN when the power-law fit is undefined.
    clustering_degenerate is True when the graph has no connected triple.
    """

    node_count: int
    edge_count: int
    avg_degree: float
    gamma: float
    clustering: float
    heterogeneity: float
    clustering_degenerate: bool = False

    def as_dict(self):
        """
        Return the metrics as a python dictionary.
        """
        return {
            "node_count": self.node_count,
            "edge_count": self.edge_count,
            "avg_degree": self.avg_degree,
            "gamma": self.gamma,
            "clustering": self.clustering,
            "heterogeneity": self.heterogeneity,
            "clustering_degenerate": self.clustering_degenerate,
        }


@dataclass(frozen=True)
class DegreeDistribution:
    """
    p(k) over the observed degrees, support ascending.
    """

    support: tuple
    probability: tuple


@dataclass(frozen=True)
class Route:
    """
    Ordered node sequence from source to destination.

    model is the tag of what produced the route: a model name or "trace".
    """

    source: int
    destination: int
    nodes: tuple
    model: str = ""

    @property
    def hops(self):
        """
        Route length in hops (edges).
        """
        return len(self.nodes) - 1


@dataclass(frozen=True)
class EdgeWeights:
    """
    Directed arc weights over an undirected topology.

    per_node[u][i] is w(u -> adjacency[u][i]).
    """

    per_node: tuple
    origin: str = field(default="", compare=False)

    def weight(self, topology, u, v):
        """
        Return w(u -> v), or None if {u,v} is not an edge of topology.
        """
        nbrs = topology.adjacency[u]
        i = bisect_left(nbrs, v)
        if i < len(nbrs) and nbrs[i] == v:
            return self.per_node[u][i]
        return None

    def flat(self):
        """
        Return all arc weights as a numpy array in canonical arc order.
        """
        return np.fromiter((w for row in self.per_node for w in row), dtype=float)


def build_topology(edges, node_count=None):
    """
    Build a simple undirected Topology from a list of id pairs.

    Self-loops are dropped and duplicate pairs collapsed; the count of
    dropped pairs is kept in Topology.dropped.

    Given:
        edges           iterable of (u, v) non-negative integer pairs
        node_count      number of nodes, or None ==> 1 + largest id

    Returns:
        Topology    success
        None        empty edge list, bad ids, or node_count too small
    """

    # setup
    #
    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    pairs = set()
    dropped = 0
    max_id = -1
    for edge in edges:
        try:
            u, v = int(edge[0]), int(edge[1])
        except (TypeError, ValueError, IndexError):
            return fail(me, f'edge is not a pair of integers: {edge!r}')
        if u < 0 or v < 0:
            return fail(me, f'negative node id in edge: {edge!r}')
        max_id = max(max_id, u, v)
        if u == v:
            dropped += 1
            continue
        pair = (u, v) if u < v else (v, u)
        if pair in pairs:
            dropped += 1
            continue
        pairs.add(pair)

    # firewall - we need at least one edge
    #
    if not pairs:
        return fail(me, 'no edges: cannot build a graph')

    if node_count is None:
        node_count = max_id + 1
    elif node_count <= max_id:
        return fail(me, f'node_count: {node_count} too small for largest id: {max_id}')

    # symmetric sorted adjacency
    #
    adjacency = [[] for _ in range(node_count)]
    for u, v in pairs:
        adjacency[u].append(v)
        adjacency[v].append(u)
    adjacency = tuple(tuple(sorted(nbrs)) for nbrs in adjacency)

    if dropped > 0:
        debug(f'{me}: dropped {dropped} self-loop or duplicate pairs')
    debug(f'{me}: end: node_count: {node_count} edge_count: {len(pairs)}')
    return Topology(node_count=node_count, edge_count=len(pairs), adjacency=adjacency, dropped=dropped)


def average_degree(t):
    """
    Return <k> = 2|E|/|V|, or None for an empty node set.
    """

    me = inspect.currentframe().f_code.co_name
    if t.node_count <= 0:
        return fail(me, 'topology has no nodes')
    return 2.0 * t.edge_count / t.node_count


def heterogeneity(t):
    """
    Return H = <k^2>/<k>^2 over all nodes, or None if the degree sum is 0.
    """

    me = inspect.currentframe().f_code.co_name
    if t.node_count <= 0:
        return fail(me, 'topology has no nodes')
    degrees = np.asarray(t.degrees, dtype=float)
    mean_k = degrees.mean()
    if mean_k <= 0.0:
        return fail(me, 'degree sum is 0')
    return float(np.mean(degrees * degrees) / (mean_k * mean_k))


def count_triangles(t):
    """
    Return the number of triangles N_tri.

    Each triangle u < v < w is counted once from its smallest edge (u, v).
    """

    adj_sets = [frozenset(nbrs) for nbrs in t.adjacency]
    triangles = 0
    for u, nbrs in enumerate(t.adjacency):
        for v in nbrs:
            if v <= u:
                continue
            # count common neighbors w > v
            small, large = (adj_sets[u], adj_sets[v]) \
                if len(adj_sets[u]) < len(adj_sets[v]) else (adj_sets[v], adj_sets[u])
            triangles += sum(1 for w in small if w > v and w in large)
    return triangles


def count_connected_triples(t):
    """
    Return N_v = sum over nodes of C(k, 2).
    """
    return sum(k * (k - 1) // 2 for k in t.degrees)


def clustering_coefficient(t):
    """
    Return C = 3 N_tri / N_v.

    When the graph has no connected triple, 0.0 is returned and a
    warning is logged and recorded as the recent error message.
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    triples = count_connected_triples(t)
    if triples == 0:
        caution(me, 'no connected triples: clustering defined as 0')
        return 0.0
    return 3.0 * count_triangles(t) / triples


def degree_distribution(t):
    """
    Return the DegreeDistribution p(k) = (#nodes of degree k) / node_count.
    """

    me = inspect.currentframe().f_code.co_name
    if t.node_count <= 0:
        return fail(me, 'topology has no nodes')
    counts = Counter(t.degrees)
    support = tuple(sorted(counts))
    probability = tuple(counts[k] / t.node_count for k in support)
    return DegreeDistribution(support=support, probability=probability)


def _log_binned_points(ks, ps):
    """
    Group (k, p) points into doubling bins starting at the smallest k.

    Returns (centers, densities) for the non-empty bins.  A bin's density
    is its mass divided by the number of integers it covers.
    """

    k_min = ks[0]
    masses = Counter()
    for k, p in zip(ks, ps):
        masses[int(math.floor(math.log2(k / k_min)))] += p
    centers = []
    densities = []
    for i in sorted(masses):
        lo = k_min * 2 ** i
        hi = k_min * 2 ** (i + 1)
        centers.append(math.sqrt(lo * (hi - 1)))
        densities.append(masses[i] / (hi - lo))
    return centers, densities


def powerlaw_exponent(d, log_bins=False):
    """
    Least-squares power-law exponent of a degree distribution.

    An ordinary least squares line is fit to (log k, log p(k)) over the
    support with k >= 1; the exponent is the negated slope.

    Given:
        d           DegreeDistribution
        log_bins    True ==> fit doubling-bin densities instead of raw points

    Returns:
        gamma       fit made
        None        fewer than 2 distinct degrees >= 1
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    points = [(k, p) for k, p in zip(d.support, d.probability) if k >= 1 and p > 0]
    if len(points) < 2:
        return fail(me, f'need at least 2 distinct degrees >= 1, found: {len(points)}')
    ks = [k for k, _ in points]
    ps = [p for _, p in points]

    if log_bins:
        ks, ps = _log_binned_points(ks, ps)
        if len(ks) < 2:
            return fail(me, 'need at least 2 non-empty bins')

    slope, _ = np.polyfit(np.log(np.asarray(ks, dtype=float)), np.log(np.asarray(ps, dtype=float)), 1)
    gamma = -float(slope)
    debug(f'{me}: end: gamma: {gamma}')
    return gamma


def topology_metrics(t):
    """
    Return the TopologyMetrics bundle of t, or None if t is degenerate.
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    avg_k = average_degree(t)
    het = heterogeneity(t)
    if avg_k is None or het is None:
        return None
    triples = count_connected_triples(t)
    clustering = clustering_coefficient(t)

    dist = degree_distribution(t)
    gamma = powerlaw_exponent(dist) if dist is not None else None
    if gamma is None:
        caution(me, 'power-law exponent undefined: reported as NaN')
        gamma = math.nan

    return TopologyMetrics(node_count=t.node_count, edge_count=t.edge_count, avg_degree=avg_k,
                           gamma=gamma, clustering=clustering, heterogeneity=het,
                           clustering_degenerate=(triples == 0))


def _walk_back(parent, source, target):
    """
    Follow parent links from target to source, return the forward node tuple.
    """
    nodes = [target]
    while nodes[-1] != source:
        nodes.append(parent[nodes[-1]])
    nodes.reverse()
    return tuple(nodes)


def bfs_path(t, source, target, model=""):
    """
    Minimum-hop path with smallest-id predecessor tie-breaking.

    Distances are found level by level; the path is then recovered from
    target backwards, choosing at every step the smallest neighbor one
    level closer to source.

    Returns:
        Route       path found (source == target gives a 0 hop route)
        None        target unreachable, or invalid id
    """

    # We do NOT want to call debug from this function because we call this code too frequently
    #no#debug(f'{me}: start')

    if not t.has_node(source) or not t.has_node(target):
        return fail('bfs_path', f'invalid node id: {source} or {target}')
    if source == target:
        return Route(source, target, (source,), model)

    adjacency = t.adjacency
    dist = {source: 0}
    frontier = [source]
    level = 0
    while frontier and target not in dist:
        level += 1
        next_frontier = []
        for u in frontier:
            for v in adjacency[u]:
                if v not in dist:
                    dist[v] = level
                    next_frontier.append(v)
        frontier = next_frontier

    if target not in dist:
        return None

    # recover the path choosing the smallest predecessor
    #
    nodes = [target]
    v = target
    while v != source:
        want = dist[v] - 1
        # adjacency is ascending: the first match is the smallest id
        v = next(u for u in adjacency[v] if dist.get(u) == want)
        nodes.append(v)
    nodes.reverse()
    return Route(source, target, tuple(nodes), model)


# pylint: disable=too-many-locals
#
def dijkstra_path(t, w, source, target, model=""):
    """
    Minimum weight path over directed arc weights.

    Equal cost ties are broken toward the smallest predecessor id.  Two
    costs within a relative COST_REL_TOL of each other count as equal, so
    sums that differ only by float rounding still tie.  Route
    length is reported in hops; the weight sum is only used to choose.

    Given:
        t           Topology
        w           EdgeWeights over t
        source      source node id
        target      target node id

    Returns:
        Route       path found
        None        target unreachable, or a non-positive / non-finite
                    weight was met (the recent error message names the arc)
    """

    # We do NOT want to call debug from this function because we call this code too frequently
    #no#debug(f'{me}: start')

    me = 'dijkstra_path'
    if not t.has_node(source) or not t.has_node(target):
        return fail(me, f'invalid node id: {source} or {target}')
    if source == target:
        return Route(source, target, (source,), model)

    adjacency = t.adjacency
    per_node = w.per_node
    dist = {source: 0.0}
    parent = {}
    done = set()
    heap = [(0.0, source)]
    while heap:
        cost, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == target:
            break
        for v, wt in zip(adjacency[u], per_node[u]):
            if not 0.0 < wt < math.inf:
                return fail(me, f'arc {u}->{v} has non-positive or non-finite weight: {wt}')
            if v in done:
                continue
            new_cost = cost + wt
            old_cost = dist.get(v)
            if old_cost is None:
                tied = False
            else:
                tied = math.isclose(new_cost, old_cost, rel_tol=COST_REL_TOL)
            if old_cost is None or (new_cost < old_cost and not tied):
                dist[v] = new_cost
                parent[v] = u
                heapq.heappush(heap, (new_cost, v))
            elif tied and u < parent[v]:
                parent[v] = u

    if target not in done:
        return None
    return Route(source, target, _walk_back(parent, source, target), model)
#
# pylint: enable=too-many-locals


def make_edge_weights(t, values, origin=""):
    """
    Build EdgeWeights from a flat sequence in canonical arc order.

    Given:
        t           Topology
        values      2*edge_count weights: node ascending, neighbor ascending
        origin      free text describing what made the weights

    Returns:
        EdgeWeights     all weights positive and finite
        None            wrong length, or a bad weight (message names the arc)
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    values = np.asarray(values, dtype=float)
    if values.shape != (2 * t.edge_count,):
        return fail(me, f'expected {2 * t.edge_count} arc weights, found shape: {values.shape}')

    bad = np.flatnonzero(~(np.isfinite(values) & (values > 0.0)))
    if bad.size > 0:
        arc = int(bad[0])
        u = int(np.searchsorted(np.asarray(t.arc_offsets), arc, side='right')) - 1
        v = t.adjacency[u][arc - t.arc_offsets[u]]
        return fail(me, f'arc {u}->{v} has non-positive or non-finite weight: {values[arc]}')

    as_list = values.tolist()
    offsets = t.arc_offsets
    per_node = tuple(tuple(as_list[offsets[u]:offsets[u + 1]]) for u in range(t.node_count))
    debug(f'{me}: end')
    return EdgeWeights(per_node=per_node, origin=origin)


def uniform_weights(t, value=1.0):
    """
    Return EdgeWeights with every arc set to value.
    """
    return EdgeWeights(per_node=tuple((float(value),) * len(nbrs) for nbrs in t.adjacency),
                       origin=f'uniform {value}')


def is_valid_route(t, route, simple=True):
    """
    Return True if route satisfies the Route invariants over t.

    Given:
        simple      True ==> also require no repeated node
    """

    nodes = route.nodes
    if not nodes or nodes[0] != route.source or nodes[-1] != route.destination:
        return False
    if not all(t.has_node(v) for v in nodes):
        return False
    if not all(t.has_edge(a, b) for a, b in zip(nodes, nodes[1:])):
        return False
    if simple and len(set(nodes)) != len(nodes):
        return False
    return True
