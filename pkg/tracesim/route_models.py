#!/usr/bin/env python3
#
# route_models.py - USPM, NDM, LIM and PFM routing models

"""
route_models.py - USPM, NDM, LIM and PFM routing models

    USPM    unweighted shortest path, deterministic unique-path variant
    NDM     node degree model: greedy highest-degree climbs from both ends, then joined
    LIM     local information model: weights k_i^alpha / sum_j k_j^alpha, weighted shortest path
    PFM     path feature model: independent bounded Pareto arc weights, weighted shortest path

LIM routing costs:

    The LIM router uses k_s * W(s->i), the local weight relative to the
    uniform share 1/k_s of node s.  Each node ranks its neighbors exactly
    as W(s->i) does, and alpha = 0 costs one per hop, so LIM(0) routes
    are the USPM routes.  ModelSpec.lim_raw = True routes on W(s->i) as is.

PFM weights:

    Arc i in canonical arc order (node ascending, neighbor ascending) gets
    the i-th draw of numpy.random.default_rng(seed), so a weight depends
    only on (seed, arc index), never on the order routes are computed in.
"""

# import modules
#
import math
import inspect

# import from modules
#
from collections import deque
from dataclasses import dataclass


# 3rd party imports
#
import numpy as np


# import the tracesim common utility code
#
# Sort the import list with: sort -d -u
#
from .graph_core import \
        EdgeWeights, \
        Route, \
        bfs_path, \
        dijkstra_path, \
        make_edge_weights
from .tracesim_common import \
        DEFAULT_PARETO_MIN, \
        LIM_ALPHA_MAX, \
        LIM_ALPHA_MIN, \
        MODEL_KINDS, \
        MODEL_LIM, \
        MODEL_NDM, \
        MODEL_PFM, \
        MODEL_USPM, \
        NORM_TOLERANCE, \
        PFM_ALPHA_MAX, \
        debug, \
        fail, \
        is_finite_number


# route_models.py version
#
# NOTE: Use string of the form: "x.y[.z] YYYY-MM-DD"
#
VERSION_ROUTE_MODELS = "1.2.1 2026-10-17"


@dataclass(frozen=True)
class ModelSpec:
    """
    Which routing model to run, and its parameters.

    pareto_max None means: use the node count of the topology.
    """

    kind: str
    alpha: float = 0.0
    pareto_min: float = DEFAULT_PARETO_MIN
    pareto_max: float = None
    seed: int = 0
    lim_raw: bool = False

    @property
    def tag(self):
        """
        Short model tag stored on every Route, such as "LIM(0.5)".
        """
        if self.kind in (MODEL_LIM, MODEL_PFM):
            return f'{self.kind}({self.alpha!r})'
        return self.kind

    @property
    def stochastic(self):
        """
        True when repetitions draw new weights.
        """
        return self.kind == MODEL_PFM

    def resolved_pareto_max(self, node_count):
        """
        Return M, defaulting to the node count.
        """
        if self.pareto_max is None:
            return float(node_count)
        return float(self.pareto_max)


# pylint: disable=too-many-return-statements
#
def validate_model_spec(spec, node_count=None):
    """
    Check a ModelSpec against the documented parameter ranges.

    Given:
        spec            ModelSpec
        node_count      node count of the topology (for the default M), or None

    Returns:
        True    spec is usable
        False   spec is not usable, see return_last_errmsg()
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    if spec.kind not in MODEL_KINDS:
        fail(me, f'unknown model: {spec.kind}')
        return False
    if not is_finite_number(spec.alpha):
        fail(me, f'alpha is not a finite number: {spec.alpha!r}')
        return False

    if spec.kind == MODEL_LIM and not LIM_ALPHA_MIN <= spec.alpha <= LIM_ALPHA_MAX:
        fail(me, f'LIM alpha: {spec.alpha} outside of [{LIM_ALPHA_MIN}, {LIM_ALPHA_MAX}]')
        return False

    if spec.kind == MODEL_PFM:
        if not 0.0 < spec.alpha <= PFM_ALPHA_MAX:
            fail(me, f'PFM alpha: {spec.alpha} outside of (0, {PFM_ALPHA_MAX}]')
            return False
        pareto_max = spec.pareto_max
        if pareto_max is None and node_count is not None:
            pareto_max = float(node_count)
        if not is_finite_number(spec.pareto_min) or spec.pareto_min <= 0.0:
            fail(me, f'pareto minimum L must be > 0: {spec.pareto_min!r}')
            return False
        if pareto_max is not None and (not is_finite_number(pareto_max) or pareto_max <= spec.pareto_min):
            fail(me, f'pareto maximum M: {pareto_max!r} must exceed L: {spec.pareto_min}')
            return False

    debug(f'{me}: end: {spec.tag} is valid')
    return True
#
# pylint: enable=too-many-return-statements


def lim_weights(t, alpha):
    """
    LIM weights W(s->i) = k_i^alpha / sum_{j in adj(s)} k_j^alpha.

    k^alpha is computed as exp(alpha * ln k) shifted by the per-node maximum,
    so |alpha| = 5 with degrees near 10^5 does not overflow.  The outgoing
    weights of every node sum to 1.

    Returns:
        EdgeWeights     success
        None            alpha not finite, or alpha so extreme that a weight
                        underflowed to 0
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    if not is_finite_number(alpha):
        return fail(me, f'alpha is not a finite number: {alpha!r}')

    degrees = np.asarray(t.degrees, dtype=float)
    offsets = np.asarray(t.arc_offsets, dtype=np.int64)
    heads = np.fromiter((v for nbrs in t.adjacency for v in nbrs), dtype=np.int64,
                        count=2 * t.edge_count)

    # log of k_i^alpha for every arc s->i
    #
    log_k = alpha * np.log(degrees[heads])

    # per node maximum, over nodes that have arcs
    #
    # reduceat over the starts of non-empty segments reduces each segment exactly.
    #
    has_arcs = degrees > 0
    starts = offsets[:-1][has_arcs]
    node_max = np.zeros(t.node_count)
    node_max[has_arcs] = np.maximum.reduceat(log_k, starts)
    arc_tail_counts = degrees.astype(np.int64)
    shifted = np.exp(log_k - np.repeat(node_max, arc_tail_counts))

    node_sum = np.ones(t.node_count)
    node_sum[has_arcs] = np.add.reduceat(shifted, starts)
    values = shifted / np.repeat(node_sum, arc_tail_counts)

    if not np.all(values > 0.0):
        return fail(me, f'alpha: {alpha} underflows a weight to 0; '
                        f'use alpha within [{LIM_ALPHA_MIN}, {LIM_ALPHA_MAX}]')

    debug(f'{me}: end: alpha: {alpha}')
    return make_edge_weights(t, values, origin=f'LIM alpha={alpha!r}')


def lim_routing_weights(t, alpha, raw=False):
    """
    Return the costs the LIM router uses: k_s * W(s->i), or W(s->i) when raw.
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    weights = lim_weights(t, alpha)
    if weights is None or raw:
        return weights
    per_node = tuple(tuple(len(row) * w for w in row) for row in weights.per_node)
    return EdgeWeights(per_node=per_node, origin=f'LIM relative alpha={alpha!r}')


def lim_row_sums_ok(weights):
    """
    Return True if every node's outgoing LIM weights sum to 1.
    """
    return all(abs(math.fsum(row) - 1.0) <= NORM_TOLERANCE for row in weights.per_node if row)


def _pareto_params_ok(me, alpha, pareto_min, pareto_max):
    """
    Check bounded Pareto parameters: alpha > 0, 0 < L < M.
    """
    if not is_finite_number(alpha) or alpha <= 0.0:
        fail(me, f'alpha must be > 0: {alpha!r}')
        return False
    if not is_finite_number(pareto_min) or pareto_min <= 0.0:
        fail(me, f'L must be > 0: {pareto_min!r}')
        return False
    if not is_finite_number(pareto_max) or pareto_max <= pareto_min:
        fail(me, f'M: {pareto_max!r} must exceed L: {pareto_min!r}')
        return False
    return True


def bounded_pareto_cdf(x, alpha, pareto_min, pareto_max):
    """
    F(x) = (1 - L^a x^-a) / (1 - (L/M)^a) on [L, M], clipped outside.
    """
    x = np.clip(np.asarray(x, dtype=float), pareto_min, pareto_max)
    value = (1.0 - (pareto_min / x) ** alpha) / (1.0 - (pareto_min / pareto_max) ** alpha)
    return value if value.ndim else float(value)


def bounded_pareto_mean(alpha, pareto_min, pareto_max):
    """
    Analytic mean of the bounded Pareto distribution.
    """
    norm = alpha * pareto_min ** alpha / (1.0 - (pareto_min / pareto_max) ** alpha)
    if alpha == 1.0:
        return norm * math.log(pareto_max / pareto_min)
    return norm * (pareto_max ** (1.0 - alpha) - pareto_min ** (1.0 - alpha)) / (1.0 - alpha)


def sample_bounded_pareto(alpha, pareto_min, pareto_max, u):
    """
    Inverse-CDF sample of the bounded Pareto distribution.

        x = L * (1 - u * (1 - (L/M)^alpha)) ^ (-1/alpha)

    u = 0 gives L; u -> 1 gives M.  Results are kept below M.

    Given:
        alpha           shape, > 0
        pareto_min      L, > 0
        pareto_max      M, > L
        u               uniform value (or numpy array) in [0, 1)

    Returns:
        float or numpy array    samples in [L, M)
        None                    parameter violation
    """

    me = inspect.currentframe().f_code.co_name
    if not _pareto_params_ok(me, alpha, pareto_min, pareto_max):
        return None
    u_arr = np.asarray(u, dtype=float)
    if np.any(~((u_arr >= 0.0) & (u_arr < 1.0))):
        return fail(me, 'u must lie in [0, 1)')

    span = 1.0 - (pareto_min / pareto_max) ** alpha
    x = pareto_min * (1.0 - u_arr * span) ** (-1.0 / alpha)
    x = np.clip(x, pareto_min, np.nextafter(pareto_max, pareto_min))
    return x if x.ndim else float(x)


def pfm_weights(t, alpha, pareto_min, pareto_max, seed):
    """
    PFM weights: an independent bounded Pareto draw for every directed arc.

    Returns:
        EdgeWeights     success
        None            parameter violation
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    if not _pareto_params_ok(me, alpha, pareto_min, pareto_max):
        return None

    uniforms = np.random.default_rng(seed).random(2 * t.edge_count)
    values = sample_bounded_pareto(alpha, pareto_min, pareto_max, uniforms)
    if values is None:
        return None

    debug(f'{me}: end: alpha: {alpha} L: {pareto_min} M: {pareto_max} seed: {seed}')
    return make_edge_weights(t, np.atleast_1d(values),
                             origin=f'PFM alpha={alpha!r} L={pareto_min!r} M={pareto_max!r} seed={seed}')


def model_weights(t, spec, repetition=0):
    """
    Build the EdgeWeights a model needs for one repetition.

    PFM repetition r draws with seed spec.seed + r.

    Returns:
        (True, EdgeWeights)     LIM or PFM
        (True, None)            USPM or NDM, which need no weights
        (False, None)           weight construction failed
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start: {spec.tag} repetition: {repetition}')

    if spec.kind == MODEL_LIM:
        weights = lim_routing_weights(t, spec.alpha, raw=spec.lim_raw)
    elif spec.kind == MODEL_PFM:
        weights = pfm_weights(t, spec.alpha, spec.pareto_min,
                              spec.resolved_pareto_max(t.node_count), spec.seed + repetition)
    elif spec.kind in (MODEL_USPM, MODEL_NDM):
        return True, None
    else:
        fail(me, f'unknown model: {spec.kind}')
        return False, None

    return weights is not None, weights


def route_uspm(t, s, d):
    """
    USPM route: minimum hop path, smallest predecessor id on ties.
    """
    return bfs_path(t, s, d, model=MODEL_USPM)


def route_weighted(t, w, s, d, model=""):
    """
    LIM / PFM route: minimum weight path over w.
    """
    return dijkstra_path(t, w, s, d, model=model)


def highest_degree_neighbor(t, x):
    """
    Return the neighbor of x with the highest degree (smallest id on ties), or None.
    """
    best = None
    best_degree = -1
    degrees = t.degrees
    # adjacency is ascending, so a strict > keeps the smallest id on ties
    for v in t.adjacency[x]:
        if degrees[v] > best_degree:
            best = v
            best_degree = degrees[v]
    return best


def ndm_climb(t, start):
    """
    Grow the NDM path from start.

    Each step moves to the current node's highest degree neighbor.  The
    climb always takes the first step, then stops on entering a node y
    with hdn(hdn(y)) == y (y is the highest degree neighbor of its own
    highest degree neighbor), or before revisiting a node of the path.

    Returns:
        list of node ids, start first
    """

    path = [start]
    on_path = {start}
    x = start
    while True:
        y = highest_degree_neighbor(t, x)
        if y is None or y in on_path:
            break
        path.append(y)
        on_path.add(y)
        if highest_degree_neighbor(t, highest_degree_neighbor(t, y)) == y:
            break
        x = y
    return path


def nearest_connector(t, from_nodes, to_nodes):
    """
    Minimum hop path from the node set from_nodes to the node set to_nodes.

    Multi-source BFS from from_nodes.  Among the closest nodes of to_nodes
    the smallest id is the end point; the path back follows the smallest
    predecessor id one level closer at every step.

    Returns:
        list of node ids, from a from_nodes member to a to_nodes member
        None    the sets are not connected
    """

    adjacency = t.adjacency
    dist = {v: 0 for v in from_nodes}
    hits = sorted(v for v in to_nodes if v in dist)
    queue = deque(sorted(from_nodes))
    while not hits and queue:
        level = dist[queue[0]]
        found = []
        # expand one whole level
        while queue and dist[queue[0]] == level:
            u = queue.popleft()
            for v in adjacency[u]:
                if v not in dist:
                    dist[v] = level + 1
                    queue.append(v)
                    if v in to_nodes:
                        found.append(v)
        hits = sorted(found)

    if not hits:
        return None

    end = hits[0]
    path = [end]
    v = end
    while dist[v] > 0:
        want = dist[v] - 1
        v = next(u for u in adjacency[v] if dist.get(u) == want)
        path.append(v)
    path.reverse()
    return path


def remove_cycles(nodes):
    """
    Loop-erase a walk: on meeting a node again, cut back to its first occurrence.
    """
    out = []
    position = {}
    for v in nodes:
        if v in position:
            cut = position[v]
            for dropped in out[cut + 1:]:
                del position[dropped]
            del out[cut + 1:]
            continue
        position[v] = len(out)
        out.append(v)
    return out


def route_ndm(t, s, d):
    """
    NDM route between s and d.

    Path A climbs from s, path B climbs from d.  If they share a node, the
    route is A up to the first shared node followed by B reversed from that
    node.  Otherwise the minimum hop connector between A's and B's node
    sets joins A's prefix to B's reversed suffix.  Cycles are removed so the
    route is a simple path.

    Returns:
        Route   route found
        None    s and d are not connected, or invalid id
    """

    # We do NOT want to call debug from this function because we call this code too frequently
    #no#debug(f'{me}: start')

    if not t.has_node(s) or not t.has_node(d):
        return fail('route_ndm', f'invalid node id: {s} or {d}')
    if s == d:
        return Route(s, d, (s,), MODEL_NDM)

    path_a = ndm_climb(t, s)
    path_b = ndm_climb(t, d)
    index_b = {v: i for i, v in enumerate(path_b)}

    # case: the two climbs meet
    #
    for i, v in enumerate(path_a):
        if v in index_b:
            walk = path_a[:i + 1] + path_b[:index_b[v]][::-1]
            return Route(s, d, tuple(remove_cycles(walk)), MODEL_NDM)

    # case: join the climbs by the shortest connector
    #
    connector = nearest_connector(t, set(path_a), set(path_b))
    if connector is None:
        return None
    joint_a = path_a.index(connector[0])
    joint_b = index_b[connector[-1]]
    walk = path_a[:joint_a] + connector + path_b[:joint_b][::-1]
    return Route(s, d, tuple(remove_cycles(walk)), MODEL_NDM)


def route_pair(t, spec, weights, s, d):
    """
    Route one (s, d) pair with the model named by spec.

    Given:
        weights     EdgeWeights from model_weights(), None for USPM / NDM

    Returns:
        Route or None (unreachable or error)
    """

    if spec.kind == MODEL_USPM:
        return route_uspm(t, s, d)
    if spec.kind == MODEL_NDM:
        return route_ndm(t, s, d)
    return route_weighted(t, weights, s, d, model=spec.tag)
