#!/usr/bin/env python3
#
# experiment.py - Run routing models over source / destination sets and compare with traces

"""
experiment.py - Run routing models over source / destination sets and compare with traces

An experiment routes every (source, destination) pair, source-major,
with pairs where source == destination skipped.  Deterministic models
(USPM, NDM, LIM) run once; PFM runs cfg.repetitions times, repetition r
drawing its weights with seed base_seed + r.

All routes of all repetitions are merged into the sampled subgraph.
Route length distributions are normalized per repetition and then
averaged bin by bin.  Unreachable pairs are counted and left out of
every distribution.

Pairs may be routed by a thread pool; results are collected in pair
order, so the outcome does not depend on the number of threads.
"""

# import modules
#
import math
import inspect

# import from modules
#
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace


# import the tracesim common utility code
#
# Sort the import list with: sort -d -u
#
from .graph_core import \
        build_topology, \
        topology_metrics
from .route_models import \
        model_weights, \
        route_pair, \
        validate_model_spec
from .tracesim_common import \
        KL_EPSILON, \
        debug, \
        fail, \
        info


# experiment.py version
#
# NOTE: Use string of the form: "x.y[.z] YYYY-MM-DD"
#
VERSION_EXPERIMENT = "1.4.0 2026-10-17"

# topology metrics compared by best_alpha_by_property
#
COMPARED_PROPERTIES = ("avg_degree", "gamma", "clustering", "heterogeneity")


@dataclass(frozen=True)
class Histogram:
    """
    Distribution over non-negative integers.

    bins maps value -> probability mass, keys ascending, every mass > 0.
    total_count is the number of observations behind it.
    """

    bins: dict
    total_count: int

    def mass(self, value):
        """
        Return the mass of value, 0.0 when value is not in the support.
        """
        return self.bins.get(value, 0.0)


@dataclass(frozen=True)
class HopDegreeProfile:
    """
    Per hop degree distributions p_h(k) and their entropies I(h) in nats.

    hops[h] is the Histogram of degrees of the nodes at position h.
    """

    hops: tuple
    entropy: tuple


@dataclass(frozen=True)
class ExperimentConfig:
    """
    One experiment: a model over source and destination id lists.
    """

    model: object
    sources: tuple
    destinations: tuple
    repetitions: int = 1
    base_seed: int = 0
    threads: int = 1


@dataclass(frozen=True)
class ExperimentResult:
    """
    Outcome of run_experiment().

    routes holds the routes of every repetition, repetition-major, pair order within.
    unreachable_count is summed over repetitions.
    """

    routes: tuple
    repetitions: int
    sampled_metrics: object
    length_distribution: Histogram
    mean_route_length: float
    unreachable_count: int
    profile: HopDegreeProfile


@dataclass(frozen=True)
class SweepRow:
    """
    One alpha of an alpha sweep.
    """

    alpha: float
    result: ExperimentResult
    distance: float


@dataclass(frozen=True)
class SweepTable:
    """
    Rows in the order alphas were given.

    best is the index of the row with the smallest distance (smaller alpha on ties).
    best_alpha_by_property maps a metric name to the alpha whose sampled value is
    closest to the underlying topology's value.
    """

    rows: tuple
    best: int
    reference: Histogram
    topology_metrics: object
    best_alpha_by_property: dict

    @property
    def best_alpha(self):
        """
        Alpha of the best row.
        """
        return self.rows[self.best].alpha


def histogram_from_counts(counts):
    """
    Return the normalized Histogram of a Counter, or None when empty.
    """
    total = sum(counts.values())
    if total <= 0:
        return None
    return Histogram(bins={value: counts[value] / total for value in sorted(counts) if counts[value] > 0},
                     total_count=total)


def histogram_mean(hist):
    """
    Return sum of value * mass.
    """
    return math.fsum(value * mass for value, mass in hist.bins.items())


def entropy(hist):
    """
    Shannon entropy of a Histogram in nats, zero masses omitted.
    """
    return -math.fsum(mass * math.log(mass) for mass in hist.bins.values() if mass > 0.0)


def average_histograms(hists):
    """
    Bin-wise mean of Histograms; total_count is the sum of the inputs.
    """
    keys = sorted(set().union(*(h.bins for h in hists)))
    count = len(hists)
    return Histogram(bins={k: math.fsum(h.mass(k) for h in hists) / count for k in keys},
                     total_count=sum(h.total_count for h in hists))


def length_distribution(routes):
    """
    Normalized histogram of route hop counts, or None for no routes.
    """

    me = inspect.currentframe().f_code.co_name
    hist = histogram_from_counts(Counter(r.hops for r in routes))
    if hist is None:
        return fail(me, 'no routes')
    return hist


def _smoothed(hist, keys):
    """
    Masses of hist over keys, missing keys given KL_EPSILON, renormalized.
    """
    raw = [hist.bins.get(k, KL_EPSILON) for k in keys]
    total = math.fsum(raw)
    return [m / total for m in raw]


def distribution_distance(p, q):
    """
    Kullback-Leibler divergence D(P||Q) in nats.

    Q is the reference.  Over the union of both supports every missing bin
    gets mass KL_EPSILON, then each side is renormalized.
    """

    keys = sorted(set(p.bins) | set(q.bins))
    p_mass = _smoothed(p, keys)
    q_mass = _smoothed(q, keys)
    return math.fsum(pm * math.log(pm / qm) for pm, qm in zip(p_mass, q_mass))


def hop_degree_profile(routes, t):
    """
    Degree distribution of the nodes at every hop position, with entropies.

    Hop 0 (the source) and the final hop are included.
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    degrees = t.degrees
    per_hop = []
    for route in routes:
        for h, v in enumerate(route.nodes):
            if h == len(per_hop):
                per_hop.append(Counter())
            per_hop[h][degrees[v]] += 1

    hops = tuple(histogram_from_counts(counts) for counts in per_hop)
    debug(f'{me}: end: hops: {len(hops)}')
    return HopDegreeProfile(hops=hops, entropy=tuple(entropy(hist) for hist in hops))


def merge_routes(routes):
    """
    Sampled subgraph: exactly the nodes and consecutive pair edges of routes.

    Original ids are relabeled densely in ascending order.

    Returns:
        Topology    at least one edge
        None        routes hold no edge
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    nodes = sorted({v for route in routes for v in route.nodes})
    dense = {v: i for i, v in enumerate(nodes)}
    pairs = ((dense[a], dense[b]) for route in routes for a, b in zip(route.nodes, route.nodes[1:]))
    return build_topology(pairs, node_count=len(nodes))


def mean_intermediate_degree(routes, t):
    """
    Mean degree of the interior nodes of routes (all but first and last).

    Returns NaN when no route has an interior node.
    """
    interior = [t.degrees[v] for route in routes for v in route.nodes[1:-1]]
    if not interior:
        return math.nan
    return math.fsum(interior) / len(interior)


def route_pairs(sources, destinations):
    """
    Canonical pair order: source-major, destinations in the given order, s == d skipped.
    """
    return [(s, d) for s in sources for d in destinations if s != d]


def _route_all(t, spec, weights, pairs, threads):
    """
    Route every pair, results in pair order.

    Routing is pure Python and holds the GIL, so threads > 1 does not make
    this faster; results are the same for any thread count.
    """
    def one(pair):
        return route_pair(t, spec, weights, pair[0], pair[1])

    if threads <= 1 or len(pairs) < 2:
        return [one(pair) for pair in pairs]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(one, pairs))


# pylint: disable=too-many-locals
# pylint: disable=too-many-return-statements
#
def run_experiment(t, cfg):
    """
    Route every (source, destination) pair of cfg over t.

    Returns:
        ExperimentResult    at least one pair routed
        None                bad config, weights could not be built,
                            or every pair unreachable
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    # firewall - config
    #
    if not cfg.sources or not cfg.destinations:
        return fail(me, 'sources and destinations must be non-empty')
    bad = [v for v in list(cfg.sources) + list(cfg.destinations) if not t.has_node(v)]
    if bad:
        return fail(me, f'node ids not in topology: {bad[:5]}')
    spec = replace(cfg.model, seed=cfg.base_seed)
    if not validate_model_spec(spec, t.node_count):
        return None
    if cfg.repetitions < 1:
        return fail(me, f'repetitions must be >= 1: {cfg.repetitions}')

    repetitions = cfg.repetitions
    if not spec.stochastic and repetitions > 1:
        info(f'{me}: {spec.kind} is deterministic: running 1 repetition instead of {repetitions}')
        repetitions = 1

    pairs = route_pairs(cfg.sources, cfg.destinations)
    if not pairs:
        return fail(me, 'no (source, destination) pair with source != destination')

    all_routes = []
    rep_hists = []
    unreachable = 0
    for repetition in range(repetitions):
        ok, weights = model_weights(t, spec, repetition)
        if not ok:
            return None
        routed = _route_all(t, spec, weights, pairs, cfg.threads)
        rep_routes = [route for route in routed if route is not None]
        unreachable += len(routed) - len(rep_routes)
        if rep_routes:
            all_routes.extend(rep_routes)
            rep_hists.append(length_distribution(rep_routes))
        debug(f'{me}: repetition: {repetition} routed: {len(rep_routes)} of {len(pairs)}')

    if not all_routes:
        return fail(me, f'all {len(pairs)} pairs are unreachable')
    if unreachable > 0:
        info(f'{me}: {unreachable} unreachable pairs left out')

    hist = average_histograms(rep_hists)
    sampled = merge_routes(all_routes)
    result = ExperimentResult(routes=tuple(all_routes),
                              repetitions=repetitions,
                              sampled_metrics=topology_metrics(sampled) if sampled is not None else None,
                              length_distribution=hist,
                              mean_route_length=histogram_mean(hist),
                              unreachable_count=unreachable,
                              profile=hop_degree_profile(all_routes, t))
    debug(f'{me}: end: {spec.tag} mean route length: {result.mean_route_length}')
    return result
#
# pylint: enable=too-many-locals
# pylint: enable=too-many-return-statements


def best_alpha_by_property(rows, truth):
    """
    For each compared metric, the alpha whose sampled value is closest to truth.

    NaN values are skipped; ties go to the smaller alpha.  A metric with no
    usable row maps to None.
    """

    best = {}
    for name in COMPARED_PROPERTIES:
        target = getattr(truth, name)
        scored = []
        for row in rows:
            if row.result.sampled_metrics is None:
                continue
            value = getattr(row.result.sampled_metrics, name)
            if math.isnan(value) or math.isnan(target):
                continue
            scored.append((abs(value - target), row.alpha))
        best[name] = min(scored)[1] if scored else None
    return best


def best_row_index(rows):
    """
    Index of the row with the smallest distance, ties to the smaller alpha.

    Only the order of the distances matters, so any increasing rescaling of
    them picks the same row.
    """
    return min(range(len(rows)), key=lambda i: (rows[i].distance, rows[i].alpha))


def alpha_sweep(t, base, alphas, reference):
    """
    Run base once per alpha and score each length distribution against reference.

    Returns:
        SweepTable      every alpha ran
        None            empty alpha list, or an experiment failed
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    if not alphas:
        return fail(me, 'empty alpha list')

    rows = []
    for alpha in alphas:
        cfg = replace(base, model=replace(base.model, alpha=alpha))
        result = run_experiment(t, cfg)
        if result is None:
            return None
        distance = distribution_distance(result.length_distribution, reference)
        rows.append(SweepRow(alpha=alpha, result=result, distance=distance))
        info(f'{me}: alpha: {alpha} mean length: {result.mean_route_length} distance: {distance}')

    best = best_row_index(rows)
    truth = topology_metrics(t)
    debug(f'{me}: end: best alpha: {rows[best].alpha}')
    return SweepTable(rows=tuple(rows),
                      best=best,
                      reference=reference,
                      topology_metrics=truth,
                      best_alpha_by_property=best_alpha_by_property(rows, truth) if truth else {})
