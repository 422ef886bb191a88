#!/usr/bin/env python3
#
# synth.py - Synthetic BA and ER topologies for desk scale runs

"""
synth.py - Synthetic BA and ER topologies for desk scale runs

    BA      preferential attachment: a clique of m+1 nodes, then every new
            node attaches m distinct edges, targets drawn with probability
            proportional to their current degree
    ER      every unordered pair is an edge with probability p

Every random draw comes from numpy.random.default_rng(seed), so one
GenSpec always yields the same Topology.
"""

# import modules
#
import inspect

# import from modules
#
from dataclasses import dataclass


# 3rd party imports
#
import numpy as np


# import the tracesim common utility code
#
# Sort the import list with: sort -d -u
#
from .graph_core import \
        build_topology
from .tracesim_common import \
        debug, \
        fail


# synth.py version
#
# NOTE: Use string of the form: "x.y[.z] YYYY-MM-DD"
#
VERSION_SYNTH = "1.1.0 2026-10-17"

# generator kinds
#
GEN_BA = "BA"
GEN_ER = "ER"
GEN_KINDS = (GEN_BA, GEN_ER)


@dataclass(frozen=True)
class GenSpec:
    """
    What to generate.

    m is used by BA only, p by ER only.
    """

    kind: str
    n: int
    m: int = 3
    p: float = 0.0
    seed: int = 0

    def as_dict(self):
        """
        Return the parameters that matter for kind, for manifests.
        """
        if self.kind == GEN_BA:
            return {"kind": self.kind, "n": self.n, "m": self.m, "seed": self.seed}
        return {"kind": self.kind, "n": self.n, "p": self.p, "seed": self.seed}


def generate_ba(n, m, seed):
    """
    Barabasi-Albert graph with n nodes, m edges per added node.

    Returns:
        Topology    n nodes, m(m+1)/2 + m(n-m-1) edges
        None        n < m+1 or m < 1
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start: n: {n} m: {m} seed: {seed}')

    # firewall - parameters
    #
    if not isinstance(m, int) or m < 1:
        return fail(me, f'attach count m must be an integer >= 1: {m}')
    if not isinstance(n, int) or n < m + 1:
        return fail(me, f'node count n must be an integer >= m+1 = {m + 1}: {n}')

    rng = np.random.default_rng(seed)
    edges = [(u, v) for u in range(m + 1) for v in range(u + 1, m + 1)]
    degrees = np.zeros(n, dtype=np.float64)
    degrees[:m + 1] = m

    for new in range(m + 1, n):
        current = degrees[:new]
        targets = rng.choice(new, size=m, replace=False, p=current / current.sum())
        for target in sorted(int(x) for x in targets):
            edges.append((target, new))
            degrees[target] += 1
        degrees[new] = m

    t = build_topology(edges, node_count=n)
    if t is not None:
        debug(f'{me}: end: edges: {t.edge_count}')
    return t


def generate_er(n, p, seed):
    """
    Erdos-Renyi G(n, p) graph.

    Pairs (u, v), u < v, are tested in row-major order, one uniform draw each.

    Returns:
        Topology    n nodes
        None        bad parameters, or no edge was drawn
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start: n: {n} p: {p} seed: {seed}')

    if not isinstance(n, int) or n < 2:
        return fail(me, f'node count n must be an integer >= 2: {n}')
    if not 0.0 <= p <= 1.0:
        return fail(me, f'edge probability p must be in [0, 1]: {p}')

    rng = np.random.default_rng(seed)
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(rows.size) < p
    edges = zip(rows[keep].tolist(), cols[keep].tolist())
    t = build_topology(edges, node_count=n)
    if t is not None:
        debug(f'{me}: end: edges: {t.edge_count}')
    return t


def generate(spec):
    """
    Generate the Topology a GenSpec describes, or None on error.
    """

    me = inspect.currentframe().f_code.co_name

    # case: BA
    #
    if spec.kind == GEN_BA:
        return generate_ba(spec.n, spec.m, spec.seed)

    # case: ER
    #
    if spec.kind == GEN_ER:
        return generate_er(spec.n, spec.p, spec.seed)

    return fail(me, f'unknown generator kind: {spec.kind} must be one of {GEN_KINDS}')
