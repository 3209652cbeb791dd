"""A fixed corpus of small connected simple graphs for harness sweeps.

Composition (deterministic, no randomness beyond the fixed seed):
  * every connected labeled graph on 2, 3, 4, and 5 vertices (1 + 4 + 38 + 728),
  * cycles, paths, and complete graphs on 6, 7, and 8 vertices,
  * 24 seeded random connected graphs on 6-8 vertices (PCG64, seed 2718).

That is well over the 200 graphs the double-cover sweep needs, all with at
most 8 vertices so exhaustive subset enumeration stays instant.
"""

from __future__ import annotations

import itertools

import numpy as np

from .graphs import Graph, connected_components
from .permgroup import seeded_rng

CORPUS_SEED = 2718


def _from_edges(n: int, edges) -> Graph:
    adj = np.zeros((n, n), dtype=np.int64)
    for i, j in edges:
        adj[i, j] = adj[j, i] = 1
    return Graph(adj)


def _is_connected(g: Graph) -> bool:
    return connected_components(g)[0] == 1


def _all_connected(n: int) -> list[Graph]:
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for mask in range(1, 1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1]
        g = _from_edges(n, edges)
        if _is_connected(g):
            out.append(g)
    return out


def cycle_graph(n: int) -> Graph:
    return _from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return _from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return _from_edges(n, itertools.combinations(range(n), 2))


def _seeded_random_connected(n: int, count: int, rng) -> list[Graph]:
    out = []
    while len(out) < count:
        p = 0.25 + 0.5 * rng.random()
        adj = (rng.random((n, n)) < p).astype(np.int64)
        adj = np.triu(adj, 1)
        g = Graph(adj + adj.T)
        if _is_connected(g):
            out.append(g)
    return out


def connected_graph_corpus() -> list[Graph]:
    """The full fixed corpus described in the module docstring."""
    graphs: list[Graph] = []
    for n in (2, 3, 4, 5):
        graphs.extend(_all_connected(n))
    for n in (6, 7, 8):
        graphs.append(cycle_graph(n))
        graphs.append(path_graph(n))
        graphs.append(complete_graph(n))
    rng = seeded_rng(CORPUS_SEED)
    for n in (6, 7, 8):
        graphs.extend(_seeded_random_connected(n, 8, rng))
    return graphs
