"""Shared builders for tests: small graphs, random instances."""

import random

from pohp.graphs import Graph
from pohp.instances import Instance
from pohp.orders import close_order


def build_instance(names, edges, constraints=(), kind="path"):
    """edges: (u, v) or (u, v, weight) over vertex names; constraints: name pairs."""
    g = Graph(names)
    for e in edges:
        if len(e) == 2:
            g.add_edge(e[0], e[1])
        else:
            g.add_edge(e[0], e[1], e[2])
    order = close_order(g.n, [(g.idx(a), g.idx(b)) for a, b in constraints])
    return Instance(g, order, kind)


def path_graph(k):
    names = [f"v{i}" for i in range(k)]
    return names, [(f"v{i}", f"v{i+1}") for i in range(k - 1)]


def cycle_graph(k):
    names = [f"v{i}" for i in range(k)]
    edges = [(f"v{i}", f"v{(i+1) % k}") for i in range(k)]
    return names, edges


def complete_graph(k):
    names = [f"v{i}" for i in range(k)]
    edges = [(f"v{i}", f"v{j}") for i in range(k) for j in range(i + 1, k)]
    return names, edges


def random_order_pairs(n, density, rng):
    """Random acyclic constraint pairs over indices: i < j along a hidden order."""
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                pairs.append((perm[i], perm[j]))
    return pairs


def random_instance_from_layout(n, width, density, rng, kind="cycle",
                                max_weight=9, edge_prob=0.75):
    """Random graph whose pathwidth is bounded by construction: vertices are
    introduced along a layout and may only connect to the `width` most recent
    still-active vertices."""
    names = [f"v{i}" for i in range(n)]
    g = Graph(names)
    active = []
    edges = set()
    for v in range(n):
        for u in rng.sample(active, min(len(active), width)):
            if rng.random() < edge_prob:
                edges.add((u, v))
        active.append(v)
        if len(active) > width:
            active.pop(0)
    # keep it connected so Hamiltonicity is not hopeless
    for v in range(1, n):
        if not any(u < v and (u, v) in edges for u in range(v)):
            edges.add((max(0, v - 1 - rng.randrange(min(v, width))), v))
    for u, v in sorted(edges):
        g.add_edge_idx(u, v, rng.randrange(max_weight + 1))
    order = close_order(n, random_order_pairs(n, density, rng))
    return Instance(g, order, kind)
