"""Undirected graphs with integer edge weights over dense vertex indices.

Vertex identifiers are arbitrary whitespace-free tokens; they are mapped to
indices 0..n-1 at construction time.  Adjacency is kept both as bitmask ints
(fast set algebra for the solvers) and implicitly through the weight map.
"""

from __future__ import annotations

from .errors import UnknownVertexError


class Graph:
    __slots__ = ("names", "index", "n", "adj", "_weights")

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate vertex identifiers")
        for name in names:
            if not name or any(ch.isspace() for ch in name):
                raise ValueError(f"bad vertex identifier: {name!r}")
        self.names = names
        self.index = {name: i for i, name in enumerate(names)}
        self.n = len(names)
        self.adj = [0] * self.n          # bitmask of neighbours per vertex
        self._weights = {}               # (min_idx, max_idx) -> int

    def idx(self, name) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownVertexError(name) from None

    def add_edge(self, u, v, weight: int = 0):
        ui, vi = self.idx(u), self.idx(v)
        self.add_edge_idx(ui, vi, weight)

    def add_edge_idx(self, ui: int, vi: int, weight: int = 0):
        if ui == vi:
            raise ValueError("self-loops not allowed")
        key = (ui, vi) if ui < vi else (vi, ui)
        if key in self._weights:
            raise ValueError(f"parallel edge {self.names[ui]} {self.names[vi]}")
        self._weights[key] = int(weight)
        self.adj[ui] |= 1 << vi
        self.adj[vi] |= 1 << ui

    def has_edge_idx(self, ui: int, vi: int) -> bool:
        return bool(self.adj[ui] >> vi & 1)

    def weight_idx(self, ui: int, vi: int) -> int:
        key = (ui, vi) if ui < vi else (vi, ui)
        return self._weights[key]

    def edges_idx(self):
        return sorted(self._weights.items())

    @property
    def m(self) -> int:
        return len(self._weights)

    def degree_idx(self, ui: int) -> int:
        return bin(self.adj[ui]).count("1")

    def neighbors_idx(self, ui: int):
        mask = self.adj[ui]
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def mask_to_indices(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")
