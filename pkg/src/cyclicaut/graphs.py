"""Circulant graphs and digraphs, and plain edge-set graphs for their images."""

from __future__ import annotations

from functools import cached_property
from math import gcd
from typing import Iterable

import numpy as np

from .arithmetic import units
from .permutation import Permutation


class Graph:
    """A (di)graph on {0, ..., n-1}; undirected edges are stored in both directions."""

    n: int
    directed: bool

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        raise NotImplementedError

    @cached_property
    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=bool)
        if self.edges:
            e = np.array(sorted(self.edges))
            A[e[:, 0], e[:, 1]] = True
        return A

    @cached_property
    def _edge_array(self) -> np.ndarray:
        return np.array(sorted(self.edges), dtype=np.int64).reshape(-1, 2)

    def edge_list(self) -> list[tuple[int, int]]:
        """Sorted edges; undirected graphs list each edge once as (i, j) with i < j."""
        if self.directed:
            return sorted(self.edges)
        return sorted((i, j) for i, j in self.edges if i < j)

    @property
    def edge_count(self) -> int:
        return len(self.edge_list())

    def degree_multiset(self) -> tuple[tuple[int, int], ...]:
        out = self.adjacency.sum(axis=1)
        inn = self.adjacency.sum(axis=0)
        return tuple(sorted(zip(out.tolist(), inn.tolist())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.directed, self.edges) == (other.n, other.directed, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.directed, self.edges))

    def apply_perm(self, sigma: Permutation) -> EdgeGraph:
        if sigma.n != self.n:
            raise ValueError(f"degree mismatch: {sigma.n} vs {self.n}")
        s = sigma.image
        return EdgeGraph(self.n, ((s[i], s[j]) for i, j in self.edges), self.directed)

    def maps_to(self, sigma: Permutation, other: Graph) -> bool:
        if sigma.n != self.n or other.n != self.n:
            raise ValueError("degree mismatch")
        if self.directed != other.directed or len(self.edges) != len(other.edges):
            return False
        e = self._edge_array
        if e.size == 0:
            return True
        s = sigma.array
        return bool(other.adjacency[s[e[:, 0]], s[e[:, 1]]].all())

    def batch_maps_to(self, images: np.ndarray, other: Graph) -> np.ndarray:
        B = images.shape[0]
        if self.directed != other.directed or len(self.edges) != len(other.edges):
            return np.zeros(B, dtype=bool)
        e = self._edge_array
        if e.size == 0:
            return np.ones(B, dtype=bool)
        return other.adjacency[images[:, e[:, 0]], images[:, e[:, 1]]].all(axis=1)

    def is_automorphism(self, sigma: Permutation) -> bool:
        return self.maps_to(sigma, self)

    def to_dot(self) -> str:
        kind, arrow = ("digraph", "->") if self.directed else ("graph", "--")
        lines = [f"{kind} G {{"]
        lines += [f"  {i};" for i in range(self.n)]
        lines += [f"  {i} {arrow} {j};" for i, j in self.edge_list()]
        lines.append("}")
        return "\n".join(lines)


class EdgeGraph(Graph):
    def __init__(self, n: int, edges: Iterable[tuple[int, int]], directed: bool = False) -> None:
        self.n = n
        self.directed = directed
        es = set()
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range")
            es.add((i, j))
            if not directed:
                es.add((j, i))
        self.__dict__["edges"] = frozenset(es)

    def __repr__(self) -> str:
        return f"EdgeGraph(n={self.n}, edges={self.edge_count}, directed={self.directed})"

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edge_list()], "directed": self.directed}


class CirculantGraph(Graph):
    """i -> j is an edge iff (j - i) mod n lies in the connection set."""

    def __init__(self, n: int, connection: Iterable[int], directed: bool = False) -> None:
        if n < 1:
            raise ValueError("need at least one vertex")
        S = sorted({s % n for s in connection})
        if 0 in S:
            raise ValueError("0 may not lie in the connection set")
        if not directed and any((-s) % n not in S for s in S):
            raise ValueError("undirected connection set must be closed under negation")
        self.n = n
        self.connection = tuple(S)
        self.directed = directed

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, (i + s) % self.n) for i in range(self.n) for s in self.connection)

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"CirculantGraph(n={self.n}, S={list(self.connection)}, {kind})"

    def multiply(self, a: int) -> CirculantGraph:
        if gcd(a, self.n) != 1:
            raise ValueError(f"gcd({a}, {self.n}) != 1")
        return CirculantGraph(self.n, (a * s for s in self.connection), self.directed)

    def to_json(self) -> dict:
        return {"n": self.n, "connection": list(self.connection), "directed": self.directed}


def circulant(n: int, connection: Iterable[int], directed: bool = False) -> CirculantGraph:
    return CirculantGraph(n, connection, directed)


def cycle_graph(n: int) -> CirculantGraph:
    return CirculantGraph(n, {1, n - 1})


def multiplier_stabilizer(G: CirculantGraph) -> list[int]:
    S = set(G.connection)
    n = G.n
    return [a for a in units(n) if {a * s % n for s in S} == S]


def graph_from_json(data: dict) -> Graph:
    n = int(data["n"])
    directed = bool(data.get("directed", False))
    if "connection" in data:
        return CirculantGraph(n, data["connection"], directed)
    if "edges" in data:
        return EdgeGraph(n, (tuple(e) for e in data["edges"]), directed)
    raise ValueError("graph descriptor needs 'connection' or 'edges'")
