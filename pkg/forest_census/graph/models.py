from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from forest_census.errors import InvalidInputError

Edge = Tuple[int, int]


class Part(str, Enum):
    M = "M"
    N = "N"
    P = "P"


# networkx numbers the subsets of complete_multipartite_graph in argument order
PART_ORDER = (Part.M, Part.N, Part.P)


@dataclass(frozen=True)
class PartSizes:
    m: int
    n: int
    p: int

    def __post_init__(self) -> None:
        for name in ("m", "n", "p"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise InvalidInputError(f"part size {name} must be a non-negative integer, got {value!r}")

    @property
    def total(self) -> int:
        return self.m + self.n + self.p

    @property
    def edge_count(self) -> int:
        return self.m * self.n + self.m * self.p + self.n * self.p

    def part_range(self, part: Part) -> range:
        """Vertex indices of one part under the contiguous M, N, P numbering."""
        if part is Part.M:
            return range(0, self.m)
        if part is Part.N:
            return range(self.m, self.m + self.n)
        return range(self.m + self.n, self.total)

    def part_of(self, vertex: int) -> Part:
        if vertex < self.m:
            return Part.M
        if vertex < self.m + self.n:
            return Part.N
        return Part.P

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.m, self.n, self.p)


@dataclass(frozen=True, order=True)
class RootProfile:
    l: int
    k: int
    r: int

    def within(self, parts: PartSizes) -> bool:
        return 0 <= self.l <= parts.m and 0 <= self.k <= parts.n and 0 <= self.r <= parts.p


@dataclass(frozen=True)
class LabeledGraph:
    vertex_count: int
    part_of: Tuple[Part, ...]
    edges: FrozenSet[Edge]

    def __post_init__(self) -> None:
        if len(self.part_of) != self.vertex_count:
            raise InvalidInputError("part assignment must cover every vertex exactly once")
        for u, v in self.edges:
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.vertex_count):
                raise InvalidInputError(f"edge ({u}, {v}) is not a normalised vertex pair")

    @classmethod
    def from_edges(cls, part_of: Iterable[Part], edges: Iterable[Edge]) -> "LabeledGraph":
        parts = tuple(part_of)
        normalised: Set[Edge] = set()
        for u, v in edges:
            pair = (min(u, v), max(u, v))
            if pair in normalised:
                raise InvalidInputError(f"duplicate edge {pair}")
            normalised.add(pair)
        return cls(vertex_count=len(parts), part_of=parts, edges=frozenset(normalised))

    @cached_property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        neighbours: List[List[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            neighbours[u].append(v)
            neighbours[v].append(u)
        return tuple(tuple(sorted(items)) for items in neighbours)

    @cached_property
    def sorted_edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def degree(self, vertex: int) -> int:
        return len(self.adjacency[vertex])

    def vertices_in(self, part: Part) -> Tuple[int, ...]:
        return tuple(v for v, owner in enumerate(self.part_of) if owner is part)

    def part_sizes(self) -> PartSizes:
        return PartSizes(
            m=self.part_of.count(Part.M),
            n=self.part_of.count(Part.N),
            p=self.part_of.count(Part.P),
        )

    @cached_property
    def nx_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from((v, {"subset": PART_ORDER.index(owner)}) for v, owner in enumerate(self.part_of))
        graph.add_edges_from(self.edges)
        return graph

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return False
        return nx.is_connected(self.nx_graph)


@dataclass(frozen=True)
class RootedForest:
    """Parent map over the vertices of ``graph``; ``None`` marks a root.

    Only the shape is checked on construction. Acyclicity and edge membership are
    checked by :func:`is_rooted_spanning_forest`.
    """

    graph: LabeledGraph
    parent: Tuple[Optional[int], ...]

    def __post_init__(self) -> None:
        if len(self.parent) != self.graph.vertex_count:
            raise InvalidInputError(
                f"parent map has {len(self.parent)} entries for {self.graph.vertex_count} vertices"
            )
        for vertex, target in enumerate(self.parent):
            if target is not None and not (0 <= target < self.graph.vertex_count):
                raise InvalidInputError(f"vertex {vertex} points outside the graph ({target})")

    @classmethod
    def from_mapping(cls, graph: LabeledGraph, parent: Dict[int, Optional[int]]) -> "RootedForest":
        return cls(graph=graph, parent=tuple(parent.get(v) for v in range(graph.vertex_count)))

    @property
    def roots(self) -> FrozenSet[int]:
        return frozenset(v for v, target in enumerate(self.parent) if target is None)

    @property
    def directed_edges(self) -> Tuple[Edge, ...]:
        return tuple((v, target) for v, target in enumerate(self.parent) if target is not None)

    @property
    def edge_count(self) -> int:
        return sum(1 for target in self.parent if target is not None)

    def undirected_edges(self) -> FrozenSet[Edge]:
        return frozenset((min(u, v), max(u, v)) for u, v in self.directed_edges)

    def out_degree(self, vertex: int) -> int:
        return 0 if self.parent[vertex] is None else 1

    def in_degree(self, vertex: int) -> int:
        return sum(1 for target in self.parent if target == vertex)


def build_complete_multipartite(parts: PartSizes) -> LabeledGraph:
    """Complete tripartite graph with H_m, H_n, H_p numbered contiguously in that order."""
    if parts.total == 0:
        raise InvalidInputError("cannot build a graph with no vertices")
    graph = nx.complete_multipartite_graph(parts.m, parts.n, parts.p)
    part_of = tuple(PART_ORDER[graph.nodes[v]["subset"]] for v in range(parts.total))
    edges = frozenset((min(u, v), max(u, v)) for u, v in graph.edges())
    return LabeledGraph(vertex_count=parts.total, part_of=part_of, edges=edges)


def parent_map_is_acyclic(parent: Sequence[Optional[int]]) -> bool:
    # 0 unvisited, 1 on the current path, 2 known to reach a root
    state = [0] * len(parent)
    for start in range(len(parent)):
        path = []
        vertex: Optional[int] = start
        while vertex is not None and state[vertex] == 0:
            state[vertex] = 1
            path.append(vertex)
            vertex = parent[vertex]
        if vertex is not None and state[vertex] == 1:
            return False
        for visited in path:
            state[visited] = 2
    return True


def is_rooted_spanning_forest(g: LabeledGraph, f: RootedForest, roots: Iterable[int]) -> bool:
    if f.graph.vertex_count != g.vertex_count:
        return False
    for child, target in f.directed_edges:
        if child == target or not g.has_edge(child, target):
            return False
    if f.roots != frozenset(roots):
        return False
    return parent_map_is_acyclic(f.parent)


def root_distribution(f: RootedForest, parts: PartSizes) -> RootProfile:
    counts = {Part.M: 0, Part.N: 0, Part.P: 0}
    for root in f.roots:
        counts[parts.part_of(root)] += 1
    return RootProfile(l=counts[Part.M], k=counts[Part.N], r=counts[Part.P])
