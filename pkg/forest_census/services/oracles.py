"""Independent ground truth for every count: determinants, brute-force census, sampling.

Counts that rely on ``det(L + I)`` use the classical identity that it equals the
number of spanning forests with every tree rooted anywhere; the identity is taken as
known, not derived here.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from forest_census.config import DEFAULT_CENSUS_MAX_EDGES
from forest_census.errors import InvalidInputError, ResourceLimitError
from forest_census.graph.models import (
    Edge,
    LabeledGraph,
    Part,
    PartSizes,
    RootedForest,
    RootProfile,
    parent_map_is_acyclic,
)
from forest_census.services.exact_math import BigCount, IntMatrix, det_bareiss

logger = logging.getLogger(__name__)

PART_WEIGHTS = {Part.M: (1, 0, 0), Part.N: (0, 1, 0), Part.P: (0, 0, 1)}

ComponentKey = Tuple[Tuple[int, int, int], ...]


@dataclass
class ForestCensus:
    parts: PartSizes
    counts: Dict[RootProfile, BigCount] = field(default_factory=dict)

    def total(self) -> BigCount:
        return sum(self.counts.values())

    def count(self, l: int, k: int, r: int) -> BigCount:
        return self.counts.get(RootProfile(l, k, r), 0)

    def rows(self) -> List[Tuple[RootProfile, BigCount]]:
        return sorted((profile, value) for profile, value in self.counts.items() if value)


def laplacian(g: LabeledGraph) -> IntMatrix:
    rows = [[0] * g.vertex_count for _ in range(g.vertex_count)]
    for v, degree in g.nx_graph.degree():
        rows[v][v] = degree
    for u, v in g.nx_graph.edges():
        rows[u][v] = rows[v][u] = -1
    return IntMatrix.from_rows(rows)


def spanning_tree_count_kirchhoff(g: LabeledGraph) -> BigCount:
    if g.vertex_count < 1:
        raise InvalidInputError("graph has no vertices")
    return det_bareiss(laplacian(g).without([0]))


def forest_count_for_root_set(g: LabeledGraph, roots: Iterable[int]) -> BigCount:
    """All-minors count: forests whose trees each hold exactly one vertex of ``roots``."""
    chosen = set(roots)
    if not chosen:
        raise InvalidInputError("root set must not be empty")
    if any(not 0 <= v < g.vertex_count for v in chosen):
        raise InvalidInputError(f"root set {sorted(chosen)} has vertices outside the graph")
    return det_bareiss(laplacian(g).without(chosen))


def forest_count_r_in_part_oracle(g: LabeledGraph, parts: PartSizes, r: int) -> BigCount:
    if not 1 <= r <= parts.p:
        raise InvalidInputError(f"need 1 <= r <= p, got r={r}, p={parts.p}")
    lap = laplacian(g)
    candidates = g.vertices_in(Part.P)
    return sum(det_bareiss(lap.without(subset)) for subset in itertools.combinations(candidates, r))


def total_rooted_forest_oracle(g: LabeledGraph) -> BigCount:
    return det_bareiss(laplacian(g).plus(IntMatrix.identity(g.vertex_count)))


class _RollbackUnionFind:
    """Union by size without path compression, so every union can be undone."""

    def __init__(self, weights: Sequence[Tuple[int, int, int]]):
        self.parents = list(range(len(weights)))
        self.sizes = [1] * len(weights)
        self.weights = list(weights)
        self._history: List[Tuple[int, int, Tuple[int, int, int]]] = []

    def find(self, elem: int) -> int:
        while elem != self.parents[elem]:
            elem = self.parents[elem]
        return elem

    def union(self, a: int, b: int) -> bool:
        p1, p2 = self.find(a), self.find(b)
        if p1 == p2:
            return False
        if self.sizes[p1] < self.sizes[p2]:
            p1, p2 = p2, p1
        self.parents[p2] = p1
        self.sizes[p1] += self.sizes[p2]
        old = self.weights[p1]
        extra = self.weights[p2]
        self.weights[p1] = (old[0] + extra[0], old[1] + extra[1], old[2] + extra[2])
        self._history.append((p2, p1, old))
        return True

    def rollback(self) -> None:
        child, root, old = self._history.pop()
        self.parents[child] = child
        self.sizes[root] -= self.sizes[child]
        self.weights[root] = old

    def component_key(self) -> ComponentKey:
        return tuple(sorted(self.weights[v] for v in range(len(self.parents)) if self.parents[v] == v))


def _forest_walk(
    g: LabeledGraph, prefix_mask: int = 0, prefix_len: int = 0
) -> Iterator[Tuple[int, _RollbackUnionFind]]:
    """Yield (edge bitmask, live union-find) for every acyclic edge subset.

    Bits follow ``g.sorted_edges``. The first ``prefix_len`` edges are fixed by
    ``prefix_mask``; the union-find is only valid until the generator resumes.
    """
    edges = g.sorted_edges
    uf = _RollbackUnionFind([PART_WEIGHTS[owner] for owner in g.part_of])
    for index in range(prefix_len):
        if prefix_mask >> index & 1 and not uf.union(*edges[index]):
            return

    def walk(index: int, mask: int) -> Iterator[Tuple[int, _RollbackUnionFind]]:
        if index == len(edges):
            yield mask, uf
            return
        yield from walk(index + 1, mask)
        if uf.union(*edges[index]):
            yield from walk(index + 1, mask | (1 << index))
            uf.rollback()

    yield from walk(prefix_len, prefix_mask & ((1 << prefix_len) - 1))


def iter_spanning_forests(g: LabeledGraph) -> Iterator[Tuple[int, Tuple[Edge, ...]]]:
    edges = g.sorted_edges
    for mask, _ in _forest_walk(g):
        yield mask, tuple(edge for index, edge in enumerate(edges) if mask >> index & 1)


def _root_polynomial(components: ComponentKey, parts: PartSizes) -> List[int]:
    """Coefficients of prod_i (a_i x + b_i y + c_i z), flattened over (l, k, r)."""
    stride_l = (parts.n + 1) * (parts.p + 1)
    stride_k = parts.p + 1
    poly = [0] * ((parts.m + 1) * stride_l)
    poly[0] = 1
    for a, b, c in components:
        nxt = [0] * len(poly)
        for idx, coeff in enumerate(poly):
            if not coeff:
                continue
            if a:
                nxt[idx + stride_l] += a * coeff
            if b:
                nxt[idx + stride_k] += b * coeff
            if c:
                nxt[idx + 1] += c * coeff
        poly = nxt
    return poly


def _census_branch(g: LabeledGraph, parts: PartSizes, prefix_mask: int, prefix_len: int) -> List[int]:
    shapes: Counter[ComponentKey] = Counter()
    for _, uf in _forest_walk(g, prefix_mask, prefix_len):
        shapes[uf.component_key()] += 1
    totals = [0] * ((parts.m + 1) * (parts.n + 1) * (parts.p + 1))
    for key, multiplicity in shapes.items():
        for idx, coeff in enumerate(_root_polynomial(key, parts)):
            if coeff:
                totals[idx] += multiplicity * coeff
    logger.debug("census branch %s/%s: %s component shapes", prefix_mask, prefix_len, len(shapes))
    return totals


def exhaustive_census(
    g: LabeledGraph,
    parts: PartSizes,
    max_edges: int = DEFAULT_CENSUS_MAX_EDGES,
    workers: int = 1,
) -> ForestCensus:
    if g.part_sizes() != parts:
        raise InvalidInputError(f"graph parts {g.part_sizes().as_tuple()} differ from {parts.as_tuple()}")
    edge_count = len(g.edges)
    if edge_count > max_edges:
        raise ResourceLimitError(f"census needs {edge_count} edges <= {max_edges}")

    if workers <= 1 or edge_count == 0:
        totals = _census_branch(g, parts, 0, 0)
    else:
        prefix_len = min(edge_count, (workers - 1).bit_length() + 2)
        masks = range(1 << prefix_len)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            branches = list(
                pool.map(
                    _census_branch,
                    itertools.repeat(g),
                    itertools.repeat(parts),
                    masks,
                    itertools.repeat(prefix_len),
                )
            )
        totals = [sum(column) for column in zip(*branches)]

    counts: Dict[RootProfile, BigCount] = {}
    for l in range(parts.m + 1):
        for k in range(parts.n + 1):
            for r in range(parts.p + 1):
                value = totals[(l * (parts.n + 1) + k) * (parts.p + 1) + r]
                if value:
                    counts[RootProfile(l, k, r)] = value
    census = ForestCensus(parts=parts, counts=counts)
    logger.info("census of K_%s: %s profiles, %s rooted forests", parts.as_tuple(), len(counts), census.total())
    return census


def iter_rooted_forests(g: LabeledGraph, allowed_roots: Optional[Iterable[int]] = None) -> Iterator[RootedForest]:
    """Every rooted spanning forest of ``g`` in lexicographic parent-map order.

    With ``allowed_roots`` only those vertices may be roots.
    """
    permitted = set(range(g.vertex_count)) if allowed_roots is None else set(allowed_roots)
    choices = [
        ([None] if v in permitted else []) + list(g.adjacency[v])
        for v in range(g.vertex_count)
    ]
    for parent in itertools.product(*choices):
        if parent_map_is_acyclic(parent):
            yield RootedForest(graph=g, parent=parent)


def _wilson(g: LabeledGraph, rng: np.random.Generator) -> RootedForest:
    # loop erasure by overwriting the last exit taken from each vertex
    in_tree = [False] * g.vertex_count
    nxt: List[Optional[int]] = [None] * g.vertex_count
    in_tree[0] = True
    for start in range(1, g.vertex_count):
        vertex = start
        while not in_tree[vertex]:
            neighbours = g.adjacency[vertex]
            nxt[vertex] = neighbours[int(rng.integers(len(neighbours)))]
            vertex = nxt[vertex]
        vertex = start
        while not in_tree[vertex]:
            in_tree[vertex] = True
            vertex = nxt[vertex]
    return RootedForest(graph=g, parent=tuple(nxt))


def sample_spanning_trees(g: LabeledGraph, count: int, seed: int) -> List[RootedForest]:
    """``count`` uniform spanning trees rooted at vertex 0 from one PCG64 stream."""
    if not g.is_connected():
        raise InvalidInputError("cannot sample a spanning tree of a disconnected graph")
    if count < 0:
        raise InvalidInputError(f"sample count must be non-negative, got {count}")
    if seed < 0:
        raise InvalidInputError(f"seed must be non-negative, got {seed}")
    rng = np.random.default_rng(seed)
    return [_wilson(g, rng) for _ in range(count)]


def sample_spanning_tree(g: LabeledGraph, seed: int) -> RootedForest:
    return sample_spanning_trees(g, 1, seed)[0]
