"""Build H_p-rooted spanning forests of K_{m,n,p} from a rooted forest of K_{m,n}.

A plan fixes four things: the bipartite base forest, the designated roots in H_p,
where every other H_p vertex attaches, and which open base roots merge into another
component through an H_p vertex. Whatever base roots remain open are then closed
onto the designated roots. Merge edges are kept as an unordered set; the final state
does not depend on the order they are applied in.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from forest_census.config import DEFAULT_CONSTRUCTION_MAX_VERTICES
from forest_census.errors import (
    CycleRiskError,
    DecompositionError,
    IncompletePlanError,
    InvalidInputError,
    InvalidPlanError,
    ResourceLimitError,
    UnsupportedInputError,
)
from forest_census.graph.models import (
    Edge,
    LabeledGraph,
    PartSizes,
    RootedForest,
    build_complete_multipartite,
    is_rooted_spanning_forest,
    root_distribution,
)
from forest_census.services.oracles import iter_rooted_forests

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def _graph(parts: PartSizes) -> LabeledGraph:
    return build_complete_multipartite(parts)


def _base_parts(parts: PartSizes) -> PartSizes:
    return PartSizes(parts.m, parts.n, 0)


@dataclass(frozen=True)
class ConstructionPlan:
    parts: PartSizes
    base_forest: RootedForest
    p_roots: FrozenSet[int]
    attachments: Tuple[Edge, ...]
    merge_edges: FrozenSet[Edge] = frozenset()
    closing: Tuple[Edge, ...] = ()

    @classmethod
    def build(
        cls,
        parts: PartSizes,
        base_forest: RootedForest,
        p_roots: Iterable[int],
        attachments: Mapping[int, int],
        merge_edges: Iterable[Edge] = (),
        closing: Optional[Mapping[int, int]] = None,
    ) -> "ConstructionPlan":
        return cls(
            parts=parts,
            base_forest=base_forest,
            p_roots=frozenset(p_roots),
            attachments=tuple(sorted(attachments.items())),
            merge_edges=frozenset(merge_edges),
            closing=tuple(sorted((closing or {}).items())),
        )

    @property
    def r(self) -> int:
        return len(self.p_roots)

    @property
    def t(self) -> int:
        return len(self.merge_edges)

    @property
    def base_profile(self) -> Tuple[int, int]:
        profile = root_distribution(self.base_forest, _base_parts(self.parts))
        return profile.l, profile.k


@dataclass(frozen=True)
class ConstructionState:
    parts: PartSizes
    parent: Tuple[Optional[int], ...]
    p_roots: FrozenSet[int]
    merged: FrozenSet[Edge] = frozenset()

    def component_root(self, vertex: int) -> int:
        while self.parent[vertex] is not None:
            vertex = self.parent[vertex]  # type: ignore[assignment]
        return vertex

    @property
    def component_count(self) -> int:
        return sum(1 for target in self.parent if target is None)

    def open_roots(self) -> Tuple[int, ...]:
        """Vertices of H_m and H_n with out-degree zero."""
        return tuple(v for v in range(self.parts.m + self.parts.n) if self.parent[v] is None)

    @property
    def open_component_count(self) -> int:
        return len(self.open_roots())


@dataclass(frozen=True)
class ConstructionOutcome:
    forest: RootedForest
    applied_t: int


@dataclass
class ConstructionCensus:
    parts: PartSizes
    p_roots: FrozenSet[int]
    total: int = 0
    forests: FrozenSet[Tuple[Optional[int], ...]] = frozenset()
    by_base_profile: Dict[Tuple[int, int], int] = field(default_factory=dict)
    by_merge_count: Dict[int, int] = field(default_factory=dict)
    plans: Tuple[ConstructionPlan, ...] = ()


def _check_p_roots(parts: PartSizes, p_roots: FrozenSet[int]) -> None:
    if not p_roots:
        raise InvalidPlanError("at least one designated root is required")
    h_p = range(parts.m + parts.n, parts.total)
    stray = sorted(v for v in p_roots if v not in h_p)
    if stray:
        raise InvalidPlanError(f"designated roots {stray} are not in H_p")


def attach_free_part(
    parts: PartSizes,
    base_forest: RootedForest,
    p_roots: Iterable[int],
    attachments: Mapping[int, int],
) -> ConstructionState:
    """Hang every non-root H_p vertex off a vertex of the base forest."""
    base_size = parts.m + parts.n
    if base_size < 1:
        raise UnsupportedInputError("the construction needs m + n >= 1")
    base_graph = _graph(_base_parts(parts))
    if base_forest.graph != base_graph or not is_rooted_spanning_forest(base_graph, base_forest, base_forest.roots):
        raise InvalidPlanError("base forest is not a rooted spanning forest of K_{m,n}")
    roots = frozenset(p_roots)
    _check_p_roots(parts, roots)

    free = [z for z in range(base_size, parts.total) if z not in roots]
    for z, target in attachments.items():
        if z in roots:
            raise InvalidPlanError(f"designated root {z} cannot be attached")
        if not base_size <= z < parts.total:
            raise InvalidPlanError(f"attachment source {z} is not in H_p")
        if not 0 <= target < base_size:
            raise InvalidPlanError(f"attachment target {target} is not in H_m or H_n")
    missing = [z for z in free if z not in attachments]
    if missing:
        raise InvalidPlanError(f"H_p vertices {missing} have no attachment")

    parent = base_forest.parent + tuple(attachments.get(z) for z in range(base_size, parts.total))
    return ConstructionState(parts=parts, parent=parent, p_roots=roots)


def add_merge_edges(state: ConstructionState, merge_edges: Iterable[Edge]) -> ConstructionState:
    """Point open base roots at non-root H_p vertices of other components."""
    parts = state.parts
    base_size = parts.m + parts.n
    parent = list(state.parent)
    current = state
    for source, target in sorted(set(merge_edges)):
        if not 0 <= source < base_size or parent[source] is not None:
            raise InvalidPlanError(f"merge source {source} is not an open root of H_m or H_n")
        if not base_size <= target < parts.total or target in state.p_roots:
            raise InvalidPlanError(f"merge target {target} is not a non-root H_p vertex")
        if current.component_root(target) == source:
            raise CycleRiskError(f"merge edge ({source}, {target}) stays inside one component")
        parent[source] = target
        current = ConstructionState(
            parts=parts,
            parent=tuple(parent),
            p_roots=state.p_roots,
            merged=current.merged | {(source, target)},
        )
    return current


def close_to_roots(state: ConstructionState, closing: Mapping[int, int]) -> ConstructionOutcome:
    open_roots = set(state.open_roots())
    for source, target in closing.items():
        if source not in open_roots:
            raise InvalidPlanError(f"closing source {source} is not an open root")
        if target not in state.p_roots:
            raise InvalidPlanError(f"closing target {target} is not a designated root")
    uncovered = sorted(open_roots - set(closing))
    if uncovered:
        raise IncompletePlanError(f"open roots {uncovered} are not closed")

    parent = list(state.parent)
    for source, target in closing.items():
        parent[source] = target
    graph = _graph(state.parts)
    forest = RootedForest(graph=graph, parent=tuple(parent))
    if not is_rooted_spanning_forest(graph, forest, state.p_roots):
        raise DecompositionError("closing produced an invalid forest")
    return ConstructionOutcome(forest=forest, applied_t=len(state.merged))


def replay(plan: ConstructionPlan) -> ConstructionOutcome:
    state = attach_free_part(plan.parts, plan.base_forest, plan.p_roots, dict(plan.attachments))
    state = add_merge_edges(state, plan.merge_edges)
    return close_to_roots(state, dict(plan.closing))


def decompose(forest: RootedForest, parts: PartSizes) -> ConstructionPlan:
    """Recover the unique plan that replays to ``forest``."""
    if forest.graph.part_sizes() != parts:
        raise InvalidInputError(f"forest graph does not have parts {parts.as_tuple()}")
    if not is_rooted_spanning_forest(forest.graph, forest, forest.roots):
        raise InvalidInputError("not a rooted spanning forest")
    base_size = parts.m + parts.n
    roots = forest.roots
    if any(v < base_size for v in roots):
        raise UnsupportedInputError("every root must lie in H_p")
    if base_size < 1:
        raise UnsupportedInputError("the construction needs m + n >= 1")

    parent = forest.parent
    base_parent = tuple(
        target if target is not None and target < base_size else None for target in parent[:base_size]
    )
    attachments = {z: parent[z] for z in range(base_size, parts.total) if z not in roots}
    merge_edges = [(a, parent[a]) for a in range(base_size) if parent[a] >= base_size and parent[a] not in roots]
    closing = {a: parent[a] for a in range(base_size) if parent[a] in roots}
    return ConstructionPlan.build(
        parts=parts,
        base_forest=RootedForest(graph=_graph(_base_parts(parts)), parent=base_parent),
        p_roots=roots,
        attachments=attachments,
        merge_edges=merge_edges,
        closing=closing,
    )


def _merge_choices(
    state: ConstructionState, sources: Sequence[int], index: int, targets: Sequence[int]
) -> Iterator[ConstructionState]:
    # each open root either stays open or merges into one target outside its component
    if index == len(sources):
        yield state
        return
    source = sources[index]
    yield from _merge_choices(state, sources, index + 1, targets)
    for target in targets:
        if state.component_root(target) != source:
            yield from _merge_choices(add_merge_edges(state, [(source, target)]), sources, index + 1, targets)


def enumerate_constructions(
    parts: PartSizes,
    r: int,
    root_set: Optional[Iterable[int]] = None,
    max_vertices: int = DEFAULT_CONSTRUCTION_MAX_VERTICES,
) -> ConstructionCensus:
    """Replay every plan for one root subset and check each forest appears once."""
    if parts.total > max_vertices:
        raise ResourceLimitError(f"construction enumeration needs {parts.total} vertices <= {max_vertices}")
    if not 1 <= r <= parts.p:
        raise InvalidInputError(f"need 1 <= r <= p, got r={r}, p={parts.p}")
    base_size = parts.m + parts.n
    if base_size < 1:
        raise UnsupportedInputError("the construction needs m + n >= 1")
    h_p = list(range(base_size, parts.total))
    p_roots = frozenset(h_p[:r] if root_set is None else root_set)
    if len(p_roots) != r:
        raise InvalidInputError(f"root set {sorted(p_roots)} does not have {r} vertices")
    _check_p_roots(parts, p_roots)

    free = [z for z in h_p if z not in p_roots]
    closing_targets = sorted(p_roots)
    seen: Dict[Tuple[Optional[int], ...], ConstructionPlan] = {}
    by_base: Counter[Tuple[int, int]] = Counter()
    by_t: Counter[int] = Counter()

    base_graph = _graph(_base_parts(parts))
    for base_forest in iter_rooted_forests(base_graph):
        profile = root_distribution(base_forest, _base_parts(parts))
        for targets in itertools.product(range(base_size), repeat=len(free)):
            attachments = dict(zip(free, targets))
            attached = attach_free_part(parts, base_forest, p_roots, attachments)
            for merged in _merge_choices(attached, attached.open_roots(), 0, free):
                open_roots = merged.open_roots()
                for ends in itertools.product(closing_targets, repeat=len(open_roots)):
                    closing = dict(zip(open_roots, ends))
                    outcome = close_to_roots(merged, closing)
                    key = outcome.forest.parent
                    if key in seen:
                        raise DecompositionError(f"forest {key} arises from two plans")
                    seen[key] = ConstructionPlan.build(
                        parts, base_forest, p_roots, attachments, merged.merged, closing
                    )
                    by_base[(profile.l, profile.k)] += 1
                    by_t[outcome.applied_t] += 1

    logger.info(
        "constructions for K_%s with roots %s: %s distinct forests",
        parts.as_tuple(),
        sorted(p_roots),
        len(seen),
    )
    return ConstructionCensus(
        parts=parts,
        p_roots=p_roots,
        total=len(seen),
        forests=frozenset(seen),
        by_base_profile=dict(by_base),
        by_merge_count=dict(by_t),
        plans=tuple(seen.values()),
    )
