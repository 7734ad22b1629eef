"""Edge-labeled graphs and the trail machinery behind the key element.

A labeled graph carries one nonzero ring element per vertex and per edge,
plus a fixed vertex ordering that the flow-up and key-element computations
refer to.  Graphs are immutable once built; validation results are cached.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .rings import (
    RingDescriptor,
    RingElement,
    canonical_associate,
    divides,
    gcd_many,
    lcm_many,
)

DEFAULT_TRAIL_CAP = 10**6


class GraphError(Exception):
    pass


class GraphValidationError(GraphError):
    def __init__(self, violations: Sequence[str]):
        super().__init__("invalid graph: " + "; ".join(violations))
        self.violations = tuple(violations)


class TrailCapExceededError(GraphError):
    """Trail enumeration explored more partial trails than the cap allows."""

    def __init__(self, cap: int):
        super().__init__(
            f"trail enumeration exceeded the cap of {cap} partial trails; "
            f"raise the cap to get an exact answer"
        )
        self.cap = cap


@dataclass(frozen=True)
class Edge:
    """Undirected edge between vertex indices u and v with a ring label."""

    u: int
    v: int
    label: RingElement

    def endpoints(self) -> Tuple[int, int]:
        return (self.u, self.v) if self.u <= self.v else (self.v, self.u)

    def other(self, vertex: int) -> int:
        return self.v if vertex == self.u else self.u


class LabeledGraph:
    """Finite graph with vertex labels m_i and edge labels r_e in one ring.

    The vertex ordering is part of the object: index 0 is the first vertex
    of the flow-up ordering.  Parallel edges are allowed, self-loops are not.
    """

    def __init__(
        self,
        ring: RingDescriptor,
        vertex_labels: Sequence[RingElement],
        edges: Iterable,
        names: Optional[Sequence[str]] = None,
    ):
        self.ring = ring
        self.vertex_labels = tuple(vertex_labels)
        built = []
        for e in edges:
            if isinstance(e, Edge):
                built.append(e)
            else:
                u, v, label = e
                built.append(Edge(u, v, label))
        self.edges = tuple(built)
        if names is None:
            names = tuple(f"v{i + 1}" for i in range(len(self.vertex_labels)))
        self.names = tuple(names)
        self._violations: Optional[Tuple[str, ...]] = None
        self._trail_cache: dict = {}
        adjacency: List[List[int]] = [[] for _ in self.vertex_labels]
        for idx, e in enumerate(self.edges):
            if 0 <= e.u < len(adjacency) and 0 <= e.v < len(adjacency):
                adjacency[e.u].append(idx)
                if e.v != e.u:
                    adjacency[e.v].append(idx)
        self.adjacency = tuple(tuple(a) for a in adjacency)

    @property
    def n(self) -> int:
        return len(self.vertex_labels)

    def vertex_name(self, i: int) -> str:
        return self.names[i]

    def with_vertex_labels(self, labels: Sequence[RingElement]) -> "LabeledGraph":
        relabeled = LabeledGraph(self.ring, labels, self.edges, self.names)
        # trail aggregates depend on edge labels only, which are shared
        relabeled._trail_cache = self._trail_cache
        return relabeled

    def validate(self) -> List[str]:
        """Return all invariant violations (empty list when valid)."""
        if self._violations is not None:
            return list(self._violations)
        v: List[str] = []
        n = self.n
        if n < 1:
            v.append("graph has no vertices")
        if len(self.names) != n:
            v.append("vertex name count does not match vertex count")
        elif len(set(self.names)) != n:
            v.append("vertex names are not unique")
        for i, label in enumerate(self.vertex_labels):
            name = self.names[i] if i < len(self.names) else f"v{i + 1}"
            if label.descriptor != self.ring:
                v.append(f"vertex {name}: label ring mismatch")
            elif label.is_zero:
                v.append(f"vertex {name}: zero label")
        for idx, e in enumerate(self.edges):
            where = f"edge {idx + 1}"
            if not (0 <= e.u < n and 0 <= e.v < n):
                v.append(f"{where}: endpoint out of range")
                continue
            if e.u == e.v:
                v.append(f"{where}: self-loop at {self.names[e.u]}")
            if e.label.descriptor != self.ring:
                v.append(f"{where}: label ring mismatch")
            elif e.label.is_zero:
                v.append(f"{where}: zero label")
        if n >= 1 and not v:
            seen = {0}
            frontier = [0]
            while frontier:
                current = frontier.pop()
                for idx in self.adjacency[current]:
                    other = self.edges[idx].other(current)
                    if other not in seen:
                        seen.add(other)
                        frontier.append(other)
            if len(seen) != n:
                missing = sorted(set(range(n)) - seen)
                names = ", ".join(self.names[i] for i in missing)
                v.append(f"disconnected: no path from {self.names[0]} to {names}")
        self._violations = tuple(v)
        return list(v)

    def require_valid(self) -> "LabeledGraph":
        violations = self.validate()
        if violations:
            raise GraphValidationError(violations)
        return self

    def __repr__(self) -> str:
        return f"<LabeledGraph {self.n} vertices, {len(self.edges)} edges over {self.ring}>"


@dataclass(frozen=True)
class Trail:
    """Walk that repeats no edge; vertices may repeat.

    vertices has one more entry than edges; vertices[k] and vertices[k+1]
    are the endpoints of edges[k].
    """

    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]

    def edge_labels(self, g: LabeledGraph) -> Tuple[RingElement, ...]:
        return tuple(g.edges[idx].label for idx in self.edges)


def trails_between(
    g: LabeledGraph,
    source: int,
    target: int,
    max_trails: int = DEFAULT_TRAIL_CAP,
) -> List[Trail]:
    """All trails from the source vertex to the target vertex.

    Depth-first extension over unused edges, in input edge order, so the
    result order is deterministic.  Trails passing through the target and
    returning later are all reported.  The cap counts explored partial
    trails (every reported trail is one), guarding both output size and
    running time.
    """
    if source == target:
        raise ValueError("trail endpoints must differ")
    out: List[Trail] = []
    steps = 0
    path_vertices = [source]
    path_edges: List[int] = []
    used = [False] * len(g.edges)

    def extend(current: int) -> None:
        nonlocal steps
        for idx in g.adjacency[current]:
            if used[idx]:
                continue
            steps += 1
            if steps > max_trails:
                raise TrailCapExceededError(max_trails)
            other = g.edges[idx].other(current)
            used[idx] = True
            path_vertices.append(other)
            path_edges.append(idx)
            if other == target:
                out.append(Trail(tuple(path_vertices), tuple(path_edges)))
            extend(other)
            used[idx] = False
            path_vertices.pop()
            path_edges.pop()

    extend(source)
    return out


def _maximal_by_edge_set(trails: Sequence[Trail]) -> List[Trail]:
    """Drop trails whose edge set is strictly contained in another's."""
    sets = [frozenset(t.edges) for t in trails]
    keep = []
    for i, t in enumerate(trails):
        if any(i != j and sets[i] < sets[j] for j in range(len(trails))):
            continue
        keep.append(t)
    return keep


def _trail_aggregate_pruned(
    g: LabeledGraph, source: int, target: int, max_trails: int
) -> RingElement:
    """lcm over all source-to-target trails of each trail's edge-label gcd.

    Exact, but prunes whole subtrees: extending a trail can only shrink its
    gcd (the gcd divides every edge label on the trail), so once the running
    gcd divides the lcm accumulated so far, no completion through this
    prefix can enlarge the aggregate.
    """
    from .rings import gcd as ring_gcd, lcm as ring_lcm

    aggregate = g.ring.one
    steps = 0
    used = [False] * len(g.edges)

    def extend(current: int, running: RingElement) -> None:
        nonlocal aggregate, steps
        for idx in g.adjacency[current]:
            if used[idx]:
                continue
            steps += 1
            if steps > max_trails:
                raise TrailCapExceededError(max_trails)
            other = g.edges[idx].other(current)
            tightened = ring_gcd(running, g.edges[idx].label)
            if other == target:
                aggregate = ring_lcm(aggregate, tightened)
            if divides(tightened, aggregate):
                continue
            used[idx] = True
            extend(other, tightened)
            used[idx] = False

    extend(source, g.ring.zero)  # gcd(0, r) = r seeds the running gcd
    return canonical_associate(aggregate)


def trail_constraint(
    g: LabeledGraph,
    source: int,
    target: int,
    max_trails: int = DEFAULT_TRAIL_CAP,
    maximal_only: bool = False,
) -> RingElement:
    """lcm over trails of the gcd of each trail's edge labels.

    maximal_only restricts to trails whose edge set is maximal under strict
    inclusion; it exists for comparison only, the default aggregates every
    trail.  Results are cached per graph (the aggregate depends only on the
    edge structure, which is immutable).
    """
    key = (source, target, maximal_only)
    cached = g._trail_cache.get(key)
    if cached is not None:
        return cached
    if maximal_only:
        trails = _maximal_by_edge_set(
            trails_between(g, source, target, max_trails=max_trails)
        )
        seen = set()
        gcds = []
        for t in trails:
            value = canonical_associate(gcd_many(t.edge_labels(g), g.ring))
            if value not in seen:
                seen.add(value)
                gcds.append(value)
        result = lcm_many(gcds, g.ring)
    else:
        result = _trail_aggregate_pruned(g, source, target, max_trails)
    g._trail_cache[key] = result
    return result
