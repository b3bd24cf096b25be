"""Canonical graphs of finite metric spaces.

The canonical graph keeps exactly the pairs uv such that no third point w
satisfies d(u,w) + d(w,v) = d(u,v); its weighted path metric reproduces the
original metric.  Each edge carries a fixed reference orientation (tail =
smaller point index) so that signed edge vectors are well defined.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import InvalidInput
from .metric import MetricSpace, _INT64_SAFE, _scaled_int_rows, path_metric
from .rational import frac_str


class Edge(NamedTuple):
    tail: int
    head: int
    weight: Fraction


@dataclass(frozen=True)
class CanonicalGraph:
    """Weighted graph on a metric space with a fixed reference orientation.

    Built by :func:`canonical_graph`; the constructor only prepares lookup
    tables.  Edges are ordered lexicographically by (tail, head).
    """

    space: MetricSpace
    edges: tuple[Edge, ...]
    _pair_index: dict = field(default_factory=dict, repr=False, compare=False)
    _adjacency: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        for idx, e in enumerate(self.edges):
            self._pair_index[(e.tail, e.head)] = idx
        adj = [[] for _ in range(self.space.n)]
        for idx, e in enumerate(self.edges):
            adj[e.tail].append((idx, e.head))
            adj[e.head].append((idx, e.tail))
        self._adjacency.extend(tuple(sorted(a, key=lambda t: t[1])) for a in adj)

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_index(self, u: int, v: int) -> int | None:
        """Index of the edge {u, v}, or None if not an edge."""
        return self._pair_index.get((u, v) if u < v else (v, u))

    def incident(self, v: int) -> tuple[tuple[int, int], ...]:
        """(edge_index, neighbour) pairs at v, sorted by neighbour."""
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    def max_degree(self) -> int:
        return max(self.degrees())

    def endpoints_name(self, idx: int) -> tuple[str, str]:
        e = self.edges[idx]
        return self.space.points[e.tail], self.space.points[e.head]

    def to_json_obj(self) -> dict:
        return {
            "vertices": list(self.space.points),
            "edges": [
                {"u": self.space.points[e.tail],
                 "v": self.space.points[e.head],
                 "w": frac_str(e.weight)}
                for e in self.edges
            ],
            "base": self.space.points[self.space.base_point],
        }

    def to_dot(self) -> str:
        """DOT digraph; arrowheads show the reference orientation."""
        lines = ["digraph canonical {"]
        for name in self.space.points:
            lines.append(f'  "{name}";')
        for e in self.edges:
            u, v = self.space.points[e.tail], self.space.points[e.head]
            lines.append(f'  "{u}" -> "{v}" [label="{frac_str(e.weight)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _deletion_mask(space: MetricSpace) -> list[list[bool]]:
    """mask[i][k] true iff some j outside {i,k} gives d(i,j)+d(j,k) = d(i,k)."""
    n = space.n
    scaled, _ = _scaled_int_rows(space.dist)
    peak = max(max(r) for r in scaled)
    if peak < _INT64_SAFE:
        mat = np.array(scaled, dtype=np.int64)
        drop = np.zeros((n, n), dtype=bool)
        for j in range(n):
            via = mat[:, j][:, None] + mat[j, :][None, :]
            eq = mat == via
            eq[j, :] = False
            eq[:, j] = False
            drop |= eq
        return drop.tolist()
    drop = [[False] * n for _ in range(n)]
    for j in range(n):
        rj = scaled[j]
        for i in range(n):
            if i == j:
                continue
            dij = scaled[i][j]
            ri = scaled[i]
            row = drop[i]
            for k in range(n):
                if k != j and ri[k] == dij + rj[k]:
                    row[k] = True
    return drop


def connected_components(n: int, pairs) -> list[int]:
    """Component label per vertex (labels are the minimal member indices)."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv
    return [find(v) for v in range(n)]


def canonical_graph(space: MetricSpace) -> CanonicalGraph:
    """Canonical graph of a metric space, with reference orientation.

    An unordered pair {u, v} is an edge iff no w outside {u, v} satisfies
    d(u,w) + d(w,v) = d(u,v).  Tails are the smaller point indices.  The
    construction asserts that the result is connected and that its weighted
    path metric reproduces the input metric exactly.
    """
    n = space.n
    drop = _deletion_mask(space)
    edges = tuple(
        Edge(i, k, space.dist[i][k])
        for i in range(n) for k in range(i + 1, n)
        if not drop[i][k]
    )
    labels = connected_components(n, ((e.tail, e.head) for e in edges))
    assert all(c == 0 for c in labels), "canonical graph must be connected"
    realized = path_metric(n, [(e.tail, e.head, e.weight) for e in edges])
    assert all(
        tuple(realized[i]) == space.dist[i] for i in range(n)
    ), "canonical graph path metric must equal the input metric"
    return CanonicalGraph(space, edges)


# --- deterministic shortest paths on the canonical graph ---------------------

def shortest_path_tree(graph: CanonicalGraph, source: int):
    """Dijkstra tree from `source`: (distances, predecessor edge indices).

    Deterministic: among equal-length paths the predecessor with the smaller
    vertex index wins, so every (source, target) pair has one fixed path.
    """
    n = graph.n
    dist: list[Fraction | None] = [None] * n
    pred_vertex: list[int | None] = [None] * n
    pred_edge: list[int | None] = [None] * n
    done = [False] * n
    heap: list[tuple[Fraction, int]] = [(Fraction(0), source)]
    dist[source] = Fraction(0)
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for eidx, v in graph.incident(u):
            if done[v]:
                continue
            nd = d + graph.edges[eidx].weight
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                pred_vertex[v] = u
                pred_edge[v] = eidx
                heapq.heappush(heap, (nd, v))
            elif nd == dist[v] and pred_vertex[v] is not None and u < pred_vertex[v]:
                pred_vertex[v] = u
                pred_edge[v] = eidx
    return dist, pred_edge


def shortest_path_arcs(graph: CanonicalGraph, u: int, v: int) -> list[tuple[int, int]]:
    """Edges of the fixed shortest u-v path as (edge_index, sign) arcs.

    The sign is +1 when the path traverses the edge along its reference
    orientation, -1 otherwise.
    """
    _, pred_edge = shortest_path_tree(graph, u)
    arcs = []
    cur = v
    while cur != u:
        eidx = pred_edge[cur]
        if eidx is None:
            raise InvalidInput("graph is not connected")
        e = graph.edges[eidx]
        if e.head == cur:
            arcs.append((eidx, 1))
            cur = e.tail
        else:
            arcs.append((eidx, -1))
            cur = e.head
    arcs.reverse()
    return arcs


# --- directed subgraphs -------------------------------------------------------

@dataclass(frozen=True)
class DirectedSubgraph:
    """A set of directed edges of a canonical graph.

    Arcs are (u, v) vertex-index pairs meaning u -> v; each underlying
    unordered pair must be a canonical-graph edge.  Both orientations of the
    same edge are representable (such a set is never a downhill graph, but
    it is a legal query).
    """

    graph: CanonicalGraph
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v in self.arcs:
            if self.graph.edge_index(u, v) is None:
                pu, pv = self.graph.space.points[u], self.graph.space.points[v]
                raise InvalidInput(f"({pu},{pv}) is not a canonical-graph edge")
            if (u, v) in seen:
                raise InvalidInput("duplicate directed edge")
            seen.add((u, v))
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs)))

    def __len__(self) -> int:
        return len(self.arcs)

    def arc_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.arcs)

    def edge_indices(self) -> frozenset[int]:
        return frozenset(self.graph.edge_index(u, v) for u, v in self.arcs)

    def is_acyclic(self) -> bool:
        order: dict[int, list[int]] = {}
        for u, v in self.arcs:
            order.setdefault(u, []).append(v)
        state: dict[int, int] = {}

        def visit(x) -> bool:
            state[x] = 1
            for y in order.get(x, ()):
                if state.get(y) == 1:
                    return False
                if state.get(y) is None and not visit(y):
                    return False
            state[x] = 2
            return True

        return all(visit(v) for v in list(order) if state.get(v) is None)

    def to_json_obj(self) -> dict:
        pts = self.graph.space.points
        return {"edges": [{"u": pts[u], "v": pts[v]} for u, v in self.arcs]}

    @classmethod
    def from_json_obj(cls, graph: CanonicalGraph, obj: dict) -> DirectedSubgraph:
        try:
            raw = obj["edges"]
        except (TypeError, KeyError) as exc:
            raise InvalidInput("directed subgraph JSON needs 'edges'") from exc
        arcs = []
        for e in raw:
            try:
                arcs.append((graph.space.index_of(e["u"]), graph.space.index_of(e["v"])))
            except (TypeError, KeyError) as exc:
                raise InvalidInput("each directed edge needs 'u' and 'v'") from exc
        return cls(graph, tuple(arcs))

    def to_dot(self) -> str:
        pts = self.graph.space.points
        lines = ["digraph directed {"]
        for u, v in self.arcs:
            lines.append(f'  "{pts[u]}" -> "{pts[v]}";')
        lines.append("}")
        return "\n".join(lines) + "\n"
