"""Sparse exact vectors over a canonical graph.

Two kinds live here: edge vectors (elements of the weighted l1 space on the
edge set, i.e. roadmap data) and vertex vectors with zero sum
(transportation problems).  Both are immutable, support exact linear
arithmetic, and remember the graph they belong to.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput
from .graph import CanonicalGraph
from .rational import ZERO, frac_str, to_fraction


def _clean(values: dict) -> dict:
    return {k: v for k, v in values.items() if v != 0}


@dataclass(frozen=True)
class EdgeVector:
    """Sparse map edge index -> Fraction; an element of l_{1,d}(E)."""

    graph: CanonicalGraph
    values: dict

    def __post_init__(self):
        vals = {}
        for k, v in self.values.items():
            if not isinstance(k, int) or not 0 <= k < self.graph.m:
                raise InvalidInput(f"edge index {k!r} out of range")
            f = to_fraction(v)
            if f != 0:
                vals[k] = f
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, graph: CanonicalGraph) -> EdgeVector:
        return cls(graph, {})

    def __getitem__(self, idx: int) -> Fraction:
        return self.values.get(idx, ZERO)

    def support(self) -> frozenset[int]:
        return frozenset(self.values)

    def is_zero(self) -> bool:
        return not self.values

    def _same_graph(self, other: EdgeVector):
        if self.graph is not other.graph:
            raise InvalidInput("edge vectors live on different graphs")

    def __add__(self, other: EdgeVector) -> EdgeVector:
        self._same_graph(other)
        out = dict(self.values)
        for k, v in other.values.items():
            out[k] = out.get(k, ZERO) + v
        return EdgeVector(self.graph, _clean(out))

    def __sub__(self, other: EdgeVector) -> EdgeVector:
        return self + (-other)

    def __neg__(self) -> EdgeVector:
        return EdgeVector(self.graph, {k: -v for k, v in self.values.items()})

    def scale(self, a) -> EdgeVector:
        a = to_fraction(a)
        return EdgeVector(self.graph, {k: a * v for k, v in self.values.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, EdgeVector)
                and self.graph is other.graph
                and self.values == other.values)

    def l1d_norm(self) -> Fraction:
        """Weighted l1 norm: sum over edges of |value| * weight."""
        total = ZERO
        for k, v in self.values.items():
            total += abs(v) * self.graph.edges[k].weight
        return total


def l1d_norm(p: EdgeVector) -> Fraction:
    return p.l1d_norm()


@dataclass(frozen=True)
class TransportationProblem:
    """Zero-sum sparse vertex vector: supplies (>0) and demands (<0)."""

    graph: CanonicalGraph
    values: dict

    def __post_init__(self):
        vals = {}
        total = ZERO
        for k, v in self.values.items():
            if not isinstance(k, int) or not 0 <= k < self.graph.n:
                raise InvalidInput(f"vertex index {k!r} out of range")
            f = to_fraction(v)
            total += f
            if f != 0:
                vals[k] = f
        if total != 0:
            raise InvalidInput("transportation problem must have zero sum")
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, graph: CanonicalGraph) -> TransportationProblem:
        return cls(graph, {})

    @classmethod
    def from_names(cls, graph: CanonicalGraph, named: dict) -> TransportationProblem:
        idx = {graph.space.index_of(name): v for name, v in named.items()}
        return cls(graph, idx)

    @classmethod
    def point_difference(cls, graph: CanonicalGraph, u: str, v: str,
                         amount=1) -> TransportationProblem:
        """amount * (indicator(u) - indicator(v))."""
        a = to_fraction(amount)
        return cls.from_names(graph, {u: a, v: -a}) if u != v else cls.zero(graph)

    def __getitem__(self, idx: int) -> Fraction:
        return self.values.get(idx, ZERO)

    def support(self) -> frozenset[int]:
        return frozenset(self.values)

    def is_zero(self) -> bool:
        return not self.values

    def _same_graph(self, other: TransportationProblem):
        if self.graph is not other.graph:
            raise InvalidInput("problems live on different graphs")

    def __add__(self, other: TransportationProblem) -> TransportationProblem:
        self._same_graph(other)
        out = dict(self.values)
        for k, v in other.values.items():
            out[k] = out.get(k, ZERO) + v
        return TransportationProblem(self.graph, _clean(out))

    def __sub__(self, other: TransportationProblem) -> TransportationProblem:
        return self + (-other)

    def __neg__(self) -> TransportationProblem:
        return TransportationProblem(self.graph, {k: -v for k, v in self.values.items()})

    def scale(self, a) -> TransportationProblem:
        a = to_fraction(a)
        return TransportationProblem(self.graph, {k: a * v for k, v in self.values.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, TransportationProblem)
                and self.graph is other.graph
                and self.values == other.values)

    def by_name(self) -> dict[str, Fraction]:
        pts = self.graph.space.points
        return {pts[k]: v for k, v in sorted(self.values.items())}

    def to_json_obj(self) -> dict:
        return {"f": {name: frac_str(v) for name, v in self.by_name().items()}}

    @classmethod
    def from_json_obj(cls, graph: CanonicalGraph, obj: dict) -> TransportationProblem:
        try:
            named = obj["f"]
        except (TypeError, KeyError) as exc:
            raise InvalidInput("problem JSON needs 'f'") from exc
        return cls.from_names(graph, named)


def apply_incidence(p: EdgeVector) -> TransportationProblem:
    """Vertex vector transported by p: at v, (flow out of v) - (flow into v).

    Equals the negated incidence operator applied to p; its kernel is the
    cycle space, so adding any cycle indicator leaves the result unchanged.
    """
    acc: dict[int, Fraction] = {}
    for idx, val in p.values.items():
        e = p.graph.edges[idx]
        acc[e.tail] = acc.get(e.tail, ZERO) + val
        acc[e.head] = acc.get(e.head, ZERO) - val
    return TransportationProblem(p.graph, _clean(acc))
