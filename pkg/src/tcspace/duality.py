"""Lipschitz potentials: the dual side of transportation cost.

A supporting function for a problem f is a 1-Lipschitz function vanishing at
the base point whose pairing with f attains the TC norm.  A plan is optimal
iff it is tight for some such potential.  The supporting function is unique
iff the maximal-support graph of f is connected; otherwise whole components
can be shifted by half the minimum boundary slack, which is exactly the
witness construction used here.

Downhill graphs (all edges where a 1-Lipschitz function drops at full
metric speed, directed downward) are characterized by an exact LP: a
directed edge set is a downhill graph iff the tightness system admits a
function with strictly slack remaining edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput, NotLipschitz, NotRealizable, NullProblem, PreconditionFailed
from .graph import CanonicalGraph, DirectedSubgraph, connected_components
from .lp import ExactLP, LPStatus
from .oracle import _supporting_lp
from .rational import ZERO, frac_str, to_fraction
from .transport import TransportationPlan, maximal_support
from .vectors import TransportationProblem

DownhillGraph = DirectedSubgraph


@dataclass(frozen=True)
class LipschitzFunction:
    """A 1-Lipschitz function vanishing at the base point.

    The Lipschitz condition is checked on canonical-graph edges only, which
    suffices: edge paths realize all pairwise distances.
    """

    graph: CanonicalGraph
    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(to_fraction(x) for x in self.values))
        if len(self.values) != self.graph.n:
            raise InvalidInput("need one value per point")
        if self.values[self.graph.space.base_point] != 0:
            raise InvalidInput("function must vanish at the base point")
        for idx, e in enumerate(self.graph.edges):
            if abs(self.values[e.tail] - self.values[e.head]) > e.weight:
                u, v = self.graph.endpoints_name(idx)
                raise NotLipschitz(f"|l({u}) - l({v})| exceeds d({u},{v})")

    @classmethod
    def zero(cls, graph: CanonicalGraph) -> LipschitzFunction:
        return cls(graph, tuple(ZERO for _ in range(graph.n)))

    @classmethod
    def from_map(cls, graph: CanonicalGraph, named: dict) -> LipschitzFunction:
        vals = [ZERO] * graph.n
        for name, v in named.items():
            vals[graph.space.index_of(name)] = to_fraction(v)
        return cls(graph, tuple(vals))

    def __getitem__(self, v: int) -> Fraction:
        return self.values[v]

    def to_json_obj(self) -> dict:
        pts = self.graph.space.points
        return {
            "l": {pts[v]: frac_str(x) for v, x in enumerate(self.values)},
            "base": pts[self.graph.space.base_point],
        }

    @classmethod
    def from_json_obj(cls, graph: CanonicalGraph, obj: dict) -> LipschitzFunction:
        try:
            named = obj["l"]
        except (TypeError, KeyError) as exc:
            raise InvalidInput("lipschitz JSON needs 'l'") from exc
        base = obj.get("base")
        if base is not None and graph.space.index_of(base) != graph.space.base_point:
            raise InvalidInput("base in JSON differs from the space's base point")
        return cls.from_map(graph, named)


def evaluate(l: LipschitzFunction, f: TransportationProblem) -> Fraction:
    """Pairing sum l(v) f(v); never exceeds the TC norm (weak duality)."""
    if l.graph is not f.graph:
        raise InvalidInput("function and problem live on different graphs")
    return sum((l[v] * f[v] for v in f.support()), ZERO)


def supporting_function(f: TransportationProblem) -> LipschitzFunction:
    """A potential attaining the TC norm, by the exact dual LP.

    Returns the zero function for f = 0 (every feasible function pairs to
    zero with it).
    """
    if f.is_zero():
        return LipschitzFunction.zero(f.graph)
    lp, lvar = _supporting_lp(f)
    res = lp.solve()
    assert res.status == LPStatus.OPTIMAL
    return LipschitzFunction(f.graph, tuple(res.x[col] for col in lvar))


def is_potential(plan: TransportationPlan, l: LipschitzFunction) -> bool:
    """Whether every transportation pair of the plan is tight for l."""
    if plan.graph is not l.graph:
        raise InvalidInput("plan and function live on different graphs")
    d = plan.graph.space.dist
    return all(l[x] - l[y] == d[x][y] for x, y, _ in plan.terms)


def downhill_graph(l: LipschitzFunction) -> DirectedSubgraph:
    """All edges where l drops at full metric speed, directed downward."""
    arcs = []
    for e in l.graph.edges:
        gap = l[e.tail] - l[e.head]
        if gap == e.weight:
            arcs.append((e.tail, e.head))
        elif -gap == e.weight:
            arcs.append((e.head, e.tail))
    return DirectedSubgraph(l.graph, tuple(arcs))


# --- uniqueness ----------------------------------------------------------------

def _support_components(f: TransportationProblem):
    edges, _ = maximal_support(f)
    pairs = [(f.graph.edges[i].tail, f.graph.edges[i].head) for i in sorted(edges)]
    return connected_components(f.graph.n, pairs)


def is_unique_supporting(f: TransportationProblem) -> tuple[bool, LipschitzFunction | None]:
    """Uniqueness of the supporting function, with a witness when not unique.

    The supporting function is unique iff the maximal-support graph is
    connected.  When it is not, a second supporting function is produced by
    shifting components by half the minimum slack over boundary edges
    (choosing the shifted side so the known tight boundary edges, if any,
    stay feasible and the base point keeps value zero).
    """
    if f.is_zero():
        raise NullProblem("uniqueness undefined for the zero problem")
    comp = _support_components(f)
    if len(set(comp)) == 1:
        return True, None
    s = supporting_function(f)
    graph = f.graph

    cross = [e for e in graph.edges if comp[e.tail] != comp[e.head]]
    tight_cross = [e for e in cross if abs(s[e.tail] - s[e.head]) == e.weight]
    if not tight_cross:
        base_comp = comp[graph.space.base_point]
        delta = min(e.weight - abs(s[e.tail] - s[e.head]) for e in cross)
        assert delta > 0
        shifted = frozenset(v for v in range(graph.n) if comp[v] != base_comp)
    else:
        e = tight_cross[0]
        hi, lo = (e.tail, e.head) if s[e.tail] > s[e.head] else (e.head, e.tail)
        # Component order: comp(a) precedes comp(b) when some boundary edge
        # is tight going up from a-side to b-side.
        up_arcs = set()
        for c in cross:
            if s[c.head] - s[c.tail] == c.weight:
                up_arcs.add((comp[c.tail], comp[c.head]))
            elif s[c.tail] - s[c.head] == c.weight:
                up_arcs.add((comp[c.head], comp[c.tail]))
        into = {}
        for a, b in up_arcs:
            into.setdefault(b, []).append(a)
        down_set = {comp[lo]}
        queue = [comp[lo]]
        while queue:
            c = queue.pop()
            for a in into.get(c, ()):
                if a not in down_set:
                    down_set.add(a)
                    queue.append(a)
        assert comp[hi] not in down_set
        slacks = []
        for c in cross:
            for a, b in ((c.tail, c.head), (c.head, c.tail)):
                if comp[a] not in down_set and comp[b] in down_set:
                    slacks.append(c.weight - (s[b] - s[a]))
        delta = min(slacks)
        assert delta > 0
        shifted = frozenset(v for v in range(graph.n) if comp[v] in down_set)

    half = delta / 2
    if graph.space.base_point in shifted:
        vals = tuple(s[v] - half if v not in shifted else s[v] for v in range(graph.n))
    else:
        vals = tuple(s[v] + half if v in shifted else s[v] for v in range(graph.n))
    witness = LipschitzFunction(graph, vals)
    assert evaluate(witness, f) == evaluate(s, f)
    assert witness.values != s.values
    return False, witness


# --- downhill realizability -----------------------------------------------------

def realizable_as_downhill(H: DirectedSubgraph) -> tuple[bool, LipschitzFunction | None]:
    """Whether H is exactly the downhill graph of some 1-Lipschitz function.

    Solves max t subject to tightness on H's arcs and slack at least t on
    every other edge; realizable iff the optimum is strictly positive (or
    the tight system is feasible when H covers every edge).
    """
    if len(H) == 0:
        raise PreconditionFailed("need at least one directed edge")
    graph = H.graph
    lp = ExactLP()
    lvar = [lp.add_var(free=True) for _ in range(graph.n)]
    lp.add_eq({lvar[graph.space.base_point]: Fraction(1)}, 0)
    used = H.edge_indices()
    for u, v in H.arcs:
        idx = graph.edge_index(u, v)
        lp.add_eq({lvar[u]: Fraction(1), lvar[v]: Fraction(-1)},
                  graph.edges[idx].weight)
    rest = [i for i in range(graph.m) if i not in used]
    if rest:
        t = lp.add_var(free=True)
        for i in rest:
            e = graph.edges[i]
            lp.add_le({lvar[e.tail]: Fraction(1), lvar[e.head]: Fraction(-1),
                       t: Fraction(1)}, e.weight)
            lp.add_le({lvar[e.tail]: Fraction(-1), lvar[e.head]: Fraction(1),
                       t: Fraction(1)}, e.weight)
        lp.maximize({t: Fraction(1)})
    else:
        lp.maximize({})
    res = lp.solve()
    if res.status == LPStatus.INFEASIBLE:
        return False, None
    assert res.status == LPStatus.OPTIMAL
    if rest and res.value <= 0:
        return False, None
    func = LipschitzFunction(graph, tuple(res.x[col] for col in lvar))
    assert downhill_graph(func).arc_set() == H.arc_set()
    return True, func


def downhill_to_problem(H: DirectedSubgraph) -> TransportationProblem:
    """The problem whose directed transport graph is H (sum of arc moves).

    Raises NotRealizable when H is not a downhill graph; otherwise the
    result's maximal-support directed graph is exactly H again.
    """
    ok, _ = realizable_as_downhill(H)
    if not ok:
        raise NotRealizable("subgraph is not a downhill graph")
    acc: dict[int, Fraction] = {}
    for u, v in H.arcs:
        acc[u] = acc.get(u, ZERO) + 1
        acc[v] = acc.get(v, ZERO) - 1
    return TransportationProblem(H.graph, acc)
