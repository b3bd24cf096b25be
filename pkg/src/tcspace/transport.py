"""Exact transportation-cost solver on canonical graphs.

The TC norm of a zero-sum problem is the minimum weighted-l1 cost of an
edge-level transportation (a roadmap) realizing it.  The solver starts from
a greedy shortest-path routing and repeatedly cancels a minimum-mean
improving cycle (Karp's algorithm over the residual digraph, exact
rationals) until no improving cycle exists; nonexistence of an improving
cycle is exactly optimality, which is also the emitted certificate.

The maximal optimal support of a problem (union of supports of all optimal
roadmaps) is computed by per-edge LPs over the optimal face.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput, NotImprovable, NullProblem
from .graph import (
    CanonicalGraph,
    DirectedSubgraph,
    connected_components,
    shortest_path_arcs,
    shortest_path_tree,
)
from .lp import ExactLP, LPStatus
from .rational import ZERO, frac_str, to_fraction
from .vectors import EdgeVector, TransportationProblem, apply_incidence


@dataclass(frozen=True)
class TransportationPlan:
    """A list of (source, target, amount) moves; amounts are positive.

    Plans may be "fake": the amount moved from a point does not need to be
    available there.  Only the induced problem (sum of signed indicators)
    matters.  Zero-amount terms are dropped; negative amounts are rejected.
    """

    graph: CanonicalGraph
    terms: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self):
        kept = []
        for x, y, a in self.terms:
            a = to_fraction(a)
            if a < 0:
                raise InvalidInput("plan amounts must be nonnegative")
            if a > 0:
                kept.append((x, y, a))
        object.__setattr__(self, "terms", tuple(kept))

    @classmethod
    def from_names(cls, graph: CanonicalGraph, terms) -> TransportationPlan:
        idx = graph.space.index_of
        return cls(graph, tuple((idx(x), idx(y), to_fraction(a)) for x, y, a in terms))

    def cost(self) -> Fraction:
        d = self.graph.space.dist
        return sum((a * d[x][y] for x, y, a in self.terms), ZERO)

    def problem(self) -> TransportationProblem:
        acc: dict[int, Fraction] = {}
        for x, y, a in self.terms:
            acc[x] = acc.get(x, ZERO) + a
            acc[y] = acc.get(y, ZERO) - a
        return TransportationProblem(self.graph, acc)


@dataclass(frozen=True)
class Roadmap:
    """Edge-level transportation: a signed vector on oriented edges.

    Positive values move along the reference orientation, negative against
    it; the cost is the weighted l1 norm.
    """

    vec: EdgeVector

    @property
    def graph(self) -> CanonicalGraph:
        return self.vec.graph

    @classmethod
    def zero(cls, graph: CanonicalGraph) -> Roadmap:
        return cls(EdgeVector.zero(graph))

    def cost(self) -> Fraction:
        return self.vec.l1d_norm()

    def problem(self) -> TransportationProblem:
        return apply_incidence(self.vec)

    def support(self) -> frozenset[int]:
        return self.vec.support()

    def induced_sign(self, idx: int) -> int:
        v = self.vec[idx]
        return 0 if v == 0 else (1 if v > 0 else -1)

    def to_json_obj(self, optimal: bool | None = None) -> dict:
        g = self.graph
        out = {
            "cost": frac_str(self.cost()),
            "edges": [
                {"u": g.space.points[g.edges[i].tail],
                 "v": g.space.points[g.edges[i].head],
                 "p": frac_str(v)}
                for i, v in sorted(self.vec.values.items())
            ],
        }
        if optimal is not None:
            out["optimal"] = optimal
        return out

    @classmethod
    def from_json_obj(cls, graph: CanonicalGraph, obj: dict) -> Roadmap:
        try:
            raw = obj["edges"]
        except (TypeError, KeyError) as exc:
            raise InvalidInput("roadmap JSON needs 'edges'") from exc
        vals: dict[int, Fraction] = {}
        for e in raw:
            u = graph.space.index_of(e["u"])
            v = graph.space.index_of(e["v"])
            idx = graph.edge_index(u, v)
            if idx is None:
                raise InvalidInput(f"({e['u']},{e['v']}) is not an edge")
            p = to_fraction(e["p"])
            vals[idx] = vals.get(idx, ZERO) + (p if graph.edges[idx].tail == u else -p)
        return cls(EdgeVector(graph, vals))


@dataclass(frozen=True)
class OrientedCycle:
    """A directed cycle as (edge index, traversal sign) arcs.

    The sign is +1 when the arc follows the edge's reference orientation.
    Consecutive arcs chain head-to-tail and the walk is closed and simple.
    """

    graph: CanonicalGraph
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.arcs:
            raise InvalidInput("a cycle needs at least one arc")
        if len({e for e, _ in self.arcs}) != len(self.arcs):
            raise InvalidInput("a cycle may not repeat an edge")
        starts = [self._start(e, s) for e, s in self.arcs]
        if len(set(starts)) != len(starts):
            raise InvalidInput("a cycle may not repeat a vertex")
        for i, (e, s) in enumerate(self.arcs):
            nxt = self.arcs[(i + 1) % len(self.arcs)]
            if self._end(e, s) != self._start(*nxt):
                raise InvalidInput("cycle arcs do not chain")

    def _start(self, e: int, s: int) -> int:
        edge = self.graph.edges[e]
        return edge.tail if s > 0 else edge.head

    def _end(self, e: int, s: int) -> int:
        edge = self.graph.edges[e]
        return edge.head if s > 0 else edge.tail

    def vertices(self) -> list[int]:
        return [self._start(e, s) for e, s in self.arcs]

    def indicator(self) -> EdgeVector:
        """Signed indicator: +-1 per traversed edge (a cycle-space element)."""
        return EdgeVector(self.graph, {e: Fraction(s) for e, s in self.arcs})

    def weight(self) -> Fraction:
        return sum((self.graph.edges[e].weight for e, _ in self.arcs), ZERO)


@dataclass(frozen=True)
class CycleBasis:
    """Fundamental cycles of a spanning forest; a basis of the cycle space."""

    graph: CanonicalGraph
    cycles: tuple[OrientedCycle, ...]
    forest: frozenset[int]

    def __post_init__(self):
        g = self.graph
        comps = len(set(connected_components(g.n, ((e.tail, e.head) for e in g.edges))))
        assert len(self.cycles) == g.m - g.n + comps


@dataclass(frozen=True)
class Optimal:
    """No improving cycle exists: the roadmap has minimum cost."""


@dataclass(frozen=True)
class Improving:
    """An improving cycle: reversing it strictly lowers the cost by gain
    per unit of rerouted flow (gain = reversed-support weight minus the
    weight of the other cycle edges, positive)."""

    cycle: OrientedCycle
    gain: Fraction


OptimalityCertificate = Optimal | Improving


def plan_to_roadmap(plan: TransportationPlan) -> Roadmap:
    """Roadmap implementing a plan: edge moves direct, others along the
    fixed shortest path, then terms on the same edge combined.

    The result transports the plan's problem at a cost never above the
    plan's (cancellations can only help).
    """
    vals: dict[int, Fraction] = {}
    for x, y, a in plan.terms:
        if x == y:
            continue
        direct = plan.graph.edge_index(x, y)
        if direct is not None:
            arcs = [(direct, 1 if plan.graph.edges[direct].tail == x else -1)]
        else:
            arcs = shortest_path_arcs(plan.graph, x, y)
        for e, s in arcs:
            vals[e] = vals.get(e, ZERO) + s * a
    rm = Roadmap(EdgeVector(plan.graph, vals))
    assert rm.cost() <= plan.cost()
    assert rm.problem() == plan.problem()
    return rm


def cycle_basis(graph: CanonicalGraph) -> CycleBasis:
    """One fundamental cycle per non-forest edge (edges scanned in order)."""
    parent = list(range(graph.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    forest: list[int] = []
    rest: list[int] = []
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(graph.n)}
    for idx, e in enumerate(graph.edges):
        ru, rv = find(e.tail), find(e.head)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
            forest.append(idx)
            adj[e.tail].append((idx, e.head))
            adj[e.head].append((idx, e.tail))
        else:
            rest.append(idx)

    def forest_path(src: int, dst: int) -> list[tuple[int, int]]:
        prev: dict[int, tuple[int, int]] = {src: (-1, -1)}
        stack = [src]
        while stack:
            u = stack.pop()
            if u == dst:
                break
            for eidx, v in adj[u]:
                if v not in prev:
                    prev[v] = (eidx, u)
                    stack.append(v)
        arcs = []
        cur = dst
        while cur != src:
            eidx, before = prev[cur]
            edge = graph.edges[eidx]
            arcs.append((eidx, 1 if edge.head == cur else -1))
            cur = before
        arcs.reverse()
        return arcs

    cycles = []
    for idx in rest:
        e = graph.edges[idx]
        arcs = [(idx, 1)] + forest_path(e.head, e.tail)
        cycles.append(OrientedCycle(graph, tuple(arcs)))
    return CycleBasis(graph, tuple(cycles), frozenset(forest))


# --- improving cycles ---------------------------------------------------------

def _residual_arcs(p: EdgeVector) -> list[tuple[int, int, Fraction, int, int]]:
    """Arcs (u, v, cost, edge, sign): +weight to push more flow, -weight to
    push against the direction induced by p on a support edge."""
    arcs = []
    for idx, e in enumerate(p.graph.edges):
        val = p[idx]
        w = e.weight
        arcs.append((e.tail, e.head, -w if val < 0 else w, idx, 1))
        arcs.append((e.head, e.tail, -w if val > 0 else w, idx, -1))
    return arcs


def _min_mean(n: int, arcs) -> Fraction | None:
    """Karp: minimum mean cost over directed cycles, None if acyclic.

    A virtual source with zero-cost arcs to every vertex makes all walks
    start uniformly; vertices are 0..n-1 plus the source n.
    """
    size = n + 1
    in_arcs: list[list[tuple[int, Fraction]]] = [[] for _ in range(size)]
    for u, v, c, _, _ in arcs:
        in_arcs[v].append((u, c))
    for v in range(n):
        in_arcs[v].append((n, ZERO))
    dist = [[None] * size for _ in range(size + 1)]
    dist[0][n] = ZERO
    for k in range(1, size + 1):
        row = dist[k]
        prev = dist[k - 1]
        for v in range(size):
            best = None
            for u, c in in_arcs[v]:
                du = prev[u]
                if du is not None and (best is None or du + c < best):
                    best = du + c
            row[v] = best
    mu = None
    top = dist[size]
    for v in range(size):
        if top[v] is None:
            continue
        worst = None
        for k in range(size):
            dk = dist[k][v]
            if dk is None:
                continue
            cand = (top[v] - dk) / (size - k)
            if worst is None or cand > worst:
                worst = cand
        if worst is not None and (mu is None or worst < mu):
            mu = worst
    return mu


def _extract_cycle(graph: CanonicalGraph, arcs, mu: Fraction) -> OrientedCycle:
    """A directed cycle of mean cost mu, via tight arcs under shifted costs."""
    n = graph.n
    pot = [ZERO] * n
    for _ in range(n):
        changed = False
        for u, v, c, _, _ in arcs:
            cand = pot[u] + c - mu
            if cand < pot[v]:
                pot[v] = cand
                changed = True
        if not changed:
            break
    else:
        raise AssertionError("negative cycle under shifted costs")
    tight: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for u, v, c, eidx, sign in arcs:
        if pot[u] + c - mu == pot[v]:
            tight[u].append((v, eidx, sign))

    color = [0] * n

    def dfs(start: int) -> list[tuple[int, int]] | None:
        path: list[tuple[int, int, int]] = [(start, -1, 0)]
        color[start] = 1
        it = [iter(tight[start])]
        while it:
            try:
                v, eidx, sign = next(it[-1])
            except StopIteration:
                it.pop()
                node, _, _ = path.pop()
                color[node] = 2
                continue
            if color[v] == 1:
                pos = next(i for i, (w, _, _) in enumerate(path) if w == v)
                cycle = [(pe, ps) for _, pe, ps in path[pos + 1:]] + [(eidx, sign)]
                return cycle
            if color[v] == 0:
                color[v] = 1
                path.append((v, eidx, sign))
                it.append(iter(tight[v]))
        return None

    for s in range(n):
        if color[s] == 0:
            found = dfs(s)
            if found:
                cyc = OrientedCycle(graph, tuple(found))
                members = set(found)
                total = sum((c for _, _, c, e, s2 in arcs if (e, s2) in members),
                            ZERO)
                assert total == mu * len(found)
                return cyc
    raise AssertionError("tight subgraph must contain a cycle")


def improving_cycle(p: Roadmap) -> OptimalityCertificate:
    """Optimal() iff no improving cycle exists; else an Improving certificate.

    Detection runs on the residual digraph: every edge is traversable both
    ways at +weight, except that reversing the flow on a support edge costs
    -weight.  A negative-cost directed cycle is exactly a cycle whose
    support-reversing weight exceeds the rest, and canceling it pays off.
    """
    arcs = _residual_arcs(p.vec)
    mu = _min_mean(p.graph.n, arcs)
    if mu is None or mu >= 0:
        return Optimal()
    cycle = _extract_cycle(p.graph, arcs, mu)
    gain = _cycle_gain(p, cycle)
    assert gain > 0
    return Improving(cycle, gain)


def _cycle_gain(p: Roadmap, cycle: OrientedCycle) -> Fraction:
    gain = ZERO
    for e, s in cycle.arcs:
        w = p.graph.edges[e].weight
        val = p.vec[e]
        if val != 0 and (s > 0) == (val < 0):
            gain += w
        else:
            gain -= w
    return gain


def cancel_cycle(p: Roadmap, cert: OptimalityCertificate) -> Roadmap:
    """Push flow around an improving cycle until a support edge empties.

    The step size is the smallest |p(e)| over cycle edges traversed against
    the induced direction, so at least one support edge is zeroed while the
    transported problem stays fixed and the cost drops by step * gain.
    """
    if not isinstance(cert, Improving):
        raise NotImprovable("roadmap is already optimal")
    gain = _cycle_gain(p, cert.cycle)
    if gain <= 0:
        raise NotImprovable("certificate does not improve this roadmap")
    alpha = None
    for e, s in cert.cycle.arcs:
        val = p.vec[e]
        if val != 0 and (s > 0) == (val < 0):
            if alpha is None or abs(val) < alpha:
                alpha = abs(val)
    assert alpha is not None and alpha > 0
    out = Roadmap(p.vec + cert.cycle.indicator().scale(alpha))
    assert out.cost() == p.cost() - alpha * gain
    assert out.problem() == p.problem()
    assert any(out.vec[e] == 0 and p.vec[e] != 0 for e, _ in cert.cycle.arcs)
    return out


def _initial_roadmap(f: TransportationProblem) -> Roadmap:
    """Greedy pairing of supplies to demands along fixed shortest paths."""
    graph = f.graph
    pos = [[v, f[v]] for v in sorted(f.support()) if f[v] > 0]
    neg = [[v, -f[v]] for v in sorted(f.support()) if f[v] < 0]
    trees: dict[int, list] = {}
    vals: dict[int, Fraction] = {}
    i = j = 0
    while i < len(pos) and j < len(neg):
        u, supply = pos[i]
        v, demand = neg[j]
        amt = min(supply, demand)
        if u not in trees:
            trees[u] = shortest_path_tree(graph, u)[1]
        arcs = _arcs_from_tree(graph, trees[u], u, v)
        for e, s in arcs:
            vals[e] = vals.get(e, ZERO) + s * amt
        pos[i][1] -= amt
        neg[j][1] -= amt
        if pos[i][1] == 0:
            i += 1
        if neg[j][1] == 0:
            j += 1
    return Roadmap(EdgeVector(graph, vals))


def _arcs_from_tree(graph, pred_edge, src, dst):
    arcs = []
    cur = dst
    while cur != src:
        eidx = pred_edge[cur]
        e = graph.edges[eidx]
        if e.head == cur:
            arcs.append((eidx, 1))
            cur = e.tail
        else:
            arcs.append((eidx, -1))
            cur = e.head
    return arcs


def tc_norm(f: TransportationProblem) -> tuple[Fraction, Roadmap]:
    """Exact TC norm of f and an optimal roadmap achieving it.

    Start from the greedy shortest-path roadmap and cancel minimum-mean
    improving cycles until improving_cycle certifies optimality.  The cost
    strictly decreases at every step, and each step zeroes a support edge.
    """
    if f.is_zero():
        return ZERO, Roadmap.zero(f.graph)
    p = _initial_roadmap(f)
    guard = 10_000 + 50 * f.graph.m * f.graph.m
    for _ in range(guard):
        cert = improving_cycle(p)
        if isinstance(cert, Optimal):
            return p.cost(), p
        p = cancel_cycle(p, cert)
    raise RuntimeError("cycle canceling failed to terminate")


# --- maximal optimal support --------------------------------------------------

def _support_lp(f: TransportationProblem, tc: Fraction, edge: int, sigma: int):
    """Maximize sigma * p(edge) over optimal roadmaps for f.

    Flows are split into nonnegative forward/backward parts; the linearized
    cost bounds the true cost, so feasible points are optimal roadmaps and
    the optimum is attained by one.
    """
    graph = f.graph
    lp = ExactLP()
    fwd = [lp.add_var() for _ in range(graph.m)]
    bwd = [lp.add_var() for _ in range(graph.m)]
    for v in range(graph.n):
        coeffs: dict[int, Fraction] = {}
        for eidx, _ in graph.incident(v):
            s = 1 if graph.edges[eidx].tail == v else -1
            coeffs[fwd[eidx]] = Fraction(s)
            coeffs[bwd[eidx]] = Fraction(-s)
        lp.add_eq(coeffs, f[v])
    lp.add_le({col: graph.edges[i].weight for i, col in enumerate(fwd)}
              | {col: graph.edges[i].weight for i, col in enumerate(bwd)}, tc)
    lp.maximize({fwd[edge]: Fraction(sigma), bwd[edge]: Fraction(-sigma)})
    res = lp.solve()
    assert res.status == LPStatus.OPTIMAL
    witness = Roadmap(EdgeVector(graph, {
        i: res.x[fwd[i]] - res.x[bwd[i]] for i in range(graph.m)}))
    return res.value, witness


def _maximal_support_witnesses(f: TransportationProblem):
    if f.is_zero():
        return frozenset(), {}, []
    tc, popt = tc_norm(f)
    signs: dict[int, int] = {e: popt.induced_sign(e) for e in popt.support()}
    witnesses: list[Roadmap] = [popt]
    for edge in range(f.graph.m):
        if edge in signs:
            continue
        hit = None
        for sigma in (1, -1):
            value, witness = _support_lp(f, tc, edge, sigma)
            if value > 0:
                assert hit is None, "optimal roadmaps disagree in sign"
                hit = sigma
                signs[edge] = sigma
                witnesses.append(witness)
    return frozenset(signs), signs, witnesses


def maximal_support(f: TransportationProblem) -> tuple[frozenset[int], dict[int, int]]:
    """Edges used by some optimal roadmap for f, with their common signs.

    Per edge and sign, an LP maximizes the signed flow over the optimal
    face; the edge belongs to the maximal support iff some sign attains a
    positive value.  All optimal roadmaps agree in sign on these edges.
    """
    edges, signs, _ = _maximal_support_witnesses(f)
    return edges, signs


def maximal_roadmap(f: TransportationProblem) -> Roadmap:
    """An optimal roadmap whose support is the whole maximal support.

    Averaging optimal roadmaps that jointly cover the maximal support stays
    optimal, and sign agreement prevents cancellation, so the average is
    supported everywhere.
    """
    edges, _, witnesses = _maximal_support_witnesses(f)
    if not witnesses:
        return Roadmap.zero(f.graph)
    acc = EdgeVector.zero(f.graph)
    for w in witnesses:
        acc = acc + w.vec
    avg = Roadmap(acc.scale(Fraction(1, len(witnesses))))
    assert avg.support() == edges
    assert avg.problem() == f
    return avg


def directed_graph_of(f: TransportationProblem) -> DirectedSubgraph:
    """Maximal support directed by the transport direction on each edge."""
    if f.is_zero():
        raise NullProblem("the zero problem has no directed graph")
    _, signs = maximal_support(f)
    arcs = []
    for idx, sigma in signs.items():
        e = f.graph.edges[idx]
        arcs.append((e.tail, e.head) if sigma > 0 else (e.head, e.tail))
    return DirectedSubgraph(f.graph, tuple(arcs))
