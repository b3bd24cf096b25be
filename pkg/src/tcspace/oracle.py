"""Independent verification backends.

These deliberately avoid the cycle-canceling solver's code paths:

* a dense transportation LP over supply x demand pairs (no graph at all)
  giving the exact TC norm,
* a cut-sum evaluator for spaces whose canonical graph is a tree,
* the dual (supporting-function) LP and an exact uniqueness probe over its
  optimal face.

All run on the exact simplex in :mod:`tcspace.lp`.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotATree, NullProblem
from .lp import ExactLP, LPStatus
from .rational import ZERO
from .vectors import TransportationProblem


def oracle_tc_norm(f: TransportationProblem) -> Fraction:
    """Exact TC norm via the dense transportation LP.

    Minimizes sum a_xy * d(x,y) over nonnegative moves between the supply
    and demand supports with the marginals prescribed by f.  No shortest
    paths, no edges: this shares nothing with the cycle-canceling solver.
    """
    if f.is_zero():
        return ZERO
    dist = f.graph.space.dist
    sources = sorted(v for v in f.support() if f[v] > 0)
    sinks = sorted(v for v in f.support() if f[v] < 0)
    lp = ExactLP()
    cell = {(x, y): lp.add_var() for x in sources for y in sinks}
    for x in sources:
        lp.add_eq({cell[x, y]: Fraction(1) for y in sinks}, f[x])
    for y in sinks:
        lp.add_eq({cell[x, y]: Fraction(1) for x in sources}, -f[y])
    lp.minimize({cell[x, y]: dist[x][y] for x in sources for y in sinks})
    res = lp.solve()
    assert res.status == LPStatus.OPTIMAL
    return res.value


def oracle_tree_norm(f: TransportationProblem) -> Fraction:
    """TC norm on a tree: each edge contributes weight * |mass across it|.

    Raises NotATree unless the canonical graph of f's space is a tree.
    """
    graph = f.graph
    if graph.m != graph.n - 1:
        raise NotATree("canonical graph has cycles")
    children: dict[int, list[tuple[int, int]]] = {v: [] for v in range(graph.n)}
    order = []
    seen = {0}
    stack = [0]
    parent_edge: dict[int, int] = {}
    while stack:
        u = stack.pop()
        order.append(u)
        for eidx, v in graph.incident(u):
            if v not in seen:
                seen.add(v)
                parent_edge[v] = eidx
                children[u].append((eidx, v))
                stack.append(v)
    assert len(order) == graph.n
    subtree = {v: f[v] for v in range(graph.n)}
    for u in reversed(order):
        for _, v in children[u]:
            subtree[u] += subtree[v]
    total = ZERO
    for v, eidx in parent_edge.items():
        total += graph.edges[eidx].weight * abs(subtree[v])
    return total


# --- the supporting (dual) LP -------------------------------------------------

def _supporting_lp(f: TransportationProblem):
    """max sum f(v) l(v) over 1-Lipschitz-on-edges l with l(base) = 0."""
    graph = f.graph
    lp = ExactLP()
    lvar = [lp.add_var(free=True) for _ in range(graph.n)]
    lp.add_eq({lvar[graph.space.base_point]: Fraction(1)}, 0)
    for e in graph.edges:
        lp.add_le({lvar[e.tail]: Fraction(1), lvar[e.head]: Fraction(-1)}, e.weight)
        lp.add_le({lvar[e.tail]: Fraction(-1), lvar[e.head]: Fraction(1)}, e.weight)
    lp.maximize({lvar[v]: f[v] for v in f.support()})
    return lp, lvar


def dual_optimum(f: TransportationProblem) -> Fraction:
    """Optimum of the supporting LP (equals the TC norm: no duality gap)."""
    if f.is_zero():
        return ZERO
    lp, _ = _supporting_lp(f)
    res = lp.solve()
    assert res.status == LPStatus.OPTIMAL
    return res.value


def supporting_unique_probe(f: TransportationProblem) -> bool:
    """Whether the supporting function for f is unique, by LP face probing.

    Pins the dual objective at its optimum, then maximizes and minimizes
    each coordinate over the optimal face; the face is a single point (the
    supporting function is unique) iff every pair of extrema coincides.
    """
    if f.is_zero():
        raise NullProblem("uniqueness probe undefined for the zero problem")
    graph = f.graph
    base = lambda: _supporting_lp(f)
    lp0, _ = base()
    res = lp0.solve()
    assert res.status == LPStatus.OPTIMAL
    best = res.value
    obj = {v: f[v] for v in f.support()}
    for v in range(graph.n):
        if v == graph.space.base_point:
            continue
        lo = hi = None
        for sense in ("max", "min"):
            lp, lvar = base()
            lp.add_eq({lvar[u]: c for u, c in obj.items()}, best)
            if sense == "max":
                lp.maximize({lvar[v]: Fraction(1)})
            else:
                lp.minimize({lvar[v]: Fraction(1)})
            r = lp.solve()
            assert r.status == LPStatus.OPTIMAL
            if sense == "max":
                hi = r.value
            else:
                lo = r.value
        if lo != hi:
            return False
    return True
