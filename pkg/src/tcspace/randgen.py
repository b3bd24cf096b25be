"""Seeded random instances: spaces, problems, roadmaps, potentials.

Shared by the test suite and the oracle-check batch command.  Everything is
driven by a caller-supplied random.Random, so fixed seeds reproduce byte-
identical instances.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .duality import LipschitzFunction
from .graph import CanonicalGraph
from .metric import MetricSpace, space_from_weighted_graph, validate_metric
from .rational import ZERO
from .transport import CycleBasis
from .vectors import EdgeVector, TransportationProblem


def random_metric_space(rng: random.Random, n_points: int) -> MetricSpace:
    """A random exact metric on n_points points.

    Either distances sampled from [1, 2] (every triangle inequality holds,
    equalities included, so some edges get deleted) or the path metric of a
    random connected weighted graph.
    """
    names = [f"P{i}" for i in range(n_points)]
    if rng.random() < 0.5:
        denom = rng.choice((4, 6, 8, 12))
        rows = [[ZERO] * n_points for _ in range(n_points)]
        for i in range(n_points):
            for j in range(i + 1, n_points):
                d = 1 + Fraction(rng.randint(0, denom), denom)
                rows[i][j] = rows[j][i] = d
        return validate_metric(names, rows)
    edges = []
    for i in range(1, n_points):
        edges.append((names[rng.randrange(i)], names[i], _random_weight(rng)))
    pairs = {(min(u, v), max(u, v)) for u, v, _ in edges}
    for i in range(n_points):
        for j in range(i + 1, n_points):
            key = (names[i], names[j])
            if key not in pairs and rng.random() < 0.3:
                pairs.add(key)
                edges.append((names[i], names[j], _random_weight(rng)))
    return space_from_weighted_graph(names, edges)


def _random_weight(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 12), rng.randint(1, 4))


def random_tree_space(rng: random.Random, n_points: int) -> MetricSpace:
    """Path metric of a random weighted tree (canonical graph is the tree)."""
    names = [f"P{i}" for i in range(n_points)]
    edges = [(names[rng.randrange(i)], names[i], _random_weight(rng))
             for i in range(1, n_points)]
    return space_from_weighted_graph(names, edges)


def random_problem(rng: random.Random, graph: CanonicalGraph,
                   nonzero: bool = False) -> TransportationProblem:
    """Random zero-sum problem supported on a random subset of points."""
    k = rng.randint(2, graph.n)
    chosen = sorted(rng.sample(range(graph.n), k))
    vals = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in chosen]
    mean = sum(vals, ZERO) / len(vals)
    values = {v: x - mean for v, x in zip(chosen, vals)}
    f = TransportationProblem(graph, values)
    if nonzero and f.is_zero():
        f = TransportationProblem(graph, {chosen[0]: Fraction(1),
                                          chosen[1]: Fraction(-1)})
    return f


def random_roadmap(rng: random.Random, graph: CanonicalGraph) -> EdgeVector:
    vals = {}
    for idx in range(graph.m):
        if rng.random() < 0.6:
            vals[idx] = Fraction(rng.randint(-8, 8), rng.randint(1, 3))
    return EdgeVector(graph, vals)


def random_cycle_element(rng: random.Random, basis: CycleBasis) -> EdgeVector:
    """Random rational combination of the fundamental cycles."""
    out = EdgeVector.zero(basis.graph)
    for cyc in basis.cycles:
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 2))
        if c != 0:
            out = out + cyc.indicator().scale(c)
    return out


def random_lipschitz(rng: random.Random, graph: CanonicalGraph) -> LipschitzFunction:
    """Random feasible potential; rescaled so some edge is exactly tight
    about half the time."""
    raw = [Fraction(rng.randint(-10, 10), rng.randint(1, 4))
           for _ in range(graph.n)]
    base = graph.space.base_point
    raw = [x - raw[base] for x in raw]
    ratio = ZERO
    for e in graph.edges:
        gap = abs(raw[e.tail] - raw[e.head]) / e.weight
        ratio = max(ratio, gap)
    if ratio > 0 and (ratio > 1 or rng.random() < 0.5):
        raw = [x / ratio for x in raw]
    return LipschitzFunction(graph, tuple(raw))
