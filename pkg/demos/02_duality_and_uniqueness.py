#!/usr/bin/env python3
"""The dual side: supporting potentials, downhill graphs, uniqueness.

A 1-Lipschitz function pairing with f at the full TC norm certifies
optimality.  Whether that certificate is unique depends on one picture: the
union of all optimal-roadmap supports, seen as a subgraph.  Connected means
unique; disconnected means whole components can be shifted.
"""

from tcspace import (
    DirectedSubgraph,
    TransportationProblem,
    canonical_graph,
    cycle,
    directed_graph_of,
    downhill_graph,
    downhill_to_problem,
    evaluate,
    is_unique_supporting,
    maximal_roadmap,
    realizable_as_downhill,
    supporting_function,
    tc_norm,
)

graph = canonical_graph(cycle(4))
pts = graph.space.points

# Two opposite corners: both ways around the square are optimal.
f = TransportationProblem.from_names(graph, {"c0": 1, "c2": -1})
value, _ = tc_norm(f)
s = supporting_function(f)
print(f"f moves one unit c0 -> c2, ||f||_tc = {value}")
print("supporting potential:", {pts[v]: str(s[v]) for v in range(graph.n)})
print(f"s(f) = {evaluate(s, f)} (equals the norm: strong duality)\n")

unique, witness = is_unique_supporting(f)
print(f"every edge lies on some optimal roadmap -> support graph connected "
      f"-> unique potential? {unique}\n")

# One step along an edge: only that edge is ever used, the rest of the
# square is free to wiggle, so the potential is NOT unique.
g = TransportationProblem.from_names(graph, {"c0": 1, "c1": -1})
unique, witness = is_unique_supporting(g)
print(f"g moves one unit c0 -> c1; unique potential? {unique}")
print("witness (a second supporting function):",
      {pts[v]: str(witness[v]) for v in range(graph.n)})
print(f"it still pays the full norm: {evaluate(witness, g)}\n")

# Downhill graphs: where a potential drops at full metric speed.
dh = downhill_graph(s)
print("downhill graph of the first potential:",
      [(pts[u], pts[v]) for u, v in dh.arcs])
print("matches the directed transport graph of f:",
      dh.arc_set() == directed_graph_of(f).arc_set(), "\n")

# Which directed subgraphs arise this way?  Exactly the transport graphs.
H = DirectedSubgraph(graph, ((0, 1), (3, 2)))
ok, potential = realizable_as_downhill(H)
print(f"c0->c1 plus c3->c2 realizable as a downhill graph? {ok}")
h = downhill_to_problem(H)
print("its transportation problem:", {k: str(v) for k, v in h.by_name().items()})
print("round trip returns the same arrows:",
      directed_graph_of(h).arc_set() == H.arc_set())

# The maximal roadmap touches every edge any optimal roadmap uses.
mr = maximal_roadmap(f)
print("\nmaximal optimal roadmap for f covers",
      f"{len(mr.support())} of {graph.m} edges at cost {mr.cost()}")
