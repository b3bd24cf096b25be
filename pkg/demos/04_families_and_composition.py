#!/usr/bin/env python3
"""Graph families: diamonds, grids, bipartite graphs, and edge replacement.

Recursive families replace every edge by a fixed two-port gadget, scaling
weights so each level's vertex set embeds isometrically into the next.
The generation metadata emitted here is what powers peeled certificates.
"""

from collections import Counter

from tcspace import (
    canonical_graph,
    complete_bipartite,
    compose,
    diamond,
    grid,
    k2n_two_port,
    quadrilateral_two_port,
    recursive_family,
)

for n in range(4):
    space, desc = diamond(n)
    g = canonical_graph(space)
    per_gen = Counter(desc.generations.values())
    print(f"diamond({n}): {space.n:3d} vertices, {g.m:4d} edges of weight "
          f"{g.edges[0].weight}, generation sizes {dict(sorted(per_gen.items()))}")
print()

g3 = canonical_graph(grid(3))
print(f"grid(3): degrees {sorted(g3.degrees(), reverse=True)}")
k24 = canonical_graph(complete_bipartite(2, 4))
print(f"K_24: degrees {sorted(k24.degrees(), reverse=True)}\n")

# Composition: a quadrilateral two-port composed with itself.
quad = quadrilateral_two_port()
twice = compose(quad, quad)
print(f"quad o quad: {len(twice.points)} vertices, "
      f"top-bottom distance {twice.top_bottom_distance()} (still normalized)")

# The recursive family over K_{2,3}: ports keep gaining degree, inner
# vertices never pass 2, which is why peeling works.
base = k2n_two_port(3)
for n in (1, 2, 3):
    space, desc = recursive_family(base, n)
    g = canonical_graph(space)
    print(f"B_{n} over K_23: {space.n:3d} vertices, max degree {g.max_degree()}")

space, desc = recursive_family(base, 2)
print("\ndescriptor snippet:",
      {k: desc.generations[k] for k in list(space.points)[:5]})
print("DOT output of a small canonical graph starts like this:")
print("\n".join(canonical_graph(diamond(1)[0]).to_dot().splitlines()[:4]))
