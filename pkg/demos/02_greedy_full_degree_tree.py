"""The greedy full-degree-tree algorithm on concrete graphs.

Run:  python demos/02_greedy_full_degree_tree.py
"""
import numpy as np

from fdst.catalog import named_graph
from fdst.graphs import is_connected, sample_simple_regular
from fdst.greedy import run_on_graph

rng = np.random.default_rng(3)

print("=" * 64)
print("Small named graphs")
print("=" * 64)
for name in ("k4", "k33", "prism", "petersen"):
    g = named_graph(name)
    res = run_on_graph(g, np.random.default_rng(1))
    print(f"{name:>10}: n={g.n}  full-degree={res.full_degree_count}  "
          f"leaves={res.leaf_count}  tree edges={len(res.tree)}")

print()
print("=" * 64)
print("A random cubic graph at n = 50000")
print("=" * 64)
n = 50_000
g = sample_simple_regular(n, 3, rng)
assert is_connected(g)
res = run_on_graph(g, rng)
print(f"full-degree count  : {res.full_degree_count}  "
      f"({res.full_degree_count / n:.4f} n, trajectory analysis says ~0.4591 n)")
print(f"leaf count         : {res.leaf_count}  ({res.leaf_count / n:.4f} n)")
print(f"phase 1 ended at   : t/n = {res.rho1_empirical:.4f} (analysis: ~0.6485)")
print(f"full at phase 1 end: {res.phase1_full_degree_count / n:.4f} n (analysis: ~0.4375)")

# in a cubic spanning tree, leaves = (#degree-3 vertices) + 2
deg = [0] * n
for u, v in res.tree:
    deg[u] += 1
    deg[v] += 1
x1 = sum(1 for d in deg if d == 1)
x3 = sum(1 for d in deg if d == 3)
print(f"leaf identity      : leaves {x1} = degree-3 vertices {x3} + 2")
