"""Configuration-model sampling and simple regular-graph utilities.

Vertices are 0-indexed everywhere in this package; the r*n configuration
points of an n-vertex pairing are 0..r*n-1 and point p belongs to bucket
p // r.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AttemptsExhaustedError, InvalidInputError


@dataclass
class Pairing:
    """A perfect matching on r*n labeled configuration points.

    ``matches`` is a fixed-point-free involution: matches[p] is the point
    paired with p, and matches[matches[p]] == p for every p.
    """

    n: int
    r: int
    matches: np.ndarray

    def num_points(self):
        return self.n * self.r

    def validate(self):
        m = self.num_points()
        pts = np.arange(m)
        if len(self.matches) != m:
            raise InvalidInputError("matches has wrong length")
        if np.any(self.matches == pts):
            raise InvalidInputError("pairing has a fixed point")
        if not np.array_equal(self.matches[self.matches], pts):
            raise InvalidInputError("matches is not an involution")

    def pairs(self):
        """Matched pairs (p, q) with p < q, in increasing order of p."""
        pts = np.arange(self.num_points())
        sel = pts < self.matches
        return list(zip(pts[sel].tolist(), self.matches[sel].tolist()))


@dataclass
class MultiGraph:
    """Multigraph on n vertices; edges are (u, v) with u <= v, loops allowed."""

    n: int
    edges: list

    def degrees(self):
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1  # a loop contributes 2 to its vertex
        return deg


@dataclass
class SimpleGraph:
    """Simple undirected graph given by per-vertex sorted neighbor lists."""

    n: int
    adjacency: list

    def degree(self, v):
        return len(self.adjacency[v])

    def max_degree(self):
        return max(len(a) for a in self.adjacency)

    def min_degree(self):
        return min(len(a) for a in self.adjacency)

    def edges(self):
        """All edges as (u, v) with u < v, lexicographically sorted."""
        out = []
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    out.append((u, v))
        return out

    def num_edges(self):
        return sum(len(a) for a in self.adjacency) // 2

    def has_edge(self, u, v):
        return v in self.adjacency[u]

    def validate_simple(self):
        for u, nbrs in enumerate(self.adjacency):
            if u in nbrs:
                raise InvalidInputError(f"loop at vertex {u}")
            if len(set(nbrs)) != len(nbrs):
                raise InvalidInputError(f"repeated neighbor at vertex {u}")
            for v in nbrs:
                if not 0 <= v < self.n:
                    raise InvalidInputError(f"neighbor {v} out of range")
                if u not in self.adjacency[v]:
                    raise InvalidInputError(f"asymmetric edge ({u}, {v})")


@dataclass
class RegularGraph(SimpleGraph):
    """Simple r-regular graph. ``rejections`` records sampler rejections, if any."""

    r: int = 0
    rejections: int = 0

    def validate(self):
        self.validate_simple()
        for u, nbrs in enumerate(self.adjacency):
            if len(nbrs) != self.r:
                raise InvalidInputError(f"vertex {u} has degree {len(nbrs)} != {self.r}")


def graph_from_edges(n, edges, r=None):
    """Build a SimpleGraph (or RegularGraph when r is given) from an edge list."""
    adjacency = [[] for _ in range(n)]
    for u, v in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    for a in adjacency:
        a.sort()
    if r is None:
        g = SimpleGraph(n=n, adjacency=adjacency)
        g.validate_simple()
    else:
        g = RegularGraph(n=n, adjacency=adjacency, r=r)
        g.validate()
    return g


def sample_pairing(n, r, rng):
    """Uniform perfect matching on the r*n configuration points.

    Repeatedly pairs the lowest unmatched point with a uniformly random other
    unmatched point, which yields the uniform distribution and mirrors the
    order in which the lazy algorithm reveals pairs.
    """
    if r < 2:
        raise InvalidInputError(f"need r >= 2, got r={r}")
    if n < 1:
        raise InvalidInputError(f"need n >= 1, got n={n}")
    m = n * r
    if m % 2:
        raise InvalidInputError(f"r*n must be even, got n={n}, r={r}")
    matches = [-1] * m
    pool = list(range(m))
    pos = list(range(m))
    draws = rng.random(m // 2).tolist()
    k = 0
    for p in range(m):
        if matches[p] != -1:
            continue
        # remove p, then draw its partner uniformly from the remainder
        i = pos[p]
        last = pool.pop()
        if i < len(pool):
            pool[i] = last
            pos[last] = i
        j = int(draws[k] * len(pool))
        k += 1
        q = pool[j]
        last = pool.pop()
        if j < len(pool):
            pool[j] = last
            pos[last] = j
        matches[p] = q
        matches[q] = p
    return Pairing(n=n, r=r, matches=np.asarray(matches, dtype=np.int64))


def project(pairing):
    """Contract each bucket of a pairing to a vertex, producing a multigraph."""
    r = pairing.r
    pts = np.arange(pairing.num_points())
    sel = pts < pairing.matches
    u = pts[sel] // r
    v = pairing.matches[sel] // r
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    return MultiGraph(n=pairing.n, edges=list(zip(lo.tolist(), hi.tolist())))


def is_simple(mg):
    """True iff the multigraph has no loops and no repeated edges."""
    if not mg.edges:
        return True
    e = np.asarray(mg.edges, dtype=np.int64)
    if np.any(e[:, 0] == e[:, 1]):
        return False
    keys = e[:, 0] * mg.n + e[:, 1]
    return len(np.unique(keys)) == len(keys)


def sample_simple_regular(n, r, rng, max_attempts=20_000):
    """Uniform simple r-regular graph via rejection of non-simple projections.

    Connectivity is *not* enforced here; callers that need a connected graph
    must check (keeps the sampler exactly uniform over simple r-regular
    graphs). Raises AttemptsExhaustedError after max_attempts rejections.
    The acceptance rate decays like exp(-(r*r-1)/4) and is worse at small n,
    so the default attempt budget is generous; r above ~6 is impractical.
    """
    if not 3 <= r <= n - 1:
        raise InvalidInputError(f"need 3 <= r <= n-1, got n={n}, r={r}")
    if (n * r) % 2:
        raise InvalidInputError(f"r*n must be even, got n={n}, r={r}")
    for attempt in range(max_attempts):
        pairing = sample_pairing(n, r, rng)
        mg = project(pairing)
        if is_simple(mg):
            g = graph_from_edges(n, mg.edges, r=r)
            g.rejections = attempt
            return g
    raise AttemptsExhaustedError(
        f"no simple graph in {max_attempts} attempts (n={n}, r={r})")


def is_connected(g):
    """Reachability of every vertex from vertex 0."""
    if g.n == 0:
        return True
    seen = bytearray(g.n)
    seen[0] = 1
    stack = [0]
    count = 1
    adj = g.adjacency
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = 1
                count += 1
                stack.append(w)
    return count == g.n


def write_graph(g, path):
    """Plain-text graph file: first line "n r", then one "u v" line per edge (u < v).

    The format carries a single degree, so only regular graphs roundtrip.
    """
    degrees = {g.degree(v) for v in range(g.n)}
    if len(degrees) != 1:
        raise InvalidInputError("graph file format requires a regular graph")
    with open(path, "w") as fh:
        fh.write(f"{g.n} {degrees.pop()}\n")
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")


def read_graph(path):
    """Read and validate the graph file format written by write_graph."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise InvalidInputError(f"{path}: empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise InvalidInputError(f"{path}: header must be 'n r'")
    n, r = int(head[0]), int(head[1])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise InvalidInputError(f"{path}: bad edge line {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < v < n):
            raise InvalidInputError(f"{path}: edge ({u}, {v}) must satisfy 0 <= u < v < n")
        edges.append((u, v))
    if len(set(edges)) != len(edges):
        raise InvalidInputError(f"{path}: repeated edge")
    return graph_from_edges(n, edges, r=r)


def write_pairing(pairing, path):
    """Debug dump: one "p q" line per matched pair, p < q."""
    with open(path, "w") as fh:
        for p, q in pairing.pairs():
            fh.write(f"{p} {q}\n")
