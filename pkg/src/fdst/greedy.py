"""Greedy construction of spanning trees with many full-degree vertices.

Two modes implement the same algorithm:

* graph mode (`run_on_graph`) executes the pseudocode on a concrete
  connected simple r-regular graph: grow a forest from a random star,
  prefer processing current leaves (L) over unseen vertices (Z_r), declare
  a step a success when at most one neighbor of the processed vertex
  already lies in the forest, and finally complete the forest to a
  spanning tree.

* lazy mode (`run_lazy`) runs against an undisclosed uniform pairing of
  r*n configuration points, revealing partners only when a vertex is
  processed. Class bookkeeping follows per-point semantics: a vertex not
  in the forest with i unrevealed points is in class Z_i, a forest leaf
  with r-1 unrevealed points is in L, and anything hit along the way drops
  down a class or goes dormant. This is the mode whose scaled trajectories
  the drift system of `fdst.ode` describes.

Failure steps are deliberately cautious: the processed vertex is retired
even when a more careful case analysis could sometimes still make it full
degree, and steps with self-pairs or coincident partners (O(1/n) events)
are declared failures.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, InvariantViolationError
from .graphs import Pairing, is_connected
from .unionfind import UnionFind


class IndexedSet:
    """Dynamic set with O(1) membership, removal, and uniform random pop."""

    __slots__ = ("items", "pos")

    def __init__(self, iterable=()):
        self.items = list(iterable)
        self.pos = {x: i for i, x in enumerate(self.items)}

    def __len__(self):
        return len(self.items)

    def __contains__(self, x):
        return x in self.pos

    def add(self, x):
        if x not in self.pos:
            self.pos[x] = len(self.items)
            self.items.append(x)

    def discard(self, x):
        i = self.pos.pop(x, None)
        if i is None:
            return
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last] = i

    def pop_random(self, rng):
        items = self.items
        i = int(rng.integers(len(items)))
        x = items[i]
        last = items.pop()
        if i < len(items):
            items[i] = last
            self.pos[last] = i
        del self.pos[x]
        return x


class _DensePool:
    """IndexedSet specialized to a dense integer universe 0..m-1.

    Position lookups go through a flat list instead of a dict, which keeps
    million-point lazy runs near-linear in practice.
    """

    __slots__ = ("items", "pos")

    def __init__(self, m):
        self.items = list(range(m))
        self.pos = list(range(m))

    def __len__(self):
        return len(self.items)

    def remove(self, x):
        i = self.pos[x]
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last] = i

    def pop_random(self, rng):
        items = self.items
        i = int(rng.integers(len(items)))
        x = items[i]
        last = items.pop()
        if i < len(items):
            items[i] = last
            self.pos[last] = i
        return x


@dataclass
class StepOutcome:
    op: int                 # 1 = leaf step, 2 = fresh-vertex step
    processed: int
    success: bool
    partners: list          # (vertex, class before the step)


@dataclass
class Trajectory:
    """Scaled per-step samples: columns x, z_1..z_r, z_L, z_F, z_M, phase."""

    r: int
    n: int
    sample_stride: int
    samples: np.ndarray

    def header(self):
        zs = ",".join(f"z{i}" for i in range(1, self.r + 1))
        return f"x,{zs},zL,zF,zM,phase"

    def column(self, name):
        names = self.header().split(",")
        try:
            return self.samples[:, names.index(name)]
        except ValueError:
            raise InvalidInputError(f"unknown trajectory column {name!r}") from None


@dataclass
class TrajectorySummary:
    rho1_empirical: float | None
    final_full_fraction: float
    final_x: float
    num_samples: int


@dataclass
class SpanningTreeResult:
    n: int
    r: int
    tree: list
    full_degree_count: int
    leaf_count: int
    phase1_full_degree_count: int
    rho1_empirical: float | None
    full_vertices: list
    connected: bool = True
    steps: list | None = None
    pairing: object = None  # lazy mode: the fully revealed Pairing


def complete_to_spanning_tree(forest, g):
    """Extend an acyclic forest inside g to a spanning tree of g.

    Scans the graph's edges in lexicographic order and keeps any edge that
    joins two components, so completion is deterministic. No added edge may
    touch a vertex whose full star is already in the forest.
    """
    if not is_connected(g):
        raise InvalidInputError("completion requires a connected graph")
    uf = UnionFind(g.n)
    forest_deg = [0] * g.n
    tree = []
    for u, v in forest:
        if not g.has_edge(u, v):
            raise InvalidInputError(f"forest edge ({u}, {v}) is not a graph edge")
        if not uf.union(u, v):
            raise InvariantViolationError(f"input forest has a cycle at ({u}, {v})")
        forest_deg[u] += 1
        forest_deg[v] += 1
        tree.append((u, v) if u < v else (v, u))
    saturated = [forest_deg[v] == g.degree(v) for v in range(g.n)]
    for u, v in g.edges():
        if uf.union(u, v):
            if saturated[u] or saturated[v]:
                raise InvariantViolationError(
                    f"completion tried to add ({u}, {v}) at a full-degree vertex")
            tree.append((u, v))
    if uf.components != 1:
        raise InvariantViolationError("completion left the tree disconnected")
    return sorted(tree)


def _leaf_count(n, edges):
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return sum(1 for d in deg if d == 1)


def run_on_graph(g, rng, record_steps=False):
    """Run the algorithm on a concrete connected r-regular graph."""
    r = g.r
    if r < 3:
        raise InvalidInputError(f"need r >= 3, got r={r}")
    if not is_connected(g):
        raise InvalidInputError("graph mode requires a connected input graph")
    n = g.n
    adj = g.adjacency
    in_tree = bytearray(n)
    forest = set()
    forest_deg = [0] * n
    full = bytearray(n)
    leaf_pool = IndexedSet()
    fresh_pool = IndexedSet(range(n))
    steps = [] if record_steps else None

    v0 = int(rng.integers(n))
    fresh_pool.discard(v0)
    in_tree[v0] = 1
    if record_steps:
        steps.append(StepOutcome(op=2, processed=v0, success=True,
                                 partners=[(w, "Zr") for w in adj[v0]]))
    for w in adj[v0]:
        forest.add((v0, w) if v0 < w else (w, v0))
        forest_deg[v0] += 1
        forest_deg[w] += 1
        in_tree[w] = 1
        fresh_pool.discard(w)
        leaf_pool.add(w)
    full[v0] = 1
    full_count = 1

    t = 0
    first_fresh_step = None
    full_at_phase1_end = None
    while len(leaf_pool) or len(fresh_pool):
        t += 1
        if len(leaf_pool):
            op = 1
            v = leaf_pool.pop_random(rng)
        else:
            op = 2
            if first_fresh_step is None:
                first_fresh_step = t
                full_at_phase1_end = full_count
            v = fresh_pool.pop_random(rng)
        if record_steps:
            partners = [(w, "L" if w in leaf_pool else
                         ("tree" if in_tree[w] else
                          ("Zr" if w in fresh_pool else "retired")))
                        for w in adj[v]]
        in_tree_nbrs = 0
        for w in adj[v]:
            if in_tree[w]:
                in_tree_nbrs += 1
        success = in_tree_nbrs <= 1
        if success:
            for w in adj[v]:
                e = (v, w) if v < w else (w, v)
                if e not in forest:
                    forest.add(e)
                    forest_deg[v] += 1
                    forest_deg[w] += 1
                if not in_tree[w]:
                    in_tree[w] = 1
                    if w in fresh_pool:
                        fresh_pool.discard(w)
                        leaf_pool.add(w)
            in_tree[v] = 1
            full[v] = 1
            full_count += 1
        else:
            for w in adj[v]:
                fresh_pool.discard(w)
                leaf_pool.discard(w)
        if record_steps:
            steps.append(StepOutcome(op=op, processed=v, success=success,
                                     partners=partners))

    for v in range(n):
        if full[v] and forest_deg[v] != r:
            raise InvariantViolationError(
                f"full-degree vertex {v} has forest degree {forest_deg[v]}")
    tree = complete_to_spanning_tree(sorted(forest), g)
    return SpanningTreeResult(
        n=n, r=r, tree=tree,
        full_degree_count=full_count,
        leaf_count=_leaf_count(n, tree),
        phase1_full_degree_count=(full_at_phase1_end
                                  if full_at_phase1_end is not None else full_count),
        rho1_empirical=(first_fresh_step / n if first_fresh_step is not None else None),
        full_vertices=[v for v in range(n) if full[v]],
        connected=True,
        steps=steps,
    )


class _LazyState:
    """Mutable bookkeeping for one lazy run."""

    def __init__(self, n, r):
        self.n = n
        self.r = r
        self.partner = [-1] * (n * r)
        self.point_pool = _DensePool(n * r)
        self.unrevealed = [r] * n
        self.in_forest = bytearray(n)
        self.full = bytearray(n)
        self.forest = []
        self.forest_deg = [0] * n
        self.count_z = [0] * (r + 1)
        self.count_z[r] = n
        self.count_leaf = 0
        self.full_count = 0
        self.unrevealed_total = n * r
        self.leaf_pool = IndexedSet()
        self.fresh_pool = IndexedSet(range(n))

    def class_label(self, v):
        if self.full[v]:
            return "full"
        if self.in_forest[v]:
            return "L" if self.unrevealed[v] == self.r - 1 else "dead_leaf"
        return f"Z{self.unrevealed[v]}"

    def audit(self):
        """O(n) recomputation of every incremental counter."""
        r = self.r
        count_z = [0] * (r + 1)
        count_leaf = 0
        total_unrevealed = 0
        for v in range(self.n):
            total_unrevealed += self.unrevealed[v]
            if self.in_forest[v]:
                if not self.full[v] and self.unrevealed[v] == r - 1:
                    count_leaf += 1
            else:
                count_z[self.unrevealed[v]] += 1
        ok = (count_z == self.count_z
              and count_leaf == self.count_leaf
              and total_unrevealed == self.unrevealed_total
              and len(self.point_pool) == self.unrevealed_total
              and len(self.leaf_pool) == self.count_leaf
              and len(self.fresh_pool) == self.count_z[r]
              and self.full_count == sum(self.full))
        if not ok:
            raise InvariantViolationError("lazy bookkeeping out of sync")
        # unrevealed points split into unseen-class points, processable-leaf
        # points, and points held by dormant forest leaves
        held = sum(self.unrevealed[v] for v in range(self.n)
                   if self.in_forest[v] and not self.full[v]
                   and self.unrevealed[v] != r - 1)
        decomposed = (sum(i * count_z[i] for i in range(1, r + 1))
                      + (r - 1) * count_leaf + held)
        if decomposed != self.unrevealed_total:
            raise InvariantViolationError("unrevealed-point decomposition failed")
        uf = UnionFind(self.n)
        for u, v in self.forest:
            if not uf.union(u, v):
                raise InvariantViolationError("lazy forest has a cycle")


def run_lazy(n, r, rng, sample_stride=None, record_steps=False,
             invariant_checks=False):
    """Run the algorithm against a lazily revealed uniform pairing.

    Returns (SpanningTreeResult, Trajectory). The result's tree is a
    spanning forest of the projected multigraph (a spanning tree when the
    multigraph is connected); the trajectory samples the scaled class sizes
    every ``sample_stride`` steps (default: ceil(n/1000)).
    """
    if r < 3:
        raise InvalidInputError(f"need r >= 3, got r={r}")
    if (n * r) % 2:
        raise InvalidInputError(f"r*n must be even, got n={n}, r={r}")
    if sample_stride is None:
        sample_stride = max(1, -(-n // 1000))
    state = _LazyState(n, r)
    partner = state.partner
    point_pool = state.point_pool
    unrevealed = state.unrevealed
    in_forest = state.in_forest
    count_z = state.count_z
    leaf_pool = state.leaf_pool
    fresh_pool = state.fresh_pool
    steps = [] if record_steps else None
    samples = []
    phase = 1

    def record(t):
        samples.append((t / n, *(c / n for c in count_z[1:]),
                        state.count_leaf / n, state.full_count / n,
                        state.unrevealed_total / n, phase))

    def reveal(q):
        """Pair point q with a uniform unrevealed point; returns the partner point."""
        point_pool.remove(q)
        w_pt = point_pool.pop_random(rng)
        partner[q] = w_pt
        partner[w_pt] = q
        state.unrevealed_total -= 2
        return w_pt

    def touch(w):
        """One point of vertex w (not the processed vertex) was just revealed."""
        old = unrevealed[w]
        unrevealed[w] = old - 1
        if in_forest[w]:
            if old == r - 1:
                leaf_pool.discard(w)
                state.count_leaf -= 1
        else:
            count_z[old] -= 1
            count_z[old - 1] += 1
            if old == r:
                fresh_pool.discard(w)

    def process(v, op):
        if op == 1:
            state.count_leaf -= 1
        else:
            count_z[r] -= 1
        base = v * r
        partner_vertices = []
        labeled = [] if record_steps else None
        self_pair = False
        for q in range(base, base + r):
            if partner[q] != -1:
                continue
            w_pt = reveal(q)
            w = w_pt // r
            if w == v:
                self_pair = True
                if record_steps:
                    labeled.append((v, "self"))
            else:
                if record_steps:
                    labeled.append((w, state.class_label(w)))
                touch(w)
                partner_vertices.append(w)
        unrevealed[v] = 0
        distinct = len(set(partner_vertices)) == len(partner_vertices)
        inside = sum(1 for w in partner_vertices if in_forest[w])
        success = (not self_pair) and distinct and inside <= (0 if op == 1 else 1)
        if success:
            for w in partner_vertices:
                state.forest.append((v, w) if v < w else (w, v))
                state.forest_deg[v] += 1
                state.forest_deg[w] += 1
                if not in_forest[w]:
                    in_forest[w] = 1
                    count_z[unrevealed[w]] -= 1
                    if unrevealed[w] == r - 1:
                        leaf_pool.add(w)
                        state.count_leaf += 1
            in_forest[v] = 1
            state.full[v] = 1
            state.full_count += 1
        else:
            if op == 2:
                count_z[0] += 1  # retired unseen: all points revealed, never joined
        if record_steps:
            steps.append(StepOutcome(op=op, processed=v, success=success,
                                     partners=labeled))
        return success

    record(0)
    v0 = int(rng.integers(n))
    fresh_pool.discard(v0)
    process(v0, 2)
    if invariant_checks:
        state.audit()

    t = 0
    last_recorded = 0
    first_fresh_step = None
    full_at_phase1_end = None
    while len(leaf_pool) or len(fresh_pool):
        t += 1
        if len(leaf_pool):
            v = leaf_pool.pop_random(rng)
            process(v, 1)
        else:
            if first_fresh_step is None:
                first_fresh_step = t
                full_at_phase1_end = state.full_count
                phase = 2
            v = fresh_pool.pop_random(rng)
            process(v, 2)
        if t % sample_stride == 0:
            record(t)
            last_recorded = t
        if invariant_checks:
            state.audit()
    if t != last_recorded:
        record(t)

    _complete_pairing(state, rng)
    tree, connected = _complete_lazy_forest(state)
    for v in range(n):
        if state.full[v] and state.forest_deg[v] != r:
            raise InvariantViolationError(
                f"full-degree vertex {v} has forest degree {state.forest_deg[v]}")
    revealed = Pairing(n=n, r=r, matches=np.asarray(state.partner, dtype=np.int64))
    result = SpanningTreeResult(
        n=n, r=r, tree=tree,
        full_degree_count=state.full_count,
        leaf_count=_leaf_count(n, tree),
        phase1_full_degree_count=(full_at_phase1_end
                                  if full_at_phase1_end is not None
                                  else state.full_count),
        rho1_empirical=(first_fresh_step / n
                        if first_fresh_step is not None else None),
        full_vertices=[v for v in range(n) if state.full[v]],
        connected=connected,
        steps=steps,
        pairing=revealed,
    )
    trajectory = Trajectory(r=r, n=n, sample_stride=sample_stride,
                            samples=np.asarray(samples))
    return result, trajectory


def _complete_pairing(state, rng):
    """Pair up all still-unrevealed points, lowest first, uniformly."""
    remaining = sorted(state.point_pool.items)
    if not remaining:
        return
    pool = list(remaining)
    pos = {p: i for i, p in enumerate(pool)}
    draws = rng.random(len(pool) // 2).tolist()
    k = 0
    for p in remaining:
        if state.partner[p] != -1:
            continue
        i = pos.pop(p)
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
        del pos[q]
        state.partner[p] = q
        state.partner[q] = p
    state.point_pool = _DensePool(0)
    state.unrevealed_total = 0


def _complete_lazy_forest(state):
    """Join forest components using the revealed multigraph, smallest edges first."""
    n, r = state.n, state.r
    uf = UnionFind(n)
    for u, v in state.forest:
        if not uf.union(u, v):
            raise InvariantViolationError("lazy forest has a cycle")
    tree = sorted(state.forest)
    if uf.components > 1:
        edges = set()
        for p in range(n * r):
            q = state.partner[p]
            if p < q:
                u, v = p // r, q // r
                if u != v:
                    edges.add((u, v) if u < v else (v, u))
        for u, v in sorted(edges):
            if uf.union(u, v):
                if state.full[u] or state.full[v]:
                    raise InvariantViolationError(
                        f"completion tried to add ({u}, {v}) at a full-degree vertex")
                tree.append((u, v))
        tree.sort()
    return tree, uf.components == 1


def trajectory_stats(traj):
    """Summary of one trajectory: phase-1 end, final full-degree fraction."""
    if len(traj.samples) == 0:
        raise InvalidInputError("empty trajectory")
    xs = traj.column("x")
    phases = traj.column("phase")
    z_f = traj.column("zF")
    phase2 = np.nonzero(phases == 2)[0]
    rho1 = float(xs[phase2[0]]) if len(phase2) else None
    return TrajectorySummary(
        rho1_empirical=rho1,
        final_full_fraction=float(z_f[-1]),
        final_x=float(xs[-1]),
        num_samples=len(xs),
    )
