"""Core digraph and graph representations.

Vertices are dense integers 0..n-1; arcs form an indexed list so that arc
subsets can be referenced stably by index (certificates do exactly that).
Parallel arcs are allowed; most algorithms require simple digraphs and check
`is_simple` themselves.  All values are treated as immutable after
construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from nonsep.errors import PreconditionError


class Digraph:
    """A digraph given by a vertex count and an indexed multiset of arcs."""

    __slots__ = ("n", "arcs", "_out", "_in")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]]):
        arcs = tuple((int(t), int(h)) for t, h in arcs)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        for t, h in arcs:
            if not (0 <= t < n and 0 <= h < n):
                raise ValueError(f"arc ({t},{h}) out of range for n={n}")
            if t == h:
                raise ValueError(f"self-loop ({t},{h}) not allowed")
        self.n = n
        self.arcs = arcs
        out: list[list[int]] = [[] for _ in range(n)]
        inn: list[list[int]] = [[] for _ in range(n)]
        for i, (t, h) in enumerate(arcs):
            out[t].append(i)
            inn[h].append(i)
        self._out = out
        self._in = inn

    # -- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.arcs)

    def vertices(self) -> range:
        return range(self.n)

    def out_arc_indices(self, v: int) -> list[int]:
        return self._out[v]

    def in_arc_indices(self, v: int) -> list[int]:
        return self._in[v]

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    def in_degree(self, v: int) -> int:
        return len(self._in[v])

    def out_neighbors(self, v: int) -> list[int]:
        return [self.arcs[i][1] for i in self._out[v]]

    def in_neighbors(self, v: int) -> list[int]:
        return [self.arcs[i][0] for i in self._in[v]]

    def multiplicity(self, u: int, v: int) -> int:
        return sum(1 for i in self._out[u] if self.arcs[i][1] == v)

    def has_arc(self, u: int, v: int) -> bool:
        return any(self.arcs[i][1] == v for i in self._out[u])

    def adjacent(self, u: int, v: int) -> bool:
        return self.has_arc(u, v) or self.has_arc(v, u)

    def arc_index(self, u: int, v: int) -> int:
        """Lowest index of an arc u->v; raises KeyError if absent."""
        for i in self._out[u]:
            if self.arcs[i][1] == v:
                return i
        raise KeyError(f"no arc ({u},{v})")

    def arc_indices_between(self, u: int, v: int) -> list[int]:
        return [i for i in self._out[u] if self.arcs[i][1] == v]

    def is_simple(self) -> bool:
        return all(self.multiplicity(u, v) <= 1 for u, v in self.arcs)

    def min_in_degree(self) -> int:
        return min((self.in_degree(v) for v in range(self.n)), default=0)

    def min_out_degree(self) -> int:
        return min((self.out_degree(v) for v in range(self.n)), default=0)

    def min_semi_degree(self) -> int:
        return min(self.min_in_degree(), self.min_out_degree())

    # -- derived digraphs ----------------------------------------------

    def converse(self) -> "Digraph":
        return Digraph(self.n, [(h, t) for t, h in self.arcs])

    def without_arcs(self, removed: Iterable[int]) -> "Digraph":
        """New digraph dropping the given arc indices (indices are re-numbered)."""
        removed = set(removed)
        return Digraph(self.n, [a for i, a in enumerate(self.arcs) if i not in removed])

    def induced(self, vertices: Iterable[int]) -> tuple["Digraph", list[int], list[int]]:
        """Induced subdigraph.

        Returns (H, vmap, arc_map) where vmap[new] = old vertex and
        arc_map[new arc index] = old arc index.
        """
        vmap = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vmap)}
        arcs = []
        arc_map = []
        for i, (t, h) in enumerate(self.arcs):
            if t in pos and h in pos:
                arcs.append((pos[t], pos[h]))
                arc_map.append(i)
        return Digraph(len(vmap), arcs), vmap, arc_map

    # -- bitmask adjacency (used by reachability-heavy callers) ---------

    def out_masks(self, excluded_arcs: Iterable[int] = ()) -> list[int]:
        excluded = set(excluded_arcs)
        masks = [0] * self.n
        for i, (t, h) in enumerate(self.arcs):
            if i not in excluded:
                masks[t] |= 1 << h
        return masks

    def in_masks(self, excluded_arcs: Iterable[int] = ()) -> list[int]:
        excluded = set(excluded_arcs)
        masks = [0] * self.n
        for i, (t, h) in enumerate(self.arcs):
            if i not in excluded:
                masks[h] |= 1 << t
        return masks

    # -- dunder --------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Digraph)
            and self.n == other.n
            and sorted(self.arcs) == sorted(other.arcs)
        )

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.arcs))))

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={list(self.arcs)})"


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph: vertex count plus a set of unordered pairs."""

    n: int
    edges: frozenset

    @staticmethod
    def of(n: int, edges: Iterable[tuple[int, int]]) -> "UndirectedGraph":
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            norm.add((min(u, v), max(u, v)))
        return UndirectedGraph(n, frozenset(norm))

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def min_degree(self) -> int:
        adj = self.adjacency()
        return min((len(a) for a in adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def components(self) -> list[list[int]]:
        adj = self.adjacency()
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            stack, comp = [s], []
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def spanning_tree_edges(self, banned: Iterable[tuple[int, int]] = ()) -> Optional[list[tuple[int, int]]]:
        """BFS spanning tree avoiding `banned` edges, lowest neighbours first."""
        banned = {(min(u, v), max(u, v)) for u, v in banned}
        adj = self.adjacency()
        if self.n == 0:
            return []
        parent = {0: None}
        order = [0]
        queue = [0]
        while queue:
            v = queue.pop(0)
            for w in sorted(adj[v]):
                if w in parent or (min(v, w), max(v, w)) in banned:
                    continue
                parent[w] = v
                order.append(w)
                queue.append(w)
        if len(parent) != self.n:
            return None
        return [(min(v, parent[v]), max(v, parent[v])) for v in order if parent[v] is not None]

    def bridges(self) -> set[tuple[int, int]]:
        """Edges whose removal disconnects their component."""
        out = set()
        for u, v in sorted(self.edges):
            g = UndirectedGraph(self.n, self.edges - {(u, v)})
            before = None
            # edge is a bridge iff u and v fall in different components afterwards
            adj = g.adjacency()
            stack, seen = [u], {u}
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if v not in seen:
                out.add((u, v))
            del before
        return out

    def is_two_edge_connected(self) -> bool:
        return self.n >= 2 and self.is_connected() and not self.bridges()

    def complement(self) -> "UndirectedGraph":
        edges = {
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if (u, v) not in self.edges
        }
        return UndirectedGraph(self.n, frozenset(edges))

    def independence_number(self) -> int:
        return _max_independent_set_size([frozenset(a) for a in self.adjacency()])


@dataclass(frozen=True)
class ArcSubset:
    """A set of arc indices of a fixed parent digraph."""

    parent: Digraph
    indices: frozenset

    @staticmethod
    def of(parent: Digraph, indices: Iterable[int]) -> "ArcSubset":
        indices = frozenset(int(i) for i in indices)
        for i in indices:
            if not (0 <= i < parent.m):
                raise ValueError(f"arc index {i} out of range")
        return ArcSubset(parent, indices)

    def complement(self) -> "ArcSubset":
        return ArcSubset(self.parent, frozenset(range(self.parent.m)) - self.indices)

    def arc_pairs(self) -> list[tuple[int, int]]:
        return [self.parent.arcs[i] for i in sorted(self.indices)]

    def __len__(self):
        return len(self.indices)

    def __contains__(self, i):
        return i in self.indices


# ---------------------------------------------------------------------------
# degree / independence / projection operations
# ---------------------------------------------------------------------------


def degrees(D: Digraph, X: Iterable[int]) -> tuple[int, int]:
    """(out-degree, in-degree) of the vertex set X, counting multiplicities."""
    X = set(X)
    if not X or not X < set(range(D.n)):
        raise PreconditionError("X must be a nonempty proper subset of the vertices")
    d_out = sum(1 for t, h in D.arcs if t in X and h not in X)
    d_in = sum(1 for t, h in D.arcs if h in X and t not in X)
    return d_out, d_in


def is_alpha_at_most_2(D: Digraph) -> tuple[bool, Optional[tuple[int, int, int]]]:
    """Check all vertex triples; on failure return an independent triple."""
    non_adj = _non_adjacency_sets(D)
    for u in range(D.n):
        for v in sorted(non_adj[u]):
            if v <= u:
                continue
            common = non_adj[u] & non_adj[v]
            for w in sorted(common):
                if w > v:
                    return False, (u, v, w)
    return True, None


def independence_number(D: Digraph) -> int:
    """Exact independence number (branch and bound, meant for n <= 40)."""
    ok, _ = is_alpha_at_most_2(D)
    if ok:
        if D.n == 0:
            return 0
        if is_semicomplete(D):
            return 1
        return 2 if D.n >= 2 else 1
    adj = [frozenset(range(D.n)) - na - {v} for v, na in enumerate(_non_adjacency_sets(D))]
    return _max_independent_set_size(adj)


def underlying_graph(D: Digraph) -> UndirectedGraph:
    return UndirectedGraph.of(D.n, [(t, h) for t, h in D.arcs])


def is_oriented(D: Digraph) -> bool:
    """No pair of vertices carries arcs in both directions."""
    seen = set()
    for t, h in D.arcs:
        if (h, t) in seen:
            return False
        seen.add((t, h))
    return True


def is_semicomplete(D: Digraph) -> bool:
    """Every pair of distinct vertices is adjacent."""
    pairs = {(min(t, h), max(t, h)) for t, h in D.arcs}
    return len(pairs) == D.n * (D.n - 1) // 2


def is_tournament(D: Digraph) -> bool:
    return is_semicomplete(D) and is_oriented(D) and D.is_simple()


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _non_adjacency_sets(D: Digraph) -> list[set[int]]:
    adj = [set() for _ in range(D.n)]
    for t, h in D.arcs:
        adj[t].add(h)
        adj[h].add(t)
    return [set(range(D.n)) - adj[v] - {v} for v in range(D.n)]


def _max_independent_set_size(adj: Sequence[frozenset]) -> int:
    """Maximum independent set size by branch and bound on vertex choices."""
    n = len(adj)
    masks = [0] * n
    for v in range(n):
        for w in adj[v]:
            masks[v] |= 1 << w
    best = 0

    def bb(candidates: int, size: int):
        nonlocal best
        if size + candidates.bit_count() <= best:
            return
        if candidates == 0:
            best = max(best, size)
            return
        b = candidates & -candidates
        v = b.bit_length() - 1
        # branch: take v, or leave it out
        bb(candidates & ~(masks[v] | b), size + 1)
        bb(candidates & ~b, size)

    bb((1 << n) - 1, 0)
    return best


def all_pairs_from(vertices: Iterable[int]):
    return itertools.combinations(sorted(vertices), 2)
