"""Strong connectivity machinery and constructive arc-disjoint branchings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

from nonsep.digraph import Digraph
from nonsep.errors import InvariantViolation, PreconditionError


@dataclass(frozen=True)
class OutTree:
    """Rooted out-tree given by a parent-arc map over a subset of vertices.

    `parent[v]` is an arc index of the parent digraph whose head is v; the
    covered vertex set is {root} plus the keys of `parent`.
    """

    root: int
    parent: dict

    def vertices(self) -> set[int]:
        return {self.root} | set(self.parent)

    def arc_indices(self) -> frozenset:
        return frozenset(self.parent.values())


@dataclass(frozen=True)
class OutBranching:
    """Spanning out-tree: every non-root vertex has exactly one entering arc."""

    root: int
    parent: dict

    def arc_indices(self) -> frozenset:
        return frozenset(self.parent.values())

    def as_tree(self) -> OutTree:
        return OutTree(self.root, dict(self.parent))


@dataclass(frozen=True)
class StrongComponents:
    """Component id per vertex plus a topological order of the components."""

    component_of: tuple
    order: tuple  # tuple of frozensets, no arc from a later to an earlier one
    initial: tuple  # flags per component, True = no entering arc
    terminal: tuple  # flags per component, True = no leaving arc

    @property
    def count(self) -> int:
        return len(self.order)

    def initial_components(self) -> list[frozenset]:
        return [c for c, f in zip(self.order, self.initial) if f]

    def terminal_components(self) -> list[frozenset]:
        return [c for c, f in zip(self.order, self.terminal) if f]


# ---------------------------------------------------------------------------
# reachability primitives (bitmask based; hot path for the whole package)
# ---------------------------------------------------------------------------


def reach_mask(out_masks: list[int], start: int) -> int:
    """Bitmask of vertices reachable from `start` (inclusive)."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        m = frontier
        while m:
            b = m & -m
            nxt |= out_masks[b.bit_length() - 1]
            m ^= b
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_strong(D: Digraph, excluded_arcs: Iterable[int] = ()) -> bool:
    """Strong connectivity of D with some arcs removed (by index)."""
    if D.n <= 1:
        return True
    excluded = frozenset(excluded_arcs)
    full = (1 << D.n) - 1
    if reach_mask(D.out_masks(excluded), 0) != full:
        return False
    return reach_mask(D.in_masks(excluded), 0) == full


def reachability_matrix(D: Digraph, excluded_arcs: Iterable[int] = ()) -> list[int]:
    """Row v = bitmask of vertices reachable from v (inclusive)."""
    masks = D.out_masks(excluded_arcs)
    return [reach_mask(masks, v) for v in range(D.n)]


def strong_components(D: Digraph) -> StrongComponents:
    """Kosaraju sweep; the returned order has no backward inter-component arcs."""
    n = D.n
    order: list[int] = []
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        # iterative DFS with explicit finish events
        stack = [(s, iter(D.out_neighbors(s)))]
        seen[s] = True
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if not seen[w]:
                    seen[w] = True
                    stack.append((w, iter(D.out_neighbors(w))))
                    advanced = True
                    break
            if not advanced:
                order.append(v)
                stack.pop()
    comp = [-1] * n
    comps: list[list[int]] = []
    for s in reversed(order):
        if comp[s] != -1:
            continue
        cid = len(comps)
        comps.append([])
        stack = [s]
        comp[s] = cid
        while stack:
            v = stack.pop()
            comps[cid].append(v)
            for w in D.in_neighbors(v):
                if comp[w] == -1:
                    comp[w] = cid
                    stack.append(w)
    # reversed-finish order on the converse yields a topological order already
    k = len(comps)
    initial = [True] * k
    terminal = [True] * k
    for t, h in D.arcs:
        if comp[t] != comp[h]:
            initial[comp[h]] = False
            terminal[comp[t]] = False
    return StrongComponents(
        component_of=tuple(comp),
        order=tuple(frozenset(c) for c in comps),
        initial=tuple(initial),
        terminal=tuple(terminal),
    )


# ---------------------------------------------------------------------------
# max-flow (unit arc capacities) and arc connectivity
# ---------------------------------------------------------------------------


def max_flow_value(
    D: Digraph,
    s: int,
    t: int,
    excluded_arcs: Iterable[int] = (),
    stop_at: Optional[int] = None,
) -> int:
    """Number of arc-disjoint (s,t)-paths, optionally stopping early."""
    if s == t:
        raise ValueError("source equals sink")
    excluded = frozenset(excluded_arcs)
    cap: dict[tuple[int, int], int] = {}
    adj: list[set[int]] = [set() for _ in range(D.n)]
    for i, (u, v) in enumerate(D.arcs):
        if i in excluded:
            continue
        cap[(u, v)] = cap.get((u, v), 0) + 1
        cap.setdefault((v, u), 0)
        adj[u].add(v)
        adj[v].add(u)
    flow = 0
    while stop_at is None or flow < stop_at:
        parent = {s: None}
        queue = [s]
        while queue and t not in parent:
            u = queue.pop(0)
            for v in adj[u]:
                if v not in parent and cap.get((u, v), 0) > 0:
                    parent[v] = u
                    queue.append(v)
        if t not in parent:
            break
        v = t
        while parent[v] is not None:
            u = parent[v]
            cap[(u, v)] -= 1
            cap[(v, u)] += 1
            v = u
        flow += 1
    return flow


def arc_connectivity(D: Digraph) -> int:
    """Minimum out-degree over proper nonempty vertex subsets via 2(n-1) flows."""
    if D.n < 2:
        raise PreconditionError("arc connectivity needs at least 2 vertices")
    best = None
    for v in range(1, D.n):
        for a, b in ((0, v), (v, 0)):
            val = max_flow_value(D, a, b, stop_at=best)
            if best is None or val < best:
                best = val
            if best == 0:
                return 0
    return best


def cut_arcs(D: Digraph) -> list[int]:
    """Arc indices whose removal destroys strong connectivity.

    Only meaningful when D is strong; returns [] otherwise.
    """
    if not is_strong(D):
        return []
    return [i for i in range(D.m) if not is_strong(D, (i,))]


def is_k_arc_strong(D: Digraph, k: int) -> bool:
    if D.n < 2:
        return True
    for v in range(1, D.n):
        if max_flow_value(D, 0, v, stop_at=k) < k:
            return False
        if max_flow_value(D, v, 0, stop_at=k) < k:
            return False
    return True


# ---------------------------------------------------------------------------
# out-branchings
# ---------------------------------------------------------------------------


def build_out_branching(D: Digraph, root: int, allowed_arcs: Optional[set] = None) -> Optional[OutBranching]:
    """BFS out-branching from `root` using lowest arc indices, if one exists."""
    parent: dict[int, int] = {}
    seen = {root}
    queue = [root]
    while queue:
        v = queue.pop(0)
        for i in sorted(D.out_arc_indices(v)):
            if allowed_arcs is not None and i not in allowed_arcs:
                continue
            h = D.arcs[i][1]
            if h not in seen:
                seen.add(h)
                parent[h] = i
                queue.append(h)
    if len(seen) != D.n:
        return None
    return OutBranching(root, parent)


def has_out_branching(D: Digraph) -> Union[OutBranching, list[frozenset]]:
    """Out-branching rooted in the unique initial component, else the initial set."""
    sc = strong_components(D)
    initial = sc.initial_components()
    if len(initial) != 1:
        return initial
    root = min(initial[0])
    b = build_out_branching(D, root)
    if b is None:
        raise InvariantViolation("unique initial component must reach all vertices")
    return b


def verify_out_branching(D: Digraph, b: OutBranching) -> bool:
    if not (0 <= b.root < D.n):
        return False
    if set(b.parent) != set(range(D.n)) - {b.root}:
        return False
    for v, i in b.parent.items():
        if not (0 <= i < D.m) or D.arcs[i][1] != v:
            return False
    # root must reach every vertex along parent arcs
    children: dict[int, list[int]] = {}
    for v, i in b.parent.items():
        children.setdefault(D.arcs[i][0], []).append(v)
    seen = {b.root}
    stack = [b.root]
    while stack:
        u = stack.pop()
        for w in children.get(u, []):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == D.n


def verify_out_tree(D: Digraph, t: OutTree) -> bool:
    """Valid out-tree: every covered non-root vertex has one entering tree arc."""
    if not (0 <= t.root < D.n) or t.root in t.parent:
        return False
    for v, i in t.parent.items():
        if not (0 <= i < D.m) or D.arcs[i][1] != v:
            return False
        if D.arcs[i][0] not in t.vertices():
            return False
    seen = {t.root}
    stack = [t.root]
    children: dict[int, list[int]] = {}
    for v, i in t.parent.items():
        children.setdefault(D.arcs[i][0], []).append(v)
    while stack:
        u = stack.pop()
        for w in children.get(u, []):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == t.vertices()


# ---------------------------------------------------------------------------
# Edmonds' branching theorem, constructive
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DeficientVertex:
    """Witness that fewer than k arc-disjoint (s,v)-paths exist."""

    vertex: int
    flow: int
    required: int


def edmonds_branchings(D: Digraph, s: int, k: int) -> Union[list[OutBranching], DeficientVertex]:
    """k pairwise arc-disjoint out-branchings rooted at s, or a deficiency witness.

    Feasibility is exactly `max-flow(s,v) >= k` for all v; construction peels
    off one branching at a time, keeping the residual digraph (k-i)-fan-out
    from s, which is always possible when the flow condition holds.
    """
    if k < 1:
        raise PreconditionError("k must be at least 1")
    for v in range(D.n):
        if v == s:
            continue
        f = max_flow_value(D, s, v, stop_at=k)
        if f < k:
            return DeficientVertex(vertex=v, flow=f, required=k)
    remaining = D
    arc_map = list(range(D.m))  # remaining arc index -> original index
    branchings = []
    for need in range(k, 0, -1):
        b = _peel_branching(remaining, s, need)
        if b is None:
            raise InvariantViolation("branching extraction failed despite feasible flows")
        branchings.append(OutBranching(s, {v: arc_map[i] for v, i in b.parent.items()}))
        used = set(b.parent.values())
        arc_map = [orig for i, orig in enumerate(arc_map) if i not in used]
        remaining = remaining.without_arcs(used)
    return branchings


def _peel_branching(D: Digraph, s: int, k: int) -> Optional[OutBranching]:
    """One out-branching B with lambda(s,v) >= k-1 in D minus A(B), for all v.

    Greedy tree growth with a full feasibility check per candidate arc and a
    backtracking safety net (the greedy step always succeeds in theory).
    """

    def feasible(tree_arcs: set) -> bool:
        for v in range(D.n):
            if v == s:
                continue
            if max_flow_value(D, s, v, excluded_arcs=tree_arcs, stop_at=k - 1) < k - 1:
                return False
        return True

    def grow(tree_arcs: set, covered: set, parent: dict) -> Optional[dict]:
        if len(covered) == D.n:
            return dict(parent)
        candidates = []
        for u in sorted(covered):
            for i in sorted(D.out_arc_indices(u)):
                h = D.arcs[i][1]
                if h not in covered:
                    candidates.append((h, i))
        for h, i in sorted(candidates, key=lambda c: (c[1],)):
            tree_arcs.add(i)
            if feasible(tree_arcs):
                covered.add(h)
                parent[h] = i
                res = grow(tree_arcs, covered, parent)
                if res is not None:
                    return res
                covered.discard(h)
                del parent[h]
            tree_arcs.discard(i)
        return None

    parent = grow(set(), {s}, {})
    if parent is None:
        return None
    return OutBranching(s, parent)
