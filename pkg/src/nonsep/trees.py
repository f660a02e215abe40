"""Non-separating and safe spanning trees.

A spanning tree here is a set of arc indices, one arc per used adjacency,
whose undirected projection is a spanning tree.  A tree is non-separating if
deleting its arcs leaves the digraph strong, and safe if deleting them
preserves the full pairwise reachability relation (safe implies
non-separating on strong inputs).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from nonsep.connectivity import is_strong, reachability_matrix, strong_components
from nonsep.digraph import Digraph, UndirectedGraph, is_alpha_at_most_2, is_oriented, is_semicomplete, underlying_graph
from nonsep.errors import InvariantViolation, NotGuaranteed, PreconditionError
from nonsep.oracles import iter_spanning_tree_edge_sets
from nonsep.semicomplete import camion_hamiltonian_cycle, cycle_arc_indices

SEED_SIZE = 5
GUARANTEE_ORDER = 14  # any alpha<=2 digraph this large contains a 5-seed


@dataclass(frozen=True)
class SpanningTreeMask:
    """Spanning tree realized as arc indices of the host digraph."""

    digraph: Digraph
    arc_indices: frozenset

    def edges(self) -> set:
        return {tuple(sorted(self.digraph.arcs[i])) for i in self.arc_indices}


@dataclass(frozen=True)
class SafetyReport:
    """Pairwise reachability with and without the tree arcs."""

    reach_full: tuple
    reach_residual: tuple
    equal: bool


def is_spanning_tree_mask(D: Digraph, arcs: Iterable[int]) -> bool:
    arcs = set(arcs)
    if len(arcs) != D.n - 1:
        return False
    edges = [tuple(sorted(D.arcs[i])) for i in arcs]
    if len(set(edges)) != len(edges):
        return False
    g = UndirectedGraph.of(D.n, edges)
    return g.is_connected()


def verify_nonsep_tree(D: Digraph, tree: SpanningTreeMask) -> bool:
    return is_spanning_tree_mask(D, tree.arc_indices) and is_strong(D, tree.arc_indices)


def verify_safe_tree(D: Digraph, tree: SpanningTreeMask) -> SafetyReport:
    full = tuple(reachability_matrix(D))
    resid = tuple(reachability_matrix(D, tree.arc_indices))
    return SafetyReport(full, resid, full == resid)


def search_nonsep_tree(D: Digraph) -> Optional[SpanningTreeMask]:
    """First non-separating spanning tree by exhaustive enumeration."""
    from nonsep.oracles import oracle_nonsep_tree

    exists, transcript = oracle_nonsep_tree(D, bound=D.n)
    if not exists:
        return None
    return SpanningTreeMask(D, frozenset(transcript.witness))


# ---------------------------------------------------------------------------
# safe spanning trees of semicomplete digraphs
# ---------------------------------------------------------------------------


def safe_spanning_tree_semicomplete(D: Digraph, debug_verify: bool = False) -> SpanningTreeMask:
    """Safe spanning tree of a semicomplete digraph on at least 5 vertices.

    Strong inputs take a tree avoiding a hamiltonian cycle; otherwise the tree
    lives among the arcs linking the strong components, minus a path through
    fixed representatives (with the small component-pattern special cases).
    """
    if not is_semicomplete(D):
        raise PreconditionError("input is not semicomplete")
    if D.n < 5:
        raise PreconditionError("need at least 5 vertices")
    if is_strong(D):
        h = set(cycle_arc_indices(D, camion_hamiltonian_cycle(D)))
        allowed = [i for i in range(D.m) if i not in h]
        tree = _tree_from_allowed(D, allowed)
        if tree is None:
            raise InvariantViolation("complement of a hamiltonian cycle must stay connected for n >= 5")
        return _checked_safe(D, tree)
    sc = strong_components(D)
    comps = [sorted(c) for c in sc.order]
    t = len(comps)
    reps = [c[0] for c in comps]
    comp_of = sc.component_of
    inter = [i for i, (a, b) in enumerate(D.arcs) if comp_of[a] != comp_of[b]]
    path_arcs = {D.arc_index(reps[i], reps[i + 1]) for i in range(t - 1)}
    big = [i for i in range(t) if len(comps[i]) >= 2]
    if len(big) >= 2 or t >= 4:
        allowed = [i for i in inter if i not in path_arcs]
        tree = _tree_from_allowed(D, allowed)
        if tree is None:
            raise InvariantViolation("component-linking arcs minus the representative path must connect")
        return _checked_safe(D, tree)
    if t == 3:
        i0 = big[0] if big else None
        if i0 is None:
            raise InvariantViolation("three singleton components cannot reach 5 vertices")
        if i0 in (0, 2):
            allowed = [i for i in inter if i not in path_arcs]
            tree = _tree_from_allowed(D, allowed)
            if tree is None:
                raise InvariantViolation("linking arcs off the representative path must connect")
            return _checked_safe(D, tree)
        # middle component big: drop the two representative-path arcs around it
        y2 = comps[1][1]
        banned = {D.arc_index(reps[0], reps[1]), D.arc_index(y2, reps[2])}
        allowed = [i for i in inter if i not in banned]
        tree = _tree_from_allowed(D, allowed)
        if tree is None:
            raise InvariantViolation("linking arcs minus two must stay connected")
        return _checked_safe(D, tree)
    # t == 2 with exactly one big component
    if len(big) != 1:
        raise InvariantViolation("two components, at least one big, expected here")
    if big[0] == 0:
        big_comp, single = comps[0], comps[1][0]
        sub, vmap, amap = D.induced(big_comp)
        free = _removable_arc(sub)
        tree_arcs = {amap[free]}
        x = vmap[sub.arcs[free][0]]
        for w in big_comp:
            if w != x:
                tree_arcs.add(D.arc_index(w, single))
        return _checked_safe(D, frozenset(tree_arcs))
    big_comp, single = comps[1], comps[0][0]
    sub, vmap, amap = D.induced(big_comp)
    free = _removable_arc(sub)
    tree_arcs = {amap[free]}
    x = vmap[sub.arcs[free][0]]
    for w in big_comp:
        if w != x:
            tree_arcs.add(D.arc_index(single, w))
    return _checked_safe(D, frozenset(tree_arcs))


def _removable_arc(sub: Digraph) -> int:
    """Lowest arc whose removal keeps the strong digraph strong."""
    for i in range(sub.m):
        if is_strong(sub, (i,)):
            return i
    raise InvariantViolation("a strong semicomplete digraph on >= 4 vertices has a non-cut arc")


def _tree_from_allowed(D: Digraph, allowed: Iterable[int]) -> Optional[frozenset]:
    """Spanning tree mask using only the allowed arcs (lowest arc per edge)."""
    allowed = sorted(allowed)
    by_edge: dict[tuple[int, int], int] = {}
    for i in allowed:
        e = tuple(sorted(D.arcs[i]))
        by_edge.setdefault(e, i)
    g = UndirectedGraph.of(D.n, by_edge.keys())
    edges = g.spanning_tree_edges()
    if edges is None:
        return None
    return frozenset(by_edge[e] for e in edges)


def _checked_safe(D: Digraph, arcs: frozenset) -> SpanningTreeMask:
    tree = SpanningTreeMask(D, frozenset(arcs))
    if not is_spanning_tree_mask(D, tree.arc_indices):
        raise InvariantViolation("constructed arc set is not a spanning tree")
    if not verify_safe_tree(D, tree).equal:
        raise InvariantViolation("constructed tree is not safe")
    return tree


# ---------------------------------------------------------------------------
# tree extension (at most two uncovered vertices)
# ---------------------------------------------------------------------------


def extend_nonsep_tree(D: Digraph, tree_arcs: Iterable[int]) -> SpanningTreeMask:
    """Extend a tree covering all but at most two vertices to a non-separating
    spanning tree.

    Preconditions: the host is 2-arc-strong, deleting the tree arcs leaves it
    strong, and the uncovered vertices induce a semicomplete subdigraph.
    """
    from nonsep.connectivity import is_k_arc_strong

    tree_arcs = frozenset(tree_arcs)
    if not is_k_arc_strong(D, 2):
        raise PreconditionError("host must be 2-arc-strong")
    if not is_strong(D, tree_arcs):
        raise PreconditionError("deleting the partial tree must leave the host strong")
    covered = set()
    for i in tree_arcs:
        covered.update(D.arcs[i])
    uncovered = sorted(set(range(D.n)) - covered)
    if tree_arcs and not _is_tree_on(D, tree_arcs, covered):
        raise PreconditionError("given arcs do not form a tree")
    if len(uncovered) > 2:
        raise PreconditionError("at most two uncovered vertices supported")
    for u, v in [(a, b) for a in uncovered for b in uncovered if a < b]:
        if not D.adjacent(u, v):
            raise PreconditionError("uncovered vertices must induce a semicomplete subdigraph")
    if not uncovered:
        return _checked_nonsep(D, tree_arcs)
    if len(uncovered) == 1:
        return _extend_one(D, tree_arcs, covered, uncovered[0])
    return _extend_two(D, tree_arcs, covered, uncovered[0], uncovered[1])


def _is_tree_on(D, arcs, covered) -> bool:
    edges = [tuple(sorted(D.arcs[i])) for i in arcs]
    if len(set(edges)) != len(edges) or len(edges) != len(covered) - 1:
        return False
    sub = UndirectedGraph.of(D.n, edges)
    comp = [c for c in sub.components() if len(c) > 1]
    return len(comp) == 1 and set(comp[0]) == covered


def _residual_terminal_components(D, tree_arcs, covered):
    sub, vmap, amap = D.induced(sorted(covered))
    excl = {j for j, orig in enumerate(amap) if orig in tree_arcs}
    view = Digraph(sub.n, [a for j, a in enumerate(sub.arcs) if j not in excl])
    sc = strong_components(view)
    terms = [sorted(vmap[v] for v in c) for c in sc.terminal_components()]
    inits = [sorted(vmap[v] for v in c) for c in sc.initial_components()]
    return terms, inits


def _extend_one(D, tree_arcs, covered, x):
    terms, _ = _residual_terminal_components(D, tree_arcs, covered)
    for comp in sorted(terms, key=min):
        into = sorted(
            i for i, (a, b) in enumerate(D.arcs) if a in set(comp) and b == x and i not in tree_arcs
        )
        if len(into) >= 2:
            cand = frozenset(tree_arcs | {into[0]})
            if is_strong(D, cand):
                return _checked_nonsep(D, cand)
    # exhaustive fallback over single attachment arcs, verified
    for i in sorted(set(range(D.m)) - tree_arcs):
        a, b = D.arcs[i]
        if b == x and a in covered and is_strong(D, tree_arcs | {i}):
            return _checked_nonsep(D, frozenset(tree_arcs | {i}))
    raise InvariantViolation("no residual-strong attachment for the last vertex")


def _extend_two(D, tree_arcs, covered, x, y):
    if not D.has_arc(x, y):
        x, y = y, x
    if not D.has_arc(x, y):
        raise InvariantViolation("uncovered pair must carry an arc")
    terms, inits = _residual_terminal_components(D, tree_arcs, covered)
    # reductions: a terminal component with two arcs into a single vertex
    for comp in sorted(terms, key=min):
        cset = set(comp)
        for z in (x, y):
            into = sorted(
                i for i, (a, b) in enumerate(D.arcs) if a in cset and b == z and i not in tree_arcs
            )
            if len(into) >= 2:
                cand = tree_arcs | {into[0]}
                if is_strong(D, cand):
                    return extend_nonsep_tree(D, cand)
    for comp in sorted(inits, key=min):
        cset = set(comp)
        for z in (x, y):
            outof = sorted(
                i for i, (a, b) in enumerate(D.arcs) if a == z and b in cset and i not in tree_arcs
            )
            if len(outof) >= 2:
                cand = tree_arcs | {outof[0]}
                if is_strong(D, cand):
                    return extend_nonsep_tree(D, cand)
    # main pattern: vy from a terminal component, xu' into an initial component
    for comp in sorted(terms, key=min):
        cset = set(comp)
        vy = sorted(i for i, (a, b) in enumerate(D.arcs) if a in cset and b == y and i not in tree_arcs)
        if not vy:
            continue
        for comp2 in sorted(inits, key=min):
            c2 = set(comp2)
            xu = sorted(i for i, (a, b) in enumerate(D.arcs) if a == x and b in c2 and i not in tree_arcs)
            for j in xu:
                cand = frozenset(tree_arcs | {vy[0], j})
                if is_strong(D, cand) and is_spanning_tree_mask(D, cand):
                    return _checked_nonsep(D, cand)
    # exhaustive fallback over attachment pairs, verified
    arcs_x = [i for i, (a, b) in enumerate(D.arcs) if i not in tree_arcs and (b == x and a in covered)]
    arcs_y = [i for i, (a, b) in enumerate(D.arcs) if i not in tree_arcs and (b == y and a in covered)]
    arcs_x += [i for i, (a, b) in enumerate(D.arcs) if i not in tree_arcs and a == x and b in covered]
    arcs_y += [i for i, (a, b) in enumerate(D.arcs) if i not in tree_arcs and a == y and b in covered]
    xy_arcs = [i for i in range(D.m) if i not in tree_arcs and set(D.arcs[i]) == {x, y}]
    pairs = [(i, j) for i in sorted(set(arcs_x)) for j in sorted(set(arcs_y)) if i != j]
    pairs += [(i, j) for i in sorted(set(arcs_x) | set(arcs_y)) for j in xy_arcs if i != j]
    for i, j in pairs:
        cand = frozenset(tree_arcs | {i, j})
        if is_spanning_tree_mask(D, cand) and is_strong(D, cand):
            return _checked_nonsep(D, cand)
    raise InvariantViolation("no residual-strong attachment for the last two vertices")


def _checked_nonsep(D: Digraph, arcs: frozenset) -> SpanningTreeMask:
    tree = SpanningTreeMask(D, frozenset(arcs))
    if not verify_nonsep_tree(D, tree):
        raise InvariantViolation("constructed tree fails verification")
    return tree


# ---------------------------------------------------------------------------
# the general theorem: grow a safe region from a 5-vertex semicomplete seed
# ---------------------------------------------------------------------------


def find_semicomplete_seed(D: Digraph, size: int = SEED_SIZE) -> Optional[list[int]]:
    """A vertex subset of the given size inducing a semicomplete subdigraph."""
    adj = [set() for _ in range(D.n)]
    for t, h in D.arcs:
        adj[t].add(h)
        adj[h].add(t)

    order = sorted(range(D.n), key=lambda v: -len(adj[v]))
    chosen: list[int] = []

    def rec(cands: list[int]) -> Optional[list[int]]:
        if len(chosen) == size:
            return list(chosen)
        if len(chosen) + len(cands) < size:
            return None
        for idx, v in enumerate(cands):
            chosen.append(v)
            nxt = [w for w in cands[idx + 1 :] if w in adj[v]]
            res = rec(nxt)
            if res is not None:
                return res
            chosen.pop()
        return None

    return rec(order)


def nonsep_spanning_tree(D: Digraph, debug_verify: bool = False) -> SpanningTreeMask:
    """Non-separating spanning tree of a 2-arc-strong digraph with
    independence number at most 2 containing a semicomplete subdigraph on 5
    vertices (always present once there are 14 vertices).

    Grows a maximal induced subdigraph with a safe spanning tree from the
    seed, then finishes the at-most-4 leftover vertices by attachment moves.
    Raises NotGuaranteed when no seed exists and the order is below 14.
    """
    from nonsep.connectivity import is_k_arc_strong

    ok, wit = is_alpha_at_most_2(D)
    if not ok:
        raise PreconditionError(f"independence number exceeds 2 (witness {wit})")
    if not is_k_arc_strong(D, 2):
        raise PreconditionError("input is not 2-arc-strong")
    if is_semicomplete(D) and D.n >= 5:
        return _checked_nonsep_from_safe(D, safe_spanning_tree_semicomplete(D))
    seed = find_semicomplete_seed(D)
    if seed is None:
        if D.n >= GUARANTEE_ORDER:
            raise InvariantViolation(
                "a digraph of independence 2 on >= 14 vertices contains a 5-vertex semicomplete subdigraph"
            )
        raise NotGuaranteed(
            "no 5-vertex semicomplete subdigraph; below 14 vertices the construction is not guaranteed"
        )
    region = set(seed)
    sub, vmap, amap = D.induced(seed)
    tree_arcs = { amap[i] for i in safe_spanning_tree_semicomplete(sub).arc_indices }
    while True:
        grew = _absorb_one(D, seed, region, tree_arcs)
        if grew:
            if debug_verify:
                rsub, rvmap, ramap = D.induced(sorted(region))
                inner = {j for j, orig in enumerate(ramap) if orig in tree_arcs}
                if not verify_safe_tree(rsub, SpanningTreeMask(rsub, frozenset(inner))).equal:
                    raise InvariantViolation("absorption broke tree safety")
            continue
        if region == set(range(D.n)):
            return _checked_nonsep(D, frozenset(tree_arcs))
        return _finish_leftover(D, region, tree_arcs, seed)


def _absorb_one(D, seed, region, tree_arcs) -> bool:
    """Absorb one outside vertex with two seed in-neighbours or out-neighbours.

    With in-neighbours y, z of x where y->z is an arc, the tree grows by y->x;
    the out-neighbour rule is the converse.
    """
    for x in sorted(set(range(D.n)) - region):
        ins = [w for w in seed if D.has_arc(w, x)]
        for y in ins:
            for z in ins:
                if y != z and D.has_arc(y, z):
                    tree_arcs.add(D.arc_index(y, x))
                    region.add(x)
                    return True
        outs = [w for w in seed if D.has_arc(x, w)]
        for u in outs:
            for v in outs:
                if u != v and D.has_arc(v, u):
                    tree_arcs.add(D.arc_index(x, u))
                    region.add(x)
                    return True
    return False


def _terminal_arc_into(D, region, tree_arcs, target_set):
    """Arc from a terminal component of the safe region into the target set,
    picked per the covering-pair rule; returns the chosen arc index."""
    sub, vmap, amap = D.induced(sorted(region))
    sc = strong_components(sub)
    for c in sc.terminal_components():
        cset = {vmap[v] for v in c}
        outs = sorted(
            i
            for i, (a, b) in enumerate(D.arcs)
            if a in cset and b in target_set and i not in tree_arcs
        )
        if len(outs) >= 1:
            heads = {D.arcs[i][1] for i in outs}
            if len(heads) >= 2:
                hs = sorted(heads)
                for u, v in [(a, b) for a in hs for b in hs if a != b]:
                    if D.has_arc(u, v):
                        pick = [i for i in outs if D.arcs[i][1] == v]
                        return pick[0]
            return outs[0]
    return None


def _finish_leftover(D, region, tree_arcs, seed) -> SpanningTreeMask:
    leftover = sorted(set(range(D.n)) - region)
    lsub = D.induced(leftover)[0]
    if not is_semicomplete(lsub):
        raise InvariantViolation("stuck leftover must induce a semicomplete subdigraph")
    k = len(leftover)
    if k == 1 or k >= 5:
        extra = frozenset()
        if k >= 5:
            ssub, svmap, samap = D.induced(leftover)
            extra = frozenset(samap[i] for i in safe_spanning_tree_semicomplete(ssub).arc_indices)
        link = _terminal_arc_into(D, region, tree_arcs, set(leftover))
        if link is None:
            raise InvariantViolation("2-arc-strongness guarantees two arcs from a terminal component")
        return _checked_nonsep(D, frozenset(tree_arcs | extra | {link}))
    if k == 2:
        return extend_nonsep_tree(D, frozenset(tree_arcs))
    if k == 3:
        link = _terminal_arc_into(D, region, tree_arcs, set(leftover))
        if link is None:
            raise InvariantViolation("2-arc-strongness guarantees two arcs from a terminal component")
        return extend_nonsep_tree(D, frozenset(tree_arcs | {link}))
    # k == 4: attach one vertex, then hang a second one off it
    link = _terminal_arc_into(D, region, tree_arcs, set(leftover))
    if link is None:
        raise InvariantViolation("2-arc-strongness guarantees two arcs from a terminal component")
    w = D.arcs[link][1]
    inner = set(leftover) - {w}
    outs = sorted(v for v in inner if D.has_arc(w, v))
    cand = frozenset(tree_arcs | {link})
    if len(outs) >= 2:
        for a in outs:
            for b in outs:
                if a != b and D.has_arc(a, b):
                    step = cand | {D.arc_index(w, b)}
                    if is_strong(D, step):
                        return extend_nonsep_tree(D, frozenset(step))
    ins = sorted(v for v in inner if D.has_arc(v, w))
    if len(ins) >= 2:
        for a in ins:
            for b in ins:
                if a != b and D.has_arc(a, b):
                    step = cand | {D.arc_index(a, w)}
                    if is_strong(D, step):
                        return extend_nonsep_tree(D, frozenset(step))
    # verified fallback: try every second attachment next to w
    for v in sorted(inner):
        for get in (lambda: D.arc_indices_between(w, v), lambda: D.arc_indices_between(v, w)):
            for j in get():
                step = cand | {j}
                if is_strong(D, step):
                    try:
                        return extend_nonsep_tree(D, frozenset(step))
                    except InvariantViolation:
                        continue
    raise InvariantViolation("no second attachment for the four-vertex leftover")


def _checked_nonsep_from_safe(D: Digraph, tree: SpanningTreeMask) -> SpanningTreeMask:
    if not verify_nonsep_tree(D, tree):
        raise InvariantViolation("safe tree of a strong digraph must be non-separating")
    return tree


# ---------------------------------------------------------------------------
# hamiltonian oriented digraphs on at least 9 vertices
# ---------------------------------------------------------------------------


def nonsep_tree_hamiltonian_oriented(D: Digraph, cycle: list[int], debug_verify: bool = False) -> SpanningTreeMask:
    """Non-separating spanning tree of a hamiltonian oriented digraph with
    independence number 2 and arc-connectivity 2 on at least 9 vertices.

    The component analysis of the underlying graph minus the cycle drives a
    set of pattern constructions; anything that falls outside the patterns is
    resolved by exhaustive search, and every returned tree is verified.
    """
    from nonsep.connectivity import is_k_arc_strong

    if not is_oriented(D):
        raise PreconditionError("input must be oriented")
    if D.n < 9:
        raise PreconditionError("need at least 9 vertices")
    ok, _ = is_alpha_at_most_2(D)
    if not ok:
        raise PreconditionError("independence number exceeds 2")
    if not is_k_arc_strong(D, 2):
        raise PreconditionError("input is not 2-arc-strong")
    if sorted(cycle) != list(range(D.n)) or not all(
        D.has_arc(u, v) for u, v in zip(cycle, cycle[1:] + cycle[:1])
    ):
        raise PreconditionError("the given cycle is not hamiltonian in the input")
    c_arcs = set(cycle_arc_indices(D, cycle))
    allowed = [i for i in range(D.m) if i not in c_arcs]
    rest = UndirectedGraph.of(D.n, [tuple(sorted(D.arcs[i])) for i in allowed])
    comps = rest.components()
    if len(comps) == 1:
        tree = _tree_from_allowed(D, allowed)
        if tree is None:
            raise InvariantViolation("connected off-cycle graph must contain a spanning tree")
        return _checked_nonsep(D, tree)
    if find_semicomplete_seed(D) is not None:
        return nonsep_spanning_tree(D, debug_verify=debug_verify)
    comps.sort(key=len, reverse=True)
    if len(comps) == 2 and len(comps[1]) in (3, 4):
        tree = _two_component_patterns(D, cycle, comps[0], comps[1])
        if tree is not None:
            return tree
    found = search_nonsep_tree(D)
    if found is None:
        raise InvariantViolation("theorem guarantees a non-separating tree here")
    return found


def _adj_arc(D: Digraph, u: int, v: int) -> int:
    """The arc realizing the adjacency between u and v (oriented hosts)."""
    a = D.arc_indices_between(u, v)
    if a:
        return min(a)
    a = D.arc_indices_between(v, u)
    if not a:
        raise InvariantViolation(f"vertices {u},{v} are not adjacent")
    return min(a)


def _two_component_patterns(D, cycle, x1, x2) -> Optional[SpanningTreeMask]:
    try:
        if len(x2) == 4:
            internal = [
                (u, v)
                for (u, v) in zip(cycle, cycle[1:] + cycle[:1])
                if u in set(x2) and v in set(x2)
            ]
            if not internal:
                return _pattern_x2_size4_no_inner(D, cycle, set(x1), set(x2))
            if len(internal) == 1:
                return _pattern_x2_size4_one_inner(D, cycle, set(x1), set(x2))
            return None
        return _pattern_x2_size3(D, cycle, set(x1), set(x2))
    except (InvariantViolation, KeyError):
        return None


def _rot(cycle, start_idx):
    return cycle[start_idx:] + cycle[:start_idx]


def _pattern_x2_size4_no_inner(D, cycle, x1, x2) -> Optional[SpanningTreeMask]:
    """Cycle pattern X1,X1,X2,X1,X2,X1,X2,X1,X2 with the non-adjacent pair of
    the big side sitting at positions 4 and 8."""
    n = len(cycle)
    if n != 9:
        return None
    start = None
    for i in range(n):
        if cycle[i] in x1 and cycle[(i + 1) % n] in x1:
            start = i
            break
    if start is None:
        return None
    lab = [None] + _rot(cycle, start)  # lab[1..9]
    if {lab[3], lab[5], lab[7], lab[9]} != x2:
        return None
    if D.adjacent(lab[4], lab[8]):
        return None
    chains = {
        (3, 5, 4): [4, 3, 9, 7, 5],
        (5, 7, 6): [6, 5, 3, 9, 7],
        (7, 9, 8): [8, 7, 5, 3, 9],
    }
    for (a, b, skip), chain in chains.items():
        if not D.has_arc(lab[a], lab[b]):
            continue
        w = _lowest_neighbor(D, lab[skip], x1, incoming=True)
        if w is None:
            return None
        tree_edges = [(lab[chain[i]], lab[chain[i + 1]]) for i in range(4)]
        banned = {tuple(sorted((lab[1], lab[2]))), tuple(sorted((w, lab[skip])))}
        return _assemble_pattern_tree(D, x1, tree_edges, banned)
    # all three backward: v9v7, v7v5, v5v3 present
    w = _lowest_neighbor(D, lab[2], x1, incoming=False)
    if w is None:
        return None
    tree_edges = [(lab[5], lab[9]), (lab[9], lab[3]), (lab[3], lab[7]), (lab[2], lab[3])]
    banned = {tuple(sorted((lab[1], lab[2]))), tuple(sorted((lab[2], w)))}
    return _assemble_pattern_tree(D, x1, tree_edges, banned)


def _pattern_x2_size4_one_inner(D, cycle, x1, x2) -> Optional[SpanningTreeMask]:
    n = len(cycle)
    if n != 9:
        return None
    inner = None
    for i in range(n):
        if cycle[i] in x2 and cycle[(i + 1) % n] in x2:
            inner = i
            break
    if inner is None:
        return None
    lab = [None] + _rot(cycle, (inner - 5) % n)  # inner arc at positions 6->7
    if {lab[4], lab[6], lab[7], lab[9]} != x2:
        return None
    if D.adjacent(lab[5], lab[8]):
        return None
    if D.has_arc(lab[7], lab[9]):
        return _one_inner_forward(D, lab, x1)
    if D.has_arc(lab[4], lab[6]):
        # mirror: same construction on the converse with reflected labels
        Dc = D.converse()
        labc = [None] + [lab[((13 - i - 1) % 9) + 1] for i in range(1, 10)]
        x1c = {labc[i] for i in (1, 2, 3, 5, 8)}
        tree = _one_inner_forward(Dc, labc, x1c)
        if tree is None:
            return None
        return _checked_nonsep(D, tree.arc_indices)
    # both chords backward: the fixed split
    p = None
    for j in (1, 2, 3):
        if D.has_arc(lab[j], lab[5]):
            p = j
            break
    if p is None:
        return None
    q = min(j for j in (1, 2, 3) if j != p)
    tree_edges = [
        (lab[4], lab[5]),
        (lab[4], lab[6]),
        (lab[6], lab[9]),
        (lab[7], lab[9]),
        (lab[8], lab[1]),
        (lab[8], lab[2]),
        (lab[8], lab[3]),
        (lab[5], lab[q]),
    ]
    arcs = frozenset(_adj_arc(D, u, v) for u, v in tree_edges)
    return _checked_nonsep(D, arcs)


def _one_inner_forward(D, lab, x1) -> Optional[SpanningTreeMask]:
    j = None
    for cand in (1, 2, 3):
        if D.has_arc(lab[8], lab[cand]):
            j = cand
            break
    if j is None:
        return None
    jp = min(c for c in (1, 2, 3) if c != j)
    tree_edges = [
        (lab[4], lab[6]),
        (lab[4], lab[7]),
        (lab[4], lab[9]),
        (lab[9], lab[8]),
        (lab[8], lab[jp]),
        (lab[5], lab[1]),
        (lab[5], lab[2]),
        (lab[5], lab[3]),
    ]
    arcs = frozenset(_adj_arc(D, u, v) for u, v in tree_edges)
    return _checked_nonsep(D, arcs)


def _pattern_x2_size3(D, cycle, x1, x2) -> Optional[SpanningTreeMask]:
    n = len(cycle)
    if n != 9 or len(x2) != 3:
        return None
    start = None
    for i in range(n):
        if all(cycle[(i + k) % n] in x1 for k in range(4)) and cycle[(i - 1) % n] in x2:
            start = i
            break
    if start is None:
        return None
    lab = [None] + _rot(cycle, start)
    if {lab[5], lab[7], lab[9]} != x2:
        return None
    if D.adjacent(lab[4], lab[8]) or D.adjacent(lab[1], lab[6]):
        return None
    if D.has_arc(lab[7], lab[9]):
        w = _lowest_neighbor(D, lab[8], x1, incoming=True)
        if w is None:
            return None
        tree_edges = [(lab[7], lab[8]), (lab[5], lab[7]), (lab[5], lab[9])]
        banned = {
            tuple(sorted((lab[1], lab[2]))),
            tuple(sorted((lab[2], lab[3]))),
            tuple(sorted((lab[3], lab[4]))),
            tuple(sorted((w, lab[8]))),
        }
        return _assemble_pattern_tree(D, x1, tree_edges, banned)
    if D.has_arc(lab[7], lab[5]):
        w = _lowest_neighbor(D, lab[8], x1, incoming=False)
        wp = _lowest_neighbor(D, lab[6], x1, incoming=True)
        if w is None or wp is None:
            return None
        tree_edges = [(lab[5], lab[6]), (lab[8], lab[9]), (lab[9], lab[7])]
        banned = {
            tuple(sorted((lab[1], lab[2]))),
            tuple(sorted((lab[2], lab[3]))),
            tuple(sorted((lab[3], lab[4]))),
            tuple(sorted((lab[8], w))),
            tuple(sorted((wp, lab[6]))),
        }
        return _assemble_pattern_tree(D, x1, tree_edges, banned)
    return None


def _lowest_neighbor(D, v, inside, incoming: bool) -> Optional[int]:
    if incoming:
        cands = sorted(w for w in inside if w != v and D.has_arc(w, v))
    else:
        cands = sorted(w for w in inside if w != v and D.has_arc(v, w))
    return cands[0] if cands else None


def _assemble_pattern_tree(D, x1, tree_edges, banned_edges) -> Optional[SpanningTreeMask]:
    """Spanning tree = given cross/spare edges + a spanning tree of the big
    side avoiding the banned edges; verified before returning."""
    x1 = sorted(x1)
    pos = {v: i for i, v in enumerate(x1)}
    sub_edges = []
    for idx, u in enumerate(x1):
        for v in x1[idx + 1 :]:
            if D.adjacent(u, v) and tuple(sorted((u, v))) not in banned_edges:
                sub_edges.append((pos[u], pos[v]))
    g = UndirectedGraph.of(len(x1), sub_edges)
    inner = g.spanning_tree_edges()
    if inner is None:
        return None
    arcs = set()
    for u, v in tree_edges:
        arcs.add(_adj_arc(D, u, v))
    for a, b in inner:
        arcs.add(_adj_arc(D, x1[a], x1[b]))
    tree = SpanningTreeMask(D, frozenset(arcs))
    if not verify_nonsep_tree(D, tree):
        return None
    return tree
