"""Brute-force oracles and exhaustive enumeration helpers.

The oracles are exact on small instances and define ground truth for the
constructive modules.  Every oracle returns its verdict together with an
ImpossibilityTranscript recording the enumeration it performed, so verdicts
can be re-derived by re-running with the same bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from nonsep.connectivity import is_strong, reach_mask
from nonsep.digraph import Digraph, underlying_graph
from nonsep.errors import BoundExceeded
from nonsep.gallery import No2ColFamily

DEFAULT_BRANCHING_BOUND = 12
DEFAULT_TREE_BOUND = 12
DEFAULT_HAMPATH_BOUND = 14


@dataclass
class ImpossibilityTranscript:
    """Result of an exhaustive search, re-derivable from the same bounds."""

    claim: str
    verdict: bool  # True = the impossibility claim holds
    search_space: int = 0
    nodes_expanded: int = 0
    candidates_checked: int = 0
    witnesses_found: int = 0
    witness: Optional[object] = None
    details: dict = field(default_factory=dict)

    def summary(self) -> str:
        head = f"claim={self.claim} verdict={'CONFIRMED' if self.verdict else 'REFUTED'}"
        stats = (
            f"space={self.search_space} nodes={self.nodes_expanded} "
            f"checked={self.candidates_checked} witnesses={self.witnesses_found}"
        )
        out = f"{head} ({stats})"
        if self.witness is not None:
            out += f" witness={self.witness}"
        for k, v in self.details.items():
            out += f" {k}={v}"
        return out


# ---------------------------------------------------------------------------
# enumeration helpers
# ---------------------------------------------------------------------------


def iter_hamiltonian_cycles(D: Digraph) -> Iterator[list[int]]:
    """All directed hamiltonian cycles, each exactly once, as vertex lists
    starting at vertex 0.

    Backtracking with two reachability prunes (all unvisited vertices must be
    reachable forward from the current vertex and must reach the start
    backward, through unvisited vertices) and fewest-onward-moves ordering.
    """
    n = D.n
    if n < 2:
        return
    out_masks = D.out_masks()
    in_masks = D.in_masks()
    out_nbrs = [sorted(set(D.out_neighbors(v))) for v in range(n)]
    start = 0
    full = (1 << n) - 1
    path = [start]
    used = 1 << start

    def _closure(masks, seed, allowed):
        seen = seed
        frontier = seed
        while frontier:
            nxt = 0
            m = frontier
            while m:
                b = m & -m
                nxt |= masks[b.bit_length() - 1]
                m ^= b
            frontier = nxt & allowed & ~seen
            seen |= frontier
        return seen

    def extend() -> Iterator[list[int]]:
        nonlocal used
        v = path[-1]
        if len(path) == n:
            if out_masks[v] >> start & 1:
                yield list(path)
            return
        unvisited = full & ~used
        if unvisited & ~_closure(out_masks, 1 << v, unvisited):
            return
        if unvisited & ~_closure(in_masks, 1 << start, unvisited):
            return
        cands = [w for w in out_nbrs[v] if unvisited >> w & 1]
        cands.sort(key=lambda w: ((out_masks[w] & unvisited).bit_count(), w))
        for w in cands:
            used |= 1 << w
            path.append(w)
            yield from extend()
            path.pop()
            used &= ~(1 << w)

    yield from extend()


def iter_hamiltonian_paths(D: Digraph, start: Optional[int] = None) -> Iterator[list[int]]:
    """All directed hamiltonian paths (optionally with a fixed start vertex)."""
    n = D.n
    out = [sorted(set(D.out_neighbors(v))) for v in range(n)]
    path: list[int] = []
    used: set[int] = set()

    def extend() -> Iterator[list[int]]:
        if len(path) == n:
            yield list(path)
            return
        v = path[-1]
        for w in out[v]:
            if w not in used:
                used.add(w)
                path.append(w)
                yield from extend()
                path.pop()
                used.discard(w)

    starts = [start] if start is not None else list(range(n))
    for s in starts:
        path = [s]
        used = {s}
        yield from extend()


def path_arc_indices(D: Digraph, path: list[int], cyclic: bool = False) -> list[int]:
    pairs = list(zip(path, path[1:]))
    if cyclic:
        pairs.append((path[-1], path[0]))
    return [D.arc_index(u, v) for u, v in pairs]


def iter_spanning_tree_edge_sets(g_edges: list[tuple[int, int]], n: int) -> Iterator[list[tuple[int, int]]]:
    """All spanning trees of the graph (n, g_edges), by include/skip backtracking."""
    if n == 0:
        yield []
        return
    edges = sorted(g_edges)
    m = len(edges)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen: list[tuple[int, int]] = []

    def connects(idx: int) -> bool:
        # can the remaining edges still join all current components?
        comps = {find(v) for v in range(n)}
        if len(comps) == 1:
            return True
        avail = {}
        for u, v in edges[idx:]:
            ru, rv = find(u), find(v)
            if ru != rv:
                avail.setdefault(frozenset((ru, rv)), True)
        # union the available pairs
        p2 = {c: c for c in comps}

        def f2(x):
            while p2[x] != x:
                p2[x] = p2[p2[x]]
                x = p2[x]
            return x

        for pair in avail:
            a, b = tuple(pair)
            ra, rb = f2(a), f2(b)
            if ra != rb:
                p2[ra] = rb
        return len({f2(c) for c in comps}) == 1

    def rec(idx: int, count: int) -> Iterator[list[tuple[int, int]]]:
        if count == n - 1:
            yield list(chosen)
            return
        if idx == m or not connects(idx):
            return
        u, v = edges[idx]
        ru, rv = find(u), find(v)
        if ru != rv:
            saved = list(parent)
            parent[ru] = rv
            chosen.append((u, v))
            yield from rec(idx + 1, count + 1)
            chosen.pop()
            parent[:] = saved
        yield from rec(idx + 1, count)

    yield from rec(0, 0)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


def oracle_nonsep_branching(
    D: Digraph,
    root: Optional[int] = None,
    bound: int = DEFAULT_BRANCHING_BOUND,
    find_all: bool = False,
) -> tuple[bool, ImpossibilityTranscript]:
    """Backtracking over parent assignments with residual-strongness pruning.

    Returns (exists, transcript); transcript.verdict is the impossibility
    claim ("no non-separating branching exists").
    """
    if D.n > bound:
        raise BoundExceeded(f"n={D.n} exceeds oracle bound {bound}")
    t = ImpossibilityTranscript(claim="no-nonsep-branching", verdict=True)
    roots = [root] if root is not None else list(range(D.n))
    if not is_strong(D):
        # a non-separating subgraph requires a strong host
        t.details["host_not_strong"] = True
        return False, t
    found = []

    in_arcs = [sorted(D.in_arc_indices(v)) for v in range(D.n)]

    def search(r: int):
        others = [v for v in range(D.n) if v != r]
        parent: dict[int, int] = {}
        removed: set[int] = set()

        def creates_cycle(v: int, u: int) -> bool:
            # walk up tentative parents from u
            w = u
            while w in parent:
                w = D.arcs[parent[w]][0]
                if w == v:
                    return True
            return w == v

        def rec(i: int) -> bool:
            t.nodes_expanded += 1
            if i == len(others):
                t.candidates_checked += 1
                b_arcs = frozenset(parent.values())
                if is_strong(D, b_arcs):
                    found.append((r, dict(parent)))
                    return True
                return False
            v = others[i]
            ok = False
            for ai in in_arcs[v]:
                u = D.arcs[ai][0]
                if creates_cycle(v, u):
                    continue
                parent[v] = ai
                removed.add(ai)
                if is_strong(D, removed):
                    if rec(i + 1):
                        ok = True
                        if not find_all:
                            removed.discard(ai)
                            del parent[v]
                            return True
                removed.discard(ai)
                del parent[v]
            return ok

        return rec(0)

    exists = False
    for r in roots:
        t.search_space += max(
            1, _product(len(in_arcs[v]) for v in range(D.n) if v != r)
        )
        if search(r):
            exists = True
            if not find_all:
                break
    t.witnesses_found = len(found)
    if found:
        t.witness = found[0]
    t.verdict = not exists
    t.details["roots_tested"] = roots
    return exists, t


def oracle_nonsep_out_tree(
    D: Digraph,
    cover: Iterable[int],
    root: int,
    bound: int = DEFAULT_BRANCHING_BOUND,
) -> tuple[bool, ImpossibilityTranscript]:
    """Does an out-tree rooted at `root` spanning exactly `cover` leave D strong?"""
    if D.n > bound:
        raise BoundExceeded(f"n={D.n} exceeds oracle bound {bound}")
    cover = sorted(set(cover))
    t = ImpossibilityTranscript(claim="no-nonsep-out-tree", verdict=True)
    if root not in cover:
        return False, t
    others = [v for v in cover if v != root]
    in_arcs = {
        v: [i for i in D.in_arc_indices(v) if D.arcs[i][0] in set(cover)] for v in others
    }
    parent: dict[int, int] = {}
    removed: set[int] = set()
    hit = []

    def creates_cycle(v: int, u: int) -> bool:
        w = u
        while w in parent:
            w = D.arcs[parent[w]][0]
            if w == v:
                return True
        return w == v

    def rec(i: int) -> bool:
        t.nodes_expanded += 1
        if i == len(others):
            t.candidates_checked += 1
            if is_strong(D, frozenset(parent.values())):
                hit.append(dict(parent))
                return True
            return False
        v = others[i]
        for ai in in_arcs[v]:
            u = D.arcs[ai][0]
            if creates_cycle(v, u):
                continue
            parent[v] = ai
            removed.add(ai)
            if is_strong(D, removed) and rec(i + 1):
                removed.discard(ai)
                del parent[v]
                return True
            removed.discard(ai)
            del parent[v]
        return False

    exists = rec(0)
    t.search_space = _product(len(in_arcs[v]) for v in others)
    t.witnesses_found = len(hit)
    t.witness = hit[0] if hit else None
    t.verdict = not exists
    return exists, t


def oracle_nonsep_tree(
    D: Digraph, bound: int = DEFAULT_TREE_BOUND
) -> tuple[bool, ImpossibilityTranscript]:
    """Spanning-tree enumeration over UG(D) with strongness check of the rest.

    A tree uses one arc per adjacency; for 2-cycle pairs both direction
    choices are tried.
    """
    if D.n > bound:
        raise BoundExceeded(f"n={D.n} exceeds oracle bound {bound}")
    t = ImpossibilityTranscript(claim="no-nonsep-tree", verdict=True)
    if not is_strong(D):
        t.details["host_not_strong"] = True
        return False, t
    ug = underlying_graph(D)
    edges = sorted(ug.edges)
    choice: dict[tuple[int, int], list[frozenset]] = {}
    for u, v in edges:
        opts = []
        fwd = D.arc_indices_between(u, v)
        bwd = D.arc_indices_between(v, u)
        if fwd:
            opts.append(frozenset([min(fwd)]))
        if bwd:
            opts.append(frozenset([min(bwd)]))
        choice[(u, v)] = opts
    exists = False
    witness = None
    for tree in iter_spanning_tree_edge_sets(edges, D.n):
        t.candidates_checked += 1
        combos: list[frozenset] = [frozenset()]
        for e in tree:
            combos = [c | o for c in combos for o in choice[e]]
        for arcs in combos:
            t.nodes_expanded += 1
            if is_strong(D, arcs):
                exists = True
                witness = sorted(arcs)
                break
        if exists:
            break
    t.search_space = t.candidates_checked
    t.witnesses_found = 1 if exists else 0
    t.witness = witness
    t.verdict = not exists
    return exists, t


def oracle_hampaths_separating(
    D: Digraph,
    start: Optional[int] = None,
    bound: int = DEFAULT_HAMPATH_BOUND,
    reach_pair: Optional[tuple[int, int]] = None,
) -> tuple[bool, ImpossibilityTranscript]:
    """Is every hamiltonian path (with optional fixed start) separating?

    When `reach_pair`=(src, dst) is given, also counts paths after whose
    removal dst stays reachable from src.
    """
    if D.n > bound:
        raise BoundExceeded(f"n={D.n} exceeds oracle bound {bound}")
    t = ImpossibilityTranscript(claim="all-hampaths-separating", verdict=True)
    n_paths = 0
    non_sep = 0
    reach_ok = 0
    witness = None
    for path in iter_hamiltonian_paths(D, start):
        n_paths += 1
        arcs = frozenset(path_arc_indices(D, path))
        if is_strong(D, arcs):
            non_sep += 1
            if witness is None:
                witness = list(path)
        if reach_pair is not None:
            src, dst = reach_pair
            if reach_mask(D.out_masks(arcs), src) >> dst & 1:
                reach_ok += 1
    t.candidates_checked = n_paths
    t.witnesses_found = non_sep
    t.witness = witness
    t.verdict = non_sep == 0
    t.details["hamiltonian_paths"] = n_paths
    if reach_pair is not None:
        t.details["reach_pair"] = reach_pair
        t.details["paths_keeping_reachability"] = reach_ok
    return non_sep == 0, t


def oracle_two_strong_partition_blocks(
    family: No2ColFamily,
) -> tuple[bool, ImpossibilityTranscript]:
    """Necessary-condition check at block level: contract each tournament block
    and 2-colour the six linking arcs, with the two full bundles available to
    both colours.  Impossible iff no colouring makes both contractions strong.
    """
    t = ImpossibilityTranscript(claim="no-two-strong-partition", verdict=True)
    special = list(family.SPECIAL)
    base = list(family.BUNDLES) + list(family.extra_block_arcs)
    k = len(special)
    t.search_space = 1 << k
    feasible = []
    for mask in range(1 << k):
        t.nodes_expanded += 1
        side1 = base + [special[i] for i in range(k) if mask >> i & 1]
        side2 = base + [special[i] for i in range(k) if not mask >> i & 1]
        t.candidates_checked += 1
        if is_strong(Digraph(4, side1)) and is_strong(Digraph(4, side2)):
            feasible.append(mask)
    t.witnesses_found = len(feasible)
    t.witness = feasible[0] if feasible else None
    t.verdict = not feasible
    t.details["feasible_colorings"] = len(feasible)
    return t.verdict, t


def _product(xs) -> int:
    p = 1
    for x in xs:
        p *= max(1, x)
    return p
