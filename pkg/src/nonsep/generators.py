"""Seeded random instance generators for the property suites.

All generators take an explicit `random.Random` (or a seed) and use rejection
sampling against exactly the preconditions the consuming operation states.
Independence number at most 2 is obtained structurally: every digraph built
here has a vertex split into two semicomplete parts.
"""

from __future__ import annotations

import random
from typing import Optional

from nonsep.connectivity import is_k_arc_strong, is_strong
from nonsep.digraph import (
    Digraph,
    UndirectedGraph,
    is_alpha_at_most_2,
    is_oriented,
    is_semicomplete,
)
from nonsep.gallery import rotational_tournament


def _rng(seed_or_rng) -> random.Random:
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(seed_or_rng)


def random_tournament(n: int, rng) -> Digraph:
    rng = _rng(rng)
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return Digraph(n, arcs)


def random_semicomplete(n: int, rng, two_cycle_prob: float = 0.35) -> Digraph:
    rng = _rng(rng)
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < two_cycle_prob:
                arcs += [(u, v), (v, u)]
            else:
                arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return Digraph(n, arcs)


def random_strong_tournament(n: int, rng) -> Digraph:
    rng = _rng(rng)
    while True:
        D = random_tournament(n, rng)
        if is_strong(D):
            return D


def random_strong_semicomplete(n: int, rng, two_cycle_prob: float = 0.35) -> Digraph:
    rng = _rng(rng)
    while True:
        D = random_semicomplete(n, rng, two_cycle_prob)
        if is_strong(D):
            return D


def two_part_digraph(
    part1: Digraph,
    part2: Digraph,
    cross_arcs: list[tuple[int, int]],
) -> Digraph:
    """Disjoint union of two digraphs plus explicit cross arcs (indices of the
    second part are shifted by part1.n)."""
    n1 = part1.n
    arcs = list(part1.arcs) + [(t + n1, h + n1) for t, h in part2.arcs]
    arcs += cross_arcs
    return Digraph(n1 + part2.n, arcs)


def gen_main_instance(regime: str, rng, n_range=(12, 24)) -> Digraph:
    """Instance for the general branching pipeline.

    regime "general": 2-cycles allowed, minimum in-degree 5;
    regime "oriented": no 2-cycles, minimum in-degree 3.
    Mixes dense co-bipartite shapes with sparse-bridge shapes so that both the
    two-cliques case and the skeleton-removal case are exercised.
    """
    rng = _rng(rng)
    while True:
        shape = rng.choice(("dense", "bridge", "funnel", "planted"))
        if shape == "planted":
            D, _ = gen_planted_bridge_instance(rng, oriented=regime == "oriented", n_range=n_range)
        elif regime == "oriented":
            D = _gen_oriented_instance(rng, shape, n_range)
        else:
            D = _gen_general_instance(rng, shape, n_range)
        want_min_in = 3 if regime == "oriented" else 5
        if D is None:
            continue
        if D.min_in_degree() < want_min_in:
            continue
        if not is_k_arc_strong(D, 2):
            continue
        ok, _ = is_alpha_at_most_2(D)
        if not ok:
            continue
        if regime == "oriented" and not is_oriented(D):
            continue
        return D


def _split_sizes(rng, n_range, min_part):
    n = rng.randrange(max(n_range[0], 2 * min_part), n_range[1] + 1)
    n1 = rng.randrange(min_part, n - min_part + 1)
    return n1, n - n1


def _gen_oriented_instance(rng, shape, n_range) -> Optional[Digraph]:
    n1, n2 = _split_sizes(rng, n_range, 7)
    if n1 % 2 == 0:
        n1 += 1
    if n2 % 2 == 0:
        n2 -= 1
    if n2 < 7 or n1 + n2 > n_range[1]:
        return None
    t1 = _shuffled(rotational_tournament(n1), rng)
    t2 = _shuffled(rotational_tournament(n2), rng)
    cross = []
    if shape == "bridge":
        k = rng.randrange(2, 4)
        tails1 = rng.sample(range(n1), k)
        heads2 = rng.sample(range(n2), k)
        tails2 = rng.sample(range(n2), k)
        heads1 = rng.sample(range(n1), k)
        seen = set()
        for a, b in zip(tails1, heads2):
            cross.append((a, n1 + b))
            seen.add((a, b))
        for b, a in zip(tails2, heads1):
            if (a, b) not in seen:
                cross.append((n1 + b, a))
    else:
        p = 0.25 if shape == "dense" else 0.1
        for a in range(n1):
            for b in range(n2):
                r = rng.random()
                if r < p / 2:
                    cross.append((a, n1 + b))
                elif r < p:
                    cross.append((n1 + b, a))
        if shape == "funnel":
            b0 = rng.randrange(n2)
            cross = [c for c in cross if not (c[0] >= n1 and c[0] != n1 + b0)]
    return two_part_digraph(t1, t2, cross)


def _gen_general_instance(rng, shape, n_range) -> Optional[Digraph]:
    n1, n2 = _split_sizes(rng, n_range, 6)
    p1 = random_strong_semicomplete(n1, rng, two_cycle_prob=0.5)
    p2 = random_strong_semicomplete(n2, rng, two_cycle_prob=0.5)
    cross = []
    dens = {"dense": 0.35, "bridge": 0.08, "funnel": 0.2}[shape]
    for a in range(n1):
        for b in range(n2):
            r = rng.random()
            if r < dens / 3:
                cross.append((a, n1 + b))
            elif r < 2 * dens / 3:
                cross.append((n1 + b, a))
            elif r < dens:
                cross += [(a, n1 + b), (n1 + b, a)]
    D = two_part_digraph(p1, p2, cross)
    return _boost_in_degrees(D, 5, n1, rng)


def _boost_in_degrees(D: Digraph, target: int, n1: int, rng) -> Digraph:
    """Add reverse arcs inside the parts until every in-degree reaches target
    (keeps the two-part structure, so independence stays at most 2)."""
    arcs = list(D.arcs)
    for v in range(D.n):
        part = range(n1) if v < n1 else range(n1, D.n)
        missing = target - sum(1 for t, h in arcs if h == v)
        if missing <= 0:
            continue
        cands = [w for w in part if w != v and (w, v) not in set(arcs)]
        rng.shuffle(cands)
        for w in cands[:missing]:
            arcs.append((w, v))
    return Digraph(D.n, arcs)


def _shuffled(D: Digraph, rng) -> Digraph:
    perm = list(range(D.n))
    rng.shuffle(perm)
    return Digraph(D.n, [(perm[t], perm[h]) for t, h in D.arcs])


def gen_planted_bridge_instance(rng, oriented=True, n_range=(14, 24)):
    """Two dense parts joined by exactly four cross arcs, all lying on a known
    hamiltonian cycle that visits each part in two segments.

    Removing that cycle disconnects the parts entirely, which makes the
    two-initial-components route of the branching pipeline structurally
    unavoidable when the cycle is used as the spanning skeleton.
    Returns (digraph, hamiltonian cycle as a vertex list).
    """
    rng = _rng(rng)
    while True:
        n1, n2 = _split_sizes(rng, n_range, 7)
        i = rng.randrange(2, n1 - 1)
        j = rng.randrange(2, n2 - 1)
        cycle = (
            list(range(0, i))
            + list(range(n1, n1 + j))
            + list(range(i, n1))
            + list(range(n1 + j, n1 + n2))
        )
        cycle_arcs = set(zip(cycle, cycle[1:] + cycle[:1]))
        arcs = set(cycle_arcs)
        for part in (range(0, n1), range(n1, n1 + n2)):
            for u in part:
                for v in part:
                    if u >= v or (u, v) in arcs or (v, u) in arcs:
                        continue
                    if not oriented and rng.random() < 0.4:
                        arcs.add((u, v))
                        arcs.add((v, u))
                    else:
                        arcs.add((u, v) if rng.random() < 0.5 else (v, u))
        D = Digraph(n1 + n2, sorted(arcs))
        if not oriented:
            D = _boost_in_degrees(D, 5, n1, rng)
        need = 3 if oriented else 5
        if D.min_in_degree() < need:
            continue
        if not is_k_arc_strong(D, 2):
            continue
        return D, cycle


def gen_two_cliques_instance(rng, n_range=(12, 22), oriented=False):
    """Co-bipartite digraph with hidden non-adjacent witnesses u1, u2 and all
    cross arcs avoiding them; returns (digraph, part1, part2, u1, u2)."""
    rng = _rng(rng)
    while True:
        min_part = 7 if oriented else 6
        n1, n2 = _split_sizes(rng, n_range, min_part)
        if oriented:
            n1 += 1 - n1 % 2
            n2 -= 1 - n2 % 2
            if n2 < 7:
                continue
            p1 = _shuffled(rotational_tournament(n1), rng)
            p2 = _shuffled(rotational_tournament(n2), rng)
        else:
            p1 = random_strong_semicomplete(n1, rng, 0.5)
            p2 = random_strong_semicomplete(n2, rng, 0.5)
        cross = []
        for a in range(1, n1):
            for b in range(1, n2):
                r = rng.random()
                if r < 0.15:
                    cross.append((a, n1 + b))
                elif r < 0.3:
                    cross.append((n1 + b, a))
        D = two_part_digraph(p1, p2, cross)
        if not oriented:
            D = _boost_in_degrees(D, 5, n1, rng)
        need = 3 if oriented else 5
        if D.min_in_degree() < need or not is_k_arc_strong(D, 2):
            continue
        part1 = frozenset(range(n1))
        part2 = frozenset(range(n1, n1 + n2))
        return D, part1, part2, 0, n1


def gen_tree_instance(rng, n: int = 14) -> Digraph:
    """2-arc-strong digraph with independence number at most 2 on n vertices."""
    rng = _rng(rng)
    while True:
        n1 = rng.randrange(5, n - 4)
        n2 = n - n1
        p1 = random_strong_semicomplete(n1, rng, 0.3)
        p2 = random_strong_semicomplete(n2, rng, 0.3)
        cross = []
        for a in range(n1):
            for b in range(n2):
                r = rng.random()
                if r < 0.12:
                    cross.append((a, n1 + b))
                elif r < 0.24:
                    cross.append((n1 + b, a))
        D = two_part_digraph(p1, p2, cross)
        if is_k_arc_strong(D, 2):
            return D


def gen_hamiltonian_oriented_instance(rng, n_range=(9, 12)):
    """Hamiltonian oriented digraph with alpha = 2 and arc-connectivity >= 2;
    returns (digraph, hamiltonian cycle as a vertex list)."""
    rng = _rng(rng)
    while True:
        n = rng.randrange(n_range[0], n_range[1] + 1)
        cut = rng.randrange(3, n - 2)
        members = list(range(n))
        rng.shuffle(members)
        part = {v: (0 if i < cut else 1) for i, v in enumerate(members)}
        cycle = list(range(n))
        cycle_pairs = {(i, (i + 1) % n) for i in range(n)}
        arcs = set(cycle_pairs)
        non_adj = 0
        for u in range(n):
            for v in range(u + 1, n):
                if (u, v) in arcs or (v, u) in arcs:
                    continue
                if part[u] == part[v]:
                    arcs.add((u, v) if rng.random() < 0.5 else (v, u))
                else:
                    r = rng.random()
                    if r < 0.3:
                        arcs.add((u, v) if rng.random() < 0.5 else (v, u))
                    else:
                        non_adj += 1
        if non_adj == 0:
            continue
        D = Digraph(n, sorted(arcs))
        if not is_k_arc_strong(D, 2):
            continue
        ok, _ = is_alpha_at_most_2(D)
        if not ok or is_semicomplete(D):
            continue
        return D, cycle


def gen_alpha2_graph(rng, n_range=(8, 16), min_degree: int = 4) -> UndirectedGraph:
    """2-edge-connected graph with independence number at most 2 and minimum
    degree >= min_degree: the complement of a random bipartite graph."""
    rng = _rng(rng)
    while True:
        n = rng.randrange(n_range[0], n_range[1] + 1)
        cut = rng.randrange(2, n - 1)
        members = list(range(n))
        rng.shuffle(members)
        side = {v: (0 if i < cut else 1) for i, v in enumerate(members)}
        removed = set()
        for u in range(n):
            for v in range(u + 1, n):
                if side[u] != side[v] and rng.random() < 0.5:
                    removed.add((u, v))
        edges = {
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if (u, v) not in removed
        }
        G = UndirectedGraph.of(n, edges)
        if G.min_degree() < min_degree:
            continue
        if not G.is_two_edge_connected():
            continue
        return G


def random_cobipartite_small(rng, n_range=(8, 12), oriented_prob=0.5) -> Digraph:
    """Small alpha<=2 digraphs for conjecture searches (within oracle bounds)."""
    rng = _rng(rng)
    n1, n2 = _split_sizes(rng, n_range, 3)
    oriented = rng.random() < oriented_prob
    if oriented:
        p1 = random_tournament(n1, rng)
        p2 = random_tournament(n2, rng)
    else:
        p1 = random_semicomplete(n1, rng)
        p2 = random_semicomplete(n2, rng)
    cross = []
    for a in range(n1):
        for b in range(n2):
            r = rng.random()
            if r < 0.2:
                cross.append((a, n1 + b))
            elif r < 0.4:
                cross.append((n1 + b, a))
            elif not oriented and r < 0.45:
                cross += [(a, n1 + b), (n1 + b, a)]
    return two_part_digraph(p1, p2, cross)


def random_circulant(rng, n_range=(8, 12)) -> Digraph:
    """Random circulant digraph: i -> i + j (mod n) for j in a random jump set."""
    rng = _rng(rng)
    n = rng.randrange(n_range[0], n_range[1] + 1)
    k = rng.randrange(2, 4)
    jumps = rng.sample(range(1, n), k)
    arcs = set()
    for i in range(n):
        for j in jumps:
            arcs.add((i, (i + j) % n))
    return Digraph(n, sorted(arcs))
