"""Constructive non-separating out-branchings.

Covers semicomplete digraphs (with the full root case analysis and the two
known 4-vertex obstructions), 2-arc-strong semicomplete multigraphs, the
two-cliques partition case, and the general pipeline for 2-arc-strong
digraphs of independence number 2 with minimum in-degree 5 (or 3 when the
digraph is oriented).

Every certificate returned by this module is re-verified before it leaves:
the residual digraph obtained by deleting the branching arcs is checked to be
strong.  Structural facts the construction relies on are asserted at runtime
and raise InvariantViolation when they fail, since they are guaranteed for
admissible inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from nonsep.connectivity import (
    OutBranching,
    OutTree,
    build_out_branching,
    edmonds_branchings,
    is_k_arc_strong,
    is_strong,
    strong_components,
    verify_out_branching,
    verify_out_tree,
)
from nonsep.digraph import ArcSubset, Digraph, is_alpha_at_most_2, is_oriented, is_semicomplete
from nonsep.errors import InvariantViolation, PreconditionError, RootNotPermitted
from nonsep.semicomplete import (
    SpanningSkeleton,
    camion_hamiltonian_cycle,
    classify_small_strong,
    cycle_arc_indices,
    find_isomorphism,
    iter_isomorphisms,
    match_known_exception,
    nice_decomposition,
    two_arc_disjoint_strong_spanning,
)


@dataclass(frozen=True)
class BranchingCertificate:
    """A verified non-separating out-branching."""

    branching: OutBranching
    residual: ArcSubset
    residual_strong: bool


@dataclass(frozen=True)
class Impossibility:
    """No non-separating out-branching exists (any root).

    When exactly two vertices have in-degree one and the input is not the
    known 4-vertex exception, `out_tree` spans all vertices but `excluded`
    and its removal leaves the digraph strong.
    """

    reason: str
    in_degree_one: tuple
    out_tree: Optional[OutTree] = None
    excluded: Optional[int] = None


@dataclass(frozen=True)
class ConstructionTrace:
    """Intermediate objects of the general pipeline, for audit and tests."""

    skeleton: Optional[SpanningSkeleton] = None
    semicomplete_fast_path: bool = False
    skeleton_arcs: Optional[frozenset] = None
    initial_components: tuple = ()
    r1: tuple = ()
    r2: tuple = ()
    r1_star: tuple = ()
    r1_star_added: tuple = ()
    cut_arc_uv: Optional[int] = None
    dstar_excluded: frozenset = frozenset()
    paths: tuple = ()
    q_arcs: frozenset = frozenset()


SdResult = Union[BranchingCertificate, Impossibility]


def make_certificate(D: Digraph, root: int, parent: dict) -> BranchingCertificate:
    b = OutBranching(root, dict(parent))
    if not verify_out_branching(D, b):
        raise InvariantViolation("constructed parent map is not an out-branching")
    if not is_strong(D, b.arc_indices()):
        raise InvariantViolation("constructed branching is separating")
    residual = ArcSubset.of(D, frozenset(range(D.m)) - b.arc_indices())
    return BranchingCertificate(b, residual, True)


def verify_branching_certificate(D: Digraph, cert: BranchingCertificate) -> bool:
    """True iff the branching is valid for D and the residual digraph is strong."""
    b = cert.branching
    if not verify_out_branching(D, b):
        return False
    if cert.residual.indices != frozenset(range(D.m)) - b.arc_indices():
        return False
    return bool(cert.residual_strong) and is_strong(D, b.arc_indices())


# ---------------------------------------------------------------------------
# semicomplete digraphs
# ---------------------------------------------------------------------------


def nonsep_branching_semicomplete(D: Digraph, root: Optional[int] = None) -> SdResult:
    """Non-separating out-branching of a strong semicomplete digraph.

    Outcomes by structure:
      * two or more in-degree-one vertices: impossible; with exactly two and
        the input not the known tournament exception, an out-tree on all but
        one vertex with strong residual is attached;
      * the 4-vertex obstruction with one in-degree-one vertex: impossible;
      * exactly one in-degree-one vertex r: certificate rooted at r;
      * minimum in-degree 2, n <= 3: certificate for any requested root;
      * minimum in-degree 2, n >= 4: certificate for any root in the first
        block of the nice decomposition.
    """
    _require_semicomplete_strong(D)
    if not D.is_simple():
        raise PreconditionError("parallel arcs: use the multigraph variant")
    n = D.n
    if n == 1:
        if root not in (None, 0):
            raise RootNotPermitted(root, {0}, "single vertex")
        b = OutBranching(0, {})
        return BranchingCertificate(b, ArcSubset.of(D, frozenset()), True)
    indeg1 = tuple(v for v in range(n) if D.in_degree(v) == 1)
    if len(indeg1) >= 2:
        out_tree = None
        excluded = None
        if len(indeg1) == 2 and find_isomorphism(D, _w2()) is None:
            out_tree, excluded = _two_root_out_tree(D, indeg1)
        return Impossibility(
            "every in-degree-one vertex must root the branching; there are several",
            indeg1,
            out_tree,
            excluded,
        )
    if find_isomorphism(D, _w1()) is not None:
        return Impossibility("the 4-vertex obstruction admits no non-separating branching", indeg1)
    if len(indeg1) == 1:
        r = indeg1[0]
        if root is not None and root != r:
            raise RootNotPermitted(root, {r}, "the in-degree-one vertex must be the root")
        return _unique_low_indegree_case(D, r)
    # minimum in-degree at least 2 from here on
    if n <= 3:
        r = root if root is not None else 0
        a, b = sorted(set(range(n)) - {r})
        parent = {a: D.arc_index(r, a), b: D.arc_index(a, b)}
        return make_certificate(D, r, parent)
    dec = nice_decomposition(D)
    s1 = dec.blocks[0]
    if len(dec.blocks) == 1:
        r = root if root is not None else 0
        return _two_arc_strong_case(D, r)
    if root is not None and root not in s1:
        raise RootNotPermitted(root, s1, "roots must lie in the first block of the nice decomposition")
    r = root if root is not None else min(s1)
    return _chain_case(D, dec, r)


def sd_root_feasible_set(D: Digraph) -> frozenset:
    """Roots for which a non-separating branching exists, per the case analysis."""
    res = nonsep_branching_semicomplete(D)
    if isinstance(res, Impossibility):
        return frozenset()
    indeg1 = [v for v in range(D.n) if D.in_degree(v) == 1]
    if len(indeg1) == 1:
        return frozenset(indeg1)
    if D.n <= 3:
        return frozenset(range(D.n))
    dec = nice_decomposition(D)
    if len(dec.blocks) == 1:
        return frozenset(range(D.n))
    return frozenset(dec.blocks[0])


def _w1() -> Digraph:
    from nonsep.gallery import build_w1

    return build_w1()


def _w2() -> Digraph:
    from nonsep.gallery import build_w2

    return build_w2()


def _require_semicomplete_strong(D: Digraph):
    if not is_semicomplete(D):
        raise PreconditionError("input is not semicomplete")
    if not is_strong(D):
        raise PreconditionError("input is not strong")


def _sub_minus_arcs(D: Digraph, vertices, excluded_orig: set):
    """Induced subdigraph minus some original arcs, with an arc map back."""
    sub, vmap, arc_map = D.induced(vertices)
    keep = [j for j in range(sub.m) if arc_map[j] not in excluded_orig]
    H = Digraph(sub.n, [sub.arcs[j] for j in keep])
    back = [arc_map[j] for j in keep]
    return H, vmap, back


def _two_root_out_tree(D: Digraph, indeg1: tuple) -> tuple[OutTree, int]:
    """Out-tree rooted at one in-degree-one vertex spanning everything except
    the other, with strong residual; built inside D minus a hamiltonian cycle."""
    H = camion_hamiltonian_cycle(D)
    h_arcs = set(cycle_arc_indices(D, H))
    for ra, rb in ((indeg1[0], indeg1[1]), (indeg1[1], indeg1[0])):
        sub, vmap, back = _sub_minus_arcs(D, set(range(D.n)) - {rb}, h_arcs)
        sc = strong_components(sub)
        initials = sc.initial_components()
        if len(initials) != 1:
            continue
        pos = {v: i for i, v in enumerate(vmap)}
        if pos[ra] not in initials[0]:
            raise InvariantViolation("in-degree-one vertex is not initial after cycle removal")
        b = build_out_branching(sub, pos[ra])
        if b is None:
            raise InvariantViolation("unique initial component failed to span")
        tree = OutTree(ra, {vmap[v]: back[i] for v, i in b.parent.items()})
        if not verify_out_tree(D, tree) or not is_strong(D, tree.arc_indices()):
            raise InvariantViolation("out-tree construction produced an invalid tree")
        return tree, rb
    raise InvariantViolation("out-tree exists for one of the two roots unless the input is the known exception")


def _unique_low_indegree_case(D: Digraph, r: int) -> BranchingCertificate:
    """Certificate rooted at the unique in-degree-one vertex.

    Remove a hamiltonian cycle through r; if the remainder has a single
    initial component the branching lives there, otherwise reroute the cycle
    around the two-vertex initial component and take the branching in the
    complement of the rerouted cycle.
    """
    H = camion_hamiltonian_cycle(D)
    i = H.index(r)
    H = H[i:] + H[:i]
    h_arcs = set(cycle_arc_indices(D, H))
    sub, vmap, back = _sub_minus_arcs(D, range(D.n), h_arcs)
    sc = strong_components(sub)
    initials = sc.initial_components()
    pos = {v: i for i, v in enumerate(vmap)}
    if len(initials) == 1:
        b = build_out_branching(sub, pos[r])
        if b is None:
            raise InvariantViolation("single initial component failed to span")
        return make_certificate(D, r, {vmap[v]: back[i] for v, i in b.parent.items()})
    p2, pn = H[1], H[-1]
    other = [c for c in initials if pos[r] not in c]
    if len(initials) != 2 or set(other[0]) != {pos[p2], pos[pn]}:
        raise InvariantViolation("second initial component must be the cycle neighbours of the root")
    t_arcs = set(h_arcs)
    t_arcs.discard(D.arc_index(H[0], H[1]))
    t_arcs.add(D.arc_index(pn, p2))
    t_arcs.add(D.arc_index(H[0], H[2]))
    sub2, vmap2, back2 = _sub_minus_arcs(D, range(D.n), t_arcs)
    pos2 = {v: i for i, v in enumerate(vmap2)}
    b = build_out_branching(sub2, pos2[r])
    if b is None:
        raise InvariantViolation("rerouted cycle complement has no spanning branching from the root")
    return make_certificate(D, r, {vmap2[v]: back2[i] for v, i in b.parent.items()})


_S4_BRANCHING_ROOT = 3
_S4_BRANCHING_PAIRS = ((3, 1), (1, 2), (2, 0))


def _s4_branching_pairs(root: int) -> list[tuple[int, int]]:
    """The fixed branching of the canonical 4-vertex exception, rotated so it
    is rooted at `root` (rotation is an automorphism)."""
    k = (root - _S4_BRANCHING_ROOT) % 4
    return [((a + k) % 4, (b + k) % 4) for a, b in _S4_BRANCHING_PAIRS]


def _two_arc_strong_case(D: Digraph, r: int) -> BranchingCertificate:
    from nonsep.gallery import build_s4

    if find_isomorphism(D, build_s4()) is not None:
        for perm in iter_isomorphisms(D, build_s4()):
            inv = {perm[v]: v for v in range(4)}
            parent = {}
            for a, b in _s4_branching_pairs(perm[r]):
                parent[inv[b]] = D.arc_index(inv[a], inv[b])
            return make_certificate(D, r, parent)
        raise InvariantViolation("isomorphism vanished")
    pair = two_arc_disjoint_strong_spanning(D)
    if not isinstance(pair, tuple):
        raise InvariantViolation("unexpected exceptional input beyond the 4-vertex case")
    b = build_out_branching(D, r, allowed_arcs=set(pair[0].indices))
    if b is None:
        raise InvariantViolation("strong spanning side must contain a branching from any root")
    return make_certificate(D, r, b.parent)


def _chain_case(D: Digraph, dec, r: int) -> BranchingCertificate:
    """Nice decomposition with several blocks; root inside the first block.

    Builds two arc-disjoint out-branchings of the first block (rooted at the
    cut-arc head and at r) via an apex gadget, reshapes the first one off the
    out-star shape, and routes the rest of the digraph through the unique
    entry arc.
    """
    s1 = sorted(dec.blocks[0])
    s1_set = set(s1)
    entering = [i for i, (a, b) in enumerate(D.arcs) if b in s1_set and a not in s1_set]
    if len(entering) != 1:
        raise InvariantViolation("first block of a nice decomposition has one entering arc")
    st = entering[0]
    s, t = D.arcs[st]
    sub, vmap, arc_map = D.induced(s1)
    pos = {v: i for i, v in enumerate(vmap)}
    bt, br = _two_branchings_via_apex(sub, pos[t], pos[r])
    bt = _avoid_out_star(sub, bt, br, pos[t], pos[r])
    # q: a vertex of bt that is neither its root nor a leaf
    bt_tails = {sub.arcs[i][0] for i in bt.values()}
    q_candidates = sorted(v for v in bt_tails if v != pos[t])
    if not q_candidates:
        raise InvariantViolation("reshaped branching is still an out-star")
    q = vmap[q_candidates[0]]
    # hamiltonian cycle entering the block through the cut-arc
    H = camion_hamiltonian_cycle(D)
    if st not in set(cycle_arc_indices(D, H)):
        raise InvariantViolation("the only arc entering the first block must lie on any hamiltonian cycle")
    i = H.index(t)
    H = H[i:] + H[:i]
    prefix = 0
    while prefix < len(H) and H[prefix] in s1_set:
        prefix += 1
    if set(H[:prefix]) != s1_set:
        raise InvariantViolation("hamiltonian cycle must traverse the first block contiguously")
    parent = {vmap[v]: arc_map[i] for v, i in br.items()}
    for w in range(D.n):
        if w not in s1_set:
            parent[w] = D.arc_index(q, w)
    return make_certificate(D, r, parent)


def _two_branchings_via_apex(sub: Digraph, t: int, r: int) -> tuple[dict, dict]:
    """Two arc-disjoint out-branchings of `sub` rooted at t and r, obtained
    from two arc-disjoint branchings rooted at an apex with arcs to t and r."""
    apex = sub.n
    gadget = Digraph(apex + 1, list(sub.arcs) + [(apex, t), (apex, r)])
    res = edmonds_branchings(gadget, apex, 2)
    if not isinstance(res, list):
        raise InvariantViolation(f"apex gadget is not 2-fan-out: {res}")
    trees = {}
    for b in res:
        apex_arcs = [i for i in b.parent.values() if i >= sub.m]
        if len(apex_arcs) != 1:
            raise InvariantViolation("each apex branching must use exactly one apex arc")
        root = gadget.arcs[apex_arcs[0]][1]
        parent = {v: i for v, i in b.parent.items() if i < sub.m}
        trees[apex_arcs[0] - sub.m] = (root, parent)
    (root0, p0), (root1, p1) = trees[0], trees[1]
    if root0 != t or root1 != r:
        raise InvariantViolation("apex arcs must root the branchings at t and r")
    return p0, p1


def _avoid_out_star(sub: Digraph, bt: dict, br: dict, t: int, r: int) -> dict:
    """Make sure the t-rooted branching is not an out-star (the assembly needs
    an interior vertex)."""
    if any(sub.arcs[i][0] != t for i in bt.values()):
        return bt
    if sub.n >= 4:
        leaves = sorted(v for v in range(sub.n) if v != t)
        br_arcs = set(br.values())
        for i, (a, b) in enumerate(sub.arcs):
            if a in leaves and b in leaves and a != b and i not in br_arcs:
                bt = dict(bt)
                bt[b] = i
                return bt
        raise InvariantViolation("leaves cannot be independent in the residual of the r-branching")
    if sub.n != 3:
        raise InvariantViolation("a first block of size below 3 contradicts minimum in-degree 2")
    x, y = sorted(set(range(3)) - {t})
    if not sub.has_arc(x, t):
        x, y = y, x
    if not sub.has_arc(x, t):
        raise InvariantViolation("some non-root vertex must re-enter the block root")
    if r == t:
        bt2 = {x: sub.arc_index(t, x), y: sub.arc_index(x, y)}
        br2 = {y: sub.arc_index(t, y), x: sub.arc_index(y, x)}
    elif r == x:
        bt2 = {y: sub.arc_index(t, y), x: sub.arc_index(y, x)}
        br2 = {t: sub.arc_index(x, t), y: sub.arc_index(x, y)}
    else:
        bt2 = {x: sub.arc_index(t, x), y: sub.arc_index(x, y)}
        br2 = {x: sub.arc_index(r, x), t: sub.arc_index(x, t)}
    br.clear()
    br.update(br2)
    return bt2


# ---------------------------------------------------------------------------
# semicomplete multigraphs
# ---------------------------------------------------------------------------


def nonsep_branching_semicomplete_multi(D: Digraph, root: int) -> BranchingCertificate:
    """Certificate for any root in a 2-arc-strong semicomplete multigraph.

    The four exceptional multigraphs contain the canonical 4-vertex digraph
    whose fixed branching works for every root; everything else splits into
    two arc-disjoint strong spanning subdigraphs.
    """
    if not is_semicomplete(D):
        raise PreconditionError("input is not semicomplete")
    if not is_k_arc_strong(D, 2):
        raise PreconditionError("input is not 2-arc-strong")
    if not (0 <= root < D.n):
        raise PreconditionError("root out of range")
    exc = match_known_exception(D)
    if exc is not None:
        from nonsep import gallery

        target = gallery.build(exc.name)
        perm = exc.mapping
        inv = {perm[v]: v for v in range(4)}
        parent = {}
        for a, b in _s4_branching_pairs(perm[root]):
            parent[inv[b]] = D.arc_index(inv[a], inv[b])
        return make_certificate(D, root, parent)
    pair = two_arc_disjoint_strong_spanning(D)
    if not isinstance(pair, tuple):
        raise InvariantViolation("exception matching missed a known exceptional input")
    b = build_out_branching(D, root, allowed_arcs=set(pair[0].indices))
    if b is None:
        raise InvariantViolation("strong side must contain a branching from any root")
    return make_certificate(D, root, b.parent)


# ---------------------------------------------------------------------------
# two-cliques partition case
# ---------------------------------------------------------------------------


def nonsep_branching_two_cliques(D: Digraph, skeleton: SpanningSkeleton) -> BranchingCertificate:
    """Certificate when V splits into two strong semicomplete parts, each with
    a vertex non-adjacent to the other part; needs minimum in-degree 3."""
    if skeleton.kind != "two_cliques":
        raise PreconditionError("skeleton is not a two-cliques partition")
    if not is_k_arc_strong(D, 2):
        raise PreconditionError("input is not 2-arc-strong")
    if D.min_in_degree() < 3:
        raise PreconditionError("minimum in-degree 3 required")
    ok, _ = is_alpha_at_most_2(D)
    if not ok:
        raise PreconditionError("independence number exceeds 2")
    sides = []
    for part, wit in ((skeleton.part1, skeleton.witness1), (skeleton.part2, skeleton.witness2)):
        verts = sorted(part)
        sub, vmap, arc_map = D.induced(verts)
        if sub.n < 4 or sub.in_degree(vmap.index(wit)) < 3:
            raise InvariantViolation("non-adjacent witness must have in-degree >= 3 inside its part")
        sides.append(_side_branching(sub, vmap, arc_map, D, part_other=None))
    part1, part2 = set(skeleton.part1), set(skeleton.part2)
    sides[0]["other"] = part2
    sides[1]["other"] = part1
    # case-3 sides must be rooted at the head of an arc from the other part
    for idx, side in enumerate(sides):
        if side["case"] == 3:
            other = part2 if idx == 0 else part1
            sub, vmap, arc_map = side["sub"], side["vmap"], side["arc_map"]
            dec = nice_decomposition(sub)
            block1 = {vmap[v] for v in dec.blocks[0]}
            entry = sorted(
                i for i, (a, b) in enumerate(D.arcs) if a in other and b in block1
            )
            if not entry:
                raise InvariantViolation("2-arc-strongness guarantees an entry arc into the first block")
            root = D.arcs[entry[0]][1]
            res = nonsep_branching_semicomplete(sub, vmap.index(root))
            if not isinstance(res, BranchingCertificate):
                raise InvariantViolation("case-3 side must admit the requested root")
            side["root"] = root
            side["parent"] = {vmap[v]: arc_map[i] for v, i in res.branching.parent.items()}
    return _link_two_cliques(D, part1, part2, sides[0], sides[1])


def _side_branching(sub, vmap, arc_map, D, part_other):
    """Per-part structure: case 1 (two in-degree-one vertices, out-tree),
    case 2 (one such vertex, forced root) or case 3 (min in-degree 2)."""
    indeg1 = [v for v in range(sub.n) if sub.in_degree(v) == 1]
    info = {"sub": sub, "vmap": vmap, "arc_map": arc_map}
    if len(indeg1) >= 2:
        res = nonsep_branching_semicomplete(sub)
        if not isinstance(res, Impossibility) or res.out_tree is None:
            raise InvariantViolation("two in-degree-one vertices must yield the out-tree variant")
        tree = res.out_tree
        info.update(
            case=1,
            root=vmap[tree.root],
            excluded=vmap[res.excluded],
            parent={vmap[v]: arc_map[i] for v, i in tree.parent.items()},
        )
        return info
    if len(indeg1) == 1:
        res = nonsep_branching_semicomplete(sub, indeg1[0])
        if not isinstance(res, BranchingCertificate):
            raise InvariantViolation("a part with one in-degree-one vertex must admit a certificate")
        info.update(
            case=2,
            root=vmap[indeg1[0]],
            parent={vmap[v]: arc_map[i] for v, i in res.branching.parent.items()},
        )
        return info
    info.update(case=3, root=None, parent=None)
    return info


def _link_two_cliques(D, part1, part2, side1, side2) -> BranchingCertificate:
    def lowest_arc(frm, to_vertex, avoid_tails=frozenset()):
        cands = [
            i
            for i, (a, b) in enumerate(D.arcs)
            if a in frm and b == to_vertex and a not in avoid_tails
        ]
        if not cands:
            raise InvariantViolation("required cross arc is missing")
        return min(cands)

    parent: dict[int, int] = {}
    parent.update(side1["parent"])
    parent.update(side2["parent"])
    c1, c2 = side1["case"], side2["case"]
    if c1 != 1 and c2 != 1:
        root = side1["root"]
        parent[side2["root"]] = lowest_arc(part1, side2["root"])
    elif c1 != 1 and c2 == 1:
        root = side1["root"]
        parent[side2["root"]] = lowest_arc(part1, side2["root"])
        parent[side2["excluded"]] = lowest_arc(part1, side2["excluded"])
    elif c1 == 1 and c2 != 1:
        root = side2["root"]
        parent[side1["root"]] = lowest_arc(part2, side1["root"])
        parent[side1["excluded"]] = lowest_arc(part2, side1["excluded"])
    else:
        root = side1["root"]
        avoid1 = frozenset({side1["excluded"]})
        avoid2 = frozenset({side2["excluded"]})
        parent[side2["root"]] = lowest_arc(part1 - avoid1, side2["root"])
        parent[side2["excluded"]] = lowest_arc(part1 - avoid1, side2["excluded"])
        parent[side1["excluded"]] = lowest_arc(part2 - avoid2, side1["excluded"])
    return make_certificate(D, root, parent)


# ---------------------------------------------------------------------------
# the general pipeline
# ---------------------------------------------------------------------------


def nonsep_branching(
    D: Digraph, skeleton: Optional[SpanningSkeleton] = None
) -> tuple[BranchingCertificate, ConstructionTrace]:
    """Non-separating out-branching of a 2-arc-strong digraph with
    independence number at most 2, minimum in-degree 5 (general) or 3
    (oriented inputs).

    A precomputed spanning skeleton may be supplied to skip classification
    (useful when the caller constructed the instance around one).
    """
    if not D.is_simple():
        raise PreconditionError("input must be a simple digraph")
    ok, wit = is_alpha_at_most_2(D)
    if not ok:
        raise PreconditionError(f"independence number exceeds 2 (witness {wit})")
    if not is_k_arc_strong(D, 2):
        raise PreconditionError("input is not 2-arc-strong")
    oriented = is_oriented(D)
    if D.min_in_degree() < 5 and not (oriented and D.min_in_degree() >= 3):
        raise PreconditionError(
            "minimum in-degree must be 5, or 3 for oriented inputs"
        )
    if skeleton is None and is_semicomplete(D):
        res = nonsep_branching_semicomplete(D)
        if not isinstance(res, BranchingCertificate):
            raise InvariantViolation("semicomplete input with min in-degree >= 2 must have a certificate")
        return res, ConstructionTrace(semicomplete_fast_path=True)
    skel = skeleton if skeleton is not None else classify_small_strong(D)
    if skel.kind == "two_cliques":
        cert = nonsep_branching_two_cliques(D, skel)
        return cert, ConstructionTrace(skeleton=skel)
    return _pipeline_case_b(D, skel, oriented)


def _pipeline_case_b(D: Digraph, skel: SpanningSkeleton, oriented: bool):
    h_arcs = set(skel.arcs.indices)
    sub0, vmap0, back0 = _sub_minus_arcs(D, range(D.n), h_arcs)
    sc = strong_components(sub0)
    initials = sc.initial_components()
    if len(initials) == 1:
        root = vmap0[min(initials[0])]
        b = build_out_branching(sub0, min(initials[0]))
        if b is None:
            raise InvariantViolation("single initial component failed to span")
        cert = make_certificate(D, root, {vmap0[v]: back0[i] for v, i in b.parent.items()})
        trace = ConstructionTrace(
            skeleton=skel,
            skeleton_arcs=frozenset(h_arcs),
            initial_components=tuple(frozenset(vmap0[v] for v in c) for c in initials),
        )
        return cert, trace

    initials = sorted((frozenset(vmap0[v] for v in c) for c in initials), key=min)
    _assert_claim_a(D, sub0, vmap0, initials, oriented)
    r1, r2 = set(initials[0]), set(initials[1])
    _assert_claim_b(D, h_arcs, r1, r2)
    _assert_claim_c(D, r1, r2)
    r1_star, added = _grow_r1_star(D, r1, r2)
    _assert_claim_d(D, r1_star)

    sub1, vmap1, amap1 = D.induced(sorted(r1_star))
    pos1 = {v: i for i, v in enumerate(vmap1)}
    dec1 = nice_decomposition(sub1)
    uv = _choose_entry_arc(D, sub1, vmap1, pos1, dec1, r1_star)
    u, v = D.arcs[uv]

    res1 = nonsep_branching_semicomplete(sub1, pos1[v])
    if not isinstance(res1, BranchingCertificate):
        raise InvariantViolation("first grown component must admit the chosen root")
    sub2, vmap2, amap2 = D.induced(sorted(r2))
    res2 = nonsep_branching_semicomplete(sub2)
    if not isinstance(res2, BranchingCertificate):
        raise InvariantViolation("second component must admit some root")
    root2 = vmap2[res2.branching.root]

    parent: dict[int, int] = {}
    parent.update({vmap1[w]: amap1[i] for w, i in res1.branching.parent.items()})
    parent.update({vmap2[w]: amap2[i] for w, i in res2.branching.parent.items()})
    q_arcs = set(amap1[i] for i in res1.residual.indices) | set(
        amap2[i] for i in res2.residual.indices
    )

    covered = set(r1_star) | set(r2)
    paths = []
    p12 = _xy_path(D, r1_star, r2, {uv})
    p21 = _xy_path(D, r2, r1_star, {uv})
    if p12 is None or p21 is None:
        raise InvariantViolation("2-arc-strongness guarantees linking paths avoiding one arc")
    for verts, arcs in (p12, p21):
        q_arcs.update(arcs)
    banned = set(p12[1]) | set(p21[1])
    for verts, arcs in (p12, p21):
        for p in verts[1:-1]:
            parent[p] = _attachment_arc(D, p, r1, r2, banned, u)
            covered.add(p)
        paths.append(tuple(verts))
    while len(covered) < D.n:
        step = _next_path(D, covered, {uv})
        if step is None:
            raise InvariantViolation("remaining vertices must be reachable in the punctured digraph")
        verts, arcs = step
        q_arcs.update(arcs)
        for p in verts[1:-1]:
            parent[p] = _attachment_arc(D, p, r1, r2, set(arcs), u)
            covered.add(p)
        paths.append(tuple(verts))
    parent[v] = uv
    cert = make_certificate(D, root2, parent)
    if uv in q_arcs or q_arcs & cert.branching.arc_indices():
        raise InvariantViolation("strong side and branching must stay arc-disjoint")
    if not is_strong(D, frozenset(range(D.m)) - frozenset(q_arcs)):
        raise InvariantViolation("collected strong side is not strong")
    trace = ConstructionTrace(
        skeleton=skel,
        skeleton_arcs=frozenset(h_arcs),
        initial_components=tuple(initials),
        r1=tuple(sorted(r1)),
        r2=tuple(sorted(r2)),
        r1_star=tuple(sorted(r1_star)),
        r1_star_added=tuple(added),
        cut_arc_uv=uv,
        dstar_excluded=frozenset({uv}),
        paths=tuple(paths),
        q_arcs=frozenset(q_arcs),
    )
    return cert, trace


def _assert_claim_a(D, sub0, vmap0, initials, oriented):
    if len(initials) != 2:
        raise InvariantViolation(f"expected exactly 2 initial components, got {len(initials)}")
    for c in initials:
        if len(c) < 5:
            raise InvariantViolation("initial components must have at least 5 vertices")
    degs = [sub0.in_degree(w) for w in range(sub0.n)]
    if not oriented:
        if min(degs) < 3:
            raise InvariantViolation("min in-degree 3 expected after skeleton removal")
    else:
        low = [w for w in range(sub0.n) if degs[w] < 2]
        if len(low) > 1 or any(degs[w] < 1 for w in low):
            raise InvariantViolation("at most one vertex of in-degree one expected after skeleton removal")


def _assert_claim_b(D, h_arcs, r1, r2):
    for part in (r1, r2):
        sub = D.induced(sorted(part))[0]
        if not is_semicomplete(sub):
            raise InvariantViolation("initial components must induce semicomplete digraphs")
    for z in range(D.n):
        for part in (r1, r2):
            out_cnt = sum(
                1 for i in h_arcs if D.arcs[i][0] == z and D.arcs[i][1] in part and D.arcs[i][1] != z
            )
            in_cnt = sum(
                1 for i in h_arcs if D.arcs[i][1] == z and D.arcs[i][0] in part and D.arcs[i][0] != z
            )
            if out_cnt > 1 or in_cnt > 1:
                raise InvariantViolation("skeleton meets each component in at most one arc per direction")


def _assert_claim_c(D, r1, r2):
    both = r1 | r2
    for y in range(D.n):
        if y in both:
            continue
        cnt = sum(1 for (t, h) in D.arcs if h == y and t in both)
        if cnt < 4:
            raise InvariantViolation("outside vertices must have 4 arcs entering from the components")


def _grow_r1_star(D, r1, r2):
    r1_star = set(r1)
    added = []
    changed = True
    while changed:
        changed = False
        for w in sorted(set(range(D.n)) - r1_star - r2):
            into = any(h in r1_star and t == w for t, h in D.arcs)
            from_r2 = sum(1 for t, h in D.arcs if h == w and t in r2)
            if into and from_r2 <= 1:
                r1_star.add(w)
                added.append(w)
                changed = True
                break
    return r1_star, added


def _assert_claim_d(D, r1_star):
    sub = D.induced(sorted(r1_star))[0]
    if not is_semicomplete(sub):
        raise InvariantViolation("grown component must be semicomplete")
    if not is_strong(sub):
        raise InvariantViolation("grown component must be strong")


def _choose_entry_arc(D, sub1, vmap1, pos1, dec1, r1_star) -> int:
    indeg1 = [w for w in range(sub1.n) if sub1.in_degree(w) == 1]
    if len(indeg1) > 1:
        raise InvariantViolation("at most one in-degree-one vertex expected in the grown component")
    if len(dec1.blocks) >= 2:
        block1 = {vmap1[w] for w in dec1.blocks[0]}
    else:
        block1 = set(r1_star)
    cands = [
        i for i, (a, b) in enumerate(D.arcs) if b in block1 and a not in r1_star
    ]
    if indeg1:
        forced = vmap1[indeg1[0]]
        if forced not in block1:
            raise InvariantViolation("in-degree-one vertex must lie in the first block")
        cands = [i for i in cands if D.arcs[i][1] == forced]
    if not cands:
        raise InvariantViolation("an entry arc into the first block must exist")
    return min(cands)


def _attachment_arc(D, p, r1, r2, banned_arcs, u):
    sources = r2 if p == u else (r1 | r2)
    cands = [
        i
        for i, (t, h) in enumerate(D.arcs)
        if h == p and t in sources and i not in banned_arcs
    ]
    if not cands:
        raise InvariantViolation("attachment arc guaranteed by the degree bound is missing")
    return min(cands)


def _xy_path(D, X, Y, excluded_arcs):
    """Shortest (X,Y)-path: first vertex in X, last in Y, interior outside both.
    Returns (vertex list, arc index list) or None."""
    X, Y = set(X), set(Y)
    excluded = set(excluded_arcs)
    best_direct = [
        i for i, (t, h) in enumerate(D.arcs) if t in X and h in Y and i not in excluded
    ]
    if best_direct:
        i = min(best_direct)
        t, h = D.arcs[i]
        return [t, h], [i]
    prev: dict[int, tuple[int, int]] = {}
    frontier = []
    for i, (t, h) in sorted(enumerate(D.arcs), key=lambda e: e[0]):
        if i in excluded or t not in X or h in X or h in Y:
            continue
        if h not in prev:
            prev[h] = (t, i)
            frontier.append(h)
    while frontier:
        nxt = []
        for w in frontier:
            for i in sorted(D.out_arc_indices(w)):
                if i in excluded:
                    continue
                h = D.arcs[i][1]
                if h in Y:
                    verts = [h]
                    arcs = [i]
                    cur = w
                    while cur in prev:
                        verts.append(cur)
                        t, j = prev[cur]
                        arcs.append(j)
                        cur = t
                    verts.append(cur)
                    return list(reversed(verts)), list(reversed(arcs))
                if h not in X and h not in prev:
                    prev[h] = (w, i)
                    nxt.append(h)
        frontier = nxt
    return None


def _next_path(D, covered, excluded_arcs):
    """Lowest-arc (covered, covered)-path with at least one interior vertex."""
    excluded = set(excluded_arcs)
    outs = sorted(
        i
        for i, (t, h) in enumerate(D.arcs)
        if t in covered and h not in covered and i not in excluded
    )
    for i in outs:
        t, h = D.arcs[i]
        back = _xy_path(D, {h}, covered, excluded)
        if back is not None:
            verts, arcs = back
            return [t] + verts, [i] + arcs
    return None
